#include "cmreg/parse.hpp"

#include <cctype>

namespace cmreg {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t{Token::Kind::Punct, "", line, col};
    std::size_t start = i;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
      advance(j - i);
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Token::Kind::Number;
      advance(j - i);
    } else {
      std::string_view two = text.substr(i, 2);
      if (two == "<=" || two == ">=" || two == "==") {
        advance(2);
      } else if (std::string_view("()[]{},;+-*^/=<>:").find(static_cast<char>(c)) != std::string_view::npos) {
        advance(1);
      } else {
        throw SyntaxError(std::string("unexpected character '") + static_cast<char>(c) + "'", line, col);
      }
    }
    t.text = std::string(text.substr(start, i - start));
    out.push_back(std::move(t));
  }
  out.push_back(Token{Token::Kind::End, "", line, col});
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t k = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[k];
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::at_punct(std::string_view p, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == Token::Kind::Punct && t.text == p;
}

bool TokenStream::at_ident(std::string_view word, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == Token::Kind::Ident && (word.empty() || t.text == word);
}

bool TokenStream::accept(std::string_view punct) {
  if (!at_punct(punct)) return false;
  next();
  return true;
}

Token TokenStream::expect(std::string_view punct) {
  if (!at_punct(punct)) fail("'" + std::string(punct) + "'");
  return next();
}

Token TokenStream::expect_ident() {
  if (!at_ident()) fail("identifier");
  return next();
}

long TokenStream::expect_integer() {
  bool neg = accept("-");
  if (peek().kind != Token::Kind::Number) fail("integer");
  const Token t = next();
  if (t.text.size() > 9) throw SyntaxError("integer too large", t.line, t.column);
  long v = std::stol(t.text);
  return neg ? -v : v;
}

void TokenStream::fail(const std::string& expected) const {
  const Token& t = peek();
  std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw SyntaxError("expected " + expected + ", got " + got, t.line, t.column);
}

namespace {

Polynomial parse_sum(TokenStream& ts, const RingPtr& ring);

Polynomial parse_base(TokenStream& ts, const RingPtr& ring) {
  const Token& t = ts.peek();
  if (t.kind == Token::Kind::Number) {
    Token num = ts.next();
    mpq_class q(mpz_class(num.text), 1);
    if (ts.at_punct("/") && ts.peek(1).kind == Token::Kind::Number) {
      ts.next();
      Token den = ts.next();
      mpz_class d(den.text);
      if (d == 0) throw SyntaxError("division by zero", den.line, den.column);
      q = mpq_class(mpz_class(num.text), d);
      q.canonicalize();
    }
    return Polynomial::constant(ring, ring->field().from_rational(q));
  }
  if (t.kind == Token::Kind::Ident) {
    auto idx = ring->variable_index(t.text);
    if (!idx) throw SyntaxError("unknown variable '" + t.text + "'", t.line, t.column);
    ts.next();
    return Polynomial::variable(ring, *idx);
  }
  if (ts.accept("(")) {
    Polynomial p = parse_sum(ts, ring);
    ts.expect(")");
    return p;
  }
  ts.fail("number, variable or '('");
}

Polynomial parse_factor(TokenStream& ts, const RingPtr& ring) {
  Polynomial b = parse_base(ts, ring);
  if (ts.at_punct("^") && ts.peek(1).kind == Token::Kind::Number) {
    ts.next();
    long e = ts.expect_integer();
    if (e > 1000) throw SyntaxError("exponent too large", ts.peek().line, ts.peek().column);
    b = b.pow(static_cast<unsigned>(e));
  }
  return b;
}

Polynomial parse_term(TokenStream& ts, const RingPtr& ring) {
  Polynomial p = parse_factor(ts, ring);
  while (ts.at_punct("*")) {
    ts.next();
    p = p * parse_factor(ts, ring);
  }
  return p;
}

Polynomial parse_sum(TokenStream& ts, const RingPtr& ring) {
  Polynomial p(ring);
  bool negate = false;
  if (ts.accept("-")) negate = true;
  else ts.accept("+");
  p = parse_term(ts, ring);
  if (negate) p = -p;
  for (;;) {
    if (ts.accept("+")) p += parse_term(ts, ring);
    else if (ts.accept("-")) p -= parse_term(ts, ring);
    else return p;
  }
}

}  // namespace

Polynomial parse_polynomial(TokenStream& ts, const RingPtr& ring) { return parse_sum(ts, ring); }

Field parse_field(TokenStream& ts) {
  const Token& t = ts.peek();
  if (ts.at_ident("Q")) {
    ts.next();
    return Field::rationals();
  }
  if (!ts.at_ident("GF")) ts.fail("field Q or GF(p)");
  ts.next();
  ts.expect("(");
  long p = ts.expect_integer();
  ts.expect(")");
  if (p > 0xFFFFFFFFL) throw SyntaxError("field characteristic too large", t.line, t.column);
  try {
    return Field::prime(static_cast<std::uint32_t>(p));
  } catch (const PreconditionError& e) {
    throw SyntaxError(e.what(), t.line, t.column);
  }
}

Field parse_field(std::string_view text) {
  TokenStream ts(tokenize(text));
  Field f = parse_field(ts);
  if (!ts.at_end()) ts.fail("end of field");
  return f;
}

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  TokenStream ts(tokenize(text));
  Polynomial p = parse_polynomial(ts, ring);
  if (!ts.at_end()) ts.fail("end of polynomial");
  return p;
}

namespace {

ExprAstPtr make(ExprAst::Kind k, ExprAstPtr l = nullptr, ExprAstPtr r = nullptr) {
  return std::make_shared<const ExprAst>(ExprAst{k, {}, std::move(l), std::move(r)});
}

ExprAstPtr parse_sum_expr(TokenStream& ts, const RingPtr& ring);

ExprAstPtr parse_primary(TokenStream& ts, const RingPtr& ring) {
  if (!ts.at_punct("(")) ts.fail("'('");
  if (ts.at_punct("(", 1)) {
    ts.next();
    ExprAstPtr e = parse_sum_expr(ts, ring);
    ts.expect(")");
    return e;
  }
  ts.next();
  std::vector<Polynomial> gens;
  gens.push_back(parse_polynomial(ts, ring));
  while (ts.accept(",")) gens.push_back(parse_polynomial(ts, ring));
  ts.expect(")");
  if (gens.size() == 1 && gens[0].is_constant()) {
    if (gens[0].is_zero()) return make(ExprAst::Kind::Zero);
    return make(ExprAst::Kind::Unit);
  }
  return std::make_shared<const ExprAst>(ExprAst{ExprAst::Kind::Atom, std::move(gens), nullptr, nullptr});
}

ExprAstPtr parse_product(TokenStream& ts, const RingPtr& ring) {
  ExprAstPtr e = parse_primary(ts, ring);
  while (ts.accept("*")) e = make(ExprAst::Kind::Product, e, parse_primary(ts, ring));
  return e;
}

ExprAstPtr parse_meet(TokenStream& ts, const RingPtr& ring) {
  ExprAstPtr e = parse_product(ts, ring);
  while (ts.accept("^")) e = make(ExprAst::Kind::Meet, e, parse_product(ts, ring));
  return e;
}

ExprAstPtr parse_sum_expr(TokenStream& ts, const RingPtr& ring) {
  ExprAstPtr e = parse_meet(ts, ring);
  while (ts.accept("+")) e = make(ExprAst::Kind::Sum, e, parse_meet(ts, ring));
  return e;
}

}  // namespace

ExprAstPtr parse_expression(TokenStream& ts, const RingPtr& ring) { return parse_sum_expr(ts, ring); }

ExprAstPtr parse_expression(std::string_view text, const RingPtr& ring) {
  TokenStream ts(tokenize(text));
  ExprAstPtr e = parse_expression(ts, ring);
  if (!ts.at_end()) ts.fail("end of expression");
  return e;
}

namespace {

int precedence(ExprAst::Kind k) {
  switch (k) {
    case ExprAst::Kind::Sum: return 1;
    case ExprAst::Kind::Meet: return 2;
    case ExprAst::Kind::Product: return 3;
    default: return 4;
  }
}

}  // namespace

std::string to_string(const ExprAst& e) {
  switch (e.kind) {
    case ExprAst::Kind::Zero: return "(0)";
    case ExprAst::Kind::Unit: return "(1)";
    case ExprAst::Kind::Atom: {
      std::string s = "(";
      for (std::size_t i = 0; i < e.generators.size(); ++i) s += (i ? ", " : "") + e.generators[i].to_string();
      return s + ")";
    }
    default: break;
  }
  const int p = precedence(e.kind);
  std::string l = to_string(*e.left), r = to_string(*e.right);
  if (precedence(e.left->kind) < p) l = "(" + l + ")";
  if (precedence(e.right->kind) <= p) r = "(" + r + ")";
  const char* op = e.kind == ExprAst::Kind::Sum ? " + " : e.kind == ExprAst::Kind::Meet ? " ^ " : " * ";
  return l + op + r;
}

}  // namespace cmreg
