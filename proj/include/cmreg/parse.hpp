#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cmreg/ring.hpp"

namespace cmreg {

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

/// Identifiers, unsigned integers and punctuation (including <=, >=, ==).
/// `#` starts a comment running to the end of the line.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token list with expectation helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_punct(std::string_view p, std::size_t ahead = 0) const;
  bool at_ident(std::string_view word = {}, std::size_t ahead = 0) const;
  bool accept(std::string_view punct);
  Token expect(std::string_view punct);
  Token expect_ident();
  long expect_integer();
  bool at_end() const { return peek().kind == Token::Kind::End; }
  [[noreturn]] void fail(const std::string& expected) const;
  std::size_t position() const { return pos_; }
  void rewind(std::size_t pos) { pos_ = pos; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// `Q` or `GF(p)`.
Field parse_field(TokenStream& ts);
Field parse_field(std::string_view text);

/// Polynomial in the ring's variables: integers, rationals a/b, `+ - * ^`,
/// parentheses. Stops at the first token that cannot continue the
/// polynomial.
Polynomial parse_polynomial(TokenStream& ts, const RingPtr& ring);
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

/// Syntax tree of an ideal expression: `+` sum, `^` intersection, `*`
/// product (binding in that order, loosest first, all left-associative),
/// parenthesized groups, and atoms `(f1, ..., fk)`. `(0)` and `(1)` are the
/// zero and unit ideals.
struct ExprAst {
  enum class Kind { Zero, Unit, Atom, Sum, Product, Meet };
  Kind kind;
  std::vector<Polynomial> generators;  // Atom only
  std::shared_ptr<const ExprAst> left;
  std::shared_ptr<const ExprAst> right;
};
using ExprAstPtr = std::shared_ptr<const ExprAst>;

ExprAstPtr parse_expression(TokenStream& ts, const RingPtr& ring);
ExprAstPtr parse_expression(std::string_view text, const RingPtr& ring);
/// Canonical text with minimal parentheses; parses back to the same tree.
std::string to_string(const ExprAst& e);

}  // namespace cmreg
