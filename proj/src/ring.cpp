#include "cmreg/ring.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace cmreg {

// ---------------------------------------------------------------- Field

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p <= 2 || !is_prime(p))
    throw PreconditionError("GF(p) requires an odd prime, got " + std::to_string(p));
  return Field(p);
}

std::string Field::name() const { return is_rational() ? "QQ" : "GF(" + std::to_string(p_) + ")"; }

void Field::reduce(Scalar& a) const {
  if (p_ == 0) return;
  mpz_class mod(p_);
  mpz_class num = a.get_num();
  const mpz_class& den = a.get_den();
  if (den != 1) {
    mpz_class inv_den;
    if (mpz_invert(inv_den.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw PreconditionError("denominator divisible by the characteristic");
    num *= inv_den;
  }
  mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
  a = mpq_class(num);
}

Scalar Field::from_int(long v) const {
  Scalar s(v);
  reduce(s);
  return s;
}

Scalar Field::from_rational(const mpq_class& q) const {
  Scalar s(q);
  s.canonicalize();
  reduce(s);
  return s;
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  Scalar r = a + b;
  if (p_ != 0 && r.get_num() >= p_) r -= p_;
  return r;
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  Scalar r = a - b;
  if (p_ != 0 && sgn(r) < 0) r += p_;
  return r;
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  Scalar r = a * b;
  reduce(r);
  return r;
}

Scalar Field::neg(const Scalar& a) const {
  if (p_ == 0) return -a;
  if (sgn(a) == 0) return a;
  return Scalar(p_) - a;
}

Scalar Field::inv(const Scalar& a) const {
  if (sgn(a) == 0) throw PreconditionError("division by zero");
  if (p_ == 0) return 1 / a;
  mpz_class r, mod(p_);
  mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), mod.get_mpz_t());
  return Scalar(r);
}

void Field::sub_mul(Scalar& a, const Scalar& b, const Scalar& c) const {
  if (p_ == 0) {
    Scalar t = b * c;
    a -= t;
    return;
  }
  a -= b * c;
  reduce(a);
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::size_t num_vars) {
  if (num_vars > kMaxVariables)
    throw DimensionError("at most " + std::to_string(kMaxVariables) + " variables supported");
  nvars_ = static_cast<std::uint8_t>(num_vars);
}

Monomial::Monomial(std::initializer_list<int> exponents)
    : Monomial(from_exponents(std::span<const int>(exponents.begin(), exponents.size()))) {}

Monomial Monomial::from_exponents(std::span<const int> exponents) {
  Monomial m(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) m.set(i, exponents[i]);
  return m;
}

Monomial Monomial::variable(std::size_t num_vars, std::size_t index, int power) {
  Monomial m(num_vars);
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, int e) {
  if (i >= nvars_) throw DimensionError("variable index out of range");
  if (e < 0 || e > 0xFFFF) throw DimensionError("exponent out of range");
  degree_ += e - exps_[i];
  exps_[i] = static_cast<std::uint16_t>(e);
}

std::vector<int> Monomial::exponents() const { return {exps_.begin(), exps_.begin() + nvars_}; }

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < nvars_; ++i) r.exps_[i] = static_cast<std::uint16_t>(r.exps_[i] + other.exps_[i]);
  r.degree_ += other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < nvars_; ++i) r.exps_[i] = static_cast<std::uint16_t>(r.exps_[i] - other.exps_[i]);
  r.degree_ -= other.degree_;
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = nvars_;
  for (std::size_t i = 0; i < nvars_; ++i) h = h * 1000003u ^ exps_[i];
  return h;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.num_vars());
  for (std::size_t i = 0; i < a.num_vars(); ++i) r.set(i, std::max(a[i], b[i]));
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.num_vars(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

std::strong_ordering monomial_compare(const Monomial& a, const Monomial& b) {
  if (a.num_vars() != b.num_vars()) throw DimensionError("monomials over different variable counts");
  return grevlex_cmp(a, b) <=> 0;
}

// ---------------------------------------------------------------- Ring

RingPtr PolynomialRing::create(Field field, std::vector<std::string> names) {
  if (names.empty()) throw DimensionError("a polynomial ring needs at least one variable");
  if (names.size() > kMaxVariables) throw DimensionError("too many variables");
  std::unordered_set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw PreconditionError("duplicate variable name " + n);
  return RingPtr(new PolynomialRing(field, std::move(names)));
}

std::optional<std::size_t> PolynomialRing::variable_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::string PolynomialRing::to_string() const {
  std::string s = (field_.is_rational() ? std::string("Q") : field_.name()) + "[";
  for (std::size_t i = 0; i < names_.size(); ++i) s += (i ? "," : "") + names_[i];
  return s + "]";
}

// ---------------------------------------------------------------- Polynomial

namespace {

bool term_greater(const Term& a, const Term& b) { return grevlex_cmp(a.mono, b.mono) > 0; }

void require_same(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) throw RingMismatch("polynomials from different rings");
}

}  // namespace

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  const Field& f = ring_->field();
  for (auto& t : terms) {
    if (t.mono.num_vars() != ring_->num_vars()) throw DimensionError("monomial does not match ring");
    t.coeff = f.from_rational(t.coeff);
  }
  std::sort(terms.begin(), terms.end(), term_greater);
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff = f.add(terms_.back().coeff, t.coeff);
      if (Field::is_zero(terms_.back().coeff)) terms_.pop_back();
    } else if (!Field::is_zero(t.coeff)) {
      terms_.push_back(std::move(t));
    }
  }
}

Polynomial Polynomial::constant(RingPtr ring, const Scalar& c) {
  Monomial one(ring->num_vars());
  return Polynomial(ring, {Term{c, one}});
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->num_vars()) throw DimensionError("variable index out of range");
  return Polynomial(ring, {Term{Scalar(1), Monomial::variable(ring->num_vars(), index)}});
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Scalar& c) {
  return Polynomial(std::move(ring), {Term{c, m}});
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

Scalar Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Scalar(0);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same(ring_, o.ring_);
  const Field& f = ring_->field();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c = i == terms_.size()     ? -1
            : j == o.terms_.size() ? 1
                                   : grevlex_cmp(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar s = f.add(terms_[i].coeff, o.terms_[j].coeff);
      if (!Field::is_zero(s)) r.terms_.push_back(Term{s, terms_[i].mono});
      ++i, ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const { return scaled(ring_->field().from_int(-1)); }

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial r(ring_);
  if (Field::is_zero(c)) return r;
  const Field& f = ring_->field();
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{f.mul(t.coeff, c), t.mono});
  return r;
}

Polynomial Polynomial::times(const Monomial& m, const Scalar& c) const {
  Polynomial r(ring_);
  if (Field::is_zero(c)) return r;
  const Field& f = ring_->field();
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{f.mul(t.coeff, c), t.mono * m});
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same(ring_, o.ring_);
  std::vector<Term> all;
  all.reserve(terms_.size() * o.terms_.size());
  const Field& f = ring_->field();
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) all.push_back(Term{f.mul(a.coeff, b.coeff), a.mono * b.mono});
  return Polynomial(ring_, std::move(all));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = constant(ring_, Scalar(1));
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= ring_->num_vars()) throw DimensionError("variable index out of range");
  std::vector<Term> out;
  const Field& f = ring_->field();
  for (const auto& t : terms_) {
    int e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back(Term{f.mul(t.coeff, f.from_int(e)), m});
  }
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_->field().inv(leading().coeff));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!same_ring(ring_, o.ring_) || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

namespace {

std::string monomial_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < m.num_vars(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Term& t = terms_[k];
    bool negative = sgn(t.coeff) < 0;
    Scalar mag = negative ? Scalar(-t.coeff) : t.coeff;
    std::string body;
    if (t.mono.is_one()) {
      body = mag.get_str();
    } else if (mag == 1) {
      body = monomial_string(t.mono, ring_->names());
    } else {
      body = mag.get_str() + "*" + monomial_string(t.mono, ring_->names());
    }
    if (k == 0)
      out += (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

Polynomial poly_mul(const Polynomial& f, const Polynomial& g) { return f * g; }

Polynomial map_variables(const Polynomial& f, const RingPtr& target, std::span<const int> index_map) {
  if (index_map.size() != f.ring()->num_vars()) throw DimensionError("variable map has wrong length");
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    Monomial m(target->num_vars());
    bool vanished = false;
    for (std::size_t i = 0; i < index_map.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (index_map[i] < 0) {
        vanished = true;
        break;
      }
      m.set(static_cast<std::size_t>(index_map[i]), m[static_cast<std::size_t>(index_map[i])] + t.mono[i]);
    }
    if (!vanished) out.push_back(Term{t.coeff, m});
  }
  return Polynomial(target, std::move(out));
}

// ---------------------------------------------------------------- modules

FreeModuleElement::FreeModuleElement(GradedFreeModule ambient) : ambient_(std::move(ambient)) {
  components_.assign(ambient_.rank(), Polynomial(ambient_.ring()));
}

FreeModuleElement::FreeModuleElement(GradedFreeModule ambient, std::vector<Polynomial> components)
    : ambient_(std::move(ambient)), components_(std::move(components)) {
  if (components_.size() != ambient_.rank()) throw DimensionError("component count differs from rank");
  for (const auto& c : components_) require_same(c.ring(), ambient_.ring());
}

FreeModuleElement FreeModuleElement::basis(GradedFreeModule ambient, std::size_t i) {
  if (i >= ambient.rank()) throw DimensionError("basis index out of range");
  FreeModuleElement v(std::move(ambient));
  v.components_[i] = Polynomial::constant(v.ring(), Scalar(1));
  return v;
}

FreeModuleElement FreeModuleElement::from_poly(const Polynomial& f, int shift) {
  return FreeModuleElement(GradedFreeModule::rank_one(f.ring(), shift), {f});
}

bool FreeModuleElement::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool FreeModuleElement::is_homogeneous() const {
  std::optional<int> d;
  for (std::size_t j = 0; j < components_.size(); ++j) {
    const auto& c = components_[j];
    if (c.is_zero()) continue;
    if (!c.is_homogeneous()) return false;
    int dj = c.leading().mono.degree() + ambient_.shift(j);
    if (d && *d != dj) return false;
    d = dj;
  }
  return true;
}

FreeModuleElement FreeModuleElement::operator+(const FreeModuleElement& o) const {
  if (!(ambient_ == o.ambient_)) throw RingMismatch("elements of different free modules");
  FreeModuleElement r = *this;
  for (std::size_t j = 0; j < components_.size(); ++j) r.components_[j] = components_[j] + o.components_[j];
  return r;
}

FreeModuleElement FreeModuleElement::operator-(const FreeModuleElement& o) const {
  if (!(ambient_ == o.ambient_)) throw RingMismatch("elements of different free modules");
  FreeModuleElement r = *this;
  for (std::size_t j = 0; j < components_.size(); ++j) r.components_[j] = components_[j] - o.components_[j];
  return r;
}

FreeModuleElement FreeModuleElement::operator*(const Polynomial& f) const {
  FreeModuleElement r = *this;
  for (auto& c : r.components_) c = c * f;
  return r;
}

bool FreeModuleElement::operator==(const FreeModuleElement& o) const {
  return ambient_ == o.ambient_ && components_ == o.components_;
}

std::string FreeModuleElement::to_string() const {
  if (rank() == 1) return components_[0].to_string();
  std::string s = "[";
  for (std::size_t j = 0; j < components_.size(); ++j) s += (j ? ", " : "") + components_[j].to_string();
  return s + "]";
}

std::optional<int> element_degree(const FreeModuleElement& v) {
  if (v.is_zero()) throw PreconditionError("degree of the zero element is undefined");
  if (!v.is_homogeneous()) return std::nullopt;
  for (std::size_t j = 0; j < v.rank(); ++j)
    if (!v[j].is_zero()) return v[j].leading().mono.degree() + v.ambient().shift(j);
  return std::nullopt;
}

// ---------------------------------------------------------------- orders

ModuleOrder::Ptr ModuleOrder::term_over_position(std::vector<int> shifts, bool eliminate_last) {
  std::size_t r = shifts.size();
  return Ptr(new ModuleOrder(Top{std::move(shifts), eliminate_last}, r));
}

ModuleOrder::Ptr ModuleOrder::schreyer(Ptr base, std::vector<Monomial> lead_monos, std::vector<int> lead_comps) {
  if (lead_monos.size() != lead_comps.size()) throw DimensionError("Schreyer data length mismatch");
  std::vector<int> degrees;
  degrees.reserve(lead_monos.size());
  for (std::size_t i = 0; i < lead_monos.size(); ++i) degrees.push_back(base->degree(lead_monos[i], lead_comps[i]));
  std::size_t r = lead_monos.size();
  return Ptr(new ModuleOrder(Schreyer{std::move(base), std::move(lead_monos), std::move(lead_comps), std::move(degrees)}, r));
}

ModuleOrder::Ptr ModuleOrder::block(Ptr upper, Ptr lower) {
  std::size_t r = upper->rank() + lower->rank();
  return Ptr(new ModuleOrder(Block{std::move(upper), std::move(lower)}, r));
}

bool ModuleOrder::eliminates_last() const {
  if (auto* t = std::get_if<Top>(&kind_)) return t->eliminate_last;
  return false;
}

int ModuleOrder::degree(const Monomial& m, int c) const {
  return std::visit(
      [&](const auto& k) -> int {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Top>) {
          int d = m.degree() + k.shifts[static_cast<std::size_t>(c)];
          if (k.eliminate_last) d -= m[m.num_vars() - 1];
          return d;
        } else if constexpr (std::is_same_v<K, Schreyer>) {
          return m.degree() + k.degrees[static_cast<std::size_t>(c)];
        } else {
          int upper_rank = static_cast<int>(k.upper->rank());
          return c < upper_rank ? k.upper->degree(m, c) : k.lower->degree(m, c - upper_rank);
        }
      },
      kind_);
}

int ModuleOrder::compare(const Monomial& a, int ca, const Monomial& b, int cb) const {
  return std::visit(
      [&](const auto& k) -> int {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Top>) {
          if (k.eliminate_last) {
            std::size_t t = a.num_vars() - 1;
            if (a[t] != b[t]) return a[t] > b[t] ? 1 : -1;
          }
          int da = a.degree() + k.shifts[static_cast<std::size_t>(ca)];
          int db = b.degree() + k.shifts[static_cast<std::size_t>(cb)];
          if (da != db) return da > db ? 1 : -1;
          for (std::size_t i = a.num_vars(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
          if (ca != cb) return ca < cb ? 1 : -1;
          return 0;
        } else if constexpr (std::is_same_v<K, Schreyer>) {
          auto ia = static_cast<std::size_t>(ca), ib = static_cast<std::size_t>(cb);
          int c = k.base->compare(a * k.monos[ia], k.comps[ia], b * k.monos[ib], k.comps[ib]);
          if (c != 0) return c;
          if (ca != cb) return ca < cb ? 1 : -1;
          return 0;
        } else {
          int upper_rank = static_cast<int>(k.upper->rank());
          bool ua = ca < upper_rank, ub = cb < upper_rank;
          if (ua && ub) return k.upper->compare(a, ca, b, cb);
          if (!ua && !ub) return k.lower->compare(a, ca - upper_rank, b, cb - upper_rank);
          return ua ? 1 : -1;
        }
      },
      kind_);
}

}  // namespace cmreg
