#include "ksumlab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "ksumlab/errors.hpp"

namespace ksumlab {

std::string to_string(VarId var) {
  return (var.family == Family::S ? "S" : "E") + std::to_string(var.index);
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  for (const auto& [var, exp] : factors) {
    if (exp == 0) continue;
    if (!factors_.empty() && factors_.back().first == var)
      factors_.back().second += exp;
    else
      factors_.emplace_back(var, exp);
  }
}

Monomial Monomial::of(VarId var, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(var, exponent);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::exponent(VarId var) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), var,
                             [](const Factor& f, VarId v) { return f.first < v; });
  return (it != factors_.end() && it->first == var) ? it->second : 0;
}

Monomial Monomial::without(VarId var) const {
  Monomial m;
  m.factors_.reserve(factors_.size());
  for (const auto& f : factors_)
    if (f.first != var) m.factors_.push_back(f);
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->first < j->first) {
      out.factors_.push_back(*i++);
    } else if (j->first < i->first) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.factors_.insert(out.factors_.end(), i, a.factors_.end());
  out.factors_.insert(out.factors_.end(), j, b.factors_.end());
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  for (; i != a.factors_.end() && j != b.factors_.end(); ++i, ++j) {
    if (i->first != j->first)
      // The side holding the earlier variable has a positive exponent where
      // the other has zero.
      return i->first < j->first ? std::strong_ordering::greater
                                 : std::strong_ordering::less;
    if (auto c = i->second <=> j->second; c != 0) return c;
  }
  // Equal degree and equal common prefix means both are exhausted.
  return std::strong_ordering::equal;
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (const auto& [var, exp] : m.factors()) {
    if (!out.empty()) out += '*';
    out += to_string(var);
    if (exp > 1) out += '^' + std::to_string(exp);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Rational& constant) {
  if (sgn(constant) != 0) terms_.emplace(Monomial{}, constant);
}

Polynomial Polynomial::variable(VarId var) { return term(Monomial::of(var), 1); }

Polynomial Polynomial::term(const Monomial& m, const Rational& coefficient) {
  Polynomial p;
  p.add_term(m, coefficient);
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

unsigned Polynomial::degree_in(VarId var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m.exponent(var));
  return d;
}

std::set<VarId> Polynomial::variables() const {
  std::set<VarId> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) vars.insert(f.first);
  return vars;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::vector<Polynomial> Polynomial::coefficients_in(VarId var) const {
  std::vector<Polynomial> out(degree_in(var) + 1);
  for (const auto& [m, c] : terms_) out[m.exponent(var)].add_term(m.without(var), c);
  return out;
}

void Polynomial::add_term(const Monomial& m, const Rational& coefficient) {
  if (sgn(coefficient) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (sgn(scalar) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

Polynomial& Polynomial::operator/=(const Rational& scalar) {
  if (sgn(scalar) == 0) throw DivisionByZero("polynomial divided by zero");
  for (auto& [m, c] : terms_) c /= scalar;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  Rational product;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      product = ca * cb;
      out.add_term(ma * mb, product);
    }
  }
  return out;
}

Polynomial operator-(Polynomial a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

Polynomial poly_add(const Polynomial& p, const Polynomial& q) { return p + q; }

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial pow(const Polynomial& base, unsigned exponent) {
  Polynomial result(1);
  Polynomial square = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= square;
    exponent >>= 1;
    if (exponent > 0) square = square * square;
  }
  return result;
}

Polynomial poly_substitute(const Polynomial& p, const Bindings& bindings) {
  if (bindings.empty()) return p;
  std::map<std::pair<VarId, std::uint32_t>, Polynomial> powers;
  auto power_of = [&](VarId var, std::uint32_t exp, const Polynomial& value) -> const Polynomial& {
    auto [it, inserted] = powers.try_emplace({var, exp});
    if (inserted) it->second = pow(value, exp);
    return it->second;
  };

  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Factor> kept;
    std::vector<const Polynomial*> replaced;
    for (const auto& [var, exp] : m.factors()) {
      auto b = bindings.find(var);
      if (b == bindings.end())
        kept.emplace_back(var, exp);
      else
        replaced.push_back(&power_of(var, exp, b->second));
    }
    Polynomial piece = Polynomial::term(Monomial(std::move(kept)), c);
    for (const Polynomial* r : replaced) {
      piece = piece * *r;
      if (piece.is_zero()) break;
    }
    out += piece;
  }
  return out;
}

Rational poly_eval(const Polynomial& p, const Valuation& values) {
  std::map<std::pair<VarId, std::uint32_t>, Rational> powers;
  Rational total = 0;
  Rational term;
  for (const auto& [m, c] : p.terms()) {
    term = c;
    for (const auto& [var, exp] : m.factors()) {
      auto [it, inserted] = powers.try_emplace({var, exp});
      if (inserted) {
        auto v = values.find(var);
        if (v == values.end()) throw UnboundVariable("no value bound for " + to_string(var));
        it->second = pow(v->second, exp);
      }
      term *= it->second;
    }
    total += term;
  }
  return total;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = sgn(c) < 0;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    const Rational magnitude = abs(c);
    if (m.is_one()) {
      out += to_string(magnitude);
    } else {
      if (magnitude != 1) out += to_string(magnitude) + "*";
      out += to_string(m);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  TermList parse() {
    TermList terms;
    skip_space();
    if (at_end()) throw ParseError("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = take() == '-' ? -1 : 1;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      terms.push_back(parse_term(sign));
      skip_space();
    }
    return terms;
  }

 private:
  std::pair<Monomial, Rational> parse_term(int sign) {
    Rational coefficient = 1;
    std::vector<Monomial::Factor> factors;
    bool have_number = false;
    bool expect_factor = true;
    while (expect_factor) {
      skip_space();
      if (at_end()) fail("dangling term");
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        if (have_number) fail("two coefficients in one term");
        coefficient = parse_number();
        have_number = true;
      } else if (peek() == 'S' || peek() == 'E') {
        factors.push_back(parse_factor());
      } else {
        fail("expected a coefficient or a variable");
      }
      skip_space();
      expect_factor = !at_end() && peek() == '*';
      if (expect_factor) take();
    }
    if (sign < 0) coefficient = -coefficient;
    return {Monomial(std::move(factors)), coefficient};
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) take();
    if (!at_end() && peek() == '/') {
      take();
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("bad fraction");
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) take();
    }
    return parse_rational(text_.substr(start, pos_ - start));
  }

  std::uint32_t parse_unsigned() {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::uint64_t>(take() - '0');
      if (value > 1'000'000) fail("index or exponent too large");
    }
    return static_cast<std::uint32_t>(value);
  }

  Monomial::Factor parse_factor() {
    const Family family = take() == 'S' ? Family::S : Family::E;
    if (!at_end() && peek() == '_') take();
    const std::uint32_t index = parse_unsigned();
    if (index == 0) fail("variable index must be positive");
    std::uint32_t exponent = 1;
    skip_space();
    if (!at_end() && peek() == '^') {
      take();
      skip_space();
      exponent = parse_unsigned();
    }
    return {VarId{family, index}, exponent};
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char take() { return text_[pos_++]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

TermList parse_terms(std::string_view text) { return TermParser(text).parse(); }

Polynomial parse_polynomial(std::string_view text) {
  Polynomial p;
  for (const auto& [m, c] : parse_terms(text)) p.add_term(m, c);
  return p;
}

}  // namespace ksumlab
