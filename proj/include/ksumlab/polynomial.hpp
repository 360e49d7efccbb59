#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ksumlab/rational.hpp"

namespace ksumlab {

// S_p are power sums of the base multiset, E_p power sums of its k-sum multiset.
enum class Family : std::uint8_t { S = 0, E = 1 };

struct VarId {
  Family family = Family::S;
  std::uint32_t index = 1;

  // S before E, then by index.
  friend constexpr auto operator<=>(const VarId&, const VarId&) = default;
};

constexpr VarId S(std::uint32_t index) { return {Family::S, index}; }
constexpr VarId E(std::uint32_t index) { return {Family::E, index}; }

std::string to_string(VarId var);

// Product of variables with positive exponents, stored sorted by VarId.
class Monomial {
 public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  // Sorts, merges repeated variables and drops zero exponents.
  explicit Monomial(std::vector<Factor> factors);
  static Monomial of(VarId var, std::uint32_t exponent = 1);

  std::span<const Factor> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree() const;
  std::uint32_t exponent(VarId var) const;
  // Same monomial with `var` removed entirely.
  Monomial without(VarId var) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Graded lexicographic: total degree first, then exponents compared in
  // VarId order, a larger exponent on an earlier variable ranking higher.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> factors_;
};

std::string to_string(const Monomial& m);

// Sparse multivariate polynomial with exact rational coefficients. Zero
// coefficients are never stored, so equal polynomials have equal term maps.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT
  static Polynomial variable(VarId var);
  static Polynomial term(const Monomial& m, const Rational& coefficient);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;
  unsigned degree() const;
  unsigned degree_in(VarId var) const;
  std::set<VarId> variables() const;
  bool is_constant() const;

  // Index d holds the coefficient polynomial of var^d.
  std::vector<Polynomial> coefficients_in(VarId var) const;

  void add_term(const Monomial& m, const Rational& coefficient);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);
  Polynomial& operator/=(const Rational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const Rational& s) { return a /= s; }
  friend Polynomial operator-(Polynomial a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  Terms terms_;
};

using Bindings = std::map<VarId, Polynomial>;
using Valuation = std::map<VarId, Rational>;

Polynomial poly_add(const Polynomial& p, const Polynomial& q);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& base, unsigned exponent);

// Replaces each bound variable by its polynomial and re-expands; unbound
// variables pass through untouched.
Polynomial poly_substitute(const Polynomial& p, const Bindings& bindings);

// Throws UnboundVariable when some variable of p has no value.
Rational poly_eval(const Polynomial& p, const Valuation& values);

// Canonical rendering: terms in descending monomial order, e.g.
// "90*S2^3 - 120*S2*S4 + 40*S3^2", "1/120*E2", "0".
std::string to_string(const Polynomial& p);

// A term list exactly as written (order kept, explicit zero coefficients kept).
using TermList = std::vector<std::pair<Monomial, Rational>>;

// Parses the rendering produced by to_string, plus the looser forms
// "0*S6", "-48 * S4", "S3^2*E2". Throws ParseError.
TermList parse_terms(std::string_view text);
Polynomial parse_polynomial(std::string_view text);

}  // namespace ksumlab
