#include "ksumlab/elimination.hpp"

#include <mutex>

#include "ksumlab/errors.hpp"
#include "ksumlab/symfunc.hpp"

namespace ksumlab {

namespace {

Polynomial equation_rhs(unsigned i) { return e_expansion(i, kEliminationK, kEliminationN, true); }

Rational q(const char* text) { return parse_rational(text); }

Polynomial monomial(std::initializer_list<Monomial::Factor> factors, const Rational& c) {
  return Polynomial::term(Monomial(std::vector<Monomial::Factor>(factors)), c);
}

// E_p -> E_p written in S-variables (S1 = 0).
Polynomial in_power_sums(const Polynomial& p) {
  Bindings bindings;
  for (VarId var : p.variables())
    if (var.family == Family::E) bindings.emplace(var, equation_rhs(var.index));
  return poly_substitute(p, bindings);
}

void require_s1_zero(const PowerSumVector& s, unsigned needed) {
  if (s.max_power() < needed)
    throw BadRange("need power sums up to S" + std::to_string(needed) + ", got " +
                   std::to_string(s.max_power()));
  if (sgn(s.at(1)) != 0) throw BadRange("power sums must be normalized to S1 = 0");
}

struct Cache {
  std::once_flag tables_once;
  EliminationTables tables;
  std::once_flag quadratic_once;
  QuadraticInS6 quadratic;
  std::once_flag linear_once;
  LinearInS6 linear;
};

Cache& cache() {
  static Cache c;
  return c;
}

}  // namespace

Bindings EliminationTables::as_bindings() const {
  Bindings b;
  b.emplace(S(1), Polynomial());
  for (const auto& [p, entry] : low) b.emplace(S(p), entry);
  for (const auto& [p, entry] : high) b.emplace(S(p), entry);
  return b;
}

EliminationTables build_elimination_tables() {
  EliminationTables tables;
  for (unsigned p : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 10u, 11u, 12u}) {
    const Polynomial eq = poly_substitute(equation_rhs(p), tables.as_bindings());
    const std::vector<Polynomial> by_pivot = eq.coefficients_in(S(p));
    if (by_pivot.size() != 2 || !by_pivot[1].is_constant() || by_pivot[1].is_zero())
      throw NonLinearPivot("equation " + std::to_string(p) + " is not linear in S" + std::to_string(p));
    for (VarId var : by_pivot[0].variables())
      if (var.family == Family::S && var.index != 6)
        throw NonLinearPivot("equation " + std::to_string(p) + " still mentions " + to_string(var));
    const Rational pivot = by_pivot[1].coefficient(Monomial{});
    Polynomial entry = (Polynomial::variable(E(p)) - by_pivot[0]) / pivot;
    (p < 6 ? tables.low : tables.high).emplace(p, std::move(entry));
  }
  return tables;
}

const EliminationTables& elimination_tables() {
  Cache& c = cache();
  std::call_once(c.tables_once, [&] { c.tables = build_elimination_tables(); });
  return c.tables;
}

Polynomial eliminated_equation(unsigned i) {
  return poly_substitute(equation_rhs(i), elimination_tables().as_bindings());
}

QuadraticCoefficients QuadraticInS6::at(const Valuation& e_values) const {
  auto e14 = e_values.find(E(14));
  if (e14 == e_values.end()) throw UnboundVariable("no value bound for E14");
  return {poly_eval(c2, e_values), poly_eval(c1, e_values), poly_eval(c0, e_values) - e14->second};
}

QuadraticInS6 fourteenth_quadratic() {
  Cache& c = cache();
  std::call_once(c.quadratic_once, [&] {
    const auto by_s6 = eliminated_equation(14).coefficients_in(S(6));
    if (by_s6.size() > 3) throw NonLinearPivot("equation 14 has degree > 2 in S6");
    c.quadratic.c0 = by_s6[0];
    if (by_s6.size() > 1) c.quadratic.c1 = by_s6[1];
    if (by_s6.size() > 2) c.quadratic.c2 = by_s6[2];
  });
  return c.quadratic;
}

LinearInS6 thirteenth_linear() {
  Cache& c = cache();
  std::call_once(c.linear_once, [&] {
    const auto by_s6 = eliminated_equation(13).coefficients_in(S(6));
    if (by_s6.size() > 2) throw NonLinearPivot("equation 13 has degree > 1 in S6");
    c.linear.d0 = by_s6[0];
    if (by_s6.size() > 1) c.linear.d1 = by_s6[1];
  });
  return c.linear;
}

std::optional<std::pair<Rational, Rational>> rational_roots(const QuadraticCoefficients& q) {
  if (sgn(q.a) == 0) {
    if (sgn(q.b) == 0) return std::nullopt;
    const Rational root = -q.c / q.b;
    return std::make_pair(root, root);
  }
  const Rational disc = q.b * q.b - 4 * q.a * q.c;
  if (sgn(disc) < 0) return std::nullopt;
  if (mpz_perfect_square_p(disc.get_num_mpz_t()) == 0 || mpz_perfect_square_p(disc.get_den_mpz_t()) == 0)
    return std::nullopt;
  Rational root_disc;
  mpz_sqrt(root_disc.get_num_mpz_t(), disc.get_num_mpz_t());
  mpz_sqrt(root_disc.get_den_mpz_t(), disc.get_den_mpz_t());
  Rational lo = (-q.b - root_disc) / (2 * q.a);
  Rational hi = (-q.b + root_disc) / (2 * q.a);
  if (hi < lo) std::swap(lo, hi);
  return std::make_pair(lo, hi);
}

Rational SecondRootFormula::evaluate(const PowerSumVector& s) const {
  if (s.max_power() < 2 || sgn(s.at(2)) == 0) throw DivisionByZero("second root needs S2 != 0");
  return poly_eval(numerator, s.as_valuation(Family::S)) / s.at(2);
}

SecondRootFormula derived_second_root() {
  const QuadraticInS6 quad = fourteenth_quadratic();
  const Polynomial c2 = in_power_sums(quad.c2);
  const Polynomial c1 = in_power_sums(quad.c1);
  const Rational kappa = c2.coefficient(Monomial::of(S(2)));
  if (sgn(kappa) == 0 || c2 != Polynomial::variable(S(2)) * kappa)
    throw NonLinearPivot("leading coefficient of equation 14 is not a multiple of S2");
  return {-(c1 + c2 * Polynomial::variable(S(6))) / kappa};
}

SecondRootFormula closed_form_second_root() {
  Polynomial n;
  n += monomial({{S(2), 4}}, -q("556877605/796368672"));
  n += monomial({{S(2), 1}, {S(3), 2}}, q("562115611087/46487926782"));
  n += monomial({{S(2), 2}, {S(4), 1}}, q("762093077/66364056"));
  n += monomial({{S(2), 1}, {S(6), 1}}, -q("1990577/47223"));
  n += monomial({{S(3), 1}, {S(5), 1}}, -q("4217456129563/116219816955"));
  n += monomial({{S(4), 2}}, -q("14623247/1301256"));
  n += monomial({{S(8), 1}}, q("2359787/31482"));
  return {n};
}

Polynomial derived_s7_condition() {
  const Polynomial d1 = in_power_sums(thirteenth_linear().d1);
  const auto by_s7 = d1.coefficients_in(S(7));
  if (by_s7.size() != 2 || !by_s7[1].is_constant() || by_s7[1].is_zero())
    throw NonLinearPivot("S6-coefficient of equation 13 is not linear in S7");
  return -by_s7[0] / by_s7[1].coefficient(Monomial{});
}

Polynomial closed_form_s7_condition() {
  Polynomial s7;
  s7 += monomial({{S(2), 2}, {S(3), 1}}, -q("1494661249487/4501080325368"));
  s7 += monomial({{S(2), 1}, {S(5), 1}}, q("217002961/417230286"));
  s7 += monomial({{S(3), 1}, {S(4), 1}}, q("3678199/2599908"));
  return s7;
}

Rational second_root(const PowerSumVector& s) {
  require_s1_zero(s, 8);
  return closed_form_second_root().evaluate(s);
}

Rational s7_linear_condition(const PowerSumVector& s) {
  require_s1_zero(s, 5);
  return poly_eval(closed_form_s7_condition(), s.as_valuation(Family::S));
}

Valuation e_values_from_power_sums(const PowerSumVector& s, unsigned pmax) {
  require_s1_zero(s, kEliminationN);
  const PowerSumVector basis(std::vector<Rational>(s.values().begin(), s.values().begin() + kEliminationN));
  const Valuation s_values = basis.as_valuation(Family::S);
  Valuation e_values;
  for (unsigned i = 1; i <= pmax; ++i) e_values.emplace(E(i), poly_eval(equation_rhs(i), s_values));
  return e_values;
}

PowerSumVector companion_power_sums(const PowerSumVector& s) {
  const EliminationTables& tables = elimination_tables();
  Valuation values = e_values_from_power_sums(s, kEliminationN);
  const Rational s6 = second_root(s);
  values.emplace(S(6), s6);

  std::vector<Rational> companion(kEliminationN);
  companion[0] = 0;
  companion[5] = s6;
  for (const auto& [p, entry] : tables.low) companion[p - 1] = poly_eval(entry, values);
  for (const auto& [p, entry] : tables.high) companion[p - 1] = poly_eval(entry, values);
  return PowerSumVector(std::move(companion));
}

std::vector<Residual> residual_relations(const PowerSumVector& s, unsigned pmax) {
  if (pmax < 13) throw BadRange("residual relations start at equation 13");
  const Valuation e_values = e_values_from_power_sums(s, pmax);
  const Valuation companion = companion_power_sums(s).as_valuation(Family::S);
  std::vector<Residual> residuals;
  for (unsigned i = 13; i <= pmax; ++i) {
    if (i == 14) continue;  // satisfied by construction of S6''
    residuals.push_back({i, e_values.at(E(i)) - poly_eval(equation_rhs(i), companion)});
  }
  return residuals;
}

}  // namespace ksumlab
