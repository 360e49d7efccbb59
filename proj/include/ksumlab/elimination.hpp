#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ksumlab/multiset.hpp"
#include "ksumlab/polynomial.hpp"

// Elimination for 4-sums of 12-element multisets, normalized to S1 = 0.
//
// The i-th equation is E_i = e_expansion(i, 4, 12, S1 = 0). Equations 2..5
// give S_2..S_5 in terms of E; equations 7..12 are linear in their pivot S_p
// and give S_7..S_12 as polynomials in S_6 and E. Equation 6 does not involve
// S_6, which is what leaves S_6 undetermined.
namespace ksumlab {

inline constexpr unsigned kEliminationN = 12;
inline constexpr unsigned kEliminationK = 4;

struct EliminationTables {
  std::map<unsigned, Polynomial> low;   // p = 2..5: S_p in E-variables
  std::map<unsigned, Polynomial> high;  // p = 7..12: S_p in S6 and E-variables
  bool assumes_s1_zero = true;

  // S1 -> 0 plus every table entry.
  Bindings as_bindings() const;
};

// Throws NonLinearPivot if some equation is not linear in its pivot with a
// constant coefficient.
EliminationTables build_elimination_tables();
// Built once, then shared.
const EliminationTables& elimination_tables();

// Right-hand side of the i-th equation after eliminating S_2..S_5, S_7..S_12;
// a polynomial in S6 and E-variables.
Polynomial eliminated_equation(unsigned i);

struct QuadraticCoefficients {
  Rational a, b, c;  // a*S6^2 + b*S6 + c = 0
};

// E_14 = c2*S6^2 + c1*S6 + c0, with c0..c2 polynomials in E.
struct QuadraticInS6 {
  Polynomial c2, c1, c0;

  // Coefficients of c2*S6^2 + c1*S6 + c0 - E14 = 0 at the given E-values.
  QuadraticCoefficients at(const Valuation& e_values) const;
};

QuadraticInS6 fourteenth_quadratic();

// E_13 = d1*S6 + d0.
struct LinearInS6 {
  Polynomial d1, d0;
};

LinearInS6 thirteenth_linear();

// Both roots when they are rational (sorted ascending; equal for a double
// root). A vanishing leading coefficient yields the single linear root twice.
std::optional<std::pair<Rational, Rational>> rational_roots(const QuadraticCoefficients& q);

// S6'' = numerator / S2, numerator a polynomial in S2..S8.
struct SecondRootFormula {
  Polynomial numerator;

  // Throws DivisionByZero when S2 = 0.
  Rational evaluate(const PowerSumVector& s) const;
};

// Vieta on fourteenth_quadratic() with every E_p written in S-variables:
// S6'' = -c1/c2 - S6.
SecondRootFormula derived_second_root();
SecondRootFormula closed_form_second_root();

// S7 forced by the vanishing S6-coefficient of equation 13, in S2..S5.
Polynomial derived_s7_condition();
Polynomial closed_form_s7_condition();

// Closed-form S6'' for power sums s (S1 = 0, S2 != 0, entries up to S8).
Rational second_root(const PowerSumVector& s);

// Closed-form S7 predicted by the equation-13 condition (entries up to S5).
Rational s7_linear_condition(const PowerSumVector& s);

// E_1..E_pmax obtained by evaluating the identities at s (S1 = 0, up to S12).
Valuation e_values_from_power_sums(const PowerSumVector& s, unsigned pmax);

// Power sums S1..S12 of the would-be partner set: same S2..S5, S6 = S6'',
// S7..S12 from the high table.
PowerSumVector companion_power_sums(const PowerSumVector& s);

struct Residual {
  unsigned equation = 0;
  Rational value;
};

// Residuals E_i - RHS_i(companion) for i = 13 and i = 15..pmax. All zero iff
// the companion satisfies every checked equation.
std::vector<Residual> residual_relations(const PowerSumVector& s, unsigned pmax = 26);

}  // namespace ksumlab
