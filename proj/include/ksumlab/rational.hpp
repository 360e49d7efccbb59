#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ksumlab {

using Integer = mpz_class;

// Exact rational scalar. gmpxx keeps every arithmetic result canonical
// (gcd(|num|, den) = 1, den > 0), so values compare by representation.
using Rational = mpq_class;

// Accepts "12", "-3", "7/2", "-22/6" (reduced on parse).
Rational parse_rational(std::string_view text);

// "num/den", with "/den" omitted when den = 1.
std::string to_string(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

bool is_integer(const Rational& value);

inline bool is_canonical(const Rational& value) {
  if (sgn(value.get_den()) <= 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return g == 1;
}

}  // namespace ksumlab
