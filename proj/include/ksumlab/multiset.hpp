#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ksumlab/polynomial.hpp"
#include "ksumlab/rational.hpp"

namespace ksumlab {

// A multiset of n >= 1 exact numbers, kept sorted ascending.
class NumberMultiset {
 public:
  NumberMultiset() = default;
  explicit NumberMultiset(std::vector<Rational> elements);
  static NumberMultiset of(std::initializer_list<long> values);
  static NumberMultiset of(std::span<const std::int64_t> values);

  std::span<const Rational> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const Rational& operator[](std::size_t i) const { return elements_[i]; }

  friend bool operator==(const NumberMultiset&, const NumberMultiset&) = default;
  friend bool operator<(const NumberMultiset& a, const NumberMultiset& b) {
    return a.elements_ < b.elements_;
  }

 private:
  std::vector<Rational> elements_;
};

// The multiset A^(k) of all C(n, k) sums over index-distinct k-subsets.
struct SumMultiset {
  std::vector<Rational> sums;  // sorted ascending
  unsigned source_n = 0;
  unsigned source_k = 0;

  friend bool operator==(const SumMultiset&, const SumMultiset&) = default;
};

// S_1..S_m of one multiset (or E_1..E_m of a sum multiset).
class PowerSumVector {
 public:
  PowerSumVector() = default;
  explicit PowerSumVector(std::vector<Rational> values) : values_(std::move(values)) {}

  // 1-based: at(p) is the p-th power sum.
  const Rational& at(unsigned p) const;
  unsigned max_power() const { return static_cast<unsigned>(values_.size()); }
  std::span<const Rational> values() const { return values_; }

  // Binds family_p -> value for p = 1..m, e.g. {S1: .., S2: ..}.
  Valuation as_valuation(Family family) const;

  friend bool operator==(const PowerSumVector&, const PowerSumVector&) = default;

 private:
  std::vector<Rational> values_;
};

SumMultiset ksums(const NumberMultiset& a, unsigned k);
bool multiset_equal(const SumMultiset& x, const SumMultiset& y);

Rational power_sum(const NumberMultiset& a, unsigned p);
PowerSumVector power_sum_vector(const NumberMultiset& a, unsigned m);

std::uint64_t binomial(unsigned n, unsigned k);

enum class Reflection { keep, canonicalize };

struct AffineNormalization {
  NumberMultiset set;  // equals sort((a + shift) * scale)
  Rational shift;
  Rational scale;  // negative when the reflection rule negated the set
};

// Canonical representative of the affine orbit of `a`: shift so S_1 = 0, then
// the positive scale making the entries coprime integers. With
// Reflection::canonicalize the result is also negated when its negation sorts
// lexicographically smaller.
AffineNormalization normalize_affine(const NumberMultiset& a,
                                     Reflection rule = Reflection::canonicalize);

NumberMultiset shifted(const NumberMultiset& a, const Rational& shift);
NumberMultiset scaled(const NumberMultiset& a, const Rational& factor);

// Set literal: elements as integers or "p/q" separated by whitespace or commas,
// optional "x^m" multiplicity, optional surrounding braces.
NumberMultiset parse_multiset(std::string_view text);
// One set per non-empty line; '#' starts a comment.
std::vector<NumberMultiset> read_multisets(std::istream& in);

// "-1^120 0^255 1^120": runs of equal values use the "x^m" form when m >= 2.
std::string format_run_length(std::span<const Rational> sorted_values);
std::string to_string(const NumberMultiset& a);

}  // namespace ksumlab
