#pragma once

#include <map>
#include <span>
#include <vector>

#include "ksumlab/multiset.hpp"
#include "ksumlab/polynomial.hpp"
#include "ksumlab/rational.hpp"

namespace ksumlab {

// Exponent pattern (p_1, ..., p_j) of a monomial power sum
//   S_{p_1..p_j} = sum over ordered j-tuples of distinct indices of prod a_{i_t}^{p_t}.
// Zero parts are dropped on construction; the given order is kept until
// canonical() sorts it descending.
class Composition {
 public:
  explicit Composition(std::vector<unsigned> parts);

  std::span<const unsigned> parts() const { return parts_; }
  unsigned length() const { return static_cast<unsigned>(parts_.size()); }
  unsigned weight() const;
  Composition canonical() const;

  friend auto operator<=>(const Composition&, const Composition&) = default;

 private:
  std::vector<unsigned> parts_;
};

// Partition of m written as part-size -> multiplicity.
class Partition {
 public:
  explicit Partition(std::span<const unsigned> parts);

  const std::map<unsigned, unsigned>& multiplicities() const { return multiplicities_; }
  unsigned weight() const { return weight_; }
  unsigned length() const { return length_; }
  // prod_i i^{p_i} * p_i!, the size of the centralizer of the cycle type.
  Integer centralizer_order() const;

 private:
  std::map<unsigned, unsigned> multiplicities_;
  unsigned weight_ = 0;
  unsigned length_ = 0;
};

// Partitions of m as descending part lists, parts in [min_part, max_part],
// at most max_length parts. Ordered lexicographically decreasing.
std::vector<std::vector<unsigned>> partitions_of(unsigned m, unsigned max_part,
                                                 unsigned max_length = ~0u,
                                                 unsigned min_part = 1);

// Direct evaluation over all ordered j-tuples of distinct indices.
// Throws TooManyParts when j > n.
Rational monomial_power_sum_direct(const NumberMultiset& a, const Composition& c);

// S_{p_1..p_j} as a polynomial in the single-index power sums S_1, S_2, ...,
// by repeated application of
//   S_{p_1..p_j} = S_{p_1..p_{j-1}} S_{p_j} - sum_t S_{.., p_t + p_j, ..}.
Polynomial reduce_monomial(const Composition& c);

// S_m (m > n) as a polynomial in S_1..S_n valid for every n-element multiset.
// Throws BadRange when m <= n or n == 0.
Polynomial macmahon_reduce(unsigned m, unsigned n);

// S_m in the basis S_1..S_n: the variable itself for m <= n, otherwise the
// MacMahon reduction; with set_s1_zero every S_1 is replaced by 0.
Polynomial power_sum_in_basis(unsigned m, unsigned n, bool set_s1_zero);

// E_p, the p-th power sum of the k-sum multiset, as a polynomial in power
// sums of an n-element multiset. The unreduced form may mention S_m with
// m > n; the reduced form only S_1..S_n.
Polynomial e_expansion_unreduced(unsigned p, unsigned k, unsigned n, bool set_s1_zero);
Polynomial e_expansion(unsigned p, unsigned k, unsigned n, bool set_s1_zero);

// Replaces every S_m with m > n by power_sum_in_basis(m, n, set_s1_zero).
Polynomial reduce_high_power_sums(const Polynomial& p, unsigned n, bool set_s1_zero);

// E_1..E_pmax computed from the k-sum multiset itself.
PowerSumVector e_power_sums(const NumberMultiset& a, unsigned k, unsigned pmax);

}  // namespace ksumlab
