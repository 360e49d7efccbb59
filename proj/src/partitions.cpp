#include <algorithm>
#include <functional>
#include <numeric>

#include "ksumlab/symfunc.hpp"

namespace ksumlab {

Composition::Composition(std::vector<unsigned> parts) {
  parts_.reserve(parts.size());
  for (unsigned p : parts)
    if (p != 0) parts_.push_back(p);
}

unsigned Composition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0u); }

Composition Composition::canonical() const {
  std::vector<unsigned> sorted = parts_;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return Composition(std::move(sorted));
}

Partition::Partition(std::span<const unsigned> parts) {
  for (unsigned p : parts) {
    if (p == 0) continue;
    ++multiplicities_[p];
    weight_ += p;
    ++length_;
  }
}

Integer Partition::centralizer_order() const {
  Integer z = 1;
  for (const auto& [part, count] : multiplicities_) {
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), part, count);
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), count);
    z *= power * fact;
  }
  return z;
}

namespace {

void extend_partitions(unsigned remaining, unsigned max_part, unsigned max_length, unsigned min_part,
                       std::vector<unsigned>& current, std::vector<std::vector<unsigned>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  if (current.size() >= max_length) return;
  for (unsigned part = std::min(max_part, remaining); part >= min_part && part > 0; --part) {
    current.push_back(part);
    extend_partitions(remaining - part, part, max_length, min_part, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<unsigned>> partitions_of(unsigned m, unsigned max_part, unsigned max_length,
                                                 unsigned min_part) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> current;
  extend_partitions(m, max_part, max_length, std::max(min_part, 1u), current, out);
  return out;
}

}  // namespace ksumlab
