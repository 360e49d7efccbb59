#include "ksumlab/search_kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>

namespace ksumlab::kernels {

namespace {

// Calls visit(sum) for every index-distinct k-subset, lexicographic order.
template <class Visit>
void for_each_ksum(std::span<const std::int64_t> a, unsigned k, Visit&& visit) {
  const unsigned n = static_cast<unsigned>(a.size());
  std::array<unsigned, 64> idx{};
  std::array<std::int64_t, 65> partial{};
  std::iota(idx.begin(), idx.begin() + k, 0u);
  for (unsigned t = 0; t < k; ++t) partial[t + 1] = partial[t] + a[idx[t]];
  while (true) {
    visit(partial[k]);
    int t = static_cast<int>(k) - 1;
    while (t >= 0 && idx[t] == n - k + static_cast<unsigned>(t)) --t;
    if (t < 0) return;
    ++idx[t];
    for (unsigned u = static_cast<unsigned>(t) + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
    for (unsigned u = static_cast<unsigned>(t); u < k; ++u) partial[u + 1] = partial[u] + a[idx[u]];
  }
}

}  // namespace

unsigned resolve_workers(unsigned workers) {
  return workers == 0 ? static_cast<unsigned>(omp_get_max_threads()) : workers;
}

SumKey ksum_key(std::span<const std::int64_t> a, unsigned k) {
  SumKey sums;
  for_each_ksum(a, k, [&](std::int64_t s) { sums.push_back(s); });
  std::sort(sums.begin(), sums.end());
  return sums;
}

PreKey ksum_prekey(std::span<const std::int64_t> a, unsigned k) {
  PreKey key;
  for_each_ksum(a, k, [&](std::int64_t s) {
    const auto u = static_cast<std::uint64_t>(s);
    std::uint64_t power = u;
    for (auto& moment : key.moments) {
      moment += power;
      power *= u;
    }
  });
  return key;
}

std::vector<PreKey> prekeys_serial(std::span<const IntMultiset> candidates, unsigned k) {
  std::vector<PreKey> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = ksum_prekey(candidates[i], k);
  return out;
}

std::vector<PreKey> prekeys_parallel(std::span<const IntMultiset> candidates, unsigned k, unsigned workers) {
  std::vector<PreKey> out(candidates.size());
  const auto count = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
  for (std::int64_t i = 0; i < count; ++i) out[i] = ksum_prekey(candidates[i], k);
  return out;
}

std::vector<SumKey> keys_serial(std::span<const IntMultiset> candidates, unsigned k) {
  std::vector<SumKey> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = ksum_key(candidates[i], k);
  return out;
}

std::vector<SumKey> keys_parallel(std::span<const IntMultiset> candidates, unsigned k, unsigned workers) {
  std::vector<SumKey> out(candidates.size());
  const auto count = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
  for (std::int64_t i = 0; i < count; ++i) out[i] = ksum_key(candidates[i], k);
  return out;
}

}  // namespace ksumlab::kernels
