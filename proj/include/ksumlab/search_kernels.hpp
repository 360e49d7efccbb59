#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

// Integer kernels behind the collision search. Each parallel kernel has a
// serial twin with identical output; the tests and the benchmark compare them.
namespace ksumlab::kernels {

using IntMultiset = std::vector<std::int64_t>;
using SumKey = std::vector<std::int64_t>;

// Sorted k-sums of a.
SumKey ksum_key(std::span<const std::int64_t> a, unsigned k);

// Power sums 1..4 of the k-sums, modulo 2^64. Equal k-sum multisets give
// equal prekeys, so grouping by prekey never separates a collision.
struct PreKey {
  std::array<std::uint64_t, 4> moments{};
  friend auto operator<=>(const PreKey&, const PreKey&) = default;
};

PreKey ksum_prekey(std::span<const std::int64_t> a, unsigned k);

std::vector<PreKey> prekeys_serial(std::span<const IntMultiset> candidates, unsigned k);
std::vector<PreKey> prekeys_parallel(std::span<const IntMultiset> candidates, unsigned k, unsigned workers);

std::vector<SumKey> keys_serial(std::span<const IntMultiset> candidates, unsigned k);
std::vector<SumKey> keys_parallel(std::span<const IntMultiset> candidates, unsigned k, unsigned workers);

// 0 -> the OpenMP default.
unsigned resolve_workers(unsigned workers);

}  // namespace ksumlab::kernels
