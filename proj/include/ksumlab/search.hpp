#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ksumlab/multiset.hpp"
#include "ksumlab/search_kernels.hpp"

namespace ksumlab {

struct SearchSpec {
  unsigned n = 0;
  unsigned k = 0;
  unsigned bound = 0;  // candidate values are drawn from 0..bound
  bool symmetric_only = false;
  bool dedupe_affine = true;

  // Throws BadK / BadRange.
  void validate() const;
};

// Two distinct multisets with identical k-sum multisets.
struct CollisionRecord {
  NumberMultiset first;
  NumberMultiset second;
  unsigned k = 0;
  SumMultiset canonical_sums;

  friend bool operator==(const CollisionRecord&, const CollisionRecord&) = default;
};

// Symmetric mode: every multiset of n/2 values from 0..bound expanded to
// {-x, x} pairs (0 gives {0, 0}), in lexicographic order of the value tuples.
// General mode: every nondecreasing n-tuple over 0..bound mapped to
// n*a - S1(a) (sum zero, integer), deduplicated and sorted.
std::vector<kernels::IntMultiset> enumerate_candidate_ints(const SearchSpec& spec);
std::vector<NumberMultiset> enumerate_candidates(const SearchSpec& spec);

struct SearchOptions {
  unsigned workers = 0;  // 0 -> OpenMP default
  // When non-empty, completed chunks are appended here and skipped on rerun.
  std::filesystem::path checkpoint;
  std::size_t buckets_per_chunk = 64;
};

// Parallel search. Candidates are bucketed by a cheap k-sum prekey, buckets
// holding two or more candidates are split into fixed chunks, and each chunk
// is resolved by exact sorted-sum comparison. Output is sorted, so it does not
// depend on the worker count or on resuming.
std::vector<CollisionRecord> find_collisions(const SearchSpec& spec, const SearchOptions& options = {});

// Reference implementation: exact key for every candidate, grouped in a map.
std::vector<CollisionRecord> find_collisions_serial(const SearchSpec& spec);

// Collapses records related by one shift/scale (sign included) applied to
// both members; keeps the normalized representative. Output sorted.
std::vector<CollisionRecord> dedupe_affine(std::vector<CollisionRecord> records);

// Distinct members, equal recomputed k-sums matching canonical_sums, and for
// (n, k) = (12, 4) with S2 != 0 vanishing residual relations for both members.
bool verify_record(const CollisionRecord& record);

// {"first": [...], "second": [...], "k": k}; non-integers as "p/q" strings.
std::string to_json_line(const CollisionRecord& record);

}  // namespace ksumlab
