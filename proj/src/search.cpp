#include "ksumlab/search.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ksumlab/elimination.hpp"
#include "ksumlab/errors.hpp"

namespace ksumlab {

using kernels::IntMultiset;
using kernels::PreKey;
using kernels::SumKey;

namespace {

using IndexPair = std::pair<std::size_t, std::size_t>;

// Calls visit(tuple) for every nondecreasing tuple of `length` values in 0..bound.
template <class Visit>
void for_each_nondecreasing(unsigned length, unsigned bound, Visit&& visit) {
  std::vector<std::int64_t> tuple(length, 0);
  while (true) {
    visit(tuple);
    int t = static_cast<int>(length) - 1;
    while (t >= 0 && tuple[t] == static_cast<std::int64_t>(bound)) --t;
    if (t < 0) return;
    ++tuple[t];
    for (unsigned u = static_cast<unsigned>(t) + 1; u < length; ++u) tuple[u] = tuple[t];
  }
}

CollisionRecord make_record(NumberMultiset a, NumberMultiset b, unsigned k) {
  if (b < a) std::swap(a, b);
  SumMultiset sums = ksums(a, k);
  return {std::move(a), std::move(b), k, std::move(sums)};
}

void sort_records(std::vector<CollisionRecord>& records) {
  std::sort(records.begin(), records.end(), [](const CollisionRecord& x, const CollisionRecord& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
}

std::vector<CollisionRecord> finalize(const SearchSpec& spec, std::span<const IntMultiset> candidates,
                                      std::span<const IndexPair> pairs) {
  std::vector<CollisionRecord> records;
  records.reserve(pairs.size());
  for (const auto& [i, j] : pairs)
    records.push_back(make_record(NumberMultiset::of(candidates[i]), NumberMultiset::of(candidates[j]), spec.k));
  if (spec.dedupe_affine) return dedupe_affine(std::move(records));
  sort_records(records);
  return records;
}

// Pairs of members with equal exact keys, members taken in index order.
void resolve_bucket(std::span<const IntMultiset> candidates, const std::vector<std::size_t>& members, unsigned k,
                    std::vector<IndexPair>& out) {
  std::vector<std::pair<SumKey, std::size_t>> keyed;
  keyed.reserve(members.size());
  for (std::size_t m : members) keyed.emplace_back(kernels::ksum_key(candidates[m], k), m);
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t lo = 0; lo < keyed.size();) {
    std::size_t hi = lo;
    while (hi < keyed.size() && keyed[hi].first == keyed[lo].first) ++hi;
    for (std::size_t a = lo; a < hi; ++a)
      for (std::size_t b = a + 1; b < hi; ++b) out.emplace_back(keyed[a].second, keyed[b].second);
    lo = hi;
  }
}

std::string checkpoint_header(const SearchSpec& spec, std::size_t candidates, std::size_t chunks) {
  std::ostringstream h;
  h << "# ksumlab-checkpoint v1 n=" << spec.n << " k=" << spec.k << " bound=" << spec.bound
    << " symmetric=" << spec.symmetric_only << " candidates=" << candidates << " chunks=" << chunks;
  return h.str();
}

// Line-oriented resume file: a header naming the search, then one JSON line
// {"chunk": id, "pairs": [[i, j], ...]} per completed chunk.
class Checkpoint {
 public:
  Checkpoint(const std::filesystem::path& path, const std::string& header) {
    bool fresh = true;
    if (std::ifstream in(path); in) {
      std::string line;
      if (std::getline(in, line)) {
        fresh = false;
        if (line != header)
          throw Error("checkpoint " + path.string() + " belongs to a different search: " + line);
        while (std::getline(in, line)) {
          if (line.empty()) continue;
          // A torn final line from an interrupted run is simply redone.
          const auto parsed = nlohmann::json::parse(line, nullptr, false);
          if (parsed.is_discarded() || !parsed.contains("chunk") || !parsed.contains("pairs")) continue;
          done_[parsed["chunk"].get<std::size_t>()] = parsed["pairs"].get<std::vector<IndexPair>>();
        }
      }
    }
    out_.open(path, std::ios::app);
    if (!out_) throw Error("cannot write checkpoint " + path.string());
    if (fresh) out_ << header << '\n' << std::flush;
  }

  const std::vector<IndexPair>* completed(std::size_t chunk) const {
    auto it = done_.find(chunk);
    return it == done_.end() ? nullptr : &it->second;
  }

  void commit(std::size_t chunk, const std::vector<IndexPair>& pairs) {
    nlohmann::json line = {{"chunk", chunk}, {"pairs", pairs}};
    std::lock_guard lock(mutex_);
    out_ << line.dump() << '\n' << std::flush;
  }

 private:
  std::map<std::size_t, std::vector<IndexPair>> done_;
  std::ofstream out_;
  std::mutex mutex_;
};

nlohmann::json to_json_values(const NumberMultiset& a) {
  nlohmann::json values = nlohmann::json::array();
  for (const Rational& x : a.elements()) {
    if (is_integer(x) && x.get_num().fits_slong_p())
      values.push_back(x.get_num().get_si());
    else
      values.push_back(to_string(x));
  }
  return values;
}

}  // namespace

void SearchSpec::validate() const {
  if (n < 1 || n > 64) throw BadRange("search needs 1 <= n <= 64");
  if (k < 1 || k > n) throw BadK("k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  if (symmetric_only && n % 2 != 0) throw BadRange("symmetric search needs even n");
  if (bound > 1'000'000) throw BadRange("bound too large");
}

std::vector<IntMultiset> enumerate_candidate_ints(const SearchSpec& spec) {
  spec.validate();
  std::vector<IntMultiset> out;
  if (spec.symmetric_only) {
    for_each_nondecreasing(spec.n / 2, spec.bound, [&](const std::vector<std::int64_t>& values) {
      IntMultiset set;
      set.reserve(spec.n);
      for (std::int64_t x : values) {
        set.push_back(-x);
        set.push_back(x);
      }
      std::sort(set.begin(), set.end());
      out.push_back(std::move(set));
    });
    return out;
  }
  const auto n = static_cast<std::int64_t>(spec.n);
  for_each_nondecreasing(spec.n, spec.bound, [&](const std::vector<std::int64_t>& values) {
    std::int64_t total = 0;
    for (std::int64_t x : values) total += x;
    IntMultiset centered;
    centered.reserve(values.size());
    for (std::int64_t x : values) centered.push_back(n * x - total);
    out.push_back(std::move(centered));
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NumberMultiset> enumerate_candidates(const SearchSpec& spec) {
  std::vector<NumberMultiset> out;
  for (const auto& c : enumerate_candidate_ints(spec)) out.push_back(NumberMultiset::of(c));
  return out;
}

std::vector<CollisionRecord> find_collisions(const SearchSpec& spec, const SearchOptions& options) {
  const std::vector<IntMultiset> candidates = enumerate_candidate_ints(spec);
  const unsigned workers = kernels::resolve_workers(options.workers);
  const std::vector<PreKey> prekeys = kernels::prekeys_parallel(candidates, spec.k, workers);

  std::map<PreKey, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < candidates.size(); ++i) buckets[prekeys[i]].push_back(i);
  std::vector<const std::vector<std::size_t>*> shared;
  for (const auto& [key, members] : buckets)
    if (members.size() > 1) shared.push_back(&members);

  const std::size_t per_chunk = std::max<std::size_t>(1, options.buckets_per_chunk);
  const std::size_t chunks = (shared.size() + per_chunk - 1) / per_chunk;
  std::optional<Checkpoint> checkpoint;
  if (!options.checkpoint.empty())
    checkpoint.emplace(options.checkpoint, checkpoint_header(spec, candidates.size(), chunks));

  std::vector<std::vector<IndexPair>> chunk_pairs(chunks);
  const auto chunk_count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::int64_t c = 0; c < chunk_count; ++c) {
    const auto chunk = static_cast<std::size_t>(c);
    if (checkpoint) {
      if (const auto* done = checkpoint->completed(chunk)) {
        chunk_pairs[chunk] = *done;
        continue;
      }
    }
    const std::size_t end = std::min(shared.size(), (chunk + 1) * per_chunk);
    for (std::size_t b = chunk * per_chunk; b < end; ++b)
      resolve_bucket(candidates, *shared[b], spec.k, chunk_pairs[chunk]);
    if (checkpoint) checkpoint->commit(chunk, chunk_pairs[chunk]);
  }

  std::vector<IndexPair> pairs;
  for (const auto& p : chunk_pairs) pairs.insert(pairs.end(), p.begin(), p.end());
  return finalize(spec, candidates, pairs);
}

std::vector<CollisionRecord> find_collisions_serial(const SearchSpec& spec) {
  const std::vector<IntMultiset> candidates = enumerate_candidate_ints(spec);
  const std::vector<SumKey> keys = kernels::keys_serial(candidates, spec.k);
  std::map<SumKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < candidates.size(); ++i) groups[keys[i]].push_back(i);
  std::vector<IndexPair> pairs;
  for (const auto& [key, members] : groups)
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) pairs.emplace_back(members[a], members[b]);
  return finalize(spec, candidates, pairs);
}

std::vector<CollisionRecord> dedupe_affine(std::vector<CollisionRecord> records) {
  std::vector<CollisionRecord> out;
  std::set<std::pair<NumberMultiset, NumberMultiset>> seen;
  for (const CollisionRecord& r : records) {
    const auto n = static_cast<long>(r.first.size());
    const Rational shift = -power_sum(r.first, 1) / n;
    const NumberMultiset x = shifted(r.first, shift);
    const NumberMultiset y = shifted(r.second, shift);

    Integer den_lcm = 1;
    Integer num_gcd = 0;
    for (const NumberMultiset* m : {&x, &y})
      for (const Rational& v : m->elements()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den_mpz_t());
    for (const NumberMultiset* m : {&x, &y})
      for (const Rational& v : m->elements()) {
        const Integer scaled_num = v.get_num() * (den_lcm / v.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled_num.get_mpz_t());
      }
    Rational scale = 1;
    if (num_gcd != 0) {
      scale = Rational(den_lcm, num_gcd);
      scale.canonicalize();
    }
    auto oriented = [&](const Rational& factor) {
      NumberMultiset a = scaled(x, factor);
      NumberMultiset b = scaled(y, factor);
      if (b < a) std::swap(a, b);
      return std::make_pair(std::move(a), std::move(b));
    };
    auto key = std::min(oriented(scale), oriented(-scale));
    if (seen.insert(key).second) out.push_back(make_record(key.first, key.second, r.k));
  }
  sort_records(out);
  return out;
}

bool verify_record(const CollisionRecord& record) {
  try {
    const auto& a = record.first;
    const auto& b = record.second;
    if (a.size() != b.size() || a == b) return false;
    const SumMultiset sa = ksums(a, record.k);
    const SumMultiset sb = ksums(b, record.k);
    if (!multiset_equal(sa, sb) || !multiset_equal(sa, record.canonical_sums)) return false;

    if (a.size() == kEliminationN && record.k == kEliminationK) {
      for (const NumberMultiset* member : {&a, &b}) {
        const Rational shift = -power_sum(*member, 1) / static_cast<long>(member->size());
        const PowerSumVector s = power_sum_vector(shifted(*member, shift), kEliminationN);
        if (sgn(s.at(2)) == 0) continue;
        for (const Residual& r : residual_relations(s))
          if (sgn(r.value) != 0) return false;
      }
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string to_json_line(const CollisionRecord& record) {
  nlohmann::ordered_json line;
  line["first"] = to_json_values(record.first);
  line["second"] = to_json_values(record.second);
  line["k"] = record.k;
  return line.dump();
}

}  // namespace ksumlab
