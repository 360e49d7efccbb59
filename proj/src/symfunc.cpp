#include "ksumlab/symfunc.hpp"

#include <mutex>
#include <optional>
#include <tuple>

#include "ksumlab/errors.hpp"

namespace ksumlab {

namespace {

// Results are pure functions of the key, so concurrent callers may race to
// compute the same entry; whichever insert lands first wins and both agree.
template <class Key>
class MemoTable {
 public:
  std::optional<Polynomial> find(const Key& key) {
    std::lock_guard lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  Polynomial insert(const Key& key, Polynomial value) {
    std::lock_guard lock(mutex_);
    return table_.try_emplace(key, std::move(value)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<Key, Polynomial> table_;
};

MemoTable<Composition>& monomial_cache() {
  static MemoTable<Composition> table;
  return table;
}

MemoTable<std::tuple<unsigned, unsigned, bool>>& power_sum_cache() {
  static MemoTable<std::tuple<unsigned, unsigned, bool>> table;
  return table;
}

MemoTable<std::tuple<unsigned, unsigned, unsigned, bool, bool>>& expansion_cache() {
  static MemoTable<std::tuple<unsigned, unsigned, unsigned, bool, bool>> table;
  return table;
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer falling_factorial(unsigned n, unsigned count) {
  Integer f = 1;
  for (unsigned i = 0; i < count; ++i) f *= n - i;
  return f;
}

Polynomial with_s1_zero(const Polynomial& p) { return poly_substitute(p, {{S(1), Polynomial()}}); }

void tabulate_powers(const NumberMultiset& a, std::span<const unsigned> parts,
                     std::vector<std::vector<Rational>>& powers) {
  unsigned max_part = 0;
  for (unsigned p : parts) max_part = std::max(max_part, p);
  powers.assign(a.size(), {});
  for (std::size_t i = 0; i < a.size(); ++i) {
    powers[i].resize(max_part + 1);
    powers[i][0] = 1;
    for (unsigned e = 1; e <= max_part; ++e) powers[i][e] = powers[i][e - 1] * a[i];
  }
}

void sum_ordered_tuples(const std::vector<std::vector<Rational>>& powers, std::span<const unsigned> parts,
                        std::size_t depth, std::vector<bool>& used, const Rational& product, Rational& total) {
  if (depth == parts.size()) {
    total += product;
    return;
  }
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    sum_ordered_tuples(powers, parts, depth + 1, used, product * powers[i][parts[depth]], total);
    used[i] = false;
  }
}

}  // namespace

Rational monomial_power_sum_direct(const NumberMultiset& a, const Composition& c) {
  if (c.length() > a.size())
    throw TooManyParts(std::to_string(c.length()) + " parts but only " + std::to_string(a.size()) +
                       " elements");
  std::vector<std::vector<Rational>> powers;
  tabulate_powers(a, c.parts(), powers);
  std::vector<bool> used(a.size(), false);
  Rational total = 0;
  sum_ordered_tuples(powers, c.parts(), 0, used, Rational(1), total);
  return total;
}

Polynomial reduce_monomial(const Composition& c) {
  const Composition key = c.canonical();
  const auto parts = key.parts();
  if (parts.empty()) return Polynomial(1);
  if (parts.size() == 1) return Polynomial::variable(S(parts[0]));
  if (auto hit = monomial_cache().find(key)) return *hit;

  const unsigned last = parts.back();
  std::vector<unsigned> prefix(parts.begin(), parts.end() - 1);
  Polynomial result = reduce_monomial(Composition(prefix)) * Polynomial::variable(S(last));
  for (std::size_t t = 0; t < prefix.size(); ++t) {
    std::vector<unsigned> merged = prefix;
    merged[t] += last;
    result -= reduce_monomial(Composition(std::move(merged)));
  }
  return monomial_cache().insert(key, std::move(result));
}

Polynomial power_sum_in_basis(unsigned m, unsigned n, bool set_s1_zero) {
  if (m == 0) throw BadRange("power sum index must be positive");
  if (m == 1 && set_s1_zero) return Polynomial();
  if (m <= n) return Polynomial::variable(S(m));
  const auto key = std::make_tuple(m, n, set_s1_zero);
  if (auto hit = power_sum_cache().find(key)) return *hit;

  // Since e_m = 0 for m > n:
  //   S_m / m = sum over partitions of m without the part m of
  //             (-1)^{len} prod S_i^{p_i} / (i^{p_i} p_i!).
  // Parts above n are replaced by their own (lower-weight) reductions.
  Polynomial total;
  for (const auto& parts : partitions_of(m, m - 1, ~0u, set_s1_zero ? 2 : 1)) {
    const Partition lambda(parts);
    Rational coefficient(Integer(m), lambda.centralizer_order());
    coefficient.canonicalize();
    if (lambda.length() % 2 == 1) coefficient = -coefficient;

    std::vector<Monomial::Factor> low;
    std::vector<std::pair<unsigned, unsigned>> high;
    for (const auto& [part, count] : lambda.multiplicities()) {
      if (part <= n)
        low.emplace_back(S(part), count);
      else
        high.emplace_back(part, count);
    }
    Polynomial term = Polynomial::term(Monomial(std::move(low)), coefficient);
    for (const auto& [part, count] : high) term *= pow(power_sum_in_basis(part, n, set_s1_zero), count);
    total += term;
  }
  return power_sum_cache().insert(key, std::move(total));
}

Polynomial macmahon_reduce(unsigned m, unsigned n) {
  if (n == 0 || m <= n)
    throw BadRange("MacMahon reduction needs m > n >= 1 (got m = " + std::to_string(m) +
                   ", n = " + std::to_string(n) + ")");
  return power_sum_in_basis(m, n, false);
}

Polynomial reduce_high_power_sums(const Polynomial& p, unsigned n, bool set_s1_zero) {
  Bindings bindings;
  for (VarId var : p.variables())
    if (var.family == Family::S && var.index > n)
      bindings.emplace(var, power_sum_in_basis(var.index, n, set_s1_zero));
  if (set_s1_zero) bindings.emplace(S(1), Polynomial());
  return poly_substitute(p, bindings);
}

Polynomial e_expansion_unreduced(unsigned p, unsigned k, unsigned n, bool set_s1_zero) {
  if (p < 1 || k < 1 || k > n)
    throw BadRange("e_expansion needs p >= 1 and 1 <= k <= n (got p = " + std::to_string(p) +
                   ", k = " + std::to_string(k) + ", n = " + std::to_string(n) + ")");
  const auto key = std::make_tuple(p, k, n, set_s1_zero, false);
  if (auto hit = expansion_cache().find(key)) return *hit;

  // k! E_p = sum over compositions of p into k nonnegative parts of
  // multinomial * S_{p_1..p_k}. Compositions are grouped by their multiset of
  // nonzero parts lambda (j parts): there are k! / ((k-j)! prod m_i!) of them,
  // and each of the k - j zero-exponent positions ranges over the unused
  // indices, contributing (n-j)(n-j-1)...(n-k+1). The k! cancels.
  const Integer p_factorial = factorial(p);
  Polynomial total;
  for (const auto& parts : partitions_of(p, p, k)) {
    const Partition lambda(parts);
    const unsigned j = lambda.length();
    Integer denominator = factorial(k - j);
    for (unsigned part : parts) denominator *= factorial(part);
    for (const auto& [part, count] : lambda.multiplicities()) denominator *= factorial(count);
    Rational coefficient(p_factorial * falling_factorial(n - j, k - j), denominator);
    coefficient.canonicalize();
    total += reduce_monomial(Composition(parts)) * coefficient;
  }
  if (set_s1_zero) total = with_s1_zero(total);
  return expansion_cache().insert(key, std::move(total));
}

Polynomial e_expansion(unsigned p, unsigned k, unsigned n, bool set_s1_zero) {
  const auto key = std::make_tuple(p, k, n, set_s1_zero, true);
  if (auto hit = expansion_cache().find(key)) return *hit;
  Polynomial reduced = reduce_high_power_sums(e_expansion_unreduced(p, k, n, set_s1_zero), n, set_s1_zero);
  return expansion_cache().insert(key, std::move(reduced));
}

PowerSumVector e_power_sums(const NumberMultiset& a, unsigned k, unsigned pmax) {
  const SumMultiset sums = ksums(a, k);
  return power_sum_vector(NumberMultiset(sums.sums), pmax);
}

}  // namespace ksumlab
