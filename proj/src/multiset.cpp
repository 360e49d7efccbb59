#include "ksumlab/multiset.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "ksumlab/errors.hpp"

namespace ksumlab {

NumberMultiset::NumberMultiset(std::vector<Rational> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
}

NumberMultiset NumberMultiset::of(std::initializer_list<long> values) {
  std::vector<Rational> v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return NumberMultiset(std::move(v));
}

NumberMultiset NumberMultiset::of(std::span<const std::int64_t> values) {
  std::vector<Rational> v;
  v.reserve(values.size());
  for (std::int64_t x : values) v.emplace_back(static_cast<long>(x));
  return NumberMultiset(std::move(v));
}

const Rational& PowerSumVector::at(unsigned p) const {
  if (p == 0 || p > values_.size())
    throw BadRange("power sum index " + std::to_string(p) + " outside 1.." +
                   std::to_string(values_.size()));
  return values_[p - 1];
}

Valuation PowerSumVector::as_valuation(Family family) const {
  Valuation v;
  for (unsigned p = 1; p <= values_.size(); ++p) v.emplace(VarId{family, p}, values_[p - 1]);
  return v;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SumMultiset ksums(const NumberMultiset& a, unsigned k) {
  const unsigned n = static_cast<unsigned>(a.size());
  if (k < 1 || k > n)
    throw BadK("k = " + std::to_string(k) + " outside 1.." + std::to_string(n));

  SumMultiset out{{}, n, k};
  out.sums.reserve(binomial(n, k));

  // Combinations in lexicographic order; partial[t] is the sum of the first t picks.
  std::vector<unsigned> idx(k);
  std::iota(idx.begin(), idx.end(), 0u);
  std::vector<Rational> partial(k + 1);
  for (unsigned t = 0; t < k; ++t) partial[t + 1] = partial[t] + a[idx[t]];
  while (true) {
    out.sums.push_back(partial[k]);
    int t = static_cast<int>(k) - 1;
    while (t >= 0 && idx[t] == n - k + static_cast<unsigned>(t)) --t;
    if (t < 0) break;
    ++idx[t];
    for (unsigned u = static_cast<unsigned>(t) + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
    for (unsigned u = static_cast<unsigned>(t); u < k; ++u) partial[u + 1] = partial[u] + a[idx[u]];
  }
  std::sort(out.sums.begin(), out.sums.end());
  return out;
}

bool multiset_equal(const SumMultiset& x, const SumMultiset& y) { return x.sums == y.sums; }

Rational power_sum(const NumberMultiset& a, unsigned p) {
  Rational total = 0;
  for (const Rational& x : a.elements()) total += pow(x, p);
  return total;
}

PowerSumVector power_sum_vector(const NumberMultiset& a, unsigned m) {
  if (m < 1) throw BadRange("power sum vector needs m >= 1");
  std::vector<Rational> values(m, Rational(0));
  for (const Rational& x : a.elements()) {
    Rational xp = 1;
    for (unsigned p = 1; p <= m; ++p) {
      xp *= x;
      values[p - 1] += xp;
    }
  }
  return PowerSumVector(std::move(values));
}

NumberMultiset shifted(const NumberMultiset& a, const Rational& shift) {
  std::vector<Rational> v(a.elements().begin(), a.elements().end());
  for (Rational& x : v) x += shift;
  return NumberMultiset(std::move(v));
}

NumberMultiset scaled(const NumberMultiset& a, const Rational& factor) {
  std::vector<Rational> v(a.elements().begin(), a.elements().end());
  for (Rational& x : v) x *= factor;
  return NumberMultiset(std::move(v));
}

AffineNormalization normalize_affine(const NumberMultiset& a, Reflection rule) {
  if (a.size() == 0) throw BadRange("cannot normalize an empty multiset");
  const Rational shift = -power_sum(a, 1) / Rational(static_cast<long>(a.size()));
  NumberMultiset centered = shifted(a, shift);

  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (const Rational& x : centered.elements()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  }
  for (const Rational& x : centered.elements()) {
    const Integer scaled_num = x.get_num() * (den_lcm / x.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled_num.get_mpz_t());
  }
  if (num_gcd == 0) return {std::move(centered), shift, Rational(1)};

  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  NumberMultiset result = scaled(centered, scale);

  if (rule == Reflection::canonicalize) {
    NumberMultiset negated = scaled(result, -1);
    if (negated < result) {
      result = std::move(negated);
      scale = -scale;
    }
  }
  return {std::move(result), shift, scale};
}

// ---------------------------------------------------------------------------
// Text formats

NumberMultiset parse_multiset(std::string_view text) {
  std::string cleaned(text);
  for (char& c : cleaned)
    if (c == ',' || c == '{' || c == '}' || c == '[' || c == ']') c = ' ';
  std::istringstream in(cleaned);
  std::vector<Rational> values;
  std::string token;
  while (in >> token) {
    const auto caret = token.find('^');
    const Rational value = parse_rational(std::string_view(token).substr(0, caret));
    long count = 1;
    if (caret != std::string::npos) {
      const std::string mult = token.substr(caret + 1);
      if (mult.empty() || !std::all_of(mult.begin(), mult.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("bad multiplicity in '" + token + "'");
      if (mult.size() > 6) throw ParseError("multiplicity too large in '" + token + "'");
      count = std::stol(mult);
      if (count < 1) throw ParseError("multiplicity must be positive in '" + token + "'");
    }
    values.insert(values.end(), static_cast<std::size_t>(count), value);
  }
  if (values.empty()) throw ParseError("empty set literal");
  return NumberMultiset(std::move(values));
}

std::vector<NumberMultiset> read_multisets(std::istream& in) {
  std::vector<NumberMultiset> sets;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
      continue;
    sets.push_back(parse_multiset(line));
  }
  return sets;
}

std::string format_run_length(std::span<const Rational> sorted_values) {
  std::string out;
  for (std::size_t i = 0; i < sorted_values.size();) {
    std::size_t j = i;
    while (j < sorted_values.size() && sorted_values[j] == sorted_values[i]) ++j;
    if (!out.empty()) out += ' ';
    out += to_string(sorted_values[i]);
    if (j - i >= 2) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string to_string(const NumberMultiset& a) { return format_run_length(a.elements()); }

}  // namespace ksumlab
