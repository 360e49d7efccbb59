// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "ksumlab/elimination.hpp"
#include "ksumlab/errors.hpp"
#include "ksumlab/identity_fixtures.hpp"
#include "ksumlab/search.hpp"
#include "ksumlab/symfunc.hpp"

using namespace ksumlab;

namespace {

const NumberMultiset kFirst = NumberMultiset::of({-8, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 8});
const NumberMultiset kSecond = NumberMultiset::of({-7, -7, -4, -2, -1, 0, 0, 1, 2, 4, 7, 7});
const NumberMultiset kExample = NumberMultiset::of({-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1});

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (condition) return;
    if (ok) detail = what;
    ok = false;
  }
};

using Clock = std::chrono::steady_clock;

class Suite {
 public:
  // limit_s <= 0 means untimed.
  void run(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome outcome;
    const auto start = Clock::now();
    try {
      body(outcome);
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_s > 0) {
      std::ostringstream limit;
      limit << "took " << seconds << " s, limit " << limit_s << " s";
      outcome.require(seconds < limit_s, limit.str());
    }
    std::printf("%s  criterion %d: %s (%.3f s)%s%s\n", outcome.ok ? "PASS" : "FAIL", id, title.c_str(), seconds,
                outcome.ok ? "" : " -- ", outcome.detail.c_str());
    std::fflush(stdout);
    failures_ += outcome.ok ? 0 : 1;
  }

  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

SearchSpec make_spec(unsigned n, unsigned k, unsigned bound, bool symmetric) {
  SearchSpec s;
  s.n = n;
  s.k = k;
  s.bound = bound;
  s.symmetric_only = symmetric;
  return s;
}

bool is_pair(const CollisionRecord& r, const NumberMultiset& a, const NumberMultiset& b) {
  return (r.first == a && r.second == b) || (r.first == b && r.second == a);
}

std::string render(const std::vector<CollisionRecord>& records) {
  std::string out;
  for (const auto& r : records) out += to_json_line(r) + '\n';
  return out;
}

NumberMultiset random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-9, 9);
  std::vector<Rational> xs;
  for (int i = 0; i < 12; ++i) xs.emplace_back(d(rng));
  return NumberMultiset(std::move(xs));
}

NumberMultiset centered(const NumberMultiset& a) { return shifted(scaled(a, 12), -power_sum(a, 1)); }

Rational eval_on(const Polynomial& p, const PowerSumVector& s) { return poly_eval(p, s.as_valuation(Family::S)); }

}  // namespace

int main() {
  Suite suite;

  suite.run(1, "the two 12-element sets have the same 495 4-sums", 1.0, [](Outcome& o) {
    const SumMultiset a = ksums(kFirst, 4);
    const SumMultiset b = ksums(kSecond, 4);
    o.require(a.sums.size() == 495 && b.sums.size() == 495, "wrong number of 4-sums");
    o.require(kFirst != kSecond, "sets are not distinct");
    o.require(multiset_equal(a, b), "4-sum multisets differ");
  });

  suite.run(2, "{-1, 0^10, 1}: 4-sums, E-values and roots 2, 377762/44361", 10.0, [](Outcome& o) {
    const SumMultiset sums = ksums(kExample, 4);
    o.require(format_run_length(sums.sums) == "-1^120 0^255 1^120", "4-sums: " + format_run_length(sums.sums));
    const PowerSumVector e = e_power_sums(kExample, 4, 14);
    Valuation e_values;
    for (unsigned p = 1; p <= 14; ++p) {
      const Rational expected = p % 2 == 0 ? 240 : 0;
      o.require(e.at(p) == expected, "E" + std::to_string(p) + " = " + to_string(e.at(p)));
      e_values[E(p)] = e.at(p);
    }
    const auto roots = rational_roots(fourteenth_quadratic().at(e_values));
    o.require(roots.has_value(), "quadratic has no rational roots");
    if (roots) {
      o.require(roots->first == 2 && roots->second == Rational(377762, 44361),
                "roots " + to_string(roots->first) + ", " + to_string(roots->second));
    }
  });

  suite.run(3, "generated E1..E12, E14 match the reference identities term by term", 60.0, [](Outcome& o) {
    const auto fixtures = load_reference_identities();
    o.require(fixtures.size() == 13, "expected 13 reference identities");
    std::size_t compared = 0;
    for (const IdentityFixture& f : fixtures) {
      const Polynomial generated = e_expansion_unreduced(f.p, 4, 12, true);
      const auto checks = check_identity(generated, f.terms);
      o.require(checks.size() == f.terms.size(), "E" + std::to_string(f.p) + " has unlisted generated terms");
      for (const auto& c : checks) o.require(c.ok(), "E" + std::to_string(f.p) + ": " + to_string(c));
      compared += checks.size();
    }
    o.require(e_expansion(2, 4, 12, true) == Polynomial::variable(S(2)) * Rational(120), "E2 != 120*S2");
    o.require(e_expansion(3, 4, 12, true) == Polynomial::variable(S(3)) * Rational(48), "E3 != 48*S3");
    o.require(e_expansion(6, 4, 12, true).degree_in(S(6)) == 0, "E6 mentions S6");
    o.require(e_expansion_unreduced(12, 4, 12, true).coefficient(Monomial::of(S(12))) == -2203488,
              "E12 coefficient of S12");
    const IdentityFixture* e14 = find_fixture(fixtures, 14);
    o.require(e14 != nullptr && e14->terms.size() == 26, "E14 reference does not have 26 terms");
    o.require(e_expansion_unreduced(14, 4, 12, true).terms().size() == 26, "generated E14 does not have 26 terms");
    o.require(compared > 0, "nothing compared");
  });

  suite.run(4, "S6-quadratic: c2 = 73458/5465*E2 and the displayed c1 coefficients", 0, [](Outcome& o) {
    const QuadraticInS6 q = fourteenth_quadratic();
    o.require(q.c2 == Polynomial::variable(E(2)) * Rational(73458, 5465), "c2 = " + to_string(q.c2));
    const TermList c1_terms = parse_terms(
        "22556178701/5315943600*E3*E5 - 889/12*E8 - 15211/13392*E4^2 + 4783550233/119441640960*E2^2*E4"
        " - 9881683541849/418343497545600*E2*E3^2 - 72629302403/477766563840000*E2^4");
    for (const auto& [monomial, coefficient] : c1_terms)
      o.require(q.c1.coefficient(monomial) == coefficient,
                "c1 coefficient of " + to_string(monomial) + " = " + to_string(q.c1.coefficient(monomial)));
    o.require(q.c1.coefficient(Monomial({{E(2), 2}, {E(4), 1}})) == parse_rational("4783550233/119441640960"),
              "E2^2*E4 coefficient");
  });

  suite.run(5, "closed forms: second root for {-1, 0^10, 1} and the S7 condition", 0, [](Outcome& o) {
    const Rational root = second_root(power_sum_vector(kExample, 12));
    o.require(root == Rational(377762, 44361), "second root " + to_string(root));
    const Polynomial displayed = parse_polynomial(
        "-1494661249487/4501080325368*S2^2*S3 + 217002961/417230286*S2*S5 + 3678199/2599908*S3*S4");
    const Polynomial derived = derived_s7_condition();
    o.require(derived == displayed, "generated S7 condition: " + to_string(derived));
    o.require(closed_form_s7_condition() == displayed, "closed-form S7 condition differs");
    o.require(derived_second_root().numerator == closed_form_second_root().numerator,
              "generated second-root formula differs from the closed form");
  });

  suite.run(6, "oracle equivalence on 20 random 12-element sets", 300.0, [](Outcome& o) {
    std::mt19937_64 rng(20240601);
    std::size_t checks = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const NumberMultiset a = random_set(rng);
      const PowerSumVector s = power_sum_vector(a, 26);
      const PowerSumVector e = e_power_sums(a, 4, 26);
      const NumberMultiset c = centered(a);
      const PowerSumVector sc = power_sum_vector(c, 12);
      const PowerSumVector ec = e_power_sums(c, 4, 26);
      for (unsigned p = 1; p <= 26; ++p) {
        o.require(eval_on(e_expansion(p, 4, 12, false), s) == e.at(p), "E" + std::to_string(p) + " (general)");
        o.require(eval_on(e_expansion(p, 4, 12, true), sc) == ec.at(p), "E" + std::to_string(p) + " (S1 = 0)");
        checks += 2;
      }
      for (unsigned m = 13; m <= 26; ++m) {
        o.require(eval_on(macmahon_reduce(m, 12), s) == s.at(m), "S" + std::to_string(m) + " reduction");
        ++checks;
      }
      std::uniform_int_distribution<unsigned> parts_count(1, 5);
      for (int r = 0; r < 3; ++r) {
        std::vector<unsigned> parts(parts_count(rng), 1);
        unsigned weight = static_cast<unsigned>(parts.size());
        std::uniform_int_distribution<std::size_t> slot(0, parts.size() - 1);
        const unsigned target = std::uniform_int_distribution<unsigned>(weight, 10)(rng);
        while (weight < target) {
          ++parts[slot(rng)];
          ++weight;
        }
        const Composition comp(parts);
        o.require(eval_on(reduce_monomial(comp), s) == monomial_power_sum_direct(a, comp), "monomial power sum");
        ++checks;
      }
    }
    o.require(checks == 20 * (52 + 14 + 3), "check count");
  });

  suite.run(7, "residual relations vanish for both sets and not for 10 random sets", 60.0, [](Outcome& o) {
    for (const NumberMultiset* a : {&kFirst, &kSecond}) {
      const auto residuals = residual_relations(power_sum_vector(*a, 12));
      o.require(residuals.size() == 13, "expected 13 residuals");
      for (const Residual& r : residuals)
        o.require(sgn(r.value) == 0, "E" + std::to_string(r.equation) + " residual " + to_string(r.value));
    }
    std::mt19937_64 rng(7);
    int generic = 0;
    while (generic < 10) {
      const PowerSumVector s = power_sum_vector(centered(random_set(rng)), 12);
      if (sgn(s.at(2)) == 0) continue;
      bool any_nonzero = false;
      for (const Residual& r : residual_relations(s)) any_nonzero = any_nonzero || sgn(r.value) != 0;
      o.require(any_nonzero, "a random set has all residuals zero");
      ++generic;
    }
  });

  std::string symmetric_1;
  std::string general_1;
  std::string empty_1;

  suite.run(8, "search: symmetric (12,4,B=8) finds exactly the pair; (4,2,7) and (5,2,6) as expected", 0,
            [&](Outcome& o) {
              const auto t0 = Clock::now();
              const auto symmetric = find_collisions(make_spec(12, 4, 8, true), {.workers = 1});
              const double symmetric_s = std::chrono::duration<double>(Clock::now() - t0).count();
              o.require(symmetric.size() == 1, std::to_string(symmetric.size()) + " symmetric classes");
              o.require(!symmetric.empty() && is_pair(symmetric.front(), kFirst, kSecond), "wrong symmetric class");
              for (const auto& r : symmetric) o.require(verify_record(r), "symmetric record fails verification");
              o.require(symmetric_s < 30.0, "symmetric search took " + std::to_string(symmetric_s) + " s");

              const auto t1 = Clock::now();
              const auto general = find_collisions(make_spec(4, 2, 7, false), {.workers = 1});
              const auto none = find_collisions(make_spec(5, 2, 6, false), {.workers = 1});
              const double general_s = std::chrono::duration<double>(Clock::now() - t1).count();
              const NumberMultiset x = normalize_affine(NumberMultiset::of({0, 3, 5, 6}), Reflection::keep).set;
              const NumberMultiset y = normalize_affine(NumberMultiset::of({1, 2, 4, 7}), Reflection::keep).set;
              bool found = false;
              for (const auto& r : general) found = found || is_pair(r, x, y);
              o.require(found, "{0,3,5,6} / {1,2,4,7} not found");
              o.require(none.empty(), std::to_string(none.size()) + " collisions for (5,2,6)");
              o.require(general_s < 600.0, "general searches took " + std::to_string(general_s) + " s");

              symmetric_1 = render(symmetric);
              general_1 = render(general);
              empty_1 = render(none);
            });

  suite.run(9, "search output is byte-identical with 1 and 4 workers", 0, [&](Outcome& o) {
    const SearchOptions many{.workers = 4, .buckets_per_chunk = 1};
    o.require(render(find_collisions(make_spec(12, 4, 8, true), many)) == symmetric_1, "symmetric output differs");
    o.require(render(find_collisions(make_spec(4, 2, 7, false), many)) == general_1, "(4,2,7) output differs");
    o.require(render(find_collisions(make_spec(5, 2, 6, false), many)) == empty_1, "(5,2,6) output differs");
    o.require(!symmetric_1.empty() && !general_1.empty(), "criterion 8 produced no output to compare");
  });

  std::printf("%s: %d failure(s)\n", suite.failures() == 0 ? "ALL PASS" : "FAILED", suite.failures());
  return suite.failures() == 0 ? 0 : 1;
}
