// ksumlab: k-sum multisets, power-sum identities, elimination and collision search.
//
// Exit codes: 0 success / affirmative, 1 checked and negative, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ksumlab/elimination.hpp"
#include "ksumlab/errors.hpp"
#include "ksumlab/identity_fixtures.hpp"
#include "ksumlab/multiset.hpp"
#include "ksumlab/search.hpp"
#include "ksumlab/symfunc.hpp"

using namespace ksumlab;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

enum class Format { text, json };

struct SetInput {
  std::vector<std::string> literals;
  std::string file;

  std::vector<NumberMultiset> load() const {
    std::vector<NumberMultiset> sets;
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw Error("cannot open " + file);
      sets = read_multisets(in);
    }
    for (const auto& literal : literals) sets.push_back(parse_multiset(literal));
    return sets;
  }
};

void add_set_input(CLI::App* cmd, SetInput& input, const std::string& help) {
  cmd->add_option("sets", input.literals, help);
  cmd->add_option("-f,--file", input.file, "Read sets from a file, one per line");
}

void add_format(CLI::App* cmd, Format& format) {
  cmd->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::text}, {"json", Format::json}}));
}

json run_length_json(std::span<const Rational> values) {
  json runs = json::array();
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    runs.push_back({{"value", to_string(values[i])}, {"multiplicity", j - i}});
    i = j;
  }
  return runs;
}

// Shifts to S1 = 0, telling the user when that changed anything.
PowerSumVector normalized_power_sums(const NumberMultiset& a) {
  if (a.size() != kEliminationN)
    throw BadRange("elimination expects a 12-element set, got " + std::to_string(a.size()));
  const Rational shift = -power_sum(a, 1) / static_cast<long>(a.size());
  if (sgn(shift) != 0) std::cerr << "note: shifted by " << to_string(shift) << " so that S1 = 0\n";
  return power_sum_vector(shifted(a, shift), kEliminationN);
}

// ---------------------------------------------------------------------------

int cmd_ksums(const SetInput& input, unsigned k, Format format) {
  const auto sets = input.load();
  if (sets.empty()) throw ParseError("no input set");
  for (const auto& a : sets) {
    const SumMultiset sums = ksums(a, k);
    if (format == Format::json)
      std::cout << json{{"n", sums.source_n}, {"k", k}, {"count", sums.sums.size()}, {"sums", run_length_json(sums.sums)}}.dump()
                << '\n';
    else
      std::cout << format_run_length(sums.sums) << '\n';
  }
  return kOk;
}

int cmd_collide(const SetInput& input, unsigned k, Format format) {
  const auto sets = input.load();
  if (sets.size() != 2) throw ParseError("collide needs exactly two sets, got " + std::to_string(sets.size()));
  if (sets[0].size() != sets[1].size())
    throw BadRange("sets have different sizes (" + std::to_string(sets[0].size()) + " vs " +
                   std::to_string(sets[1].size()) + ")");
  const SumMultiset x = ksums(sets[0], k);
  const SumMultiset y = ksums(sets[1], k);
  const bool equal = multiset_equal(x, y);
  std::size_t diff = 0;
  while (equal == false && diff < x.sums.size() && x.sums[diff] == y.sums[diff]) ++diff;

  if (format == Format::json) {
    json out{{"equal", equal}, {"count", x.sums.size()}};
    if (!equal) out["first_difference"] = {{"index", diff}, {"a", to_string(x.sums[diff])}, {"b", to_string(y.sums[diff])}};
    std::cout << out.dump() << '\n';
  } else if (equal) {
    std::cout << "EQUAL (" << x.sums.size() << " sums)\n";
  } else {
    std::cout << "DIFFERENT at sorted position " << diff << ": " << to_string(x.sums[diff]) << " vs "
              << to_string(y.sums[diff]) << '\n';
  }
  return equal ? kOk : kNegative;
}

struct ExpandArgs {
  unsigned p = 0;
  unsigned k = 4;
  unsigned n = 12;
  bool s1_zero = false;
  bool raw = false;
  bool all = false;
  bool check = false;
};

int cmd_expand(const ExpandArgs& args, Format format) {
  if (args.p < 1) throw BadRange("p must be >= 1");
  if (args.check) {
    if (args.k != kEliminationK || args.n != kEliminationN)
      throw BadRange("--check-paper compares k = 4, n = 12 identities only");
    const auto fixtures = load_reference_identities();
    const IdentityFixture* fixture = find_fixture(fixtures, args.p);
    if (fixture == nullptr) throw BadRange("no reference identity for E" + std::to_string(args.p));
    const auto checks = check_identity(e_expansion_unreduced(args.p, args.k, args.n, true), fixture->terms);
    bool all_ok = true;
    json rows = json::array();
    for (const auto& c : checks) {
      all_ok = all_ok && c.ok();
      if (format == Format::json)
        rows.push_back({{"monomial", to_string(c.monomial)}, {"actual", to_string(c.actual)},
                        {"expected", to_string(c.expected)}, {"ok", c.ok()}});
      else
        std::cout << to_string(c) << '\n';
    }
    if (format == Format::json) std::cout << json{{"p", args.p}, {"ok", all_ok}, {"checks", rows}}.dump() << '\n';
    return all_ok ? kOk : kNegative;
  }

  const unsigned first = args.all ? 1 : args.p;
  for (unsigned p = first; p <= args.p; ++p) {
    const Polynomial e = args.raw ? e_expansion_unreduced(p, args.k, args.n, args.s1_zero)
                                  : e_expansion(p, args.k, args.n, args.s1_zero);
    if (format == Format::json)
      std::cout << json{{"p", p}, {"k", args.k}, {"n", args.n}, {"polynomial", to_string(e)}}.dump() << '\n';
    else
      std::cout << format_identity(p, e) << '\n';
  }
  return kOk;
}

// Displayed coefficients of the S6-quadratic from equation 14.
const std::vector<std::pair<std::string, std::string>>& expected_quadratic_terms() {
  static const std::vector<std::pair<std::string, std::string>> terms = {
      {"S6^2*E2", "73458/5465"},
      {"S6*E3*E5", "22556178701/5315943600"},
      {"S6*E8", "-889/12"},
      {"S6*E4^2", "-15211/13392"},
      {"S6*E2^2*E4", "4783550233/119441640960"},
      {"S6*E2*E3^2", "-9881683541849/418343497545600"},
      {"S6*E2^4", "-72629302403/477766563840000"},
  };
  return terms;
}

int eliminate_verify(Format format) {
  const QuadraticInS6 quad = fourteenth_quadratic();
  Polynomial s6_part = quad.c2 * Polynomial::term(Monomial::of(S(6), 2), 1) +
                       quad.c1 * Polynomial::variable(S(6));
  TermList expected;
  for (const auto& [monomial, coefficient] : expected_quadratic_terms()) {
    const TermList parsed = parse_terms(monomial);
    expected.emplace_back(parsed.front().first, parse_rational(coefficient));
  }
  bool all_ok = true;
  json rows = json::array();
  for (const auto& c : check_identity(s6_part, expected)) {
    all_ok = all_ok && c.ok();
    if (format == Format::json)
      rows.push_back({{"monomial", to_string(c.monomial)}, {"actual", to_string(c.actual)},
                      {"expected", to_string(c.expected)}, {"ok", c.ok()}});
    else
      std::cout << to_string(c) << '\n';
  }
  if (format == Format::json) std::cout << json{{"ok", all_ok}, {"checks", rows}}.dump() << '\n';
  return all_ok ? kOk : kNegative;
}

int eliminate_example1(Format format) {
  Valuation e_values;
  for (unsigned p = 1; p <= 14; ++p) e_values.emplace(E(p), p % 2 == 0 ? 240 : 0);
  const auto roots = rational_roots(fourteenth_quadratic().at(e_values));
  if (!roots) {
    std::cout << (format == Format::json ? R"({"roots":null})" : "roots: not rational") << '\n';
    return kNegative;
  }
  if (format == Format::json)
    std::cout << json{{"roots", {to_string(roots->first), to_string(roots->second)}}}.dump() << '\n';
  else
    std::cout << "roots: " << to_string(roots->first) << ", " << to_string(roots->second) << '\n';
  return kOk;
}

int eliminate_second_root(const std::string& literal, Format format) {
  const PowerSumVector s = normalized_power_sums(parse_multiset(literal));
  const Rational root = second_root(s);
  if (format == Format::json)
    std::cout << json{{"S6", to_string(s.at(6))}, {"second_root", to_string(root)}}.dump() << '\n';
  else
    std::cout << "S6'' = " << to_string(root) << "  (S6 = " << to_string(s.at(6)) << ")\n";
  return kOk;
}

int eliminate_residuals(const std::string& literal, Format format) {
  const PowerSumVector s = normalized_power_sums(parse_multiset(literal));
  const auto residuals = residual_relations(s);
  bool all_zero = true;
  json rows = json::array();
  for (const auto& r : residuals) {
    all_zero = all_zero && sgn(r.value) == 0;
    if (format == Format::json)
      rows.push_back({{"equation", r.equation}, {"residual", to_string(r.value)}});
    else
      std::cout << "E" << r.equation << ": " << to_string(r.value) << '\n';
  }
  if (format == Format::json)
    std::cout << json{{"all_zero", all_zero}, {"residuals", rows}}.dump() << '\n';
  else
    std::cout << (all_zero ? "all " : "not all ") << residuals.size() << " residuals vanish\n";
  return all_zero ? kOk : kNegative;
}

struct SearchArgs {
  SearchSpec spec;
  unsigned workers = 0;
  std::string resume;
  std::string out;
  bool no_dedupe = false;
  bool serial = false;
};

int cmd_search(SearchArgs args, Format format) {
  args.spec.dedupe_affine = !args.no_dedupe;
  args.spec.validate();
  std::vector<CollisionRecord> records;
  if (args.serial) {
    records = find_collisions_serial(args.spec);
  } else {
    SearchOptions options;
    options.workers = args.workers;
    options.checkpoint = args.resume;
    records = find_collisions(args.spec, options);
  }

  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw Error("cannot write " + args.out);
  }
  std::ostream& out = args.out.empty() ? std::cout : file;
  for (const auto& r : records) {
    if (format == Format::text)
      out << to_string(r.first) << "  |  " << to_string(r.second) << "  (k = " << r.k << ")\n";
    else
      out << to_json_line(r) << '\n';
  }
  std::cerr << records.size() << " collision" << (records.size() == 1 ? "" : "s") << " found\n";
  return records.empty() ? kNegative : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ksumlab: exact k-sum multiset toolkit"};
  app.require_subcommand(1);
  Format format = Format::text;

  SetInput ksums_input;
  unsigned ksums_k = 0;
  auto* ksums_cmd = app.add_subcommand("ksums", "Print the sorted k-sum multiset");
  add_set_input(ksums_cmd, ksums_input, "Set literal, e.g. \"-1 0^10 1\"");
  ksums_cmd->add_option("-k", ksums_k, "Summand count")->required();
  add_format(ksums_cmd, format);

  SetInput collide_input;
  unsigned collide_k = 0;
  auto* collide_cmd = app.add_subcommand("collide", "Compare the k-sum multisets of two sets");
  add_set_input(collide_cmd, collide_input, "Two set literals");
  collide_cmd->add_option("-k", collide_k, "Summand count")->required();
  add_format(collide_cmd, format);

  ExpandArgs expand;
  auto* expand_cmd = app.add_subcommand("expand", "E_p as a polynomial in power sums");
  expand_cmd->add_option("-p", expand.p, "Power")->required();
  expand_cmd->add_option("-k", expand.k, "Summand count")->capture_default_str();
  expand_cmd->add_option("-n", expand.n, "Set size")->capture_default_str();
  expand_cmd->add_flag("--s1zero", expand.s1_zero, "Substitute S1 = 0");
  expand_cmd->add_flag("--raw", expand.raw, "Keep S_m with m > n unreduced");
  expand_cmd->add_flag("--all", expand.all, "Print E1..Ep");
  expand_cmd->add_flag("--check-paper", expand.check,
                       "Compare against the reference identity table (k = 4, n = 12, S1 = 0)");
  add_format(expand_cmd, format);

  bool verify = false;
  bool example1 = false;
  std::string second_root_set;
  std::string residual_set;
  auto* elim_cmd = app.add_subcommand("eliminate", "Elimination down to the quadratic in S6");
  auto* verify_opt = elim_cmd->add_flag("--verify-coefficients", verify, "Check the S6-quadratic coefficients");
  auto* example_opt = elim_cmd->add_flag("--example1", example1, "Roots for E_odd = 0, E_even = 240");
  auto* second_opt = elim_cmd->add_option("--second-root", second_root_set, "Closed-form S6'' for a 12-element set");
  auto* residual_opt = elim_cmd->add_option("--residuals", residual_set, "Residual relations for a 12-element set");
  for (auto* opt : {verify_opt, example_opt, second_opt, residual_opt})
    for (auto* other : {verify_opt, example_opt, second_opt, residual_opt})
      if (opt != other) opt->excludes(other);
  add_format(elim_cmd, format);

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Exhaustive collision search (JSON lines)");
  search_cmd->add_option("-n", search.spec.n, "Set size")->required();
  search_cmd->add_option("-k", search.spec.k, "Summand count")->required();
  search_cmd->add_option("-b,--bound", search.spec.bound, "Values drawn from 0..bound")->required();
  search_cmd->add_flag("--symmetric", search.spec.symmetric_only, "Only negation-symmetric sets");
  search_cmd->add_option("--workers", search.workers, "Worker threads (0 = default)");
  search_cmd->add_option("--resume", search.resume, "Checkpoint file to resume from and append to");
  search_cmd->add_option("--out", search.out, "Write records here instead of stdout");
  search_cmd->add_flag("--no-dedupe", search.no_dedupe, "Keep affinely equivalent records");
  search_cmd->add_flag("--serial", search.serial, "Use the serial reference implementation");
  Format search_format = Format::json;
  search_cmd->add_option("--format", search_format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::text}, {"json", Format::json}}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (ksums_cmd->parsed()) return cmd_ksums(ksums_input, ksums_k, format);
    if (collide_cmd->parsed()) return cmd_collide(collide_input, collide_k, format);
    if (expand_cmd->parsed()) return cmd_expand(expand, format);
    if (elim_cmd->parsed()) {
      if (verify) return eliminate_verify(format);
      if (example1) return eliminate_example1(format);
      if (!second_root_set.empty()) return eliminate_second_root(second_root_set, format);
      if (!residual_set.empty()) return eliminate_residuals(residual_set, format);
      std::cerr << "eliminate: choose one of --verify-coefficients, --example1, --second-root, --residuals\n";
      return kUsage;
    }
    if (search_cmd->parsed()) return cmd_search(search, search_format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
