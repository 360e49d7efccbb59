#include "ksumlab/identity_fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ksumlab/errors.hpp"

namespace ksumlab {

namespace detail {
extern const std::string_view kReferenceIdentities;
}

std::vector<IdentityFixture> parse_identity_fixtures(std::istream& in) {
  std::vector<IdentityFixture> out;
  std::string line;
  unsigned line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (line[first] != 'E' || eq == std::string::npos)
      throw ParseError("fixture line " + std::to_string(line_no) + ": expected 'E<p> = ...'");
    const std::string head = line.substr(first + 1, eq - first - 1);
    const std::string index = head.substr(0, head.find_last_not_of(" \t") + 1);
    if (index.empty() || index.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("fixture line " + std::to_string(line_no) + ": bad index '" + index + "'");
    out.push_back({static_cast<unsigned>(std::stoul(index)), parse_terms(line.substr(eq + 1))});
  }
  return out;
}

std::string_view embedded_reference_identities() { return detail::kReferenceIdentities; }

std::vector<IdentityFixture> load_reference_identities() {
  if (const char* path = std::getenv("KSUMLAB_FIXTURES"); path != nullptr && *path != '\0') {
    std::ifstream in(path);
    if (!in) throw Error(std::string("cannot open fixture file ") + path);
    return parse_identity_fixtures(in);
  }
  std::istringstream in{std::string(embedded_reference_identities())};
  return parse_identity_fixtures(in);
}

const IdentityFixture* find_fixture(std::span<const IdentityFixture> fixtures, unsigned p) {
  for (const auto& f : fixtures)
    if (f.p == p) return &f;
  return nullptr;
}

std::vector<CoefficientCheck> check_identity(const Polynomial& generated, const TermList& expected) {
  std::vector<CoefficientCheck> checks;
  Polynomial expected_poly;
  std::set<Monomial> mentioned;
  for (const auto& [m, c] : expected) expected_poly.add_term(m, c);
  for (const auto& [m, c] : expected) {
    if (!mentioned.insert(m).second) continue;
    checks.push_back({m, generated.coefficient(m), expected_poly.coefficient(m)});
  }
  for (auto it = generated.terms().rbegin(); it != generated.terms().rend(); ++it)
    if (!mentioned.contains(it->first)) checks.push_back({it->first, it->second, Rational(0)});
  return checks;
}

std::string to_string(const CoefficientCheck& check) {
  return "coef(" + to_string(check.monomial) + ") = " + to_string(check.actual) + " [expected " +
         to_string(check.expected) + "] " + (check.ok() ? "OK" : "MISMATCH");
}

std::string format_identity(unsigned p, const Polynomial& expansion) {
  return "E" + std::to_string(p) + " = " + to_string(expansion);
}

}  // namespace ksumlab
