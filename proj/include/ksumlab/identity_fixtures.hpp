#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ksumlab/polynomial.hpp"

namespace ksumlab {

// One line "E<p> = <polynomial>" of a fixture file, terms as written.
struct IdentityFixture {
  unsigned p = 0;
  TermList terms;
};

// Blank lines and lines starting with '#' are skipped. Throws ParseError.
std::vector<IdentityFixture> parse_identity_fixtures(std::istream& in);

// The tabulated E_p identities for k = 4, n = 12, S1 = 0 (p = 1..12 and 14),
// compiled in from fixtures/reference_identities.txt.
std::string_view embedded_reference_identities();

// Reads the file named by $KSUMLAB_FIXTURES when set, otherwise the embedded table.
std::vector<IdentityFixture> load_reference_identities();

const IdentityFixture* find_fixture(std::span<const IdentityFixture> fixtures, unsigned p);

struct CoefficientCheck {
  Monomial monomial;
  Rational actual;
  Rational expected;
  bool ok() const { return actual == expected; }
};

// One check per expected term (explicit zeros included), then one per
// generated term the fixture does not mention.
std::vector<CoefficientCheck> check_identity(const Polynomial& generated, const TermList& expected);

// "coef(S6) = 0 [expected 0] OK"
std::string to_string(const CoefficientCheck& check);

// "E<p> = <canonical rendering>"
std::string format_identity(unsigned p, const Polynomial& expansion);

}  // namespace ksumlab
