// Text format for substitution definitions. Grammar (one directive per line,
// '#' comments and blank lines ignored):
//
//   alphabet <letters>          e.g.  alphabet ABCD
//   <letter> -> <image>         e.g.  A -> ABDB     (one line per letter)
//
// Letters are single characters; every letter needs exactly one rule line and
// all images must have equal length. Writing emits the same shape in alphabet
// order, so files round-trip losslessly.
#pragma once

#include "difflab/substitution.hpp"

#include <iosfwd>
#include <string>

namespace difflab {

SubstitutionRule parse_rule_text(std::istream& in);
SubstitutionRule load_rule_file(const std::string& path);

void write_rule_text(std::ostream& out, const SubstitutionRule& rule);
std::string rule_text(const SubstitutionRule& rule);

}  // namespace difflab
