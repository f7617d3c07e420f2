// Built-in regression table: every published identity of the reference
// system (substitution images, matrices, frequencies, correlation vectors,
// ergodic data, rays, vanishing coefficients) checked exactly. `quick` skips
// the large brute-force prefix counts.
#pragma once

#include <string>
#include <vector>

namespace difflab {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;  // set on failure
};

std::vector<Check> run_paper_checks(bool quick);

}  // namespace difflab
