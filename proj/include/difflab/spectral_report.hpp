// Serialization of spectral reports: human-readable text and JSON with all
// fractions kept exact as "p/q" strings.
#pragma once

#include "difflab/correlation.hpp"

#include <iosfwd>
#include <string>

namespace difflab {

void write_report_text(std::ostream& out, const SpectralReport& rep);
std::string report_json(const SpectralReport& rep);  // pretty-printed, stable key order

}  // namespace difflab
