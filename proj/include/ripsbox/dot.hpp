#pragma once

#include "ripsbox/complex.hpp"

#include <string>

namespace ripsbox {

/// DOT export: blocks as nodes, generalized bands as edges; lengths and
/// widths appear as labels (approximate values, decision-free).
std::string export_dot(const BandComplex& Y);

/// JSON-ish stats summary used by the CLI.
std::string export_stats(const BandComplex& Y);

}  // namespace ripsbox
