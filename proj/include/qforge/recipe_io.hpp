#pragma once

// JSON recipe files.
//
// {
//   "version": 1, "scheme": "III",
//   "spectral_model": {"delta_eps", "omega", "delta_n", "base_index"},
//   "branches": [{"weight", "timing_tag", "pump_transmission",
//                 "seed": {"theta", "phi"} | {"amps"} |
//                         {"pump_upper", "pump_lower", "lower_path_phase", "hwp_arm"},
//                 "stages": [{"kind", "arm", "params"}]}],
//   "notes": [...]
// }
//
// Complex numbers are [re, im] pairs. Numbers are written in shortest
// round-trip form, so serialize -> parse -> serialize is byte-identical.

#include <string>

#include "qforge/compilers.hpp"

namespace qforge {

inline constexpr int kRecipeVersion = 1;

std::string serialize_recipe(const Recipe& r);
/// Throws ParseError on malformed documents and validation errors on
/// physically invalid contents.
Recipe parse_recipe(const std::string& text);

void write_recipe_file(const std::string& path, const Recipe& r);
Recipe read_recipe_file(const std::string& path);

}  // namespace qforge
