#pragma once

// Physical defaults shared by the CLI and examples.

#include <cstdint>
#include <string>

#include "qforge/compilers.hpp"

namespace qforge {

struct PhysicalDefaults {
    double pump_wavelength_nm = 351.0;
    double l_si_um = 100.0;
    double delta_n = 0.009;
    double base_index = 1.5;
    int grid_n = kDefaultGridPoints;

    PhysicalConfig physical() const;
};

/// Built-in values, overridden by the JSON file named in QFORGE_DEFAULTS if set.
PhysicalDefaults load_defaults();
/// Reads a JSON object with any of the PhysicalDefaults field names.
PhysicalDefaults load_defaults_file(const std::string& path, PhysicalDefaults base = {});

}  // namespace qforge
