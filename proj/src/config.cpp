#include "qforge/config.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "qforge/error.hpp"

namespace qforge {

PhysicalConfig PhysicalDefaults::physical() const {
    PhysicalConfig cfg;
    cfg.spectral = SpectralModel::from_lengths(l_si_um, pump_wavelength_nm);
    cfg.delta_n = delta_n;
    cfg.base_index = base_index;
    return cfg;
}

PhysicalDefaults load_defaults_file(const std::string& path, PhysicalDefaults base) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open defaults file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, "defaults file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "defaults file must hold a JSON object");
    try {
        base.pump_wavelength_nm = j.value("pump_wavelength_nm", base.pump_wavelength_nm);
        base.l_si_um = j.value("l_si_um", base.l_si_um);
        base.delta_n = j.value("delta_n", base.delta_n);
        base.base_index = j.value("base_index", base.base_index);
        base.grid_n = j.value("grid_n", base.grid_n);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("defaults file: ") + e.what());
    }
    return base;
}

PhysicalDefaults load_defaults() {
    const char* path = std::getenv("QFORGE_DEFAULTS");
    if (path == nullptr || *path == '\0') return {};
    return load_defaults_file(path);
}

}  // namespace qforge
