#include "qforge/recipe_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qforge/error.hpp"

namespace qforge {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "complex number must be [re, im]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

template <int N>
json vector_json(const Eigen::Matrix<Complex, N, 1>& v) {
    json a = json::array();
    for (int i = 0; i < N; ++i) a.push_back(complex_json(v(i)));
    return a;
}

template <int N>
Eigen::Matrix<Complex, N, 1> vector_from(const json& j) {
    if (!j.is_array() || j.size() != N) {
        throw Error(ErrorCode::ParseError, "expected " + std::to_string(N) + " complex entries");
    }
    Eigen::Matrix<Complex, N, 1> v;
    for (int i = 0; i < N; ++i) v(i) = complex_from(j.at(i));
    return v;
}

const char* arm_name(Arm a) { return a == Arm::A ? "A" : "B"; }

Arm arm_from(const json& j) {
    std::string s = j.get<std::string>();
    if (s == "A") return Arm::A;
    if (s == "B") return Arm::B;
    throw Error(ErrorCode::ParseError, "arm must be \"A\" or \"B\", got \"" + s + "\"");
}

json stage_json(const Stage& st) {
    json j;
    if (auto* u = std::get_if<LocalUnitaryStage>(&st)) {
        j["kind"] = "unitary";
        j["arm"] = arm_name(u->arm);
        const Mat2& m = u->unitary.matrix();
        j["params"] = {{"matrix", json::array({complex_json(m(0, 0)), complex_json(m(0, 1)),
                                               complex_json(m(1, 0)), complex_json(m(1, 1))})}};
    } else if (auto* w = std::get_if<WaveplateStage>(&st)) {
        j["kind"] = "waveplate";
        j["arm"] = arm_name(w->arm);
        j["params"] = {{"retardance", w->waveplate.retardance}, {"axis_angle", w->waveplate.axis_angle}};
    } else {
        const auto& d = std::get<DecohererStage>(st);
        j["kind"] = "decoherer";
        j["arm"] = arm_name(d.arm);
        j["params"] = {{"length", d.decoherer.length},
                       {"delta_n", d.decoherer.delta_n},
                       {"axis", d.decoherer.axis == Polarization::H ? "H" : "V"},
                       {"base_index", d.decoherer.base_index}};
    }
    return j;
}

Stage stage_from(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    Arm arm = arm_from(j.at("arm"));
    const json& p = j.at("params");
    if (kind == "unitary") {
        Vec4 e = vector_from<4>(p.at("matrix"));
        Mat2 m;
        m << e(0), e(1), e(2), e(3);
        return LocalUnitaryStage{arm, SingleQubitUnitary::from_matrix(m, 1e-10)};
    }
    if (kind == "waveplate") {
        WaveplateSpec w{p.at("retardance").get<double>(), p.at("axis_angle").get<double>()};
        validate(w);
        return WaveplateStage{arm, w};
    }
    if (kind == "decoherer") {
        std::string axis = p.at("axis").get<std::string>();
        if (axis != "H" && axis != "V") throw Error(ErrorCode::ParseError, "decoherer axis must be H or V");
        DecohererSpec d{p.at("length").get<double>(), p.at("delta_n").get<double>(),
                        axis == "H" ? Polarization::H : Polarization::V, p.at("base_index").get<double>()};
        validate(d);
        return DecohererStage{arm, d};
    }
    throw Error(ErrorCode::ParseError, "unknown stage kind \"" + kind + "\"");
}

json seed_json(const Seed& s) {
    if (auto* src = std::get_if<SpdcSourceSpec>(&s)) return {{"theta", src->theta}, {"phi", src->phi}};
    if (auto* p = std::get_if<PureState2Q>(&s)) return {{"amps", vector_json<4>(p->amplitudes())}};
    const auto& ps = std::get<PumpSplit>(s);
    return {{"pump_upper", vector_json<2>(ps.upper)},
            {"pump_lower", vector_json<2>(ps.lower)},
            {"lower_path_phase", ps.lower_path_phase},
            {"hwp_arm", arm_name(ps.hwp_arm)}};
}

Seed seed_from(const json& j) {
    if (j.contains("theta")) {
        SpdcSourceSpec s{j.at("theta").get<double>(), j.at("phi").get<double>()};
        validate(s);
        return s;
    }
    if (j.contains("amps")) return PureState2Q::from_amplitudes(vector_from<4>(j.at("amps")));
    if (j.contains("pump_upper")) {
        PumpSplit ps;
        ps.upper = vector_from<2>(j.at("pump_upper"));
        ps.lower = vector_from<2>(j.at("pump_lower"));
        ps.lower_path_phase = j.at("lower_path_phase").get<double>();
        ps.hwp_arm = arm_from(j.at("hwp_arm"));
        return ps;
    }
    throw Error(ErrorCode::ParseError, "seed must hold {theta, phi}, {amps} or a pump split");
}

}  // namespace

std::string serialize_recipe(const Recipe& r) {
    json j;
    j["version"] = kRecipeVersion;
    j["scheme"] = to_string(r.scheme);
    j["spectral_model"] = {{"delta_eps", r.config.spectral.delta_eps},
                           {"omega", r.config.spectral.omega},
                           {"delta_n", r.config.delta_n},
                           {"base_index", r.config.base_index}};
    json branches = json::array();
    for (const auto& b : r.branches) {
        json stages = json::array();
        for (const auto& st : b.stages) stages.push_back(stage_json(st));
        branches.push_back({{"weight", b.weight},
                            {"timing_tag", b.timing_tag},
                            {"pump_transmission", b.pump_transmission},
                            {"seed", seed_json(b.seed)},
                            {"stages", stages}});
    }
    j["branches"] = branches;
    j["notes"] = r.notes;
    return j.dump(2) + "\n";
}

Recipe parse_recipe(const std::string& text) {
    try {
        json j = json::parse(text);
        int version = j.at("version").get<int>();
        if (version != kRecipeVersion) {
            throw Error(ErrorCode::ParseError, "unsupported recipe version " + std::to_string(version));
        }
        Recipe r;
        r.scheme = parse_scheme(j.at("scheme").get<std::string>());
        const json& sm = j.at("spectral_model");
        r.config.spectral.delta_eps = sm.at("delta_eps").get<double>();
        r.config.spectral.omega = sm.at("omega").get<double>();
        r.config.delta_n = sm.at("delta_n").get<double>();
        r.config.base_index = sm.value("base_index", 1.5);
        validate(r.config.spectral);
        for (const json& bj : j.at("branches")) {
            Branch b;
            b.weight = bj.at("weight").get<double>();
            b.timing_tag = bj.at("timing_tag").get<int>();
            b.pump_transmission = bj.value("pump_transmission", 1.0);
            b.seed = seed_from(bj.at("seed"));
            for (const json& sj : bj.at("stages")) b.stages.push_back(stage_from(sj));
            r.branches.push_back(std::move(b));
        }
        if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("recipe: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidArgument) throw Error(ErrorCode::ParseError, e.what());
        throw;
    }
}

void write_recipe_file(const std::string& path, const Recipe& r) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << serialize_recipe(r);
}

Recipe read_recipe_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open recipe '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_recipe(ss.str());
}

}  // namespace qforge
