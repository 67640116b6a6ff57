#include "qforge/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "qforge/compilers.hpp"
#include "qforge/config.hpp"
#include "qforge/matrix_io.hpp"
#include "qforge/random.hpp"
#include "qforge/recipe_io.hpp"

namespace qforge {

namespace {

std::string canonical_family(const std::string& name) {
    if (name == "mems") return "mems";
    if (name == "werner") return "werner";
    if (name == "collins-gisin" || name == "cg") return "collins-gisin";
    if (name == "bell-diagonal" || name == "bell") return "bell-diagonal";
    if (name == "d1") return "d1";
    return {};
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

// Pads cells to a common width per column.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::string s;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
        }
        s += line + "\n";
    }
    return s;
}

std::string cost_table(const Recipe& r) {
    ResourceCount got = recipe_cost(r);
    ResourceCount ref = table_cost(r.scheme);
    return render_table({{"scheme", "NLC", "other_optics", "controllable_params"},
                         {std::string("recipe ") + to_string(r.scheme), std::to_string(got.nlc),
                          std::to_string(got.other_optics), std::to_string(got.controllable_params)},
                         {"table", std::to_string(ref.nlc), std::to_string(ref.other_optics),
                          std::to_string(ref.controllable_params)}});
}

std::string branch_table(const Recipe& r) {
    std::vector<std::vector<std::string>> rows{{"branch", "weight", "timing_tag", "pump_transmission"}};
    for (std::size_t i = 0; i < r.branches.size(); ++i) {
        const Branch& b = r.branches[i];
        rows.push_back({std::to_string(i), fmt6(b.weight), std::to_string(b.timing_tag),
                        fmt6(b.pump_transmission)});
    }
    return render_table(rows);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    f << text;
}

std::string matrix_text(const Mat4& m, const std::string& comment) {
    std::ostringstream ss;
    write_matrix(ss, m, comment);
    return ss.str();
}

DensityMatrix2Q load_density(const std::string& path) { return validate_density(read_matrix_file(path)); }

struct Globals {
    std::uint64_t seed = 0;
    std::optional<double> delta_n, l_si, pump_wavelength;

    PhysicalDefaults defaults() const {
        PhysicalDefaults d = load_defaults();
        if (delta_n) d.delta_n = *delta_n;
        if (l_si) d.l_si_um = *l_si;
        if (pump_wavelength) d.pump_wavelength_nm = *pump_wavelength;
        return d;
    }
};

std::vector<double> parse_reals(const std::string& list) {
    std::vector<double> v;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        double x = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
            throw Error(ErrorCode::InvalidArgument, "bad number '" + tok + "'");
        }
        v.push_back(x);
    }
    return v;
}

int cmd_families(const Globals& g, const std::string& name, const std::vector<double>& params,
                 const std::string& out_path, std::ostream& out) {
    DensityMatrix2Q rho = [&] {
        if (name == "random") return StateSampler(g.seed).density();
        if (name == "random-pure") return DensityMatrix2Q::projector(StateSampler(g.seed).pure());
        return family_density(make_family(name, params));
    }();
    std::string comment = name;
    for (double p : params) comment += " " + fmt_full(p);
    if (name == "random" || name == "random-pure") comment += " seed " + std::to_string(g.seed);
    write_text(out_path, matrix_text(rho.matrix(), comment), out);
    return kExitOk;
}

Recipe compile_target(Scheme scheme, const std::string& target, const PhysicalConfig& cfg) {
    std::string head = target.substr(0, target.find(':'));
    if (is_family_name(head)) return compile_family(scheme, parse_family_spec(target), cfg);
    return compile_density(scheme, load_density(target), cfg);
}

int cmd_compile(const Globals& g, const std::string& scheme, const std::string& target,
                const std::string& out_path, std::ostream& out) {
    Scheme s = parse_scheme(scheme);
    Recipe r = compile_target(s, target, g.defaults().physical());
    write_recipe_file(out_path, r);
    out << "scheme " << to_string(s) << ", " << r.branches.size() << " branch"
        << (r.branches.size() == 1 ? "" : "es") << "\n";
    out << branch_table(r) << cost_table(r);
    return kExitOk;
}

int cmd_simulate(const std::string& recipe_path, const std::string& out_path, int grid_n, bool analytic,
                 std::ostream& out) {
    Recipe r = read_recipe_file(recipe_path);
    SimulationMode mode = analytic ? SimulationMode::Analytic : SimulationMode::Grid;
    DensityMatrix2Q rho = simulate_recipe(r, mode, grid_n);
    std::string comment = std::string("simulated scheme ") + to_string(r.scheme) +
                          (analytic ? " analytic" : " grid " + std::to_string(grid_n));
    write_text(out_path, matrix_text(rho.matrix(), comment), out);
    return kExitOk;
}

std::string metrics_rows(const std::string& label, const DensityMatrix2Q& rho) {
    return label + "tangle " + fmt6(tangle(rho)) + "\n" + label + "linear_entropy " +
           fmt6(linear_entropy(rho)) + "\n" + label + "purity " + fmt6(purity(rho)) + "\n";
}

int cmd_verify(const std::string& target_path, const std::string& produced_path, double min_fidelity,
               std::ostream& out) {
    DensityMatrix2Q target = load_density(target_path);
    DensityMatrix2Q produced = load_density(produced_path);
    double f = fidelity(target, produced);
    char buf[64];
    std::snprintf(buf, sizeof buf, "fidelity %.12g\n", f);
    out << buf << metrics_rows("target ", target) << metrics_rows("produced ", produced);
    bool ok = f >= min_fidelity;
    out << (ok ? "PASS" : "FAIL") << " (min fidelity " << fmt6(min_fidelity) << ")\n";
    return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_metrics(const std::string& path, std::ostream& out) {
    DensityMatrix2Q rho = load_density(path);
    out << metrics_rows("", rho) << "concurrence " << fmt6(concurrence(rho)) << "\n";
    return kExitOk;
}

int cmd_plane(const std::string& name, int steps, double theta, const std::string& out_path,
              std::ostream& out) {
    std::string fam = canonical_family(name);
    if (fam != "mems" && fam != "werner" && fam != "collins-gisin") {
        throw Error(ErrorCode::InvalidArgument, "plane supports mems, werner, collins-gisin; got '" + name + "'");
    }
    if (steps < 2) throw Error(ErrorCode::OutOfRange, "steps must be >= 2, got " + std::to_string(steps));
    std::string csv = "param,tangle,linear_entropy\n";
    for (int i = 0; i < steps; ++i) {
        double p = i == steps - 1 ? 1.0 : static_cast<double>(i) / (steps - 1);
        DensityMatrix2Q rho = fam == "mems"     ? mems(p)
                              : fam == "werner" ? werner(p)
                                                : collins_gisin(p, theta);
        csv += fmt_full(p) + "," + fmt_full(tangle(rho)) + "," + fmt_full(linear_entropy(rho)) + "\n";
    }
    write_text(out_path, csv, out);
    return kExitOk;
}

int cmd_cost(const std::string& recipe_path, std::ostream& out) {
    Recipe r = read_recipe_file(recipe_path);
    out << cost_table(r);
    return kExitOk;
}

}  // namespace

bool is_family_name(const std::string& name) { return !canonical_family(name).empty(); }

FamilyParams make_family(const std::string& name, const std::vector<double>& p) {
    std::string fam = canonical_family(name);
    auto need = [&](std::size_t n) {
        if (p.size() != n) {
            throw Error(ErrorCode::InvalidArgument, fam + " takes " + std::to_string(n) + " parameter(s), got " +
                                                        std::to_string(p.size()));
        }
    };
    if (fam == "mems") {
        need(1);
        return MemsParams{p[0]};
    }
    if (fam == "werner") {
        need(1);
        return WernerParams{p[0]};
    }
    if (fam == "collins-gisin") {
        need(2);
        return CollinsGisinParams{p[0], p[1]};
    }
    if (fam == "bell-diagonal") {
        need(4);
        bell_diagonal(p[0], p[1], p[2], p[3]);
        return BellDiagonalParams{{p[0], p[1], p[2], p[3]}};
    }
    if (fam == "d1") {
        SingleStageParams s;
        if (p.size() == 5) {
            s.amps = Vec4(p[0], p[1], p[2], p[3]);
            s.f = p[4];
        } else if (p.size() == 10) {
            s.amps = Vec4({p[0], p[1]}, {p[2], p[3]}, {p[4], p[5]}, {p[6], p[7]});
            s.f = {p[8], p[9]};
        } else {
            throw Error(ErrorCode::InvalidArgument, "d1 takes 5 real or 10 complex-part parameters");
        }
        family_d1(s.amps, s.f);
        return s;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown family '" + name + "'");
}

FamilyParams parse_family_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) params = parse_reals(spec.substr(colon + 1));
    return make_family(name, params);
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnsupportedTarget: return kExitUnsupported;
        case ErrorCode::TimingCollision: return kExitSimulation;
        default: return kExitBadInput;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qforge: two-photon polarization state synthesis"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    double delta_n = 0, l_si = 0, pump_wl = 0;
    app.add_option("--seed", g.seed, "random seed");
    auto* o_dn = app.add_option("--delta-n", delta_n, "decoherer birefringence");
    auto* o_lsi = app.add_option("--l-si", l_si, "downconversion coherence length (micrometers)");
    auto* o_wl = app.add_option("--pump-wavelength", pump_wl, "pump wavelength (nanometers)");

    std::string fam_name, out_path;
    std::vector<double> fam_params;
    auto* families = app.add_subcommand("families", "write a family density matrix");
    families->add_option("family", fam_name, "mems | werner | collins-gisin | bell-diagonal | d1 | random | random-pure")
        ->required();
    families->add_option("params", fam_params, "family parameters");
    families->add_option("-o,--out", out_path, "output matrix file (default stdout)");

    std::string scheme, target;
    auto* compile = app.add_subcommand("compile", "compile a target into a recipe");
    compile->add_option("scheme", scheme, "I | II | III | IV")->required();
    compile->add_option("target", target, "matrix file or family spec such as werner:0.5")->required();
    compile->add_option("-o,--out", out_path, "output recipe file")->required();

    std::string recipe_path;
    int grid_n = 0;
    bool analytic = false;
    auto* simulate = app.add_subcommand("simulate", "simulate a recipe");
    simulate->add_option("recipe", recipe_path)->required();
    simulate->add_option("-o,--out", out_path, "output matrix file (default stdout)");
    auto* o_grid = simulate->add_option("--grid-n", grid_n, "odd number of frequency samples");
    simulate->add_flag("--analytic", analytic, "closed-form frequency trace");

    std::string produced;
    double min_fidelity = 0.999;
    auto* verify = app.add_subcommand("verify", "compare a produced matrix with a target");
    verify->add_option("target", target)->required();
    verify->add_option("produced", produced)->required();
    verify->add_option("--min-fidelity", min_fidelity, "pass threshold");

    std::string matrix_path;
    auto* metrics = app.add_subcommand("metrics", "tangle, linear entropy and purity of a matrix");
    metrics->add_option("matrix", matrix_path)->required();

    int steps = 0;
    double theta = std::numbers::pi / 4;
    auto* plane = app.add_subcommand("plane", "sweep a family across the tangle-entropy plane");
    plane->add_option("family", fam_name)->required();
    plane->add_option("--steps", steps, "number of samples (>= 2)")->required();
    plane->add_option("--theta", theta, "Collins-Gisin angle");
    plane->add_option("-o,--out", out_path, "output CSV (default stdout)");

    auto* cost = app.add_subcommand("cost", "resource counts of a recipe");
    cost->add_option("recipe", recipe_path)->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: ParseError: " << e.what() << "\n";
        return kExitBadInput;
    }
    if (*o_dn) g.delta_n = delta_n;
    if (*o_lsi) g.l_si = l_si;
    if (*o_wl) g.pump_wavelength = pump_wl;

    try {
        if (*families) return cmd_families(g, fam_name, fam_params, out_path, out);
        if (*compile) return cmd_compile(g, scheme, target, out_path, out);
        if (*simulate) {
            int n = *o_grid ? grid_n : g.defaults().grid_n;
            return cmd_simulate(recipe_path, out_path, n, analytic, out);
        }
        if (*verify) return cmd_verify(target, produced, min_fidelity, out);
        if (*metrics) return cmd_metrics(matrix_path, out);
        if (*plane) return cmd_plane(fam_name, steps, theta, out_path, out);
        if (*cost) return cmd_cost(recipe_path, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: InvalidArgument: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}

}  // namespace qforge
