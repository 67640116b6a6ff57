#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qforge/cli.hpp"
#include "qforge/compilers.hpp"
#include "qforge/config.hpp"
#include "qforge/random.hpp"
#include "qforge/recipe_io.hpp"
#include "qforge/synth_pure.hpp"

namespace py = pybind11;
using namespace qforge;

namespace {

DensityMatrix2Q density(const Mat4& m) { return validate_density(m); }

PhysicalConfig config_from(std::optional<double> delta_n, std::optional<double> l_si,
                           std::optional<double> pump_wavelength) {
    PhysicalDefaults d = load_defaults();
    if (delta_n) d.delta_n = *delta_n;
    if (l_si) d.l_si_um = *l_si;
    if (pump_wavelength) d.pump_wavelength_nm = *pump_wavelength;
    return d.physical();
}

// target: a 4x4 matrix or a family spec string such as "werner:0.5".
Recipe compile_any(const std::string& scheme_name, const py::object& target, const PhysicalConfig& cfg) {
    Scheme scheme = parse_scheme(scheme_name);
    if (py::isinstance<py::str>(target)) return compile_family(scheme, parse_family_spec(target.cast<std::string>()), cfg);
    return compile_density(scheme, density(target.cast<Mat4>()), cfg);
}

SimulationMode mode_of(bool analytic) { return analytic ? SimulationMode::Analytic : SimulationMode::Grid; }

}  // namespace

PYBIND11_MODULE(_qforge, m) {
    m.doc() = "Two-photon polarization state synthesis";
    py::register_exception<Error>(m, "QforgeError", PyExc_ValueError);

    m.def("mems", [](double r) { return mems(r).matrix(); }, py::arg("r"));
    m.def("werner", [](double r) { return werner(r).matrix(); }, py::arg("r"));
    m.def("collins_gisin", [](double l, double t) { return collins_gisin(l, t).matrix(); }, py::arg("lam"),
          py::arg("theta"));
    m.def("bell_diagonal", [](double a, double b, double c, double d) { return bell_diagonal(a, b, c, d).matrix(); });
    m.def("family_d1", [](const Vec4& amps, Complex f) { return family_d1(amps, f).matrix(); }, py::arg("amps"),
          py::arg("f"));
    m.def("mems_boundary_tangle", &mems_boundary_tangle, py::arg("linear_entropy"));

    m.def("random_density", [](std::uint64_t seed) { return StateSampler(seed).density().matrix(); }, py::arg("seed"));
    m.def("random_pure", [](std::uint64_t seed) { return StateSampler(seed).pure().amplitudes(); }, py::arg("seed"));

    m.def("fidelity", [](const Mat4& a, const Mat4& b) { return fidelity(density(a), density(b)); });
    m.def("tangle", [](const Mat4& a) { return tangle(density(a)); });
    m.def("concurrence", [](const Mat4& a) { return concurrence(density(a)); });
    m.def("linear_entropy", [](const Mat4& a) { return linear_entropy(density(a)); });
    m.def("purity", [](const Mat4& a) { return purity(density(a)); });
    m.def("ppt_separable", [](const Mat4& a) { return ppt_separable(density(a)); });
    m.def("canonical_decompose", [](const Mat4& a) {
        CanonicalDecomposition cd = canonical_decompose(density(a));
        std::vector<Vec4> states;
        for (const auto& s : cd.eigenstates) states.push_back(s.amplitudes());
        return py::make_tuple(cd.eigenvalues, states);
    });

    py::class_<PureRecipe>(m, "PureRecipe")
        .def_property_readonly("branch", [](const PureRecipe& r) { return std::string(to_string(r.branch)); })
        .def_property_readonly("theta", [](const PureRecipe& r) { return r.source.theta; })
        .def_property_readonly("phi", [](const PureRecipe& r) { return r.source.phi; })
        .def_property_readonly("u_a", [](const PureRecipe& r) { return r.u_a.matrix(); })
        .def_property_readonly("u_b", [](const PureRecipe& r) { return r.u_b.matrix(); })
        .def_property_readonly("waveplate_angles",
                               [](const PureRecipe& r) {
                                   auto angles = [](const WaveplateTriple& t) {
                                       return std::array<double, 3>{t.first.axis_angle, t.second.axis_angle,
                                                                    t.third.axis_angle};
                                   };
                                   return py::make_tuple(angles(r.waveplates_a), angles(r.waveplates_b));
                               })
        .def("forward", &PureRecipe::forward);
    m.def("solve_pure", [](const Vec4& amps) { return solve_pure(PureState2Q::from_amplitudes(amps)); },
          py::arg("amps"));

    py::class_<Recipe>(m, "Recipe")
        .def_property_readonly("scheme", [](const Recipe& r) { return std::string(to_string(r.scheme)); })
        .def_property_readonly("weights",
                               [](const Recipe& r) {
                                   std::vector<double> w;
                                   for (const auto& b : r.branches) w.push_back(b.weight);
                                   return w;
                               })
        .def_property_readonly("notes", [](const Recipe& r) { return r.notes; })
        .def("simulate",
             [](const Recipe& r, bool analytic, int grid_n) {
                 return simulate_recipe(r, mode_of(analytic), grid_n).matrix();
             },
             py::arg("analytic") = false, py::arg("grid_n") = kDefaultGridPoints)
        .def("cost",
             [](const Recipe& r) {
                 ResourceCount c = recipe_cost(r);
                 return py::dict(py::arg("nlc") = c.nlc, py::arg("other_optics") = c.other_optics,
                                 py::arg("controllable_params") = c.controllable_params);
             })
        .def("to_json", &serialize_recipe)
        .def_static("from_json", &parse_recipe, py::arg("text"));

    m.def(
        "compile",
        [](const std::string& scheme, const py::object& target, std::optional<double> delta_n,
           std::optional<double> l_si, std::optional<double> pump_wavelength) {
            return compile_any(scheme, target, config_from(delta_n, l_si, pump_wavelength));
        },
        py::arg("scheme"), py::arg("target"), py::kw_only(), py::arg("delta_n") = py::none(),
        py::arg("l_si") = py::none(), py::arg("pump_wavelength") = py::none());

    m.def(
        "analytic_f",
        [](double l1, double l2, double delta_n, double l_si, double pump_wavelength) {
            SpectralModel sm = SpectralModel::from_lengths(l_si, pump_wavelength);
            return analytic_f(DecohererSpec{l1, delta_n}, DecohererSpec{l2, delta_n}, sm);
        },
        py::arg("l1"), py::arg("l2"), py::arg("delta_n") = 0.009, py::arg("l_si") = 100.0,
        py::arg("pump_wavelength") = 351.0);
    m.def(
        "invert_f",
        [](double target, double delta_n, double l_si, double pump_wavelength) {
            DecohererLengths d = invert_f(target, SpectralModel::from_lengths(l_si, pump_wavelength), delta_n);
            return py::make_tuple(d.l1, d.l2);
        },
        py::arg("target_abs_f"), py::arg("delta_n") = 0.009, py::arg("l_si") = 100.0,
        py::arg("pump_wavelength") = 351.0);
}
