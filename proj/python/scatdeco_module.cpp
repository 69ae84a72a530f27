#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scatdeco/cli.hpp"
#include "scatdeco/constants.hpp"
#include "scatdeco/errors.hpp"
#include "scatdeco/evolution.hpp"
#include "scatdeco/kinematics.hpp"
#include "scatdeco/oracle.hpp"
#include "scatdeco/projection.hpp"
#include "scatdeco/scenarios.hpp"
#include "scatdeco/special_functions.hpp"
#include "scatdeco/units.hpp"

namespace py = pybind11;
using namespace scatdeco;

namespace {

py::dict rates_dict(const ChannelRates& r) {
    py::dict d;
    d["direct"] = r.direct;
    d["compositional"] = r.compositional;
    d["relative_mismatch"] = r.relative_mismatch;
    d["consistent"] = r.consistent;
    d["collision_rate"] = r.collision_rate;
    d["cross_section"] = r.cross_section;
    d["delta_e"] = r.energy.delta_E;
    d["x0"] = r.x0;
    d["r_d_over_a0"] = r.displacement.r_d_over_a0;
    d["validity"] = std::string(to_string(r.displacement.validity));
    d["relativistic_projectile"] = r.relativistic_projectile;
    d["relativistic_recoil"] = r.relativistic_recoil;
    return d;
}

py::dict series_dict(const EvolutionSeries& s) {
    py::dict d;
    d["t"] = s.t;
    d["c_n0"] = s.c_n0;
    d["c_n0_minus_1"] = s.c_n0_minus_1;
    d["deficit"] = s.deficit;
    d["rate"] = s.rate;
    return d;
}

} // namespace

PYBIND11_MODULE(_scatdeco, m) {
    m.doc() = "Decoherence of hydrogenic s-states from sudden nuclear displacement";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.attr("constant_set_version") = std::string(constant_set_version);
    py::dict constants;
    constants["hbar"] = phys.hbar;
    constants["electron_mass"] = phys.electron_mass;
    constants["coulomb_constant"] = phys.coulomb_constant;
    constants["elementary_charge"] = phys.elementary_charge;
    constants["bohr_radius"] = phys.bohr_radius;
    constants["speed_of_light"] = phys.speed_of_light;
    constants["planck_constant"] = phys.planck_constant;
    constants["boltzmann_constant"] = phys.boltzmann_constant;
    constants["electronvolt"] = phys.electronvolt;
    m.attr("constants") = constants;

    m.def("to_si", &to_si, py::arg("value"), py::arg("unit"));
    m.def(
        "convert", [](double value, const std::string& from, const std::string& to) {
            return convert(Quantity(value, from), to).value();
        },
        py::arg("value"), py::arg("from_unit"), py::arg("to_unit"));

    m.def("laguerre", &laguerre, py::arg("n"), py::arg("alpha"), py::arg("x"));
    m.def("hydrogenic_radial", &hydrogenic_radial, py::arg("n"), py::arg("k"), py::arg("r"));

    py::class_<AtomSpec>(m, "AtomSpec")
        .def(py::init(&AtomSpec::from_nucleus_mass), py::arg("n0"), py::arg("nucleus_mass") = 1.66e-27)
        .def_property_readonly("n0", &AtomSpec::n0)
        .def_property_readonly("nucleus_mass", &AtomSpec::nucleus_mass)
        .def_property_readonly("reduced_mass", &AtomSpec::reduced_mass)
        .def_property_readonly("k0", &AtomSpec::k0)
        .def("__repr__", [](const AtomSpec& a) {
            std::ostringstream os;
            os << "AtomSpec(n0=" << a.n0() << ", nucleus_mass=" << a.nucleus_mass() << ")";
            return os.str();
        });

    py::class_<Displacement>(m, "Displacement")
        .def_static("from_radius", &Displacement::from_radius, py::arg("atom"), py::arg("r_d"))
        .def_static("from_x0", &Displacement::from_x0, py::arg("atom"), py::arg("x0"))
        .def_static("none", &Displacement::none)
        .def_property_readonly("r_d", &Displacement::r_d)
        .def_property_readonly("x0", &Displacement::x0);

    m.def(
        "coefficients", [](const AtomSpec& a, const Displacement& d) { return single_scatter_coefficients(a, d).coefficients; },
        py::arg("atom"), py::arg("displacement"), "C_1 .. C_n0 after one scatter");
    m.def(
        "coefficients_after", [](const AtomSpec& a, const Displacement& d, int l) {
            return coefficients_after_l(a, d, l).coefficients;
        },
        py::arg("atom"), py::arg("displacement"), py::arg("l"));
    m.def("closed_form_cn0", &closed_form_cn0, py::arg("atom"), py::arg("displacement"), py::arg("l"));
    m.def("closed_form_cn1", &closed_form_cn1, py::arg("atom"), py::arg("displacement"), py::arg("l"));
    m.def("delta_l_transition_probability", &delta_l_transition_probability, py::arg("atom"),
          py::arg("displacement"));

    m.def("interaction_time", &interaction_time, py::arg("atom"));
    m.def(
        "displacement_radius", [](const AtomSpec& a, double delta_e_ev) {
            const auto r = displacement_radius(a, ScatterEnergy::electronvolts(delta_e_ev));
            py::dict d;
            d["tau"] = r.tau;
            d["delta_v"] = r.delta_v;
            d["r_d"] = r.r_d;
            d["r_d_over_a0"] = r.r_d_over_a0;
            d["x0"] = r.displacement(a).x0();
            d["validity"] = std::string(to_string(r.validity));
            d["exceeds_ionization"] = r.exceeds_ionization;
            return d;
        },
        py::arg("atom"), py::arg("delta_e_ev"));
    m.def(
        "survival_sweep", [](double delta_e_ev, int n0_min, int n0_max, double nucleus_mass) {
            const auto sweep = n0_sweep(nucleus_mass, ScatterEnergy::electronvolts(delta_e_ev), n0_min, n0_max);
            py::dict d;
            std::vector<int> n0;
            std::vector<double> p0, p1, rd;
            for (const auto& p : sweep) {
                n0.push_back(p.n0);
                p0.push_back(p.p_n0);
                p1.push_back(p.p_n0_minus_1);
                rd.push_back(p.r_d_over_a0);
            }
            d["n0"] = n0;
            d["p_n0"] = p0;
            d["p_n0_minus_1"] = p1;
            d["r_d_over_a0"] = rd;
            if (const auto peak = interior_maximum(sweep))
                d["interior_maximum"] = peak->n0;
            else
                d["interior_maximum"] = py::none();
            return d;
        },
        py::arg("delta_e_ev"), py::arg("n0_min") = 1, py::arg("n0_max") = 60, py::arg("nucleus_mass") = 1.66e-27);

    m.def("preset_names", [] {
        std::vector<std::string> out;
        for (auto n : preset_names()) out.emplace_back(n);
        return out;
    });
    m.def(
        "preset_config", [](const std::string& name) { return serialize(preset(name)); }, py::arg("name"));
    m.def(
        "scenario_rates", [](const std::string& name, int n0, double nucleus_mass) {
            return rates_dict(channel_rates(AtomSpec::from_nucleus_mass(n0, nucleus_mass), preset(name).channel));
        },
        py::arg("name"), py::arg("n0") = 60, py::arg("nucleus_mass") = 1.66e-27);
    m.def(
        "scenario_survival", [](const std::string& config_or_name, std::vector<double> t, int n0, double nucleus_mass) {
            const bool is_config = config_or_name.find('=') != std::string::npos;
            const auto p = is_config ? parse_scenario(config_or_name) : preset(config_or_name);
            const auto run = channel_survival(AtomSpec::from_nucleus_mass(n0, nucleus_mass), p.channel, t);
            auto d = series_dict(run.series);
            d["rates"] = rates_dict(run.rates);
            return d;
        },
        py::arg("scenario"), py::arg("t"), py::arg("n0") = 60, py::arg("nucleus_mass") = 1.66e-27,
        "Survival series for a preset name or a key = value scenario text");

    m.def(
        "verify", [](bool inject_fault) {
            py::list out;
            auto add = [&](const oracle::VerificationReport& r) {
                py::dict d;
                d["check"] = r.check_name;
                d["grid"] = r.grid_description;
                d["max_relative_error"] = r.max_relative_error;
                d["tolerance"] = r.tolerance;
                d["passed"] = r.passed;
                out.append(d);
            };
            const std::vector<double> xs{0.1, 1.0, 10.0};
            add(oracle::verify_laguerre(20, xs));
            add(oracle::verify_log_factorial(100));
            add(oracle::verify_expansion_identity(10, std::vector<double>{0.1, 0.5}));
            add(oracle::verify_coefficients_vs_quadrature(10, 0.5, inject_fault));
            add(oracle::verify_multiscatter(10, 0.1, 20));
            return out;
        },
        py::arg("inject_fault") = false, "Quick subset of the oracle checks");

    m.def(
        "run_cli", [](std::vector<std::string> args) {
            args.insert(args.begin(), "scatdeco");
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line interface in-process; returns (exit_code, stdout, stderr)");
}
