#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "bubblescat/cli.hpp"
#include "bubblescat/diagnostics.hpp"
#include "bubblescat/report.hpp"
#include "bubblescat/solver2d.hpp"
#include "bubblescat/solver3d.hpp"
#include "bubblescat/verify.hpp"

namespace py = pybind11;
using namespace bubblescat;

namespace {

py::object to_python(const json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

IncidentForm parse_form(const std::string& s) {
    if (s == "gradient") return IncidentForm::Gradient;
    if (s == "layer") return IncidentForm::LayerHarmonic;
    throw py::value_error("form must be 'gradient' or 'layer'");
}

ExteriorModel parse_model(const std::string& s) {
    if (s == "profile") return ExteriorModel::RadialProfile;
    if (s == "exact") return ExteriorModel::ExactLayer;
    throw py::value_error("model must be 'profile' or 'exact'");
}

std::vector<cplx> to_list(const Vec3c& v) { return {v[0], v[1], v[2]}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Modal solvers and stress-concentration diagnostics";

    py::register_exception<NearResonanceError>(m, "NearResonanceError", PyExc_ArithmeticError);

    py::class_<LogComplex>(m, "LogComplex")
        .def(py::init<cplx>())
        .def_property_readonly("log10_magnitude", &LogComplex::log10_magnitude)
        .def_property_readonly("phase", &LogComplex::phase)
        .def_property_readonly("is_zero", &LogComplex::is_zero)
        .def("value", &LogComplex::value)
        .def("__repr__", [](const LogComplex& z) { return "LogComplex(" + format_magnitude(z) + ")"; });

    py::class_<PhysicalMedium>(m, "PhysicalMedium")
        .def(py::init<>())
        .def_readwrite("rho_b", &PhysicalMedium::rho_b)
        .def_readwrite("kappa", &PhysicalMedium::kappa)
        .def_readwrite("rho_e", &PhysicalMedium::rho_e)
        .def_readwrite("lambda_t", &PhysicalMedium::lambda_t)
        .def_readwrite("mu_t", &PhysicalMedium::mu_t)
        .def_readwrite("omega", &PhysicalMedium::omega)
        .def_readwrite("l_D", &PhysicalMedium::l_D)
        .def("validate", &PhysicalMedium::validate)
        .def("to_dict", [](const PhysicalMedium& p) { return to_python(to_json(p)); });

    py::class_<NondimensionalMedium>(m, "NondimensionalMedium")
        .def_readonly("k", &NondimensionalMedium::k)
        .def_readonly("tau", &NondimensionalMedium::tau)
        .def_readonly("delta", &NondimensionalMedium::delta)
        .def_readonly("lam", &NondimensionalMedium::lambda)
        .def_readonly("mu", &NondimensionalMedium::mu)
        .def_readonly("k_p", &NondimensionalMedium::k_p)
        .def_readonly("k_s", &NondimensionalMedium::k_s)
        .def_readonly("k_s_half_mu", &NondimensionalMedium::k_s_half_mu)
        .def_readonly("c_b", &NondimensionalMedium::c_b)
        .def("to_dict", [](const NondimensionalMedium& nm) { return to_python(to_json(nm)); });

    m.def("pdms_medium", &pdms_medium);
    m.def("nondimensionalize", &nondimensionalize);
    m.def("make_nondimensional", &make_nondimensional, py::arg("k"), py::arg("tau"), py::arg("delta"), py::arg("mu"));
    m.def("pdms_rounded_nondimensional", &pdms_rounded_nondimensional);
    m.def("check_regime", [](const NondimensionalMedium& nm) {
        std::vector<std::string> out;
        for (auto w : check_regime(nm)) out.push_back(to_string(w));
        return out;
    });

    py::class_<ModalSolution3D>(m, "ModalSolution3D")
        .def_readonly("phi_e", &ModalSolution3D::phi_e)
        .def_readonly("phi_b", &ModalSolution3D::phi_b)
        .def_readonly("determinant", &ModalSolution3D::determinant)
        .def_readonly("near_singular", &ModalSolution3D::near_singular)
        .def_readonly("incident_norm", &ModalSolution3D::incident_norm)
        .def_property_readonly("n", [](const ModalSolution3D& s) { return s.incident.n; })
        .def("incident", [](const ModalSolution3D& s, const Vec3& x) { return to_list(eval_incident(s, x).value()); })
        .def("interior", [](const ModalSolution3D& s, const Vec3& x) { return eval_interior(s, x).value(); })
        .def(
            "total_exterior",
            [](const ModalSolution3D& s, const Vec3& x, const std::string& model) {
                return to_list(eval_total_exterior(s, x, parse_model(model)).value());
            },
            py::arg("x"), py::arg("model") = "profile")
        .def(
            "stress_density",
            [](const ModalSolution3D& s, const Vec3& x, const std::string& model) {
                return stress_density(eval_total_exterior(s, x, parse_model(model)), s.medium);
            },
            py::arg("x"), py::arg("model") = "profile");

    m.def(
        "solve_3d",
        [](int n, std::optional<int> mm, cplx amplitude, bool normalized, const std::string& form,
           std::optional<NondimensionalMedium> medium) {
            auto nm = medium ? *medium : nondimensionalize(pdms_medium());
            return solve_modes(IncidentSpec3D::single(n, mm.value_or(n), amplitude, normalized, parse_form(form)), nm);
        },
        py::arg("n"), py::arg("m") = py::none(), py::arg("amplitude") = cplx(1.0), py::arg("normalized") = true,
        py::arg("form") = "gradient", py::arg("medium") = py::none(),
        "Solve one incident mode; m defaults to n and the medium to PDMS.");

    py::class_<ModalSolution2D>(m, "ModalSolution2D")
        .def_readonly("a", &ModalSolution2D::a)
        .def_readonly("b", &ModalSolution2D::b)
        .def_readonly("c", &ModalSolution2D::c)
        .def_readonly("condition_number", &ModalSolution2D::condition_number)
        .def_readonly("system_residual", &ModalSolution2D::system_residual)
        .def_readonly("incident_norm", &ModalSolution2D::incident_norm)
        .def("fields", [](const ModalSolution2D& s, const Vec2& x) {
            auto f = eval_fields_2d(s, x);
            py::dict d;
            d["exterior"] = f.exterior;
            auto inc = f.incident.value();
            d["incident"] = std::vector<cplx>{inc[0], inc[1]};
            if (f.exterior) {
                auto t = f.total.value();
                d["total"] = std::vector<cplx>{t[0], t[1]};
                d["stress_density"] = f.stress_density;
            } else {
                d["interior"] = f.interior.value();
            }
            return d;
        });

    m.def(
        "solve_2d",
        [](int n, cplx amplitude, bool normalized, std::optional<NondimensionalMedium> medium) {
            IncidentSpec2D s;
            s.n = n;
            s.amplitude = amplitude;
            s.normalized = normalized;
            return solve_modes_2d(s, medium ? *medium : nondimensionalize(pdms_medium()));
        },
        py::arg("n"), py::arg("amplitude") = cplx(1.0), py::arg("normalized") = true, py::arg("medium") = py::none());

    m.def(
        "localization_ratios",
        [](const ModalSolution3D& s, double zeta1, double zeta2, double R, const std::string& model) {
            ShellOptions opt;
            opt.model = parse_model(model);
            auto l = localization_ratios(s, ShellRegion{zeta1, zeta2, R}, ShellMethod::ModalClosedForm, opt);
            return std::make_pair(l.eta_u, l.eta_us);
        },
        py::arg("solution"), py::arg("zeta1") = 0.9, py::arg("zeta2") = 1.1, py::arg("R") = 2.0,
        py::arg("model") = "profile");
    m.def(
        "localization_ratios_2d",
        [](const ModalSolution2D& s, double zeta1, double zeta2, double R) {
            auto l = localization_ratio_2d(s, zeta1, zeta2, R);
            return std::make_pair(l.eta_u, l.eta_us);
        },
        py::arg("solution"), py::arg("zeta1") = 0.9, py::arg("zeta2") = 1.1, py::arg("R") = 2.0);

    m.def("stress_lower_bound", &stress_lower_bound, py::arg("n"), py::arg("zeta2"), py::arg("medium"));

    m.def(
        "diagnostics",
        [](const ModalSolution3D& s, double zeta1, double zeta2, double R, double eta, double M, bool cross_check,
           const std::string& model) {
            DiagnosticsOptions opt;
            opt.eta = eta;
            opt.M = M;
            opt.cross_check = cross_check;
            opt.shell.model = parse_model(model);
            return to_python(to_json(run_diagnostics(s, ShellRegion{zeta1, zeta2, R}, opt)));
        },
        py::arg("solution"), py::arg("zeta1") = 0.9, py::arg("zeta2") = 1.1, py::arg("R") = 2.0,
        py::arg("eta") = 0.01, py::arg("M") = 1e3, py::arg("cross_check") = false, py::arg("model") = "profile",
        "Full diagnostics report as a dict.");

    m.def(
        "property_suites",
        [](const std::string& filter) {
            py::list out;
            for (const auto& r : run_property_suites(filter)) {
                py::dict d;
                d["name"] = r.name;
                d["measured"] = r.measured;
                d["threshold"] = r.threshold;
                d["pass"] = r.pass;
                out.append(d);
            }
            return out;
        },
        py::arg("filter") = "");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
