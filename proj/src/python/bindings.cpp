#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ellkzb/gaugesolve.hpp"
#include "ellkzb/jsonio.hpp"
#include "ellkzb/qoracle.hpp"
#include "ellkzb/special.hpp"
#include "ellkzb/verify.hpp"

namespace py = pybind11;
using namespace ellkzb;

namespace {

Connection make_connection(const std::string& model, int degree,
                           std::optional<std::pair<std::string, std::string>> fiber) {
    Connection c = model_by_name(model, degree);
    if (fiber) c = specialize_fiber_connection(c, rat_parse(fiber->first), rat_parse(fiber->second));
    return c;
}

py::dict solve_gauge_py(const std::string& mode, int degree, const std::string& u0, const std::string& v0) {
    GaugeProblem p;
    p.mode = (mode == "full") ? GaugeMode::full : GaugeMode::inner;
    if (mode != "full" && mode != "inner") throw std::invalid_argument("mode must be 'inner' or 'full'");
    p.degree = degree;
    p.u0 = rat_parse(u0);
    p.v0 = rat_parse(v0);
    SolveResult r = solve_gauge(p);
    py::dict out;
    if (r.obstruction) {
        out["status"] = "obstruction";
        out["degree"] = r.obstruction->degree;
        py::list cs;
        for (const auto& c : r.obstruction->constraints) {
            py::dict e;
            e["constraint"] = c.text;
            e["source"] = c.source;
            cs.append(e);
        }
        out["constraints"] = cs;
    } else {
        out["status"] = "success";
        out["verified"] = r.success->verified;
        out["action_on_S"] = r.success->action_on_s.to_string();
        out["action_on_T"] = r.success->action_on_t.to_string();
        out["notes"] = r.success->notes;
    }
    return out;
}

py::list checks_to_py(const std::vector<CheckResult>& checks) {
    py::list out;
    for (const auto& c : checks) {
        py::dict e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        if (c.tol > 0) {
            e["deviation"] = c.deviation;
            e["tolerance"] = c.tol;
        }
        out.append(e);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact elliptic KZB connection toolkit";

    // free Lie algebra surface
    m.def("lyndon_words", [](int n) { return lyndon_words(n); }, py::arg("n"));
    m.def("witt_dimension", &witt_dimension, py::arg("n"));
    m.def("bracket_string", &bracket_string, py::arg("word"));

    // special-function tables (exact values as strings)
    m.def("bernoulli", [](int n) { return rat_str(bernoulli(n)); }, py::arg("n"));
    m.def(
        "eisenstein_g",
        [](int k, int trunc) {
            std::vector<std::string> out;
            for (const auto& c : eisenstein_G(k, trunc).c) out.push_back(rat_str(c));
            return out;
        },
        py::arg("k"), py::arg("trunc") = 8);
    m.def("p_poly", [](int m2) { return p_poly(m2).to_string(); }, py::arg("m"));
    m.def("P_poly", [](int k) { return P_poly(k).to_string(); }, py::arg("k"));
    m.def("q_poly", [](int n) { return q_poly(n).to_string(); }, py::arg("n"));
    m.def("r_fun", [](int n) { return r_fun(n).to_string(); }, py::arg("n"));

    // connections
    py::class_<Connection>(m, "Connection")
        .def_property_readonly("degree", [](const Connection& c) { return c.degree; })
        .def_property_readonly("model", [](const Connection& c) { return c.model; })
        .def_property_readonly("family",
                               [](const Connection& c) {
                                   return c.family == Family::universal ? "universal" : "single-curve";
                               })
        .def("to_json", [](const Connection& c) { return to_json(c).dump(2); })
        .def("curvature_is_zero", [](const Connection& c) { return curvature(c).is_zero(); })
        .def("residue", [](const Connection& c) { return derivation_pretty(residue_at_identity(c)); })
        .def("pole_order", [](const Connection& c) { return pole_order_at_identity(c); })
        .def("weight_violations", [](const Connection& c) { return weight_violations(c); })
        .def("max_delta_exponent", [](const Connection& c) { return max_delta_exponent(c); })
        .def("specialize_fiber",
             [](const Connection& c, const std::string& u0, const std::string& v0) {
                 return specialize_fiber_connection(c, rat_parse(u0), rat_parse(v0));
             })
        .def("gauge_reg",
             [](const Connection& c) { return gauge_transform(c, g_reg_gauge(c.degree)); })
        .def("__eq__", [](const Connection& a, const Connection& b) { return a == b; })
        .def("__repr__", [](const Connection& c) {
            return "<Connection " + c.model + " degree " + std::to_string(c.degree) + ">";
        });

    m.def("connection", &make_connection, py::arg("model"), py::arg("degree") = 5,
          py::arg("fiber") = py::none());
    m.def("connection_from_json",
          [](const std::string& text) { return connection_from_json(Json::parse(text)); });

    // gauge solver
    m.def("solve_gauge", &solve_gauge_py, py::arg("mode"), py::arg("degree"), py::arg("u0"), py::arg("v0"));

    // numeric oracle
    m.def(
        "numeric_checks", [](double tol) { return checks_to_py(run_numeric_suite(tol)); },
        py::arg("tol") = 0.0);
    m.def(
        "symbolic_checks", [](int degree) { return checks_to_py(run_symbolic_suite(degree)); },
        py::arg("degree") = 5);
    m.def(
        "eval_fzag",
        [](std::complex<double> u, std::complex<double> v, std::complex<double> tau) {
            return qoracle::eval_FZag(u, v, tau);
        },
        py::arg("u"), py::arg("v"), py::arg("tau"));
    m.def(
        "check_curve_relation",
        [](std::complex<double> xi, std::complex<double> tau) { return qoracle::check_curve(xi, tau); },
        py::arg("xi"), py::arg("tau"));
}
