#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vhi/epd.hpp"
#include "vhi/kernel_identity.hpp"
#include "vhi/operators.hpp"
#include "vhi/special_functions.hpp"

namespace py = pybind11;
using namespace vhi;

namespace {

GridFunction make_grid_function(py::object obj) {
    if (py::isinstance<GridFunction>(obj))
        return obj.cast<GridFunction>();
    if (py::isinstance<py::tuple>(obj) || py::isinstance<py::list>(obj)) {
        auto pair = obj.cast<std::pair<std::vector<double>, std::vector<double>>>();
        return GridFunction(pair.first, pair.second);
    }
    auto fn = obj.cast<std::function<double(double)>>();
    return GridFunction(fn);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Volterra integral operators with Humbert-function kernels";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PoleParameterError>(m, "PoleParameterError", PyExc_ValueError);
    py::register_exception<NotConvergedError>(m, "NotConvergedError", PyExc_ArithmeticError);
    py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);

    py::class_<SeriesControl>(m, "SeriesControl")
        .def(py::init<>())
        .def_readwrite("rel_tol", &SeriesControl::rel_tol)
        .def_readwrite("abs_tol", &SeriesControl::abs_tol)
        .def_readwrite("max_outer_terms", &SeriesControl::max_outer_terms)
        .def_readwrite("max_inner_terms", &SeriesControl::max_inner_terms);

    py::class_<HypergeomValue>(m, "HypergeomValue")
        .def_readonly("value", &HypergeomValue::value)
        .def_readonly("terms_used", &HypergeomValue::terms_used)
        .def_readonly("converged", &HypergeomValue::converged)
        .def_readonly("est_error", &HypergeomValue::est_error)
        .def("__float__", [](const HypergeomValue& v) { return v.value; })
        .def("__repr__", [](const HypergeomValue& v) {
            return "HypergeomValue(" + std::to_string(v.value) + ", converged="
                   + (v.converged ? std::string("True") : std::string("False")) + ")";
        });

    py::enum_<Regime>(m, "Regime")
        .value("TheoremRegime", Regime::TheoremRegime)
        .value("General", Regime::General);

    py::enum_<KernelConvention>(m, "KernelConvention")
        .value("Paper2", KernelConvention::Paper2)
        .value("Applications", KernelConvention::Applications);

    py::class_<Parameters>(m, "Parameters")
        .def(py::init([](double a, double b, double lam) {
                 return Parameters::make(a, b, lam);
             }),
             py::arg("alpha"), py::arg("beta"), py::arg("lambda_") = 0.0)
        .def_readonly("alpha", &Parameters::alpha)
        .def_readonly("beta", &Parameters::beta)
        .def_readonly("lambda_", &Parameters::lambda)
        .def_readonly("regime", &Parameters::regime)
        .def("in_theorem_regime", &Parameters::in_theorem_regime);

    m.def("params_from_degeneracy",
          [](double mm, double nn, double mu) {
              return params_from_degeneracy(DegeneracyInput{mm, nn, mu});
          },
          py::arg("m"), py::arg("n"), py::arg("mu") = 0.0);

    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init([](int n) {
                 QuadratureSpec q;
                 q.n_nodes = n;
                 return q;
             }),
             py::arg("n_nodes") = 64)
        .def_readwrite("n_nodes", &QuadratureSpec::n_nodes);

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init([](py::object obj) { return make_grid_function(obj); }))
        .def("__call__", [](const GridFunction& g, double t) { return g(t); })
        .def("derivative", &GridFunction::derivative);

    // special functions
    m.def("pochhammer", &pochhammer, py::arg("a"), py::arg("k"));
    m.def("gauss_2f1", &gauss_2f1, py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("z"), py::arg("ctrl") = SeriesControl{});
    m.def("humbert_xi2", &humbert_xi2, py::arg("a"), py::arg("b"), py::arg("d"),
          py::arg("u"), py::arg("w"), py::arg("ctrl") = SeriesControl{});
    m.def("f0211", &f0211, py::arg("b"), py::arg("c"), py::arg("d"), py::arg("e"),
          py::arg("g"), py::arg("x"), py::arg("y"), py::arg("ctrl") = SeriesControl{});
    m.def("xi2_system_residual", &xi2_system_residual);
    m.def("f0211_system_residual", &f0211_system_residual);

    py::enum_<ConvergenceRegion>(m, "ConvergenceRegion")
        .value("ConvergesAll", ConvergenceRegion::ConvergesAll)
        .value("ConvergesUnit", ConvergenceRegion::ConvergesUnit)
        .value("ConvergesMixed", ConvergenceRegion::ConvergesMixed)
        .value("Unknown", ConvergenceRegion::Unknown);
    m.def("convergence_classification", &convergence_classification);

    // kernel identity
    m.def("omega",
          [](int k, int n, double z, const Parameters& p, const SeriesControl& c) {
              return omega(k, n, z, p, c);
          },
          py::arg("k"), py::arg("n"), py::arg("z"), py::arg("params"),
          py::arg("ctrl") = SeriesControl{});
    m.def("omega1",
          [](int k, double z, const Parameters& p, const SeriesControl& c) {
              auto o = omega1(k, z, p, c);
              return py::make_tuple(o.value, o.condition);
          },
          py::arg("k"), py::arg("z"), py::arg("params"),
          py::arg("ctrl") = SeriesControl{});
    m.def("w_kernel",
          [](double x, double s, double lam, const Parameters& p,
             const SeriesControl& c, int k_max) {
              auto w = w_kernel(x, s, lam, p, c, k_max);
              return py::make_tuple(w.value, w.condition);
          },
          py::arg("x"), py::arg("s"), py::arg("lambda_"), py::arg("params"),
          py::arg("ctrl") = SeriesControl{}, py::arg("k_max") = 12);
    m.def("tau_prime_expansion",
          [](py::object v, double t, const Parameters& p, const QuadratureSpec& q,
             const SeriesControl& c, KernelConvention conv) {
              return tau_prime_expansion(make_grid_function(v), t, p, q, c, conv);
          },
          py::arg("v"), py::arg("t"), py::arg("params"),
          py::arg("quad") = QuadratureSpec{}, py::arg("ctrl") = SeriesControl{},
          py::arg("convention") = KernelConvention::Applications);

    // operators
    m.def("forward_n",
          [](py::object v, double x, const Parameters& p, const QuadratureSpec& q,
             const SeriesControl& c, KernelConvention conv) {
              return forward_N(make_grid_function(v), x, p, q, c, conv);
          },
          py::arg("v"), py::arg("x"), py::arg("params"),
          py::arg("quad") = QuadratureSpec{}, py::arg("ctrl") = SeriesControl{},
          py::arg("convention") = KernelConvention::Paper2);
    m.def("inverse_t",
          [](py::object tau, double x, const Parameters& p, const QuadratureSpec& q,
             const SeriesControl& c, double dstep, KernelConvention conv) {
              return inverse_T(make_grid_function(tau), x, p, q, c, dstep, conv);
          },
          py::arg("tau"), py::arg("x"), py::arg("params"),
          py::arg("quad") = QuadratureSpec{}, py::arg("ctrl") = SeriesControl{},
          py::arg("dstep") = 1e-3, py::arg("convention") = KernelConvention::Paper2);

    // epd applications
    py::class_<CharPoint>(m, "CharPoint")
        .def(py::init<double, double>(), py::arg("xi"), py::arg("eta"))
        .def_readwrite("xi", &CharPoint::xi)
        .def_readwrite("eta", &CharPoint::eta);
    m.def("char_coords", &char_coords, py::arg("x"), py::arg("y"), py::arg("m"),
          py::arg("n"));
    m.def("char_coords_inverse", [](const CharPoint& p, double mm, double nn) {
        double x, y;
        char_coords_inverse(p, mm, nn, x, y);
        return py::make_tuple(x, y);
    });
    m.def("gamma2", &gamma2, py::arg("beta"));
    m.def("dual_kernel_solution",
          [](const CharPoint& p, py::object fl, py::object fr, const Parameters& prm,
             const QuadratureSpec& q, const SeriesControl& c) {
              return dual_kernel_solution(p, make_grid_function(fl),
                                          make_grid_function(fr), prm, q, c);
          },
          py::arg("p"), py::arg("f_left"), py::arg("f_right"), py::arg("params"),
          py::arg("quad") = QuadratureSpec{}, py::arg("ctrl") = SeriesControl{});
    m.def("recover_t_from_tau",
          [](py::object tau, const std::vector<double>& grid, const Parameters& p,
             const QuadratureSpec& q, const SeriesControl& c, double dstep) {
              GridFunction r = recover_T_from_tau(make_grid_function(tau), grid, p, q,
                                                  c, dstep);
              return r.values();
          },
          py::arg("tau"), py::arg("grid"), py::arg("params"),
          py::arg("quad") = QuadratureSpec{}, py::arg("ctrl") = SeriesControl{},
          py::arg("dstep") = 1e-3);
    m.def("fundamental_relation",
          [](py::object tau, const std::vector<double>& grid, const Parameters& p,
             const QuadratureSpec& q, const SeriesControl& c, double dstep) {
              GridFunction r = fundamental_relation(make_grid_function(tau), grid, p,
                                                    q, c, dstep);
              return r.values();
          },
          py::arg("tau"), py::arg("grid"), py::arg("params"),
          py::arg("quad") = QuadratureSpec{}, py::arg("ctrl") = SeriesControl{},
          py::arg("dstep") = 1e-3);

#ifdef VERSION_INFO
#define VHI_STR(x) #x
#define VHI_XSTR(x) VHI_STR(x)
    m.attr("__version__") = VHI_XSTR(VERSION_INFO);
#else
    m.attr("__version__") = "0.1.0";
#endif
}
