#include "vhi/operators.hpp"

#include <algorithm>
#include <cmath>

#include "vhi/special_functions.hpp"

namespace vhi {

double forward_N(const GridFunction& v, double x, const Parameters& params,
                 const QuadratureSpec& quad, const SeriesControl& ctrl,
                 KernelConvention convention) {
    if (!(x > 0.0 && x <= 1.0))
        throw DomainError("forward_N: x outside (0,1]");
    quad.validate();
    const double a = params.alpha;
    const double b = params.beta;
    const double sgn = convention_sign(convention);
    // weight t^{2a} (x-t)^{-2b}; rest = x^{-a} t^{-a} Xi2 v
    return integrate_jacobi(quad.n_nodes, 2.0 * a, -2.0 * b, 0.0, x, [&](double t) {
        double u = -(x - t) * (x - t) / (4.0 * x * t);
        double w = sgn * params.lambda * (x - t) * (x - t);
        return std::pow(x, -a) * std::pow(t, -a)
               * humbert_xi2(a, 1.0 - a, 1.0 - b, u, w, ctrl).value * v(t);
    });
}

namespace {

// bracketed quantity G(y) = y^a int_0^y t^a (y-t)^{2b} F[...] tau'(t) dt
double inverse_bracket(const GridFunction& tau, double y, const Parameters& params,
                       const QuadratureSpec& quad, const SeriesControl& ctrl,
                       double sgn) {
    const double a = params.alpha;
    const double b = params.beta;
    double integral = integrate_jacobi(quad.n_nodes, 0.0, 2.0 * b, 0.0, y, [&](double t) {
        double u = -(y - t) * (y - t) / (4.0 * y * t);
        double w = sgn * params.lambda * (y - t) * (y - t);
        return std::pow(t, a)
               * f0211(-a, 1.0 + a, b - 0.5, 1.0 + b, b + 0.5, u, w, ctrl).value
               * tau.derivative(t);
    });
    return std::pow(y, a) * integral;
}

} // namespace

double inverse_T(const GridFunction& tau, double x, const Parameters& params,
                 const QuadratureSpec& quad, const SeriesControl& ctrl,
                 double dstep_rel, KernelConvention convention) {
    params.require_theorem_regime("inverse_T");
    quad.validate();
    if (!(dstep_rel > 0.0))
        throw ConfigError("inverse_T: dstep must be positive");
    const double h = dstep_rel * x;
    if (!(x - h > 0.0 && x + h < 1.0))
        throw DomainError("inverse_T: x +/- dstep exits (0,1)");
    const double sgn = convention_sign(convention);

    auto G = [&](double y) {
        return inverse_bracket(tau, y, params, quad, ctrl, sgn);
    };
    // central differences with one Richardson level: O(h^4)
    double d1 = (G(x + h) - G(x - h)) / (2.0 * h);
    double d2 = (G(x + 0.5 * h) - G(x - 0.5 * h)) / h;
    double dG = (4.0 * d2 - d1) / 3.0;

    const double b = params.beta;
    double prefactor = std::sin(2.0 * b * M_PI) / (2.0 * b * M_PI);
    return prefactor * std::pow(x, -2.0 * params.alpha) * dG;
}

GridFunction forward_N_function(const GridFunction& v, const Parameters& params,
                                const QuadratureSpec& quad, const SeriesControl& ctrl,
                                KernelConvention convention) {
    // captures copy v so the returned function owns its inputs
    auto value = [=](double t) {
        return forward_N(v, t, params, quad, ctrl, convention);
    };
    auto deriv = [=](double t) {
        double h = 1e-4 * t;
        return (forward_N(v, t + h, params, quad, ctrl, convention)
                - forward_N(v, t - h, params, quad, ctrl, convention)) / (2.0 * h);
    };
    return GridFunction(value, deriv);
}

GridFunction inverse_T_function(const GridFunction& tau, const Parameters& params,
                                const QuadratureSpec& quad, const SeriesControl& ctrl,
                                double dstep_rel, KernelConvention convention) {
    auto value = [=](double t) {
        return inverse_T(tau, t, params, quad, ctrl, dstep_rel, convention);
    };
    return GridFunction(value);
}

RoundtripReport roundtrip_check(const GridFunction& seed, RoundtripDirection direction,
                                const std::vector<double>& grid, const Parameters& params,
                                const QuadratureSpec& quad, const SeriesControl& ctrl,
                                double dstep_rel, KernelConvention convention) {
    params.require_theorem_regime("roundtrip_check");
    RoundtripReport report;
    report.points = grid;
    report.residuals.resize(grid.size(), 0.0);

    if (direction == RoundtripDirection::TN) {
        GridFunction tau = forward_N_function(seed, params, quad, ctrl, convention);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double got = inverse_T(tau, grid[i], params, quad, ctrl, dstep_rel, convention);
            report.residuals[i] = std::fabs(got - seed(grid[i]));
        }
    } else {
        GridFunction v = inverse_T_function(seed, params, quad, ctrl, dstep_rel, convention);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double got = forward_N(v, grid[i], params, quad, ctrl, convention);
            report.residuals[i] = std::fabs(got - seed(grid[i]));
        }
    }
    report.sup_residual = 0.0;
    for (double r : report.residuals)
        report.sup_residual = std::max(report.sup_residual, r);
    return report;
}

} // namespace vhi
