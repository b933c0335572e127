#include "vhi/epd.hpp"

#include <algorithm>
#include <cmath>

#include "vhi/operators.hpp"
#include "vhi/special_functions.hpp"

namespace vhi {

CharPoint char_coords(double x, double y, double m, double n) {
    if (!(x >= 0.0) || !(y <= 0.0))
        throw DomainError("char_coords: need x >= 0 and y <= 0");
    double gx = 2.0 / (n + 2.0) * std::pow(x, 0.5 * (n + 2.0));
    double gy = 2.0 / (m + 2.0) * std::pow(-y, 0.5 * (m + 2.0));
    return CharPoint{gx - gy, gx + gy};
}

void char_coords_inverse(const CharPoint& p, double m, double n,
                         double& x, double& y) {
    if (!(p.eta >= p.xi))
        throw DomainError("char_coords_inverse: need eta >= xi");
    double gx = 0.5 * (p.eta + p.xi);
    double gy = 0.5 * (p.eta - p.xi);
    x = std::pow(0.5 * (n + 2.0) * gx, 2.0 / (n + 2.0));
    y = -std::pow(0.5 * (m + 2.0) * gy, 2.0 / (m + 2.0));
}

double gamma2(double beta) {
    return std::pow(2.0 * (1.0 - 2.0 * beta), 2.0 * beta - 1.0)
           * std::tgamma(2.0 - 2.0 * beta) / std::tgamma(1.0 - beta);
}

GoursatData make_goursat_data(GridFunction phi, GridFunction nu, GridFunction Phi,
                              const Parameters& params) {
    double c = 2.0 * gamma2(params.beta) * std::cos(params.beta * M_PI);
    GridFunction Psi = GridFunction::linear_combination(c, nu, 1.0, Phi);
    return GoursatData{std::move(phi), std::move(nu), std::move(Phi), std::move(Psi)};
}

namespace {

struct Xi2Args {
    double sigma;
    double rho;
};

Xi2Args kernel_args(double t, const CharPoint& p, double lambda) {
    double sigma = (p.eta - t) * (t - p.xi) / (2.0 * t * (p.eta + p.xi));
    double rho = lambda * (p.eta - t) * (t - p.xi);
    return {sigma, rho};
}

} // namespace

double dual_kernel_solution(const CharPoint& p, const GridFunction& f_left,
                            const GridFunction& f_right, const Parameters& params,
                            const QuadratureSpec& quad, const SeriesControl& ctrl) {
    if (!p.inside_triangle() || !(p.eta <= 1.0))
        throw DomainError("dual_kernel_solution: point outside the triangle");
    if (!(p.xi < p.eta))
        throw DomainError("dual_kernel_solution: need xi < eta strictly");
    quad.validate();
    const double a = params.alpha;
    const double b = params.beta;
    const double lam = params.lambda;

    double total = 0.0;
    if (p.xi > 0.0) {
        // weight t^{2a} (xi-t)^{-b}; rest (eta-t)^{-b} t^{-a} Xi2 f_left
        total += integrate_jacobi(quad.n_nodes, 2.0 * a, -b, 0.0, p.xi, [&](double t) {
            auto [sig, rho] = kernel_args(t, p, lam);
            return std::pow(p.eta - t, -b) * std::pow(t, -a)
                   * humbert_xi2(a, 1.0 - a, 1.0 - b, sig, rho, ctrl).value * f_left(t);
        });
    }
    // weight (t-xi)^{-b} (eta-t)^{-b}; rest t^a Xi2 f_right
    total += integrate_jacobi(quad.n_nodes, -b, -b, p.xi, p.eta, [&](double t) {
        auto [sig, rho] = kernel_args(t, p, lam);
        return std::pow(t, a)
               * humbert_xi2(a, 1.0 - a, 1.0 - b, sig, rho, ctrl).value * f_right(t);
    });
    return std::pow(0.5 * (p.eta + p.xi), -a) * total;
}

namespace {

GridFunction cauchy_right_density(const CauchyData& data, const Parameters& params) {
    if (!data.T)
        throw ConfigError("cauchy_solution: density T not present (recover it first)");
    double cT = 1.0 / (2.0 * std::cos(params.beta * M_PI));
    return GridFunction::linear_combination(cT, *data.T, -gamma2(params.beta), data.nu);
}

} // namespace

double cauchy_solution(const CharPoint& p, const CauchyData& data,
                       const Parameters& params, const QuadratureSpec& quad,
                       const SeriesControl& ctrl) {
    params.require_theorem_regime("cauchy_solution");
    GridFunction N = cauchy_right_density(data, params);
    return dual_kernel_solution(p, *data.T, N, params, quad, ctrl);
}

double goursat_solution(const CharPoint& p, const GoursatData& data,
                        const Parameters& params, const QuadratureSpec& quad,
                        const SeriesControl& ctrl) {
    params.require_theorem_regime("goursat_solution");
    return dual_kernel_solution(p, data.Psi, data.Phi, params, quad, ctrl);
}

GridFunction recover_T_from_tau(const GridFunction& tau, const std::vector<double>& grid,
                                const Parameters& params, const QuadratureSpec& quad,
                                const SeriesControl& ctrl, double dstep_rel) {
    params.require_theorem_regime("recover_T_from_tau");
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = inverse_T(tau, grid[i], params, quad, ctrl, dstep_rel,
                              KernelConvention::Applications);
    return GridFunction(grid, values);
}

GridFunction fundamental_relation(const GridFunction& tau, const std::vector<double>& grid,
                                  const Parameters& params, const QuadratureSpec& quad,
                                  const SeriesControl& ctrl, double dstep_rel) {
    params.require_theorem_regime("fundamental_relation");
    double scale = 1.0 / (2.0 * gamma2(params.beta) * std::cos(params.beta * M_PI));
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = scale * inverse_T(tau, grid[i], params, quad, ctrl, dstep_rel,
                                      KernelConvention::Applications);
    return GridFunction(grid, values);
}

double pde9_residual(const std::function<double(CharPoint)>& u_eval, const CharPoint& p,
                     const Parameters& params, double h) {
    if (!(h > 0.0))
        throw ConfigError("pde9_residual: h must be positive");
    if (!(p.xi - h > 0.0) || !(p.eta + h < 1.0) || !(p.xi + h < p.eta - h))
        throw StencilError("pde9_residual: stencil leaves the triangle");
    auto u = [&](double xi, double eta) { return u_eval(CharPoint{xi, eta}); };
    double upp = u(p.xi + h, p.eta + h), upm = u(p.xi + h, p.eta - h);
    double ump = u(p.xi - h, p.eta + h), umm = u(p.xi - h, p.eta - h);
    double uxp = u(p.xi + h, p.eta), uxm = u(p.xi - h, p.eta);
    double uep = u(p.xi, p.eta + h), uem = u(p.xi, p.eta - h);
    double u00 = u(p.xi, p.eta);

    double u_xieta = (upp - upm - ump + umm) / (4.0 * h * h);
    double u_xi = (uxp - uxm) / (2.0 * h);
    double u_eta = (uep - uem) / (2.0 * h);
    return u_xieta + params.alpha / (p.eta + p.xi) * (u_eta + u_xi)
           - params.beta / (p.eta - p.xi) * (u_eta - u_xi) + params.lambda * u00;
}

// ---------------------------------------------------------------------------
// boundary-data verification: layered quadrature near the diagonal plus
// analytically differentiated kernels for the (11) limit

namespace {

struct DiagonalEvaluator {
    const Parameters& params;
    const SeriesControl& ctrl;
    const GridFunction& T;
    GridFunction N;
    int nn;

    double xi2_val(double sig, double rho) const {
        return humbert_xi2(params.alpha, 1.0 - params.alpha, 1.0 - params.beta,
                           sig, rho, ctrl).value;
    }
    double xi2_du(double sig, double rho) const {
        double a = params.alpha, b = params.beta;
        return a * (1.0 - a) / (1.0 - b)
               * humbert_xi2(a + 1.0, 2.0 - a, 2.0 - b, sig, rho, ctrl).value;
    }
    double xi2_dw(double sig, double rho) const {
        double a = params.alpha, b = params.beta;
        return humbert_xi2(a, 1.0 - a, 2.0 - b, sig, rho, ctrl).value / (1.0 - b);
    }

    // u(xi, eta) with the left integral split at xi - layers*(eta-xi)
    double value(const CharPoint& p) const {
        const double a = params.alpha, b = params.beta, lam = params.lambda;
        const double eps = p.eta - p.xi;
        double total = 0.0;
        double tsplit = p.xi - 20.0 * eps;
        auto left_rest = [&](double t) {
            auto [sig, rho] = kernel_args(t, p, lam);
            return std::pow(p.eta - t, -b) * std::pow(t, -a) * xi2_val(sig, rho) * T(t);
        };
        if (tsplit > 0.05 * p.xi) {
            total += integrate_jacobi(nn, 2.0 * a, 0.0, 0.0, tsplit, [&](double t) {
                return std::pow(p.xi - t, -b) * left_rest(t);
            });
            total += integrate_jacobi(nn, 0.0, -b, tsplit, p.xi, [&](double t) {
                return std::pow(t, 2.0 * a) * left_rest(t);
            });
        } else if (p.xi > 0.0) {
            total += integrate_jacobi(nn, 2.0 * a, -b, 0.0, p.xi, left_rest);
        }
        total += integrate_jacobi(nn, -b, -b, p.xi, p.eta, [&](double t) {
            auto [sig, rho] = kernel_args(t, p, lam);
            return std::pow(t, a) * xi2_val(sig, rho) * N(t);
        });
        return std::pow(0.5 * (p.eta + p.xi), -a) * total;
    }

    // (d/deta - d/dxi) u, by differentiating the integrands; the prefactor
    // derivative cancels in the difference and the boundary terms vanish
    // because the integrand is zero at t = xi and t = eta.
    double diagonal_derivative_difference(const CharPoint& p) const {
        const double a = params.alpha, b = params.beta, lam = params.lambda;
        const double eps = p.eta - p.xi;

        auto dcore = [&](double t, double f) {
            // f * (Xi2_u (dsig_eta - dsig_xi) + Xi2_w (drho_eta - drho_xi))
            auto [sig, rho] = kernel_args(t, p, lam);
            double dsig = eps / (2.0 * t * (p.eta + p.xi));
            double drho = lam * eps;
            return f * (xi2_du(sig, rho) * dsig + xi2_dw(sig, rho) * drho);
        };
        auto val = [&](double t, double f) {
            auto [sig, rho] = kernel_args(t, p, lam);
            return f * xi2_val(sig, rho);
        };

        double total = 0.0;
        double tsplit = p.xi - 20.0 * eps;
        // left integral: weight derivative gives two shapes
        auto left_f = [&](double t) { return std::pow(t, a) * T(t); };
        auto left_plain = [&](double t) {
            // -b (eta-t)^{-b-1} (xi-t)^{-b} Xi2 f + (eta-t)^{-b} (xi-t)^{-b} dXi2-part
            double w1 = -b * std::pow(p.eta - t, -b - 1.0) * std::pow(p.xi - t, -b);
            double w0 = std::pow(p.eta - t, -b) * std::pow(p.xi - t, -b);
            return w1 * val(t, left_f(t)) + w0 * dcore(t, left_f(t));
        };
        if (tsplit > 0.05 * p.xi) {
            total += integrate_jacobi(nn, 2.0 * a, 0.0, 0.0, tsplit, [&](double t) {
                return std::pow(t, -2.0 * a)
                       * (left_plain(t)
                          + b * std::pow(p.eta - t, -b) * std::pow(p.xi - t, -b - 1.0)
                                * val(t, left_f(t)));
            });
            total += integrate_jacobi(nn, 0.0, -b, tsplit, p.xi, [&](double t) {
                return std::pow(p.xi - t, b) * left_plain(t);
            });
            total += integrate_jacobi(nn, 0.0, -b - 1.0, tsplit, p.xi, [&](double t) {
                return b * std::pow(p.eta - t, -b) * val(t, left_f(t));
            });
        } else if (p.xi > 0.0) {
            total += integrate_jacobi(nn, 2.0 * a, -b, 0.0, p.xi, [&](double t) {
                return std::pow(t, -2.0 * a) * std::pow(p.xi - t, b) * left_plain(t);
            });
            total += integrate_jacobi(nn, 2.0 * a, -b - 1.0, 0.0, p.xi, [&](double t) {
                return std::pow(t, -2.0 * a) * b * std::pow(p.eta - t, -b)
                       * val(t, left_f(t));
            });
        }
        // right integral: d/deta - d/dxi of (eta-t)^{-b}(t-xi)^{-b} =
        //   -b (eta-t)^{-b-1}(t-xi)^{-b} - b (eta-t)^{-b}(t-xi)^{-b-1}
        auto right_f = [&](double t) { return std::pow(t, a) * N(t); };
        total += integrate_jacobi(nn, -b, -b - 1.0, p.xi, p.eta, [&](double t) {
            return -b * val(t, right_f(t));
        });
        total += integrate_jacobi(nn, -b - 1.0, -b, p.xi, p.eta, [&](double t) {
            return -b * val(t, right_f(t));
        });
        total += integrate_jacobi(nn, -b, -b, p.xi, p.eta, [&](double t) {
            return dcore(t, right_f(t));
        });
        return std::pow(0.5 * (p.eta + p.xi), -a) * total;
    }
};

// solve for c0 in vals_i = c0 + c1 eps_i^{e1} + c2 eps_i^{e2}
double fit_limit(const std::vector<double>& eps, const std::vector<double>& vals,
                 double e1, double e2) {
    if (eps.size() < 3)
        return vals.back();
    std::size_t k = eps.size() - 3;
    double m[3][4];
    for (int i = 0; i < 3; ++i) {
        m[i][0] = 1.0;
        m[i][1] = std::pow(eps[k + i], e1);
        m[i][2] = std::pow(eps[k + i], e2);
        m[i][3] = vals[k + i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col]))
                piv = r;
        std::swap(m[col], m[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col || m[col][col] == 0.0)
                continue;
            double f = m[r][col] / m[col][col];
            for (int cc = col; cc < 4; ++cc)
                m[r][cc] -= f * m[col][cc];
        }
    }
    return m[0][3] / m[0][0];
}

} // namespace

CauchyCheckReport verify_cauchy_data(const CauchyData& data, const Parameters& params,
                                     const std::vector<double>& probes,
                                     const QuadratureSpec& quad, const SeriesControl& ctrl,
                                     const std::vector<double>& eps_list,
                                     double tau_tol, double nu_tol) {
    params.require_theorem_regime("verify_cauchy_data");
    if (!data.T)
        throw ConfigError("verify_cauchy_data: density T not present");
    if (eps_list.size() < 3)
        throw ConfigError("verify_cauchy_data: need at least three eps values");
    std::vector<double> eps(eps_list);
    std::sort(eps.begin(), eps.end(), std::greater<double>());

    const double b = params.beta;
    const double c11 = std::pow(2.0 * (1.0 - 2.0 * b), -2.0 * b);
    const double factor_ref = -std::tgamma(1.0 - b);

    DiagonalEvaluator ev{params, ctrl, *data.T,
                         cauchy_right_density(data, params), quad.n_nodes};

    CauchyCheckReport report;
    report.factor_reference = factor_ref;
    for (double xi : probes) {
        CauchyCheckSample smp;
        smp.xi = xi;
        smp.tau_ref = data.tau(xi);
        smp.nu_ref = data.nu(xi);
        std::vector<double> uvals, lvals;
        for (double e : eps) {
            CharPoint p{xi, xi + e};
            uvals.push_back(ev.value(p));
            double dd = ev.diagonal_derivative_difference(p);
            lvals.push_back(c11 * std::pow(e, 2.0 * b) * dd);
        }
        // u(xi, xi+eps) = tau + c1 eps + c2 eps^{1-2b};
        // L(eps) = L + c1 eps^{1+2b} + c2 eps
        smp.u_limit = fit_limit(eps, uvals, 1.0, 1.0 - 2.0 * b);
        smp.nu_limit_raw = fit_limit(eps, lvals, 1.0 + 2.0 * b, 1.0);
        smp.tau_dev = std::fabs(smp.u_limit - smp.tau_ref);
        smp.measured_factor = (smp.nu_ref != 0.0) ? smp.nu_limit_raw / smp.nu_ref : 0.0;
        smp.nu_dev = std::fabs(smp.nu_limit_raw / factor_ref - smp.nu_ref);
        smp.ok = smp.tau_dev < tau_tol && smp.nu_dev < nu_tol;
        report.max_tau_dev = std::max(report.max_tau_dev, smp.tau_dev);
        report.max_nu_dev = std::max(report.max_nu_dev, smp.nu_dev);
        report.samples.push_back(smp);
    }
    return report;
}

} // namespace vhi
