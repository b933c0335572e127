#ifndef VHI_EPD_HPP
#define VHI_EPD_HPP

#include <functional>
#include <optional>
#include <vector>

#include "vhi/grid_function.hpp"
#include "vhi/parameters.hpp"
#include "vhi/quadrature.hpp"
#include "vhi/series.hpp"

namespace vhi {

/// Point in characteristic coordinates; the closed triangle is
/// 0 <= xi <= eta <= 1.
struct CharPoint {
    double xi = 0.0;
    double eta = 0.0;

    bool inside_triangle() const {
        return 0.0 <= xi && xi <= eta && eta <= 1.0;
    }
};

/// xi  = (2/(n+2)) x^{(n+2)/2} - (2/(m+2)) (-y)^{(m+2)/2}
/// eta = (2/(n+2)) x^{(n+2)/2} + (2/(m+2)) (-y)^{(m+2)/2}
/// (the eta sign is + so that eta = xi on y = 0; the source's BC display
/// repeats the minus, which would collapse eta onto xi everywhere).
CharPoint char_coords(double x, double y, double m, double n);

/// Closed-form inverse on eta >= xi.
void char_coords_inverse(const CharPoint& p, double m, double n,
                         double& x, double& y);

/// gamma_2 = [2(1-2b)]^{2b-1} Gamma(2-2b) / Gamma(1-b),  b in (-1/2, 0).
double gamma2(double beta);

/// Cauchy data on the degeneration line: u(xi,xi) = tau, the weighted normal
/// derivative limit (11) = nu, and the density T (supplied or recovered).
struct CauchyData {
    GridFunction tau;
    GridFunction nu;
    std::optional<GridFunction> T;
};

/// Cauchy-Goursat data: u(0,eta) = phi on PM, nu as in (11), the known
/// function Phi, and the derived Psi = 2 gamma2 cos(b pi) nu + Phi.
struct GoursatData {
    GridFunction phi;
    GridFunction nu;
    GridFunction Phi;
    GridFunction Psi;
};

GoursatData make_goursat_data(GridFunction phi, GridFunction nu, GridFunction Phi,
                              const Parameters& params);

/// Shared evaluator of the (12)/(13) kernel structure:
///   ((eta+xi)/2)^{-a} [ int_0^xi (eta-t)^{-b}(xi-t)^{-b} t^a Xi2[s,r] f_left dt
///                     + int_xi^eta (eta-t)^{-b}(t-xi)^{-b} t^a Xi2[s,r] f_right dt ]
/// with s = (eta-t)(t-xi)/(2t(eta+xi)), r = lambda (eta-t)(t-xi).
double dual_kernel_solution(const CharPoint& p, const GridFunction& f_left,
                            const GridFunction& f_right, const Parameters& params,
                            const QuadratureSpec& quad, const SeriesControl& ctrl);

/// Cauchy solution (12): f_left = T, f_right = N = [2 cos(b pi)]^{-1} T - gamma2 nu.
double cauchy_solution(const CharPoint& p, const CauchyData& data,
                       const Parameters& params, const QuadratureSpec& quad,
                       const SeriesControl& ctrl);

/// Cauchy-Goursat solution (13): f_left = Psi, f_right = Phi.
double goursat_solution(const CharPoint& p, const GoursatData& data,
                        const Parameters& params, const QuadratureSpec& quad,
                        const SeriesControl& ctrl);

/// Density recovery through the inversion theorem at the eta = xi use site
/// (Applications convention, second kernel argument -lambda (x-t)^2).
GridFunction recover_T_from_tau(const GridFunction& tau, const std::vector<double>& grid,
                                const Parameters& params, const QuadratureSpec& quad,
                                const SeriesControl& ctrl, double dstep_rel = 1e-3);

/// Fundamental relation between tau and nu on the degeneration line
/// (Cauchy-Goursat with phi = 0): nu = T_applications[tau] / (2 gamma2 cos(b pi)).
GridFunction fundamental_relation(const GridFunction& tau, const std::vector<double>& grid,
                                  const Parameters& params, const QuadratureSpec& quad,
                                  const SeriesControl& ctrl, double dstep_rel = 1e-3);

/// Residual of the EPD equation (9)
///   u_{xi eta} + a/(eta+xi) (u_eta + u_xi) - b/(eta-xi) (u_eta - u_xi) + lambda u
/// by central differences of step h on an arbitrary evaluator.
double pde9_residual(const std::function<double(CharPoint)>& u_eval, const CharPoint& p,
                     const Parameters& params, double h);

struct CauchyCheckSample {
    double xi = 0.0;
    double u_limit = 0.0;       // extrapolated u(xi, xi+eps)
    double tau_ref = 0.0;
    double tau_dev = 0.0;       // |u_limit - tau_ref|
    double nu_limit_raw = 0.0;  // extrapolated (11) left-hand side, verbatim constants
    double nu_ref = 0.0;
    double measured_factor = 0.0;  // nu_limit_raw / nu_ref
    double nu_dev = 0.0;        // |nu_limit_raw / (-Gamma(1-b)) - nu_ref|
    bool ok = true;
};

struct CauchyCheckReport {
    std::vector<CauchyCheckSample> samples;
    double factor_reference = 0.0;  // -Gamma(1-b), the systematic (11) factor
    double max_tau_dev = 0.0;
    double max_nu_dev = 0.0;
};

/// Boundary-data verification for (12): checks (10) by extrapolating
/// u(xi, xi+eps) -> tau(xi) and (11) by the weighted derivative limit with
/// analytically differentiated kernels. The verbatim (11) constants produce a
/// systematic factor -Gamma(1-b) against the seeded nu; the report carries the
/// raw limit, the measured factor, and the factor-normalized deviation.
CauchyCheckReport verify_cauchy_data(const CauchyData& data, const Parameters& params,
                                     const std::vector<double>& probes,
                                     const QuadratureSpec& quad, const SeriesControl& ctrl,
                                     const std::vector<double>& eps_list,
                                     double tau_tol = 1e-4, double nu_tol = 1e-3);

} // namespace vhi

#endif
