#ifndef VHI_OPERATORS_HPP
#define VHI_OPERATORS_HPP

#include <vector>

#include "vhi/grid_function.hpp"
#include "vhi/parameters.hpp"
#include "vhi/quadrature.hpp"
#include "vhi/series.hpp"

namespace vhi {

/// Forward Volterra operator (Eq.-(2) kernel):
///   N[v](x) = int_0^x (t/x)^a (x-t)^{-2b}
///             Xi2(a,1-a;1-b; -(x-t)^2/(4xt), s*lambda*(x-t)^2) v(t) dt,
/// s = +1 (Paper2) or -1 (Applications).
///
/// Gauss-Jacobi quadrature with endpoint exponents (2a, -2b): the Pfaff
/// factorization 1-u = (x+t)^2/(4xt) shows the Xi2 factor itself carries t^a
/// at t -> 0, so the full kernel is t^{2a} x (Hoelder-smooth).
double forward_N(const GridFunction& v, double x, const Parameters& params,
                 const QuadratureSpec& quad, const SeriesControl& ctrl,
                 KernelConvention convention = KernelConvention::Paper2);

/// Inversion operator (Eq. (3)):
///   T[tau](x) = sin(2 b pi)/(2 b pi) x^{-2a} d/dx { x^a int_0^x t^a (x-t)^{2b}
///               F[0;2;1][-a,1+a; b-1/2; 1+b; b+1/2; u, s*lambda*(x-t)^2]
///               tau'(t) dt }.
///
/// The F-kernel's y-row parameters are (d,g) = (b-1/2, b+1/2); the source
/// displays them transposed, which breaks the inversion identities for
/// lambda != 0 (the TN/NT round-trip tests pin the correct pair).
/// The outer derivative is central differences of step dstep_rel*x with one
/// Richardson level; inner quadrature exponents (0, 2b).
double inverse_T(const GridFunction& tau, double x, const Parameters& params,
                 const QuadratureSpec& quad, const SeriesControl& ctrl,
                 double dstep_rel = 1e-3,
                 KernelConvention convention = KernelConvention::Paper2);

enum class RoundtripDirection { TN, NT };

struct RoundtripReport {
    std::vector<double> points;
    std::vector<double> residuals;
    double sup_residual = 0.0;
};

/// Identities (4): TN reports ||T[N[v]] - v||_inf over the grid,
/// NT reports ||N[T[tau]] - tau||_inf. Grid points must be interior.
RoundtripReport roundtrip_check(const GridFunction& seed, RoundtripDirection direction,
                                const std::vector<double>& grid, const Parameters& params,
                                const QuadratureSpec& quad, const SeriesControl& ctrl,
                                double dstep_rel = 1e-3,
                                KernelConvention convention = KernelConvention::Paper2);

/// tau = N[v] as a callback GridFunction (derivative by central differences
/// of the forward transform, step 1e-4*t).
GridFunction forward_N_function(const GridFunction& v, const Parameters& params,
                                const QuadratureSpec& quad, const SeriesControl& ctrl,
                                KernelConvention convention = KernelConvention::Paper2);

/// v = T[tau] as a callback GridFunction.
GridFunction inverse_T_function(const GridFunction& tau, const Parameters& params,
                                const QuadratureSpec& quad, const SeriesControl& ctrl,
                                double dstep_rel = 1e-3,
                                KernelConvention convention = KernelConvention::Paper2);

} // namespace vhi

#endif
