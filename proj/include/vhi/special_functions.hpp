#ifndef VHI_SPECIAL_FUNCTIONS_HPP
#define VHI_SPECIAL_FUNCTIONS_HPP

#include <utility>

#include "vhi/series.hpp"

namespace vhi {

/// Rising factorial (a)_k = a(a+1)...(a+k-1), (a)_0 = 1.
/// Direct product for k <= 64, log-gamma ratio with sign tracking above;
/// overflow shows up as a non-finite result.
double pochhammer(double a, int k);

/// Gauss hypergeometric function F(a,b;c;z) for real z < 1.
///
/// 0 <= z < 0.9: defining series. z < 0: Pfaff transformation
/// F(a,b;c;z) = (1-z)^{-a} F(a,c-b;c;z/(z-1)), argument lands in (0,1).
/// 0.9 <= z < 1 with c-a-b away from an integer: the 1-z connection
/// formula, so kernel rows stay cheap when the Pfaff argument crowds 1.
/// Terminating cases (a or b a nonpositive integer) are summed exactly.
HypergeomValue gauss_2f1(double a, double b, double c, double z,
                         const SeriesControl& ctrl);

/// Humbert function Xi2(a,b;d;u,w) = sum (a)_m (b)_m u^m w^n / (m! n! (d)_{m+n}),
/// computed by the row reduction over n with Gauss factors F(a,b;d+n;u)
/// (exact identity (d)_{m+n} = (d)_n (d+n)_m); valid for all u < 1 via Pfaff
/// and all finite w.
HypergeomValue humbert_xi2(double a, double b, double d, double u, double w,
                           const SeriesControl& ctrl);

/// F^{0;2;1}_{1;0;1}[b,c;d;e;g; x,y] = sum (b)_m (c)_m (d)_n x^m y^n /
/// ((e)_{m+n} (g)_n m! n!), row-reduced like Xi2; reduces to Xi2 when g = d
/// and to F(b,c;e;x) at y = 0.
HypergeomValue f0211(double b, double c, double d, double e, double g,
                     double x, double y, const SeriesControl& ctrl);

enum class ConvergenceRegion {
    ConvergesAll,    // entire in both variables
    ConvergesUnit,   // inside the unit bidisc rule
    ConvergesMixed,  // inside |x|^{1/(p-l)} + |y|^{1/(p-l)} < 1 (p > l)
    Unknown,         // boundary/garbled cases the region table does not resolve
};

/// Region classification for the general F^{p,q,k}_{l,m,n} signature at (x,y).
/// Strict double inequality => ConvergesAll; the double-equality boundary uses
/// the p vs l rule with exponent 1/(p-l); everything else unresolved.
ConvergenceRegion convergence_classification(int p, int q, int k,
                                             int l, int m, int n,
                                             double x, double y);

/// Residuals of the second-order PDE system satisfied by z = Xi2(a,b;d;u,w):
///   u(1-u) z_uu + w z_uw + [d-(a+b+1)u] z_u - ab z = 0
///   w z_ww + u z_uw + d z_w - z = 0
/// by central differences of step h. Both residuals are O(h^2) at interior
/// points of the evaluation domain.
std::pair<double, double> xi2_system_residual(double a, double b, double d,
                                              double u, double w, double h,
                                              const SeriesControl& ctrl);

/// Residuals of the third-order system satisfied by z = F^{0;2;1}_{1;0;1}:
///   x(1-x) z_xx + y z_xy + [e-(b+c+1)x] z_x - bc z = 0
///   y^2 z_yyy + x y z_xyy + g x z_xy + (e+g+1) y z_yy + (eg-y) z_y - d z = 0
/// third derivatives via five-point central stencils.
std::pair<double, double> f0211_system_residual(double b, double c, double d,
                                                double e, double g,
                                                double x, double y, double h,
                                                const SeriesControl& ctrl);

namespace detail {
/// log|Gamma(x)| and the sign of Gamma(x); sign = 0 at a pole.
std::pair<double, int> lgamma_signed(double x);
/// log(n!) without overflow.
double log_factorial(int n);
} // namespace detail

} // namespace vhi

#endif
