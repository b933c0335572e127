#include "vhi/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace vhi {

namespace detail {

std::pair<double, int> lgamma_signed(double x) {
    if (x > 0.0)
        return {std::lgamma(x), 1};
    double r = std::round(x);
    if (x == r)
        return {std::numeric_limits<double>::infinity(), 0};  // pole
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    double s = std::sin(M_PI * x);
    double lg = std::log(M_PI / std::fabs(s)) - std::lgamma(1.0 - x);
    return {lg, s > 0.0 ? 1 : -1};
}

double log_factorial(int n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

} // namespace detail

namespace {

bool is_nonpositive_integer(double x, double tol = 1e-12) {
    if (x > 0.5)
        return false;
    double r = std::round(x);
    return std::fabs(x - r) <= tol * std::max(1.0, std::fabs(x));
}

// index of the terminating term if a is a nonpositive integer, else -1
int termination_order(double a) {
    if (!is_nonpositive_integer(a))
        return -1;
    return static_cast<int>(-std::round(a));
}

// plain power series sum of F(a,b;c;z); caller guarantees 0 <= z < 1 and no
// c-pole before a possible termination
HypergeomValue series_2f1(double a, double b, double c, double z,
                          const SeriesControl& ctrl) {
    HypergeomValue out;
    double term = 1.0;
    double sum = 1.0;
    std::int64_t m = 0;
    bool hit_cap = true;
    bool terminated = false;
    for (; m < ctrl.max_inner_terms; ++m) {
        double md = static_cast<double>(m);
        double next = term * (a + md) * (b + md) / ((c + md) * (md + 1.0)) * z;
        if (next == 0.0) {  // terminating numerator or z = 0
            hit_cap = false;
            terminated = true;
            ++m;
            break;
        }
        sum += next;
        term = next;
        if (std::fabs(next) <= ctrl.rel_tol * std::fabs(sum) + ctrl.abs_tol) {
            hit_cap = false;
            ++m;
            break;
        }
    }
    out.value = sum;
    out.terms_used = m + 1;
    // geometric tail bound with the asymptotic ratio z
    out.est_error = terminated ? 0.0
                    : (z > 0.0 && z < 1.0) ? std::fabs(term) * z / (1.0 - z)
                                           : std::fabs(term);
    out.converged = !hit_cap;
    return out;
}

// connection formula in powers of 1-z (A&S 15.3.6); requires c-a-b away
// from an integer
HypergeomValue transform_1mz_2f1(double a, double b, double c, double z,
                                 const SeriesControl& ctrl) {
    using detail::lgamma_signed;
    double s = c - a - b;
    double w = 1.0 - z;

    auto coeff = [](std::pair<double, int> n1, std::pair<double, int> n2,
                    std::pair<double, int> d1, std::pair<double, int> d2) {
        if (d1.second == 0 || d2.second == 0)
            return 0.0;  // 1/Gamma(pole) = 0
        double lg = n1.first + n2.first - d1.first - d2.first;
        int sg = n1.second * n2.second * d1.second * d2.second;
        return sg * std::exp(lg);
    };

    double c1 = coeff(lgamma_signed(c), lgamma_signed(s),
                      lgamma_signed(c - a), lgamma_signed(c - b));
    double c2 = coeff(lgamma_signed(c), lgamma_signed(-s),
                      lgamma_signed(a), lgamma_signed(b));

    HypergeomValue f1{1.0, 0, true, 0.0};
    if (c1 != 0.0)
        f1 = series_2f1(a, b, a + b - c + 1.0, w, ctrl);
    HypergeomValue f2{1.0, 0, true, 0.0};
    if (c2 != 0.0)
        f2 = series_2f1(c - a, c - b, c - a - b + 1.0, w, ctrl);

    HypergeomValue out;
    double pw = std::pow(w, s);
    out.value = c1 * f1.value + c2 * pw * f2.value;
    out.terms_used = f1.terms_used + f2.terms_used;
    out.converged = f1.converged && f2.converged;
    out.est_error = std::fabs(c1) * f1.est_error + std::fabs(c2) * pw * f2.est_error;
    return out;
}

} // namespace

double pochhammer(double a, int k) {
    if (k <= 0)
        return 1.0;
    if (k <= 64) {
        double r = 1.0;
        for (int i = 0; i < k; ++i)
            r *= a + i;
        return r;
    }
    if (is_nonpositive_integer(a)) {
        if (-std::round(a) < k)
            return 0.0;  // a zero factor sits inside the range
        // all factors negative integers: (a)_k = (-1)^k Gamma(1-a)/Gamma(1-a-k)
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return sign * std::exp(std::lgamma(1.0 - a) - std::lgamma(1.0 - a - k));
    }
    auto [ltop, stop] = detail::lgamma_signed(a + k);
    auto [lbot, sbot] = detail::lgamma_signed(a);
    return stop * sbot * std::exp(ltop - lbot);
}

HypergeomValue gauss_2f1(double a, double b, double c, double z,
                         const SeriesControl& ctrl) {
    ctrl.validate();
    if (z >= 1.0)
        throw DomainError("gauss_2f1: z >= 1");
    if (b < a)
        std::swap(a, b);  // canonical order keeps F symmetric bit-for-bit

    int ka = termination_order(a);
    int kb = termination_order(b);
    int kterm = -1;
    if (ka >= 0 && kb >= 0)
        kterm = std::min(ka, kb);
    else if (ka >= 0)
        kterm = ka;
    else if (kb >= 0)
        kterm = kb;

    if (is_nonpositive_integer(c)) {
        int kc = static_cast<int>(-std::round(c));
        if (!(kterm >= 0 && kterm <= kc))
            throw PoleParameterError("gauss_2f1: c is a nonpositive integer");
    }

    if (kterm >= 0) {
        // exact finite sum, valid for every real z
        HypergeomValue out;
        double term = 1.0, sum = 1.0;
        for (int m = 0; m < kterm; ++m) {
            term *= (a + m) * (b + m) / ((c + m) * (m + 1.0)) * z;
            sum += term;
        }
        out.value = sum;
        out.terms_used = kterm + 1;
        out.est_error = 0.0;
        return out;
    }

    if (z < 0.0) {
        // Pfaff: argument z/(z-1) lies in (0,1)
        double zp = z / (z - 1.0);
        HypergeomValue inner = (zp >= 0.9)
                                   ? transform_1mz_2f1(a, c - b, c, zp, ctrl)
                                   : series_2f1(a, c - b, c, zp, ctrl);
        double f = std::pow(1.0 - z, -a);
        inner.value *= f;
        inner.est_error *= std::fabs(f);
        return inner;
    }
    if (z >= 0.9 && std::fabs(c - a - b - std::round(c - a - b)) > 0.05)
        return transform_1mz_2f1(a, b, c, z, ctrl);
    return series_2f1(a, b, c, z, ctrl);
}

namespace {

// shared row-reduction driver: row_n = coef_n * F(a,b; e+n; u) where the
// caller advances coef via `advance(coef, n)`
HypergeomValue sum_rows(double a, double b, double e, double u,
                        const SeriesControl& ctrl,
                        const std::function<double(double, int)>& advance) {
    HypergeomValue out;
    double coef = 1.0;
    double sum = 0.0;
    double est = 0.0;
    std::int64_t terms = 0;
    int small_rows = 0;
    bool ok = true;
    bool capped = true;
    for (int n = 0; n < ctrl.max_outer_terms; ++n) {
        double row = 0.0;
        if (coef != 0.0) {
            HypergeomValue f = gauss_2f1(a, b, e + n, u, ctrl);
            ok = ok && f.converged;
            terms += f.terms_used;
            row = coef * f.value;
            est = std::max(est, std::fabs(coef) * f.est_error);
        }
        sum += row;
        if (std::fabs(row) <= ctrl.rel_tol * std::fabs(sum) + ctrl.abs_tol) {
            if (++small_rows >= 3 || coef == 0.0) {
                capped = false;
                break;
            }
        } else {
            small_rows = 0;
        }
        coef = advance(coef, n);
    }
    out.value = sum;
    out.terms_used = terms;
    out.converged = ok && !capped;
    out.est_error = est + ctrl.rel_tol * std::fabs(sum);
    return out;
}

} // namespace

HypergeomValue humbert_xi2(double a, double b, double d, double u, double w,
                           const SeriesControl& ctrl) {
    ctrl.validate();
    if (u >= 1.0)
        throw DomainError("humbert_xi2: u >= 1");
    if (is_nonpositive_integer(d))
        throw PoleParameterError("humbert_xi2: d is a nonpositive integer");
    // coef_{n+1} = coef_n * w / ((n+1)(d+n))
    return sum_rows(a, b, d, u, ctrl, [w, d](double coef, int n) {
        return coef * w / ((n + 1.0) * (d + n));
    });
}

HypergeomValue f0211(double b, double c, double d, double e, double g,
                     double x, double y, const SeriesControl& ctrl) {
    ctrl.validate();
    if (x >= 1.0)
        throw DomainError("f0211: x >= 1");
    if (is_nonpositive_integer(e))
        throw PoleParameterError("f0211: e is a nonpositive integer");
    if (is_nonpositive_integer(g) && !(is_nonpositive_integer(d) && -std::round(d) <= -std::round(g)))
        throw PoleParameterError("f0211: g is a nonpositive integer");
    // coef_{n+1} = coef_n * y (d+n) / ((n+1)(g+n)(e+n))
    return sum_rows(b, c, e, x, ctrl, [y, d, g, e](double coef, int n) {
        return coef * y * (d + n) / ((n + 1.0) * (g + n) * (e + n));
    });
}

ConvergenceRegion convergence_classification(int p, int q, int k,
                                             int l, int m, int n,
                                             double x, double y) {
    int lhs1 = p + q, rhs1 = l + m + 1;
    int lhs2 = p + k, rhs2 = l + n + 1;
    if (lhs1 < rhs1 && lhs2 < rhs2)
        return ConvergenceRegion::ConvergesAll;
    if (lhs1 == rhs1 && lhs2 == rhs2) {
        if (p > l) {
            double e = 1.0 / static_cast<double>(p - l);
            if (std::pow(std::fabs(x), e) + std::pow(std::fabs(y), e) < 1.0)
                return ConvergenceRegion::ConvergesMixed;
            return ConvergenceRegion::Unknown;
        }
        if (p < l) {
            if (std::max(std::fabs(x), std::fabs(y)) < 1.0)
                return ConvergenceRegion::ConvergesUnit;
            return ConvergenceRegion::Unknown;
        }
        return ConvergenceRegion::Unknown;  // p == l: region display garbled
    }
    if (lhs1 > rhs1 && lhs2 > rhs2) {
        if (std::fabs(x) < 1.0 && std::fabs(y) < 1.0)
            return ConvergenceRegion::ConvergesUnit;
        return ConvergenceRegion::Unknown;
    }
    return ConvergenceRegion::Unknown;  // mixed </=/> pattern: unresolved
}

std::pair<double, double> xi2_system_residual(double a, double b, double d,
                                              double u, double w, double h,
                                              const SeriesControl& ctrl) {
    if (!(h > 0.0))
        throw ConfigError("xi2_system_residual: h must be positive");
    auto z = [&](double uu, double ww) {
        return humbert_xi2(a, b, d, uu, ww, ctrl).value;
    };
    double z00 = z(u, w);
    double zpu = z(u + h, w), zmu = z(u - h, w);
    double zpw = z(u, w + h), zmw = z(u, w - h);
    double zpp = z(u + h, w + h), zpm = z(u + h, w - h);
    double zmp = z(u - h, w + h), zmm = z(u - h, w - h);

    double zu = (zpu - zmu) / (2 * h);
    double zw = (zpw - zmw) / (2 * h);
    double zuu = (zpu - 2 * z00 + zmu) / (h * h);
    double zww = (zpw - 2 * z00 + zmw) / (h * h);
    double zuw = (zpp - zpm - zmp + zmm) / (4 * h * h);

    double r1 = u * (1 - u) * zuu + w * zuw + (d - (a + b + 1) * u) * zu - a * b * z00;
    double r2 = w * zww + u * zuw + d * zw - z00;
    return {r1, r2};
}

std::pair<double, double> f0211_system_residual(double b, double c, double d,
                                                double e, double g,
                                                double x, double y, double h,
                                                const SeriesControl& ctrl) {
    if (!(h > 0.0))
        throw ConfigError("f0211_system_residual: h must be positive");
    auto z = [&](double xx, double yy) {
        return f0211(b, c, d, e, g, xx, yy, ctrl).value;
    };
    double z00 = z(x, y);
    double zpx = z(x + h, y), zmx = z(x - h, y);
    double zpy = z(x, y + h), zmy = z(x, y - h);
    double zpp = z(x + h, y + h), zpm = z(x + h, y - h);
    double zmp = z(x - h, y + h), zmm = z(x - h, y - h);
    double zp2 = z(x, y + 2 * h), zm2 = z(x, y - 2 * h);

    double zx = (zpx - zmx) / (2 * h);
    double zy = (zpy - zmy) / (2 * h);
    double zxx = (zpx - 2 * z00 + zmx) / (h * h);
    double zyy = (zpy - 2 * z00 + zmy) / (h * h);
    double zxy = (zpp - zpm - zmp + zmm) / (4 * h * h);
    // five-point stencils for the third derivatives
    double zyyy = (zp2 - 2 * zpy + 2 * zmy - zm2) / (2 * h * h * h);
    double zyy_px = (z(x + h, y + h) - 2 * zpx + z(x + h, y - h)) / (h * h);
    double zyy_mx = (z(x - h, y + h) - 2 * zmx + z(x - h, y - h)) / (h * h);
    double zxyy = (zyy_px - zyy_mx) / (2 * h);

    double r1 = x * (1 - x) * zxx + y * zxy + (e - (b + c + 1) * x) * zx - b * c * z00;
    double r2 = y * y * zyyy + x * y * zxyy + g * x * zxy + (e + g + 1) * y * zyy
                + (e * g - y) * zy - d * z00;
    return {r1, r2};
}

} // namespace vhi
