#include "vhi/kernel_identity.hpp"

#include <cmath>
#include <limits>

#include "vhi/special_functions.hpp"

namespace vhi {

double gauss_F_dz(int k, int p, int q, double dpar, double z,
                  const Parameters& params, const SeriesControl& ctrl) {
    if (!(z > 0.0 && z < 1.0) && z != 0.0)
        throw DomainError("gauss_F_dz: z outside [0,1)");
    double a = 1.0 + 2.0 * params.beta + 2.0 * k + 2.0 * p;
    double b = 1.0 + p + q;
    return gauss_2f1(a, b, dpar, z, ctrl).value;
}

double E_term(int k, int n, int p, int q, double z,
              const Parameters& params, const SeriesControl& ctrl) {
    int K = k + n + p + q;
    double f2 = gauss_F_dz(k, p, q, 2.0 + 2.0 * K, z, params, ctrl);
    double f1 = gauss_F_dz(k, p, q, 1.0 + 2.0 * K, z, params, ctrl);
    return (-params.alpha - 2.0 * params.beta + 2.0 * n + q) * z * f2
           + (1.0 + 2.0 * K) * (1.0 - z) * f1;
}

double omega(int k, int n, double z, const Parameters& params,
             const SeriesControl& ctrl) {
    ctrl.validate();
    if (!(z > 0.0 && z < 1.0))
        throw DomainError("omega: z outside (0,1)");
    const double a = params.alpha;
    const double b = params.beta;
    const double z2 = z * z;
    const double zq = z2 / (1.0 - z);  // per-q factor z^2 (1-z)^{-1}

    // coefficients absorb 1/(1+2K)! into every recurrence step so nothing
    // overflows; head = the (p, q=0) coefficient including z^{2p}
    double sum = 0.0;
    double head = std::exp(-detail::log_factorial(1 + 2 * (k + n)));
    int small_rows = 0;
    bool row_capped = true;
    for (int p = 0; p < ctrl.max_outer_terms; ++p) {
        double row = 0.0;
        if (head != 0.0) {
            double coef = head;
            int small_q = 0;
            int growing = 0;
            double prev_mag = 0.0;
            bool q_capped = true;
            for (int q = 0; q < ctrl.max_inner_terms; ++q) {
                double term = (coef != 0.0)
                                  ? coef * E_term(k, n, p, q, z, params, ctrl)
                                  : 0.0;
                row += term;
                double mag = std::fabs(term);
                if (mag <= ctrl.rel_tol * (std::fabs(sum) + std::fabs(row)) + ctrl.abs_tol) {
                    if (++small_q >= 3 || coef == 0.0) {
                        q_capped = false;
                        break;
                    }
                } else {
                    small_q = 0;
                }
                // the q-series has asymptotic ratio z^2/(4(1-z)): it diverges
                // once z > 2(sqrt(2)-1); bail out instead of burning the cap
                growing = (q > 8 && mag > prev_mag) ? growing + 1 : 0;
                if (growing >= 12)
                    throw NotConvergedError("omega: q-series diverges (z too close to 1)");
                prev_mag = mag;
                int K = k + n + p + q;
                coef *= -(a + q) * (1.0 - a + q) * (0.5 - b + n + q) * zq
                        / ((q + 1.0) * (2 * K + 2.0) * (2 * K + 3.0));
            }
            if (q_capped)
                throw NotConvergedError("omega: q-sum cap reached");
        }
        sum += row;
        if (std::fabs(row) <= ctrl.rel_tol * std::fabs(sum) + ctrl.abs_tol) {
            if (++small_rows >= 3 || head == 0.0) {
                row_capped = false;
                break;
            }
        } else {
            small_rows = 0;
        }
        int Kp = k + n + p;  // q = 0
        head *= -(-a + p) * (1.0 + a + p) * (0.5 + b + k + p) * z2
                / ((p + 1.0) * (2 * Kp + 2.0) * (2 * Kp + 3.0));
    }
    if (row_capped)
        throw NotConvergedError("omega: p-sum cap reached");
    return sum;
}

Omega1Value omega1(int k, double z, const Parameters& params,
                   const SeriesControl& ctrl) {
    const double b = params.beta;
    Omega1Value out;
    double sum = 0.0, abs_sum = 0.0;
    for (int n = 0; n <= k; ++n) {
        double c = pochhammer(b - 0.5, k - n) * pochhammer(0.5 - b, n)
                   / (std::tgamma(n + 1.0) * std::tgamma(k - n + 1.0));
        double t = c * omega(k - n, n, z, params, ctrl);
        sum += t;
        abs_sum += std::fabs(t);
    }
    out.value = sum;
    out.condition = abs_sum / std::max(std::fabs(sum), 1e-300);
    return out;
}

WKernelValue w_kernel(double x, double s, double lambda, const Parameters& params,
                      const SeriesControl& ctrl, int k_max) {
    if (!(0.0 < s && s < x && x < 1.0))
        throw DomainError("w_kernel: need 0 < s < x < 1");
    double z = (x - s) / x;
    double base = lambda * (x - s) * (x - s);
    WKernelValue out;
    double sum = 0.0, abs_mass = 0.0;
    double power = 1.0;
    for (int k = 0; k <= k_max; ++k) {
        Omega1Value o1 = omega1(k, z, params, ctrl);
        double term = ((k % 2 == 0) ? 1.0 : -1.0) * o1.value * power;
        sum += term;
        abs_mass += std::fabs(o1.value) * o1.condition * std::fabs(power);
        out.tail = std::fabs(term);
        if (base == 0.0)
            break;
        power *= base;
    }
    out.value = sum;
    out.condition = abs_mass / std::max(std::fabs(sum), 1e-300);
    return out;
}

std::vector<KernelSample> verify_lemma(const Parameters& params,
                                       const std::vector<std::array<double, 3>>& samples,
                                       const SeriesControl& ctrl,
                                       double tolerance, int k_max) {
    std::vector<KernelSample> report;
    report.reserve(samples.size());
    for (const auto& smp : samples) {
        KernelSample r;
        r.x = smp[0];
        r.s = smp[1];
        r.lambda = smp[2];
        try {
            if (!(0.0 < r.s && r.s < r.x && r.x < 1.0))
                throw DomainError("verify_lemma: need 0 < s < x < 1");
            r.z = (r.x - r.s) / r.x;
            r.target = std::pow(1.0 - r.z, params.alpha);
            WKernelValue w = w_kernel(r.x, r.s, r.lambda, params, ctrl, k_max);
            r.w_value = w.value;
            r.condition = w.condition;
            r.abs_err = std::fabs(r.w_value - r.target);
            r.ok = r.abs_err < tolerance * std::max(1.0, w.condition);
        } catch (const Error&) {
            r.abs_err = std::numeric_limits<double>::infinity();
            r.ok = false;
        }
        report.push_back(r);
    }
    return report;
}

double tau_prime_expansion(const GridFunction& v, double t, const Parameters& params,
                           const QuadratureSpec& quad, const SeriesControl& ctrl,
                           KernelConvention convention) {
    if (!(t > 0.0 && t < 1.0))
        throw DomainError("tau_prime_expansion: t outside (0,1)");
    quad.validate();
    const double a = params.alpha;
    const double b = params.beta;
    const double sgn = convention_sign(convention);
    const int nn = quad.n_nodes;

    auto u_of = [t](double s) { return -(t - s) * (t - s) / (4.0 * t * s); };
    auto w_of = [t, sgn, &params](double s) {
        return sgn * params.lambda * (t - s) * (t - s);
    };

    // I1: weight s^{2a} (t-s)^{-2b}, rest s^{-a} Xi2(a,1-a;-b;u,w) v(s)
    double I1 = integrate_jacobi(nn, 2.0 * a, -2.0 * b, 0.0, t, [&](double s) {
        return std::pow(s, -a)
               * humbert_xi2(a, 1.0 - a, -b, u_of(s), w_of(s), ctrl).value * v(s);
    });
    // I2: weight s^{2a+1} (t-s)^{-2b-1}, same rest
    double I2 = integrate_jacobi(nn, 2.0 * a + 1.0, -2.0 * b - 1.0, 0.0, t, [&](double s) {
        return std::pow(s, -a)
               * humbert_xi2(a, 1.0 - a, -b, u_of(s), w_of(s), ctrl).value * v(s);
    });
    // I3: weight s^{2a} (t-s)^{-2b}, rest s^{-a} F0211[a,1-a;1-a-b;1-b;-a-b] v(s)
    double I3 = integrate_jacobi(nn, 2.0 * a, -2.0 * b, 0.0, t, [&](double s) {
        return std::pow(s, -a)
               * f0211(a, 1.0 - a, 1.0 - a - b, 1.0 - b, -a - b, u_of(s), w_of(s), ctrl).value
               * v(s);
    });
    return -std::pow(t, -a - 1.0) * (b * I1 + 2.0 * b * I2 + (a + b) * I3);
}

} // namespace vhi
