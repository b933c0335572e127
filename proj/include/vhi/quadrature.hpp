#ifndef VHI_QUADRATURE_HPP
#define VHI_QUADRATURE_HPP

#include <vector>

#include "vhi/errors.hpp"

namespace vhi {

/// Node count plus the power-law endpoint exponents of the weight the rule
/// integrates exactly. Exponents must exceed -1 (integrability).
struct QuadratureSpec {
    int n_nodes = 64;
    double left_exponent = 0.0;
    double right_exponent = 0.0;

    void validate() const {
        if (n_nodes < 1)
            throw ConfigError("QuadratureSpec: n_nodes must be positive");
        if (!(left_exponent > -1.0) || !(right_exponent > -1.0))
            throw ConfigError("QuadratureSpec: exponents must exceed -1");
    }
};

/// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^a (1+x)^b,
/// built by Golub-Welsch. Rules are cached by (n, a, b).
struct GaussJacobiRule {
    std::vector<double> nodes;    // ascending in (-1,1)
    std::vector<double> weights;  // positive
};

const GaussJacobiRule& gauss_jacobi_rule(int n, double a, double b);

/// Mapped rule: integral over [lo,hi] of (t-lo)^{left} (hi-t)^{right} f(t) dt
/// ~= sum w_i f(t_i). Only f's values are sampled; the weight is folded in.
struct MappedRule {
    std::vector<double> t;
    std::vector<double> w;
};

MappedRule mapped_jacobi_rule(int n, double left_exponent, double right_exponent,
                              double lo, double hi);

/// Convenience: quadrature of fn against the mapped weight.
template <typename F>
double integrate_jacobi(int n, double left_exponent, double right_exponent,
                        double lo, double hi, F&& fn) {
    MappedRule r = mapped_jacobi_rule(n, left_exponent, right_exponent, lo, hi);
    double s = 0.0;
    for (std::size_t i = 0; i < r.t.size(); ++i)
        s += r.w[i] * fn(r.t[i]);
    return s;
}

} // namespace vhi

#endif
