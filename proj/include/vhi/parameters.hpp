#ifndef VHI_PARAMETERS_HPP
#define VHI_PARAMETERS_HPP

#include "vhi/errors.hpp"

namespace vhi {

enum class Regime { TheoremRegime, General };

/// Which sign the kernels feed as the second Humbert argument:
/// Paper2 uses +lambda*(x-t)^2 (Eqs. (2)/(3)), Applications uses
/// -lambda*(x-t)^2 (the boundary-value use sites). Forward and inverse
/// must share the convention for the inversion identities to hold.
enum class KernelConvention { Paper2, Applications };

inline double convention_sign(KernelConvention c) {
    return c == KernelConvention::Paper2 ? 1.0 : -1.0;
}

struct Parameters {
    double alpha = 0.0;
    double beta = -0.25;
    double lambda = 0.0;
    Regime regime = Regime::General;

    bool in_theorem_regime() const {
        return -1.0 < 2.0 * beta && 2.0 * beta < 2.0 * alpha && 2.0 * alpha <= 0.0;
    }

    void require_theorem_regime(const char* who) const {
        if (regime != Regime::TheoremRegime || !in_theorem_regime())
            throw RegimeError(std::string(who) + ": requires -1 < 2*beta < 2*alpha <= 0");
    }

    static Parameters make(double alpha, double beta, double lambda) {
        Parameters p{alpha, beta, lambda, Regime::General};
        if (p.in_theorem_regime())
            p.regime = Regime::TheoremRegime;
        return p;
    }
};

/// Degeneracy exponents of the PDE (1) plus the spectral parameter.
struct DegeneracyInput {
    double m = -0.5;
    double n = 0.0;
    double mu = 0.0;
};

/// alpha = n/(2(n+2)), beta = m/(2(m+2)), lambda = mu/4; regime is
/// TheoremRegime iff -1 < 2*beta < 2*alpha <= 0 holds.
inline Parameters params_from_degeneracy(const DegeneracyInput& d) {
    if (!(d.m > -1.0) || !(d.n > -1.0))
        throw DomainError("params_from_degeneracy: need m > -1 and n > -1");
    Parameters p;
    p.alpha = d.n / (2.0 * (d.n + 2.0));
    p.beta = d.m / (2.0 * (d.m + 2.0));
    p.lambda = 0.25 * d.mu;
    if (!(2.0 * p.beta > -1.0))
        throw RegimeError("params_from_degeneracy: 2*beta <= -1 breaks integrability");
    p.regime = p.in_theorem_regime() ? Regime::TheoremRegime : Regime::General;
    return p;
}

} // namespace vhi

#endif
