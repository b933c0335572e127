#ifndef VHI_SERIES_HPP
#define VHI_SERIES_HPP

#include <cstdint>

#include "vhi/errors.hpp"

namespace vhi {

/// Truncation policy shared by every series engine.
struct SeriesControl {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;  // guard against a zero partial sum, effectively zero
    int max_outer_terms = 10000;
    int max_inner_terms = 10000;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw ConfigError("SeriesControl: tolerances must be positive");
        if (max_outer_terms < 1 || max_inner_terms < 1)
            throw ConfigError("SeriesControl: term caps must be >= 1");
    }
};

/// Value plus convergence diagnostics. When converged is false the value is
/// still the best partial sum; callers must propagate the flag.
struct HypergeomValue {
    double value = 0.0;
    std::int64_t terms_used = 0;
    bool converged = true;
    double est_error = 0.0;
};

} // namespace vhi

#endif
