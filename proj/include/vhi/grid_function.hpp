#ifndef VHI_GRID_FUNCTION_HPP
#define VHI_GRID_FUNCTION_HPP

#include <functional>
#include <vector>

#include "vhi/errors.hpp"

namespace vhi {

/// Sampled function on a strictly increasing grid in (0,1], evaluated between
/// nodes by a not-a-knot cubic spline, or a callback pair (value, derivative).
/// Carrier for tau, nu, v, T, N, phi.
class GridFunction {
public:
    enum class Interpolation { PiecewiseCubic, Callback };

    GridFunction() = default;

    /// Sampled form; nodes strictly increasing, values finite.
    GridFunction(std::vector<double> nodes, std::vector<double> values);

    /// Callback form; deriv may be empty, in which case derivative() falls
    /// back to a central difference of value().
    explicit GridFunction(std::function<double(double)> value,
                          std::function<double(double)> deriv = nullptr);

    static GridFunction zero();
    static GridFunction constant(double c);

    double operator()(double t) const;
    double derivative(double t) const;

    Interpolation interpolation() const { return interp_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& values() const { return values_; }
    bool empty() const { return interp_ == Interpolation::PiecewiseCubic && nodes_.empty(); }

    /// Linearity helper: a*f + b*g evaluated pointwise (callback result).
    static GridFunction linear_combination(double a, const GridFunction& f,
                                           double b, const GridFunction& g);

private:
    void build_spline();
    std::size_t locate(double t) const;

    Interpolation interp_ = Interpolation::PiecewiseCubic;
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> second_;  // spline second derivatives at the nodes
    std::function<double(double)> fn_;
    std::function<double(double)> dfn_;
};

} // namespace vhi

#endif
