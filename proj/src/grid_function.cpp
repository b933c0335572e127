#include "vhi/grid_function.hpp"

#include <algorithm>
#include <cmath>

namespace vhi {

GridFunction::GridFunction(std::vector<double> nodes, std::vector<double> values)
    : interp_(Interpolation::PiecewiseCubic),
      nodes_(std::move(nodes)),
      values_(std::move(values)) {
    if (nodes_.size() != values_.size())
        throw ConfigError("GridFunction: nodes/values size mismatch");
    if (nodes_.size() < 2)
        throw ConfigError("GridFunction: need at least two nodes");
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
        if (!(nodes_[i] < nodes_[i + 1]))
            throw ConfigError("GridFunction: nodes must be strictly increasing");
    if (!(nodes_.front() >= 0.0) || !(nodes_.back() <= 1.0))
        throw ConfigError("GridFunction: nodes must lie in [0,1]");
    for (double v : values_)
        if (!std::isfinite(v))
            throw ConfigError("GridFunction: values must be finite");
    build_spline();
}

GridFunction::GridFunction(std::function<double(double)> value,
                           std::function<double(double)> deriv)
    : interp_(Interpolation::Callback), fn_(std::move(value)), dfn_(std::move(deriv)) {
    if (!fn_)
        throw ConfigError("GridFunction: null callback");
}

GridFunction GridFunction::zero() {
    return GridFunction([](double) { return 0.0; }, [](double) { return 0.0; });
}

GridFunction GridFunction::constant(double c) {
    return GridFunction([c](double) { return c; }, [](double) { return 0.0; });
}

GridFunction GridFunction::linear_combination(double a, const GridFunction& f,
                                              double b, const GridFunction& g) {
    return GridFunction(
        [a, f, b, g](double t) { return a * f(t) + b * g(t); },
        [a, f, b, g](double t) { return a * f.derivative(t) + b * g.derivative(t); });
}

void GridFunction::build_spline() {
    // not-a-knot cubic spline: solve for second derivatives
    const std::size_t n = nodes_.size();
    second_.assign(n, 0.0);
    if (n == 2)
        return;  // degenerates to the chord

    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        h[i] = nodes_[i + 1] - nodes_[i];

    // tridiagonal-with-corners system; small n, solve by full elimination on
    // a banded copy kept simple with the Thomas algorithm after folding the
    // not-a-knot rows into the first/last interior equations
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        a[i] = h[i - 1];
        b[i] = 2.0 * (h[i - 1] + h[i]);
        c[i] = h[i];
        d[i] = 6.0 * ((values_[i + 1] - values_[i]) / h[i]
                      - (values_[i] - values_[i - 1]) / h[i - 1]);
    }
    if (n == 3) {
        // three points: not-a-knot degenerates to the parabola through them
        double t0 = nodes_[0], t1 = nodes_[1], t2 = nodes_[2];
        double f01 = (values_[1] - values_[0]) / (t1 - t0);
        double f12 = (values_[2] - values_[1]) / (t2 - t1);
        double f012 = (f12 - f01) / (t2 - t0);
        second_[0] = second_[1] = second_[2] = 2.0 * f012;
        return;
    }
    // not-a-knot: s0 = s1 + (h0/h1)(s1 - s2), s_{n-1} = s_{n-2} + (h_{n-2}/h_{n-3})(s_{n-2} - s_{n-3})
    double r0 = h[0] / h[1];
    b[1] += a[1] * (1.0 + r0);
    c[1] -= a[1] * r0;
    a[1] = 0.0;
    double r1 = h[n - 2] / h[n - 3];
    b[n - 2] += c[n - 2] * (1.0 + r1);
    a[n - 2] -= c[n - 2] * r1;
    c[n - 2] = 0.0;

    // Thomas on rows 1..n-2
    for (std::size_t i = 2; i + 1 < n; ++i) {
        double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        d[i] -= m * d[i - 1];
    }
    second_[n - 2] = d[n - 2] / b[n - 2];
    for (std::size_t i = n - 3; i >= 1; --i) {
        second_[i] = (d[i] - c[i] * second_[i + 1]) / b[i];
        if (i == 1)
            break;
    }
    second_[0] = second_[1] + r0 * (second_[1] - second_[2]);
    second_[n - 1] = second_[n - 2] + r1 * (second_[n - 2] - second_[n - 3]);
}

std::size_t GridFunction::locate(double t) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    std::size_t i = (it == nodes_.begin()) ? 0 : (it - nodes_.begin() - 1);
    return std::min(i, nodes_.size() - 2);
}

double GridFunction::operator()(double t) const {
    if (interp_ == Interpolation::Callback)
        return fn_(t);
    std::size_t i = locate(t);
    double h = nodes_[i + 1] - nodes_[i];
    double A = (nodes_[i + 1] - t) / h;
    double B = (t - nodes_[i]) / h;
    return A * values_[i] + B * values_[i + 1]
           + ((A * A * A - A) * second_[i] + (B * B * B - B) * second_[i + 1])
                 * h * h / 6.0;
}

double GridFunction::derivative(double t) const {
    if (interp_ == Interpolation::Callback) {
        if (dfn_)
            return dfn_(t);
        double h = 1e-6 * std::max(1.0, std::fabs(t));
        return (fn_(t + h) - fn_(t - h)) / (2.0 * h);
    }
    std::size_t i = locate(t);
    double h = nodes_[i + 1] - nodes_[i];
    double A = (nodes_[i + 1] - t) / h;
    double B = (t - nodes_[i]) / h;
    return (values_[i + 1] - values_[i]) / h
           + ((3.0 * B * B - 1.0) * second_[i + 1] - (3.0 * A * A - 1.0) * second_[i])
                 * h / 6.0;
}

} // namespace vhi
