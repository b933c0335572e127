#include "vhi/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <Eigen/Dense>

namespace vhi {

namespace {

GaussJacobiRule build_rule(int n, double a, double b) {
    if (n < 1)
        throw ConfigError("gauss_jacobi_rule: n must be positive");
    if (!(a > -1.0) || !(b > -1.0))
        throw ConfigError("gauss_jacobi_rule: exponents must exceed -1");

    // symmetric tridiagonal Jacobi matrix from the three-term recurrence
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    double ab = a + b;
    for (int j = 0; j < n; ++j) {
        double dj = static_cast<double>(j);
        double alpha;
        if (j == 0)
            alpha = (b - a) / (ab + 2.0);
        else
            alpha = (b * b - a * a) / ((2 * dj + ab) * (2 * dj + ab + 2.0));
        J(j, j) = alpha;
        if (j + 1 < n) {
            double j1 = dj + 1.0;
            double beta;
            if (j == 0)
                beta = 4.0 * (1.0 + a) * (1.0 + b)
                       / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
            else
                beta = 4.0 * j1 * (j1 + a) * (j1 + b) * (j1 + ab)
                       / ((2 * j1 + ab) * (2 * j1 + ab)
                          * (2 * j1 + ab + 1.0) * (2 * j1 + ab - 1.0));
            J(j, j + 1) = J(j + 1, j) = std::sqrt(beta);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw Error("gauss_jacobi_rule: eigensolver failed");

    double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0)
                          + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));

    GaussJacobiRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

std::map<std::tuple<int, double, double>, GaussJacobiRule> g_cache;
std::mutex g_cache_mutex;

} // namespace

const GaussJacobiRule& gauss_jacobi_rule(int n, double a, double b) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto key = std::make_tuple(n, a, b);
    auto it = g_cache.find(key);
    if (it == g_cache.end())
        it = g_cache.emplace(key, build_rule(n, a, b)).first;
    return it->second;
}

MappedRule mapped_jacobi_rule(int n, double left_exponent, double right_exponent,
                              double lo, double hi) {
    if (!(hi > lo))
        throw DomainError("mapped_jacobi_rule: hi must exceed lo");
    // weight (1-x)^a (1+x)^b with a at x=+1 <-> t=hi, b at x=-1 <-> t=lo
    const GaussJacobiRule& base = gauss_jacobi_rule(n, right_exponent, left_exponent);
    double half = 0.5 * (hi - lo);
    double scale = std::pow(half, 1.0 + left_exponent + right_exponent);
    MappedRule r;
    r.t.resize(base.nodes.size());
    r.w.resize(base.nodes.size());
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
        r.t[i] = lo + (base.nodes[i] + 1.0) * half;
        r.w[i] = scale * base.weights[i];
    }
    return r;
}

} // namespace vhi
