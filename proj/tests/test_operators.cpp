#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vhi/operators.hpp"
#include "vhi/special_functions.hpp"

using namespace vhi;

namespace {
const SeriesControl kCtrl{};
const QuadratureSpec kQuad{64, 0.0, 0.0};

std::vector<double> interior_grid(int n, double lo = 0.1, double hi = 0.9) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * i / (n - 1.0);
    return g;
}
} // namespace

TEST_CASE("forward_N Abel closed form") {
    // alpha = 0, lambda = 0, v = 1: tau(x) = x^{1-2b}/(1-2b)
    Parameters p = Parameters::make(0.0, -0.3, 0.0);
    GridFunction one = GridFunction::constant(1.0);
    for (double x : {0.05, 0.3, 0.6, 1.0}) {
        double want = std::pow(x, 1.6) / 1.6;
        CHECK(forward_N(one, x, p, kQuad, kCtrl)
              == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(forward_N(GridFunction::zero(), 0.5, p, kQuad, kCtrl) == 0.0);
    CHECK_THROWS_AS(forward_N(one, 1.5, p, kQuad, kCtrl), DomainError);
}

TEST_CASE("forward_N Bessel-kernel case (alpha = 0, lambda != 0)") {
    // kernel collapses to (x-t)^{-2b} 0F1(1-b; lambda (x-t)^2):
    // compare with a direct quadrature of that form
    Parameters p = Parameters::make(0.0, -0.3, 2.0);
    GridFunction v([](double t) { return 1.0 + 0.5 * t; });
    double x = 0.7;
    double got = forward_N(v, x, p, kQuad, kCtrl);
    double want = integrate_jacobi(96, 0.0, -2.0 * p.beta, 0.0, x, [&](double t) {
        double w = p.lambda * (x - t) * (x - t);
        double f01 = 0.0, c = 1.0;
        for (int n = 0; n < 80; ++n) {
            f01 += c;
            c *= w / ((n + 1.0) * (1.0 - p.beta + n));
        }
        return f01 * v(t);
    });
    CHECK(got == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("forward_N quadrature converges spectrally on the Abel form") {
    Parameters p = Parameters::make(0.0, -0.2, 0.0);
    GridFunction v([](double t) { return std::cos(12.0 * t); });
    double x = 0.8;
    double ref = forward_N(v, x, p, QuadratureSpec{128, 0.0, 0.0}, kCtrl);
    double e8 = std::fabs(forward_N(v, x, p, QuadratureSpec{8, 0.0, 0.0}, kCtrl) - ref);
    double e16 = std::fabs(forward_N(v, x, p, QuadratureSpec{16, 0.0, 0.0}, kCtrl) - ref);
    double e32 = std::fabs(forward_N(v, x, p, QuadratureSpec{32, 0.0, 0.0}, kCtrl) - ref);
    CHECK(e16 < 1e-2 * e8);
    CHECK(e32 <= std::max(e16, 1e-15));
    CHECK(e32 < 1e-12);
}

TEST_CASE("operators are linear") {
    Parameters p = Parameters::make(-0.1, -0.3, 0.5);
    GridFunction f1([](double t) { return 1.0 + t; });
    GridFunction f2([](double t) { return std::sin(3.0 * t); });
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uc(-2.0, 2.0);
    for (int i = 0; i < 5; ++i) {
        double a = uc(rng), b = uc(rng);
        GridFunction combo = GridFunction::linear_combination(a, f1, b, f2);
        double x = 0.6;
        double lhs = forward_N(combo, x, p, kQuad, kCtrl);
        double rhs = a * forward_N(f1, x, p, kQuad, kCtrl)
                     + b * forward_N(f2, x, p, kQuad, kCtrl);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("inverse_T recovers the Abel case") {
    // tau = x^{1-2b}/(1-2b) with alpha = 0, lambda = 0 inverts to v = 1
    Parameters p = Parameters::make(0.0, -0.3, 0.0);
    double twob = 1.0 - 2.0 * p.beta;
    GridFunction tau([twob](double x) { return std::pow(x, twob) / twob; },
                     [twob](double x) { return std::pow(x, twob - 1.0); });
    for (double x : {0.2, 0.5, 0.8}) {
        CHECK(inverse_T(tau, x, p, kQuad, kCtrl)
              == doctest::Approx(1.0).epsilon(1e-7));
    }
    CHECK(inverse_T(GridFunction::zero(), 0.5, p, kQuad, kCtrl) == 0.0);
}

TEST_CASE("inverse_T regime and domain errors") {
    Parameters bad = Parameters::make(-0.3, -0.1, 0.0);  // 2b > 2a: outside regime
    CHECK_THROWS_AS(inverse_T(GridFunction::zero(), 0.5, bad, kQuad, kCtrl), RegimeError);
    Parameters p = Parameters::make(0.0, -0.3, 0.0);
    CHECK_THROWS_AS(inverse_T(GridFunction::zero(), 0.9999, p, kQuad, kCtrl, 1e-2),
                    DomainError);
}

TEST_CASE("prefactor sign sanity") {
    for (double b : {-0.05, -0.2, -0.45}) {
        double pref = std::sin(2.0 * b * M_PI) / (2.0 * b * M_PI);
        CHECK(pref > 0.0);
        CHECK(pref < 1.0);
    }
}

TEST_CASE("TN round-trip on v = 1 + t^2") {
    Parameters p = Parameters::make(-0.1, -0.3, 0.5);
    GridFunction v([](double t) { return 1.0 + t * t; });
    auto rep = roundtrip_check(v, RoundtripDirection::TN, interior_grid(9), p,
                               kQuad, kCtrl);
    CHECK(rep.sup_residual < 1e-4);
    // zero seed: residual identically zero
    auto zero = roundtrip_check(GridFunction::zero(), RoundtripDirection::TN,
                                interior_grid(3), p, kQuad, kCtrl);
    CHECK(zero.sup_residual == 0.0);
}

TEST_CASE("inverse_T is linear in tau") {
    Parameters p = Parameters::make(-0.1, -0.3, 0.5);
    GridFunction t1([](double x) { return x * x; }, [](double x) { return 2.0 * x; });
    GridFunction t2([](double x) { return std::sin(x) * x; },
                    [](double x) { return std::sin(x) + x * std::cos(x); });
    GridFunction combo = GridFunction::linear_combination(1.7, t1, -0.6, t2);
    double x = 0.45;
    double lhs = inverse_T(combo, x, p, kQuad, kCtrl);
    double rhs = 1.7 * inverse_T(t1, x, p, kQuad, kCtrl)
                 - 0.6 * inverse_T(t2, x, p, kQuad, kCtrl);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
}

TEST_CASE("degeneracy map is continuous at the origin") {
    auto p = params_from_degeneracy({-1e-9, -1e-9, 0.0});
    CHECK(std::fabs(p.alpha) < 1e-9);
    CHECK(std::fabs(p.beta) < 1e-9);
}

TEST_CASE("NT round-trip on tau = x^2") {
    Parameters p = Parameters::make(-0.1, -0.3, 0.5);
    GridFunction tau([](double x) { return x * x; }, [](double x) { return 2.0 * x; });
    auto rep = roundtrip_check(tau, RoundtripDirection::NT, interior_grid(9), p,
                               kQuad, kCtrl);
    CHECK(rep.sup_residual < 1e-4);
}

TEST_CASE("lambda = 0 inverse matches the 2F1-kernel reduction") {
    // at y = 0 the F[0;2;1] rows collapse to F(-a,1+a;1+b;u): evaluate the
    // bracket with an explicit 2F1 kernel and compare the full inverse
    Parameters p = Parameters::make(-0.125, -1.0 / 3.0, 0.0);
    GridFunction tau([](double x) { return x * x * (1.0 + 0.3 * x); },
                     [](double x) { return 2.0 * x + 0.9 * x * x; });
    double x = 0.55;
    double got = inverse_T(tau, x, p, kQuad, kCtrl);

    auto bracket = [&](double y) {
        double integral = integrate_jacobi(64, 0.0, 2.0 * p.beta, 0.0, y, [&](double t) {
            double u = -(y - t) * (y - t) / (4.0 * y * t);
            return std::pow(t, p.alpha)
                   * gauss_2f1(-p.alpha, 1.0 + p.alpha, 1.0 + p.beta, u, kCtrl).value
                   * tau.derivative(t);
        });
        return std::pow(y, p.alpha) * integral;
    };
    double h = 1e-3 * x;
    double d1 = (bracket(x + h) - bracket(x - h)) / (2.0 * h);
    double d2 = (bracket(x + 0.5 * h) - bracket(x - 0.5 * h)) / h;
    double wantd = (4.0 * d2 - d1) / 3.0;
    double want = std::sin(2.0 * p.beta * M_PI) / (2.0 * p.beta * M_PI)
                  * std::pow(x, -2.0 * p.alpha) * wantd;
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
}
