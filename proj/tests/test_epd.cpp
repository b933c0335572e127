#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vhi/epd.hpp"
#include "vhi/operators.hpp"

using namespace vhi;

namespace {
const SeriesControl kCtrl{};
const QuadratureSpec kQuad{64, 0.0, 0.0};
const Parameters kP = Parameters::make(-0.1, -0.3, 1.5);

CauchyData seeded_cauchy_data(const Parameters& p, const QuadratureSpec& quad) {
    GridFunction T([](double t) { return t * (1.0 + 0.5 * t); },
                   [](double t) { return 1.0 + t; });
    GridFunction nu([](double t) { return 0.3 + 0.2 * t * t; },
                    [](double t) { return 0.4 * t; });
    // tau from the eta = xi use site (Applications convention)
    GridFunction tau = forward_N_function(T, p, quad, kCtrl,
                                          KernelConvention::Applications);
    return CauchyData{tau, nu, T};
}
} // namespace

TEST_CASE("char_coords and inverse") {
    double m = -0.5, n = -0.4;
    // y = 0 collapses onto the diagonal
    auto p0 = char_coords(0.6, 0.0, m, n);
    CHECK(p0.xi == doctest::Approx(p0.eta));
    // x = 0 gives xi = -eta
    auto p1 = char_coords(0.0, -0.3, m, n);
    CHECK(p1.xi == doctest::Approx(-p1.eta));
    CHECK_THROWS_AS(char_coords(-0.1, -0.3, m, n), DomainError);
    // round trip on interior samples
    for (double x : {0.2, 0.5, 0.8}) {
        for (double y : {-0.6, -0.3, -0.05}) {
            auto p = char_coords(x, y, m, n);
            double xr, yr;
            char_coords_inverse(p, m, n, xr, yr);
            CHECK(xr == doctest::Approx(x).epsilon(1e-12));
            CHECK(yr == doctest::Approx(y).epsilon(1e-12));
        }
    }
}

TEST_CASE("gamma2 values") {
    // beta -> 0^-: [2]^{-1} Gamma(2)/Gamma(1) = 1/2
    CHECK(gamma2(-1e-9) == doctest::Approx(0.5).epsilon(1e-6));
    // frozen from the Gamma oracle (30-digit run)
    CHECK(gamma2(-0.25) == doctest::Approx(0.28224953424411675).epsilon(1e-14));
    // finite across the regime
    for (int i = 1; i <= 10; ++i) {
        double b = -0.49 + 0.048 * (i - 1);
        CHECK(std::isfinite(gamma2(b)));
        CHECK(gamma2(b) > 0.0);
    }
}

TEST_CASE("cauchy_solution zero data and linearity") {
    CauchyData zero{GridFunction::zero(), GridFunction::zero(), GridFunction::zero()};
    CharPoint p{0.3, 0.7};
    CHECK(cauchy_solution(p, zero, kP, kQuad, kCtrl) == 0.0);
    CHECK_THROWS_AS(cauchy_solution(CharPoint{0.7, 0.3}, zero, kP, kQuad, kCtrl),
                    DomainError);

    // doubling the data doubles the solution
    auto data = seeded_cauchy_data(kP, kQuad);
    CauchyData doubled{GridFunction::linear_combination(2.0, data.tau, 0.0, data.tau),
                       GridFunction::linear_combination(2.0, data.nu, 0.0, data.nu),
                       GridFunction::linear_combination(2.0, *data.T, 0.0, *data.T)};
    double u1 = cauchy_solution(p, data, kP, kQuad, kCtrl);
    double u2 = cauchy_solution(p, doubled, kP, kQuad, kCtrl);
    CHECK(u2 == doctest::Approx(2.0 * u1).epsilon(1e-12));
}

TEST_CASE("goursat and cauchy evaluators share kernels") {
    // with Psi <-> T and Phi <-> N the two formulas are the same integral
    GridFunction A([](double t) { return t * (1.0 + 0.5 * t); });
    GridFunction B([](double t) { return 0.4 - 0.1 * t; });
    CharPoint p{0.25, 0.6};
    double direct = dual_kernel_solution(p, A, B, kP, kQuad, kCtrl);
    GoursatData gd{GridFunction::zero(), GridFunction::zero(), B, A};
    CHECK(goursat_solution(p, gd, kP, kQuad, kCtrl) == doctest::Approx(direct));
    GoursatData zero = make_goursat_data(GridFunction::zero(), GridFunction::zero(),
                                         GridFunction::zero(), kP);
    CHECK(goursat_solution(p, zero, kP, kQuad, kCtrl) == 0.0);
}

TEST_CASE("make_goursat_data builds Psi = 2 gamma2 cos(b pi) nu + Phi") {
    GridFunction nu([](double t) { return 0.3 + t; });
    GridFunction Phi([](double t) { return 1.0 - t; });
    auto gd = make_goursat_data(GridFunction::zero(), nu, Phi, kP);
    double c = 2.0 * gamma2(kP.beta) * std::cos(kP.beta * M_PI);
    for (double t : {0.2, 0.5, 0.8})
        CHECK(gd.Psi(t) == doctest::Approx(c * nu(t) + Phi(t)).epsilon(1e-14));
}

TEST_CASE("pde9_residual basics") {
    Parameters p = Parameters::make(-0.1, -0.3, 0.0);
    auto zero = [](CharPoint) { return 0.0; };
    CHECK(pde9_residual(zero, CharPoint{0.3, 0.7}, p, 1e-2) == 0.0);
    // constant u with lambda = 0: every derivative term vanishes
    auto cst = [](CharPoint) { return 3.25; };
    CHECK(pde9_residual(cst, CharPoint{0.3, 0.7}, p, 1e-2)
          == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(pde9_residual(cst, CharPoint{0.005, 0.7}, p, 1e-2), StencilError);
    CHECK_THROWS_AS(pde9_residual(cst, CharPoint{0.35, 0.36}, p, 1e-2), StencilError);
}

TEST_CASE("cauchy solution satisfies the EPD equation at O(h^2)") {
    auto data = seeded_cauchy_data(kP, kQuad);
    auto u = [&](CharPoint p) {
        return cauchy_solution(p, data, kP, QuadratureSpec{96, 0.0, 0.0}, kCtrl);
    };
    CharPoint p{0.35, 0.8};
    double r1 = pde9_residual(u, p, kP, 1e-2);
    double r2 = pde9_residual(u, p, kP, 5e-3);
    CHECK(std::fabs(r1) < 1e-3);
    CHECK(std::fabs(r1 / r2) == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("recover_T_from_tau round-trips a seeded density") {
    GridFunction T([](double t) { return t * (1.0 + 0.5 * t); },
                   [](double t) { return 1.0 + t; });
    GridFunction tau = forward_N_function(T, kP, kQuad, kCtrl,
                                          KernelConvention::Applications);
    std::vector<double> grid;
    for (int i = 0; i < 9; ++i)
        grid.push_back(0.15 + 0.7 * i / 8.0);
    GridFunction rec = recover_T_from_tau(tau, grid, kP, kQuad, kCtrl);
    for (double x : grid)
        CHECK(rec(x) == doctest::Approx(T(x)).epsilon(2e-4));
    // zero maps to zero
    GridFunction rec0 = recover_T_from_tau(GridFunction::zero(), grid, kP, kQuad, kCtrl);
    for (double x : grid)
        CHECK(std::fabs(rec0(x)) < 1e-12);
}

TEST_CASE("fundamental_relation recovers a seeded nu") {
    // seed nu, build tau via the phi = 0 Goursat use-site:
    // tau = N_app[Psi] with Psi = 2 gamma2 cos(b pi) nu
    GridFunction nu([](double t) { return 0.5 + 0.25 * t; },
                    [](double) { return 0.25; });
    double c = 2.0 * gamma2(kP.beta) * std::cos(kP.beta * M_PI);
    GridFunction Psi = GridFunction::linear_combination(c, nu, 0.0, nu);
    GridFunction tau = forward_N_function(Psi, kP, kQuad, kCtrl,
                                          KernelConvention::Applications);
    std::vector<double> grid;
    for (int i = 0; i < 7; ++i)
        grid.push_back(0.2 + 0.6 * i / 6.0);
    GridFunction rec = fundamental_relation(tau, grid, kP, kQuad, kCtrl);
    for (double x : grid)
        CHECK(rec(x) == doctest::Approx(nu(x)).epsilon(2e-4));
    // linearity: doubling tau doubles nu
    GridFunction tau2 = GridFunction::linear_combination(2.0, tau, 0.0, tau);
    GridFunction rec2 = fundamental_relation(tau2, grid, kP, kQuad, kCtrl);
    CHECK(rec2(grid[3]) == doctest::Approx(2.0 * rec(grid[3])).epsilon(1e-10));
}

TEST_CASE("verify_cauchy_data zero data gives zero deviations") {
    CauchyData zero{GridFunction::zero(), GridFunction::zero(), GridFunction::zero()};
    std::vector<double> eps = {1e-2, std::pow(10.0, -2.5), 1e-3};
    auto rep = verify_cauchy_data(zero, kP, {0.5}, kQuad, kCtrl, eps);
    CHECK(rep.max_tau_dev == 0.0);
    CHECK(rep.max_nu_dev == 0.0);
}

TEST_CASE("the (11) extraction localizes a nu bump") {
    // extract nu from clean data and compare against a bumped reference:
    // the deviation must appear exactly where the bump sits
    auto data = seeded_cauchy_data(kP, kQuad);
    auto bumped = [nu = data.nu](double t) {
        double d = (t - 0.55) / 0.04;
        return nu(t) + 0.05 * std::exp(-d * d);
    };
    std::vector<double> eps = {1e-2, std::pow(10.0, -2.5), 1e-3};
    auto rep = verify_cauchy_data(data, kP, {0.3, 0.55},
                                  QuadratureSpec{96, 0.0, 0.0}, kCtrl, eps);
    double dev_away = std::fabs(rep.samples[0].nu_limit_raw / rep.factor_reference
                                - bumped(0.3));
    double dev_bump = std::fabs(rep.samples[1].nu_limit_raw / rep.factor_reference
                                - bumped(0.55));
    CHECK(dev_away < 1e-3);
    CHECK(dev_bump > 1e-2);
}

TEST_CASE("verify_cauchy_data checks (10) and (11)") {
    auto data = seeded_cauchy_data(kP, kQuad);
    std::vector<double> eps = {1e-2, std::pow(10.0, -2.5), 1e-3};
    auto rep = verify_cauchy_data(data, kP, {0.45, 0.6}, QuadratureSpec{96, 0.0, 0.0},
                                  kCtrl, eps);
    CHECK(rep.factor_reference == doctest::Approx(-std::tgamma(1.3)).epsilon(1e-14));
    for (const auto& s : rep.samples) {
        CAPTURE(s.xi);
        CHECK(s.tau_dev < 1e-4);
        CHECK(s.nu_dev < 1e-3);
        // the measured systematic factor tracks -Gamma(1-b)
        CHECK(s.measured_factor
              == doctest::Approx(rep.factor_reference).epsilon(5e-3));
        CHECK(s.ok);
    }
}
