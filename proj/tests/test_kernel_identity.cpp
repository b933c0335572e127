#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vhi/kernel_identity.hpp"
#include "vhi/operators.hpp"
#include "vhi/special_functions.hpp"

using namespace vhi;

namespace {
const SeriesControl kCtrl{};
const Parameters kP = Parameters::make(-0.1, -0.3, 0.0);
} // namespace

TEST_CASE("gauss_F_dz shorthand") {
    CHECK(gauss_F_dz(0, 0, 0, 1.7, 0.0, kP, kCtrl) == 1.0);
    // k=p=q=0, beta=-0.25: F(0.5,1;2;z) = 2(1-sqrt(1-z))/z
    Parameters p = Parameters::make(-0.1, -0.25, 0.0);
    double z = 0.37;
    CHECK(gauss_F_dz(0, 0, 0, 2.0, z, p, kCtrl)
          == doctest::Approx(2.0 * (1.0 - std::sqrt(1.0 - z)) / z).epsilon(1e-12));
    // leading behavior 1 + O(z) for any indices
    CHECK(gauss_F_dz(1, 2, 1, 9.0, 1e-9, kP, kCtrl) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("E_term frozen value and leading behavior") {
    // E(0,0;0,0;z->0) -> 1
    CHECK(E_term(0, 0, 0, 0, 1e-10, kP, kCtrl) == doctest::Approx(1.0).epsilon(1e-8));
    // frozen composition from oracle-checked 2F1 values (30-digit run)
    CHECK(E_term(0, 0, 0, 0, 0.5, kP, kCtrl)
          == doctest::Approx(1.0567076741022588).epsilon(1e-12));
    // finite and sign-stable deeper in the table
    double e = E_term(1, 1, 0, 0, 0.25, kP, kCtrl);
    CHECK(std::isfinite(e));
    CHECK(e > 0.0);
}

TEST_CASE("omega(0,0;z) equals (1-z)^alpha") {
    for (double z : {0.1, 0.3, 0.55, 0.7, 0.8}) {
        CHECK(omega(0, 0, z, kP, kCtrl)
              == doctest::Approx(std::pow(1.0 - z, kP.alpha)).epsilon(1e-11));
    }
    Parameters p2 = Parameters::make(-0.05, -0.45, 0.0);
    for (double z : {0.2, 0.6}) {
        CHECK(omega(0, 0, z, p2, kCtrl)
              == doctest::Approx(std::pow(1.0 - z, p2.alpha)).epsilon(1e-11));
    }
}

TEST_CASE("omega collapses to the E/1! cell at alpha = 0") {
    Parameters p0 = Parameters::make(0.0, -0.2, 0.0);
    for (double z : {0.15, 0.5, 0.85}) {
        CHECK(omega(0, 0, z, p0, kCtrl)
              == doctest::Approx(E_term(0, 0, 0, 0, z, p0, kCtrl)).epsilon(1e-14));
        CHECK(omega(0, 0, z, p0, kCtrl) == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("omega cells depend on k+n only") {
    // the within-diagonal equality that makes Omega1 vanish
    for (double z : {0.25, 0.6}) {
        double o10 = omega(1, 0, z, kP, kCtrl);
        double o01 = omega(0, 1, z, kP, kCtrl);
        CHECK(o10 == doctest::Approx(o01).epsilon(1e-11));
        double o20 = omega(2, 0, z, kP, kCtrl);
        double o11 = omega(1, 1, z, kP, kCtrl);
        double o02 = omega(0, 2, z, kP, kCtrl);
        CHECK(o20 == doctest::Approx(o11).epsilon(1e-10));
        CHECK(o11 == doctest::Approx(o02).epsilon(1e-10));
    }
}

TEST_CASE("omega1 vanishes for k >= 1") {
    CHECK(omega1(0, 0.4, kP, kCtrl).value
          == doctest::Approx(omega(0, 0, 0.4, kP, kCtrl)).epsilon(1e-14));
    for (double z : {0.2, 0.4, 0.7}) {
        for (int k : {1, 2, 3}) {
            auto o = omega1(k, z, kP, kCtrl);
            CHECK(std::fabs(o.value) < 1e-8 * o.condition);
        }
    }
}

TEST_CASE("w_kernel equals (1-z)^alpha for any lambda") {
    // lambda = 0: only k = 0 survives
    auto w0 = w_kernel(0.8, 0.5, 0.0, kP, kCtrl);
    CHECK(w0.value == doctest::Approx(std::pow(0.625, -0.1)).epsilon(1e-11));
    // the Lemma: identical value at lambda = 7
    auto w7 = w_kernel(0.8, 0.5, 7.0, kP, kCtrl);
    CHECK(w7.value == doctest::Approx(std::pow(0.625, -0.1))
                          .epsilon(1e-6 * std::max(1.0, w7.condition)));
    CHECK_THROWS_AS(w_kernel(0.5, 0.8, 0.0, kP, kCtrl), DomainError);
}

TEST_CASE("lambda invariance across a sweep") {
    double x = 0.7, s = 0.35;
    double ref = std::pow(s / x, kP.alpha);
    for (double lam : {-10.0, -5.0, 1.0, 10.0}) {
        auto w = w_kernel(x, s, lam, kP, kCtrl);
        CHECK(std::fabs(w.value - ref) < 1e-6 * std::max(1.0, w.condition));
    }
}

TEST_CASE("s -> x edge: W and target both approach 1") {
    for (double s : {0.799, 0.7999}) {
        auto w = w_kernel(0.8, s, 3.0, kP, kCtrl);
        double z = (0.8 - s) / 0.8;
        CHECK(w.value == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(std::pow(1.0 - z, kP.alpha) == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(std::fabs(w.value - std::pow(1.0 - z, kP.alpha)) < 1e-8);
    }
}

TEST_CASE("omega1 absolute smallness at the documented point") {
    auto o1 = omega1(1, 0.4, kP, kCtrl);
    CHECK(std::fabs(o1.value) < 1e-8);
    auto o2 = omega1(2, 0.4, kP, kCtrl);
    CHECK(std::fabs(o2.value) < 1e-8);
}

TEST_CASE("two target forms agree") {
    for (double x : {0.3, 0.6, 0.9}) {
        for (double frac : {0.2, 0.5, 0.8}) {
            double s = frac * x;
            double z = (x - s) / x;
            CHECK(std::pow(1.0 - z, kP.alpha)
                  == doctest::Approx(std::pow(s / x, kP.alpha)).epsilon(1e-14));
        }
    }
}

TEST_CASE("verify_lemma batch reporting") {
    std::vector<std::array<double, 3>> samples;
    for (double x : {0.4, 0.7})
        for (double frac : {0.3, 0.7})
            samples.push_back({x, frac * x, 1.0});
    samples.push_back({0.5, 0.8, 1.0});  // invalid: s > x, must not abort the batch
    auto rep = verify_lemma(kP, samples, kCtrl);
    REQUIRE(rep.size() == 5);
    for (int i = 0; i < 4; ++i) {
        CHECK(rep[i].ok);
        CHECK(rep[i].abs_err < 1e-6 * std::max(1.0, rep[i].condition));
    }
    CHECK_FALSE(rep[4].ok);
}

TEST_CASE("tau_prime_expansion: zero input, Abel case, derivative oracle") {
    QuadratureSpec quad{64, 0.0, 0.0};
    // linear in v
    CHECK(tau_prime_expansion(GridFunction::zero(), 0.5, kP, quad, kCtrl) == 0.0);

    // Abel case: alpha = 0, lambda = 0, v = 1 -> tau'(t) = t^{-2 beta}
    Parameters pa = Parameters::make(0.0, -0.3, 0.0);
    for (double t : {0.3, 0.7}) {
        CHECK(tau_prime_expansion(GridFunction::constant(1.0), t, pa, quad, kCtrl)
              == doctest::Approx(std::pow(t, 0.6)).epsilon(1e-12));
    }

    // generic parameters: match the central-difference derivative of forward_N
    Parameters pg = Parameters::make(-0.1, -0.3, 1.5);
    GridFunction v([](double t) { return 1.0 + t * t; });
    for (double t : {0.35, 0.65}) {
        double h = 1e-5;
        double dn = (forward_N(v, t + h, pg, quad, kCtrl, KernelConvention::Applications)
                     - forward_N(v, t - h, pg, quad, kCtrl, KernelConvention::Applications))
                    / (2.0 * h);
        double tp = tau_prime_expansion(v, t, pg, quad, kCtrl,
                                        KernelConvention::Applications);
        CHECK(tp == doctest::Approx(dn).epsilon(2e-6));
    }
}
