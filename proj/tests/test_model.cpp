#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "quartic/model.hpp"
#include "quartic/numerics.hpp"
#include "test_util.hpp"

using namespace quartic;

TEST_CASE("derived constants, closed forms") {
    {
        const DerivedConstants d = derive_constants(ModelParams(-1.0, 1.0, 100));
        CHECK(d.lambda_c == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(d.t_c == doctest::Approx(-2.0).epsilon(1e-15));
    }
    {
        const DerivedConstants d = derive_constants(ModelParams(-2.0, 1.0, 100));
        CHECK(d.t_c == doctest::Approx(-2.0));
        CHECK(d.z0() == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(d.lambda_c == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(d.C() == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-15));
        CHECK(d.c0() == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));
        CHECK(d.c1() == doctest::Approx(std::cbrt(4.0)).epsilon(1e-15));
        CHECK(d.c2() == doctest::Approx(0.5 * std::pow(4.0, -1.0 / 3.0)).epsilon(1e-15));
    }
    // t >= 0: the critical scales are undefined
    const DerivedConstants d0 = derive_constants(ModelParams(0.5, 1.0, 10));
    CHECK(!d0.critical_scales_defined());
    CHECK_THROWS_AS((void)d0.z0(), std::domain_error);
    CHECK_THROWS_AS((void)d0.c9(), std::domain_error);
}

TEST_CASE("density: pointwise examples") {
    const ModelParams crit(-2.0, 1.0, 1);
    CHECK(density(crit, 0.0) == 0.0);  // p(0) = 0 at criticality
    CHECK(density(crit, 1.0) ==
          doctest::Approx(std::sqrt(3.0) / (2.0 * M_PI)).epsilon(1e-14));

    const EquilibriumDensity two = equilibrium_density(ModelParams(-3.0, 1.0, 1));
    REQUIRE(two.regime == Regime::TwoCut);
    CHECK(two.endpoints[1] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    CHECK(two.endpoints[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("density: evenness, support, endpoint zeros") {
    testutil::Lcg rng;
    for (double t : {-1.0, -2.0, -3.0, 0.7}) {
        const ModelParams p(t, 1.0, 1);
        for (int i = 0; i < 50; ++i) {
            const double x = rng.uniform(-3.0, 3.0);
            CHECK(density(p, x) == density(p, -x));  // formula-level symmetry
            CHECK(density(p, x) >= 0.0);
        }
        if (t < 0.0) {
            const EquilibriumDensity e = equilibrium_density(p);
            for (double ep : e.endpoints) {
                CHECK(std::abs(density(p, ep)) <= 1e-10);
                CHECK(std::abs(density(p, -ep)) <= 1e-10);
            }
            CHECK(density(p, e.endpoints.back() + 0.1) == 0.0);
        }
    }
}

TEST_CASE("regime dispatch is consistent across t_c") {
    const double t_c = -2.0;
    const ModelParams above(t_c + 1e-6, 1.0, 1);
    const ModelParams below(t_c - 1e-6, 1.0, 1);
    CHECK(classify_regime(above) == Regime::OneCut);
    CHECK(classify_regime(below) == Regime::TwoCut);
    CHECK(classify_regime(ModelParams(t_c * (1.0 + 1e-14), 1.0, 1)) == Regime::Critical);
    // one-cut coefficient b0 -> 0 and inner endpoint b -> 0 at the transition
    CHECK(std::abs(equilibrium_density(above).b0) < 5e-7);
    CHECK(std::abs(equilibrium_density(below).endpoints[0]) < 2e-3);
}

TEST_CASE("density normalization integrates to one in all regimes") {
    for (double t : {-1.0, -2.0, -3.0}) {
        const ModelParams p(t, 1.0, 1);
        const double v = density_normalization(p, 1e-11);
        CHECK(std::abs(v - 1.0) <= 1e-10);
    }
    CHECK_THROWS_AS(density_normalization(ModelParams(-1.0, 1.0, 1), -1.0),
                    std::domain_error);
}
