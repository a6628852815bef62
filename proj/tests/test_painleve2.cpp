#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/airy.hpp>
#include <cmath>

#include "quartic/painleve2.hpp"
#include "test_util.hpp"

using namespace quartic;

TEST_CASE("airy: closed-form value at 0") {
    double ai, aip;
    airy_real(0.0, ai, aip);
    CHECK(ai == doctest::Approx(std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0))
                    .epsilon(1e-14));
    CHECK(ai == doctest::Approx(0.3550280539).epsilon(1e-9));
    CHECK(aip == doctest::Approx(-std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0))
                     .epsilon(1e-14));
}

TEST_CASE("airy: satisfies Ai'' = z Ai (finite differences at 1.3)") {
    const double h = 1e-4, z = 1.3;
    double am, a0, ap, d;
    airy_real(z - h, am, d);
    airy_real(z, a0, d);
    airy_real(z + h, ap, d);
    const double second = (ap - 2.0 * a0 + am) / (h * h);
    CHECK(std::abs(second - z * a0) <= 1e-8);
}

TEST_CASE("airy: oscillatory cosine form on the negative axis") {
    // Cross-route check at z = -7: the implementation value comes from the
    // Maclaurin series there, the cosine expansion below is an independent
    // asymptotic route.
    auto cosine_form = [](double X) {
        const double zeta = 2.0 / 3.0 * X * std::sqrt(X);
        const double u1 = 5.0 / 72.0, u2 = 385.0 / 10368.0, u3 = 85085.0 / 2239488.0;
        const double P = 1.0 - u2 / (zeta * zeta);
        const double Q = u1 / zeta - u3 / (zeta * zeta * zeta);
        return (std::cos(zeta - 0.25 * M_PI) * P + std::sin(zeta - 0.25 * M_PI) * Q) /
               (std::sqrt(M_PI) * std::pow(X, 0.25));
    };
    double ai, aip;
    airy_real(-7.0, ai, aip);
    CHECK(std::abs(ai - cosine_form(7.0)) / std::abs(ai) <= 1e-3);
    // leading cosine term alone captures the value to a few percent at -10
    airy_real(-10.0, ai, aip);
    const double lead = std::cos(2.0 / 3.0 * std::pow(10.0, 1.5) - 0.25 * M_PI) /
                        (std::sqrt(M_PI) * std::pow(10.0, 0.25));
    CHECK(std::abs(ai - lead) / std::abs(ai) <= 5e-2);
}

TEST_CASE("airy: reference sweep against an independent implementation") {
    // relative to |Ai| + |Ai'| so zeros of either function do not blow up the metric
    double worst = 0.0;
    for (double x = -30.0; x <= 14.0; x += 0.0917) {
        double ai, aip;
        airy_real(x, ai, aip);
        const double ba = boost::math::airy_ai(x);
        const double bap = boost::math::airy_ai_prime(x);
        const double scale = std::abs(ba) + std::abs(bap);
        worst = std::max(worst, (std::abs(ai - ba) + std::abs(aip - bap)) / scale);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("airy: complex evaluation agrees with the real path and conjugation") {
    for (double x : {-9.0, -3.0, 1.5, 9.5}) {
        const AiryPair c = airy(std::complex<double>(x, 0.0));
        double ai, aip;
        airy_real(x, ai, aip);
        CHECK(c.Ai.real() == doctest::Approx(ai).epsilon(1e-12));
        CHECK(c.Ai.imag() == 0.0);
    }
    const std::complex<double> z(2.0, 1.5);
    const AiryPair a = airy(z);
    const AiryPair b = airy(std::conj(z));
    CHECK(std::abs(a.Ai - std::conj(b.Ai)) <= 1e-10 * std::abs(a.Ai));
    // spot value against boost's complex-capable formulae via the ODE instead:
    // second difference matches z*Ai off the axis
    const double h = 1e-3;
    const AiryPair am = airy(z - h), ap = airy(z + h);
    const std::complex<double> second = (ap.Ai - 2.0 * a.Ai + am.Ai) / (h * h);
    CHECK(std::abs(second - z * a.Ai) <= 1e-6 * std::abs(a.Ai));
}

TEST_CASE("hastings-mcleod: residual, boundary ratios, frozen u(0)") {
    const HMGrid& hm = testutil::shared_hm();
    CHECK(hm_max_collocation_residual(hm) <= 1e-10);

    double ai5, aip5;
    airy_real(5.0, ai5, aip5);
    CHECK(hm.u_at(5.0) / ai5 == doctest::Approx(1.0).epsilon(1e-4));
    const double left_ratio = hm.u_at(-6.0) / std::sqrt(3.0);
    CHECK(left_ratio <= 1.0);
    CHECK(left_ratio >= 1.0 - 3e-3);
    // two-term left-tail oracle at y = -6: 1 - 1/1728 - (73/128)/6^6
    CHECK(left_ratio == doctest::Approx(1.0 - 1.0 / 1728.0 - 73.0 / 128.0 / 46656.0)
                            .epsilon(2e-3));

    // mesh-refinement oracle for u(0)
    const HMGrid fine = solve_hastings_mcleod(-10.0, 8.0, 5600, 1e-12);
    CHECK(std::abs(hm.u_at(0.0) - fine.u_at(0.0)) <= 1e-7);
    CHECK(hm.u_at(0.0) == doctest::Approx(0.3670615).epsilon(5e-7));
}

TEST_CASE("hastings-mcleod: derived quantities") {
    const HMGrid& hm = testutil::shared_hm();
    // D positive and decreasing
    for (size_t i = 1; i < hm.D.size(); ++i) {
        CHECK(hm.D[i] > 0.0);
        CHECK(hm.D[i] <= hm.D[i - 1] + 1e-15);
    }
    // identity D = (y^2 - v^2)/4 + w^2 against the quadrature route
    double worst = 0.0;
    for (double y = -9.5; y <= 7.5; y += 0.37) {
        const double alg = 0.25 * (y * y - hm.v_at(y) * hm.v_at(y)) +
                           hm.up_at(y) * hm.up_at(y);
        worst = std::max(worst, std::abs(alg - hm.D_at(y)));
    }
    CHECK(worst <= 1e-7);
    // D' = -u^2 and q' = v/8 by finite differences
    const double h = 1e-4;
    for (double y : {-5.0, -1.3, 0.0, 2.1}) {
        const double dD = (hm.D_at(y + h) - hm.D_at(y - h)) / (2.0 * h);
        CHECK(std::abs(dD + hm.u_at(y) * hm.u_at(y)) <= 1e-6);
        const double dq = (hm.q_at(y + h) - hm.q_at(y - h)) / (2.0 * h);
        CHECK(std::abs(dq - hm.v_at(y) / 8.0) <= 1e-6);
    }
    // v has exactly one sign change on the grid
    int changes = 0;
    for (size_t i = 1; i < hm.v.size(); ++i)
        if (hm.v[i - 1] < 0.0 && hm.v[i] >= 0.0) ++changes;
    CHECK(changes == 1);
    CHECK(hm.v.front() < 0.0);
    CHECK(hm.v.back() > 0.0);
}

TEST_CASE("hastings-mcleod: precondition guards") {
    CHECK_THROWS_AS(solve_hastings_mcleod(-4.0, 8.0, 800, 1e-10), std::domain_error);
    CHECK_THROWS_AS(solve_hastings_mcleod(-10.0, 4.0, 800, 1e-10), std::domain_error);
    CHECK_THROWS_AS(solve_hastings_mcleod(-10.0, 8.0, 100, 1e-10), std::domain_error);
    const HMGrid& hm = testutil::shared_hm();
    CHECK_THROWS_AS(hm.u_at(9.5), std::domain_error);
}

TEST_CASE("turning points: asymptotic regimes and algebraic identity") {
    const HMGrid& hm = testutil::shared_hm();
    {
        const TurningPoints tp = turning_points(hm, -10.0);
        CHECK(tp.s2_sq == doctest::Approx(5.0).epsilon(0.02));
        CHECK(tp.s1_sq == doctest::Approx(-1.0 / 1600.0).epsilon(0.20));
    }
    {
        const TurningPoints tp = turning_points(hm, 6.0);
        CHECK(tp.s1_sq < 0.0);
        CHECK(tp.s2_sq < 0.0);
        CHECK(tp.s1_sq == doctest::Approx(-1.5).epsilon(0.05));
        CHECK(tp.s2_sq == doctest::Approx(-1.5).epsilon(0.05));
    }
    for (double y : {-8.0, -2.0, 0.0, 1.0, 4.0}) {
        const TurningPoints tp = turning_points(hm, y);
        const double alg = 0.25 * (y * y - hm.v_at(y) * hm.v_at(y)) +
                           hm.up_at(y) * hm.up_at(y);
        CHECK(std::abs(tp.discriminant - alg) <= 1e-8);
        CHECK(tp.discriminant > 0.0);
        CHECK(tp.s1_sq < tp.s2_sq);
        CHECK(tp.s1_sq < 0.0);
    }
}

TEST_CASE("y0: unique positive root of q, stable under refinement") {
    const HMGrid& hm = testutil::shared_hm();
    const double y0 = find_y0(hm);
    CHECK(y0 > 0.0);
    // unique sign change of q on the grid
    int changes = 0;
    for (size_t i = 1; i < hm.q.size(); ++i)
        if ((hm.q[i - 1] < 0.0) != (hm.q[i] < 0.0)) ++changes;
    CHECK(changes == 1);
    const HMGrid fine = solve_hastings_mcleod(-10.0, 8.0, 5600, 1e-12);
    CHECK(std::abs(find_y0(fine) - y0) <= 1e-6);
    // s2^2 changes sign at y0
    CHECK(turning_points(hm, y0 - 0.2).s2_sq > 0.0);
    CHECK(turning_points(hm, y0 + 0.2).s2_sq < 0.0);
}

TEST_CASE("q tail: q(-20) ~ 1/(32 y)") {
    const HMGrid wide = solve_hastings_mcleod(-24.0, 8.0, 4800, 1e-12);
    CHECK(wide.q_at(-20.0) == doctest::Approx(1.0 / (32.0 * -20.0)).epsilon(0.05));
}
