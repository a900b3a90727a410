#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "hyperlat/hypgeom.hpp"

using namespace hl::hyp;

TEST_CASE("g solves its defining equation") {
    double worst = 0;
    for (int ia = 0; ia <= 20; ++ia)
        for (int iu = 0; iu <= 30; ++iu)
            for (int iv = 0; iv <= 30; ++iv) {
                double a = ia / 20.0, u = iu * 0.1, v = iv * 0.1;
                double x = g(a, u, v);
                REQUIRE(x >= 0);
                REQUIRE(x <= std::min(u, v) + 1e-15);
                double res = std::sinh(u - x) * std::sinh(v - x) - a * std::sinh(u) * std::sinh(v);
                worst = std::max(worst, std::abs(res) / std::max(1.0, a * std::sinh(u) * std::sinh(v)));
            }
    CHECK(worst < 1e-10);
}

TEST_CASE("g is symmetric and monotone") {
    for (double a : {0.0, 0.25, 0.5, 0.75, 1.0})
        for (double u = 0.05; u < 3; u += 0.35)
            for (double v = 0.05; v < 3; v += 0.4) CHECK(g(a, u, v) == doctest::Approx(g(a, v, u)).epsilon(1e-12));
    for (double u = 0.1; u < 3; u += 0.3) {
        double prev = g(0, u, u);
        CHECK(prev == doctest::Approx(u));
        for (double a = 0.1; a <= 1.0001; a += 0.1) {
            double cur = g(std::min(a, 1.0), u, u);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
        CHECK(g(1, u, u) == doctest::Approx(0).epsilon(1e-12));
        double lo = g(0.5, u, 0.2), hi = g(0.5, u, 0.9);
        CHECK(lo <= hi + 1e-15);
    }
}

TEST_CASE("g_inf closed form bounds g from above") {
    for (double u : {0.1, 0.48, 1.3}) {
        CHECK(g_inf(0, u) == doctest::Approx(u));
        CHECK(g_inf(1, u) == doctest::Approx(0).epsilon(1e-12));
        for (double a : {0.5, 0.75, 0.933}) {
            CHECK(g_inf(a, u) == doctest::Approx(u - std::asinh(a * std::sinh(u))));
            // exact limit: tanh x = (1 - a) sinh u / (cosh u + a sinh u)
            double lim = std::atanh((1 - a) * std::sinh(u) / (std::cosh(u) + a * std::sinh(u)));
            double prev = 0;
            for (double v = 0.5; v <= 50; v += 0.5) {
                double x = g(a, u, v);
                CHECK(x >= prev - 1e-15);
                CHECK(x <= g_inf(a, u) + 1e-15);
                prev = x;
            }
            CHECK(prev == doctest::Approx(lim).epsilon(1e-10));
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(g(0.5, -1, 1), std::invalid_argument);
    CHECK_THROWS_AS(g(1.5, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(f_h1(0.5, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(f_h2(0.5, 0.5, 0.5, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(f_h3(0.5, 0.5, 0.5, 0.5, 1, 0.2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(crossratio_pairing(1, 1, 0.5, false, true), std::invalid_argument);
    CHECK_THROWS_AS(angle_of_code(5), std::invalid_argument);
}

TEST_CASE("angle codes") {
    CHECK(a_of_code(0) == doctest::Approx(0.5));
    CHECK(a_of_code(4) == doctest::Approx(1.0));
    for (int c = 0; c < kAngleCodes; ++c) CHECK(a_of_code(c) == doctest::Approx(a_of_angle(angle_of_code(c))));
}

TEST_CASE("bound constants") {
    CHECK(std::abs(eta0() - 1.924847300238414) < 1e-12);
    CHECK(r_h1(0, 0) == doctest::Approx(7).epsilon(1e-9));
    CHECK(r_h1(1, 1) == doctest::Approx(12.25).epsilon(1e-9));
    CHECK(r_h1(4, 4) == doctest::Approx(18).epsilon(1e-9));
    CHECK(std::abs(r_h2(0) - 31.15549442) < 1e-6);
    CHECK(std::abs(r_h2(4) - 46) < 1e-6);
    CHECK(std::abs(r_h3() - 68.1815011826) < 1e-6);
    CHECK(std::abs(r_h4(0) - 1.429914377) < 1e-6);
    CHECK(std::abs(r_h4(4) - eta0() / 2) < 1e-12);
    BetaConstants b = solve_beta_constants();
    CHECK(std::abs(beta1_residual(b.beta1)) < 1e-8);
    CHECK(std::abs(beta2_residual(b.beta2)) < 1e-8);
    // printed values are truncated
    CHECK(std::floor(b.beta1 * 1e6) == 983986);
    CHECK(b.bound1 < 83.7706);
    CHECK(std::floor(b.beta2 * 1e4) == 14134);
    CHECK(b.bound2 < 45.4629);
}

TEST_CASE("cross-ratio pairing") {
    // lines at the same distance on opposite sides with zero offset
    double t = 1.0;
    double opp = crossratio_pairing(t, t, 0, false, false);
    CHECK(opp == doctest::Approx(4 * std::cosh(t / 2) * std::cosh(t / 2) / (std::sinh(t / 2) * std::sinh(t / 2)) - 2));
    double same = crossratio_pairing(t, t, 0, true, false);
    CHECK(same == doctest::Approx(2));
    double meet = crossratio_pairing(1.0, 1.5, 0.3, true, true);
    CHECK(meet < crossratio_pairing(1.0, 1.5, 0.3, true, false));
}

TEST_CASE("constant list order and names are fixed") {
    auto list = bound_constants();
    REQUIRE(list.size() == 1 + 15 + 5 + 1 + 5 + 4);
    CHECK(list.front().first == "eta0");
    CHECK(list[1].first == "r_h1(pi/2,pi/2)");
    CHECK(list.back().first == "bound2");
    std::map<std::string, double> m(list.begin(), list.end());
    CHECK(m.size() == list.size());
}
