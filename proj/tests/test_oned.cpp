#include <cmath>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "freud2d/bridge.hpp"
#include "freud2d/oned.hpp"

using namespace freud2d;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("first recurrence coefficients at t = 0", "[oned]") {
    const auto s = build_oned_t<double>(0.0);
    const double a0sq = std::tgamma(0.75) / std::tgamma(0.25);
    CHECK_THAT(s.a[0] * s.a[0], WithinAbs(a0sq, 1e-12));
    CHECK_THAT(s.a[0] * s.a[0], WithinAbs(0.337989, 1e-6));
    // from the n = 0 string equation: a_1^2 = 1/(4 a_0^2) - a_0^2
    CHECK_THAT(s.a[1] * s.a[1], WithinAbs(1 / (4 * a0sq) - a0sq, 1e-12));
    CHECK_THAT(s.a[1] * s.a[1], WithinAbs(0.40167966, 1e-8));
    CHECK(s.beta[0] == 0);
    CHECK_THAT(s.beta[1], WithinRel(a0sq, 1e-12));
}

TEST_CASE("a_0^2 is the moment ratio", "[oned]") {
    for (double t : {-1.0, 0.0, 1.0}) {
        const auto s = build_oned_t<double>(t);
        const auto mu = oned_moments<double>(t, 2);
        CHECK_THAT(s.a[0] * s.a[0], WithinRel(mu[2] / mu[0], 1e-13));
    }
}

TEST_CASE("string equation holds to high index", "[oned]") {
    for (double t : {-1.0, 0.0, 1.0, 2.5}) {
        const auto s = build_oned_t<double>(t, 16);
        for (double r : check_dPI(s)) CHECK(std::abs(r) < 1e-12);
    }
    const auto g = build_oned<double>(2.0, 0.7, 16);
    for (double r : check_dPI(g)) CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("Hankel and Stieltjes routes agree at low index", "[oned]") {
    const auto mu = oned_moments<double>(0.5, 20);
    const auto h = oned_coeffs<double>(1.0, -0.5, mu, 8);
    const auto s = build_oned_t<double>(0.5, 8);
    for (int n = 0; n <= 8; ++n) CHECK_THAT(h.a_at(n), WithinRel(s.a_at(n), 1e-10));
}

TEST_CASE("Volterra lattice in t", "[oned]") {
    for (double t : {-0.5, 0.0, 0.5})
        for (const auto& e : check_langmuir_1d(t, 1e-2)) {
            CHECK(std::abs(e.beta_residual) < 1e-8);
            CHECK(std::abs(e.a_residual) < 1e-8);
        }
}

TEST_CASE("one-variable CSV", "[oned]") {
    std::ostringstream os;
    write_oned_csv(os, build_oned_t<double>(0.0, 4));
    const std::string s = os.str();
    CHECK(s.rfind("n,a_n_squared,beta_n,dpi_residual\n0,0.33798912003", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 6);
}

TEST_CASE("product weights factor into one-variable systems", "[oned][bridge]") {
    const WeightParams p{1.5, 0, 0.8, -0.4, 0.6};
    const auto s = build_system<double>(p, 7);
    const auto ox = marginal_system<double>(p, Axis::X, 16), oy = marginal_system<double>(p, Axis::Y, 16);
    CHECK(check_product_bridge(s, ox, oy).pass());
    CHECK_THROWS_AS(marginal_system<double>({1, 0.5, 1, 0, 0}, Axis::X, 8), ParameterDomain);
}
