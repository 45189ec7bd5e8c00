#include <cmath>
#include <numbers>

#include <catch2/catch_amalgamated.hpp>

#include "freud2d/identities.hpp"
#include "freud2d/orthosys.hpp"

using namespace freud2d;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const WeightParams product{1, 0, 1, 0, 0};
const WeightParams generic{1, 0.5, 2, 0.3, -0.2};
const WeightParams coupled{1, 1, 1, -1, -1};
} // namespace

TEST_CASE("initial coefficients match direct computation", "[orthosys]") {
    for (const WeightParams& p : {product, generic, coupled}) {
        const auto s = build_system<double>(p, 4);
        const auto& m = s.moments();
        const double r1 = std::sqrt(m.moment(2, 0) / m.moment(0, 0));
        const double r2 = std::sqrt(m.moment(0, 2) / m.moment(0, 0));
        CHECK(max_abs(s.A(0, Axis::X) - Matrix<double>{{r1, 0}}) < 1e-13);
        CHECK(max_abs(s.A(0, Axis::Y) - Matrix<double>{{0, r2}}) < 1e-13);
        CHECK(max_abs(s.G(1) - Matrix<double>::diagonal({1 / std::sqrt(m.moment(2, 0)),
                                                          1 / std::sqrt(m.moment(0, 2))})) < 1e-13);
        CHECK_THAT(s.G(0)(0, 0), WithinRel(1 / std::sqrt(m.moment(0, 0)), 1e-14));
    }
}

TEST_CASE("frozen values for the product weight", "[orthosys]") {
    const auto s = build_system<double>(product, 4);
    // a_0 of e^{-x^4}: sqrt(Gamma(3/4)/Gamma(1/4)) = 0.581368...
    const double a0 = std::sqrt(std::tgamma(0.75) / std::tgamma(0.25));
    CHECK_THAT(s.A(0, Axis::X)(0, 0), WithinAbs(a0, 1e-12));
    CHECK_THAT(s.A(0, Axis::X)(0, 0), WithinAbs(0.58137, 1e-5));
    CHECK_THAT(s.G(1)(0, 0), WithinAbs(1 / std::sqrt(std::numbers::pi * std::sqrt(2.0) / 4), 1e-12));
    CHECK_THAT(s.G(1)(0, 0), WithinAbs(0.94885, 1e-5));
}

TEST_CASE("coefficient shapes", "[orthosys]") {
    const auto s = build_system<double>(generic, 6);
    for (int n = 0; n < 6; ++n)
        for (Axis i : axes) {
            CHECK(s.A(n, i).rows() == static_cast<std::size_t>(n + 1));
            CHECK(s.A(n, i).cols() == static_cast<std::size_t>(n + 2));
            CHECK(s.A_pinv(n, i).rows() == static_cast<std::size_t>(n + 2));
        }
    for (int n = 1; n <= 6; ++n)
        for (Axis i : axes) {
            CHECK(s.B(n, i).rows() == static_cast<std::size_t>(n + 1));
            CHECK(s.B(n, i).cols() == static_cast<std::size_t>(n));
            CHECK(s.E(n, i).cols() == static_cast<std::size_t>(n));
        }
    CHECK(s.joint_A(3).rows() == 8);
    CHECK(s.joint_A(3).cols() == 5);
    CHECK(s.A(-1, Axis::X).rows() == 0);
    CHECK(s.A(-1, Axis::X).cols() == 1);
    CHECK_THROWS(s.A(6, Axis::X));
}

TEST_CASE("gauge is the SPD inverse root", "[orthosys][property]") {
    const auto s = build_system<double>(coupled, 7);
    for (int n = 0; n <= 7; ++n) {
        const auto& g = s.G(n);
        CHECK(max_abs(g - g.transpose()) == 0);
        CHECK(jacobi_eigen(g).values.front() > 0);
        CHECK(max_abs(g * s.H(n) * g - Matrix<double>::identity(static_cast<std::size_t>(n) + 1)) < 1e-12);
        CHECK(max_abs(g * s.G_inv(n) - Matrix<double>::identity(static_cast<std::size_t>(n) + 1)) < 1e-12);
    }
}

TEST_CASE("swapping axes mirrors the system", "[orthosys][property]") {
    const auto s = build_system<double>(generic, 6), w = build_system<double>(generic.swapped(), 6);
    for (int n = 0; n <= 6; ++n) {
        const std::size_t r = static_cast<std::size_t>(n) + 1;
        Matrix<double> j(r, r);
        for (std::size_t k = 0; k < r; ++k) j(k, r - 1 - k) = 1;
        CHECK(max_abs(j * s.H(n) * j - w.H(n)) < 1e-12 * (1 + max_abs(s.H(n))));
        if (n < 6) {
            Matrix<double> j2(r + 1, r + 1);
            for (std::size_t k = 0; k <= r; ++k) j2(k, r - k) = 1;
            CHECK(max_abs(j * s.A(n, Axis::X) * j2 - w.A(n, Axis::Y)) < 1e-12);
        }
    }
}

TEST_CASE("Lambda diagonal blocks are negative semidefinite", "[orthosys][property]") {
    const auto s = build_system<double>(generic, 7);
    for (int n = 1; n <= 5; ++n) {
        const auto l = lambda_blocks(s, n).same;
        CHECK(jacobi_eigen(symmetrize(l)).values.back() <= 1e-12);
    }
}

TEST_CASE("perturbation hook changes exactly one entry", "[orthosys]") {
    const auto s = build_system<double>(generic, 5);
    const auto p = s.with_perturbed_A(2, Axis::Y, 1, 2, 1e-3);
    const auto d = p.A(2, Axis::Y) - s.A(2, Axis::Y);
    CHECK_THAT(d(1, 2), WithinAbs(1e-3, 1e-15));
    CHECK(max_abs(d) == d(1, 2));
    CHECK(max_abs(p.A(2, Axis::X) - s.A(2, Axis::X)) == 0);
    CHECK_THROWS_AS(s.with_perturbed_A(2, Axis::Y, 5, 0, 1e-3), DimensionMismatch);
}

TEST_CASE("precision modes agree", "[orthosys]") {
    BuildOptions o;
    o.quadrature.rel_tol = 1e-17;
    const auto d = build_system<double>(coupled, 8);
    const auto e = build_system<long double>(coupled, 8, o);
    for (int n = 0; n < 8; ++n)
        for (Axis i : axes)
            CHECK(max_abs(d.A(n, i) - e.A(n, i).cast<double>()) < 1e-11);
}

TEST_CASE("degenerate parameters are rejected before any work", "[orthosys]") {
    CHECK_THROWS_AS(build_system<double>({0, 0, 1, 0, 0}, 3), ParameterDomain);
    CHECK_THROWS(build_system<double>(generic, -1));
}
