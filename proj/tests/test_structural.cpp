#include <catch2/catch_amalgamated.hpp>

#include "freud2d/identities.hpp"
#include "freud2d/polynomial.hpp"
#include "freud2d/structural.hpp"

using namespace freud2d;

TEST_CASE("L maps pick monomials", "[structural]") {
    // x X_1 = (x^2, xy) = L_{1,1} X_2, y X_1 = (xy, y^2) = L_{1,2} X_2
    CHECK(make_L<double>(1, Axis::X) == (Matrix<double>{{1, 0, 0}, {0, 1, 0}}));
    CHECK(make_L<double>(1, Axis::Y) == (Matrix<double>{{0, 1, 0}, {0, 0, 1}}));
    CHECK(make_L<double>(0, Axis::X) == (Matrix<double>{{1, 0}}));
}

TEST_CASE("N maps and derivative maps", "[structural]") {
    CHECK(make_N<double>(3, Axis::X) == Matrix<double>::diagonal({3, 2, 1}));
    CHECK(make_N<double>(3, Axis::Y) == Matrix<double>::diagonal({1, 2, 3}));
    // d/dx (x^2, xy, y^2) = (2x, y, 0)
    CHECK(diff_map<double>(2, Axis::X) == (Matrix<double>{{2, 0}, {0, 1}, {0, 0}}));
    CHECK(diff_map<double>(0, Axis::Y).cols() == 0);
    CHECK_THROWS(make_N<double>(0, Axis::X));
}

TEST_CASE("K maps carry the quartic coefficients", "[structural]") {
    const WeightParams p{1.5, 0.25, 2.0, 0, 0};
    const auto k1 = make_K<double>(3, Axis::X, p), k2 = make_K<double>(3, Axis::Y, p);
    CHECK(k1(0, 0) == 6);
    CHECK(k1(1, 3) == 0.5);
    CHECK(k1(2, 0) == 0);
    CHECK(k2(3, 3) == 8);
    CHECK(k2(2, 0) == 0.5);
    CHECK(k2(0, 2) == 0);
}

TEST_CASE("L maps commute across axes", "[structural][property]") {
    for (int n = 0; n < 8; ++n)
        CHECK(make_L<double>(n, Axis::X) * make_L<double>(n + 1, Axis::Y) ==
              make_L<double>(n, Axis::Y) * make_L<double>(n + 1, Axis::X));
}

TEST_CASE("shift maps agree with repeated L products", "[structural]") {
    CHECK(shift_map<double>(2, 1, 1) == make_L<double>(2, Axis::X) * make_L<double>(3, Axis::Y));
    CHECK(shift_map<double>(1, 0, 0) == Matrix<double>::identity(2));
}

TEST_CASE("L/N/K relation holds exactly", "[structural][property]") {
    for (const WeightParams& p : {WeightParams{1, 0, 1, 0, 0}, WeightParams{1, 0.5, 2, 0.3, -0.2},
                                  WeightParams{1, 1, 1, -1, -1}}) {
        const auto c = check_LLKKLL(p, 10);
        CHECK(c.pass());
        CHECK(c.worst_residual() == 0);
        for (int n = 1; n <= 8; ++n) CHECK(check_psiXLKX(p, n).pass());
    }
}

TEST_CASE("vector polynomials evaluate and differentiate", "[polynomial]") {
    const auto x2 = VectorPolynomial<double>::canonical(2);
    const auto v = x2.evaluate(2.0, 3.0);
    CHECK(v(0, 0) == 4);
    CHECK(v(1, 0) == 6);
    CHECK(v(2, 0) == 9);
    const auto dx = x2.derivative(Axis::X).evaluate(2.0, 3.0);
    CHECK(dx(0, 0) == 4);
    CHECK(dx(1, 0) == 3);
    CHECK(dx(2, 0) == 0);
    const auto dy = x2.derivative(Axis::Y).evaluate(2.0, 3.0);
    CHECK(dy(1, 0) == 2);
    CHECK(dy(2, 0) == 6);
}

TEST_CASE("weight parameter validation names the constraint", "[weight]") {
    CHECK_FALSE(weight_violation({1, 0, 1, 0, 0}));
    CHECK(*weight_violation({-1, 0, 1, 0, 0}) == "a40>=0 violated");
    CHECK(*weight_violation({0, 0, 1, 0, 0}) == "a40+a22>0 violated");
    CHECK(*weight_violation({0, 1, 1, 0, 0}) == "integrability: a40=0 requires a20>0");
    CHECK_FALSE(weight_violation({0, 1, 1, 0.5, 0}));
    CHECK_THROWS_AS(validate({1, 0, 1, std::nan(""), 0}), ParameterDomain);
    CHECK(WeightParams{1, 2, 3, 4, 5}.swapped() == WeightParams{3, 2, 1, 5, 4});
}

TEST_CASE("structural and direct polynomial maps agree", "[polynomial][property]") {
    VectorPolynomial<double> p(2, 4);
    for (int d = 0; d <= 4; ++d) {
        Matrix<double> c(2, static_cast<std::size_t>(d) + 1);
        for (std::size_t r = 0; r < 2; ++r)
            for (int j = 0; j <= d; ++j) c(r, static_cast<std::size_t>(j)) = 1 + r + 3 * j - d;
        p.set_block(d, c);
    }
    for (Axis a : axes) CHECK(coefficient_distance(p.derivative(a), p.derivative_structural(a)) == 0);
    const auto s = p.times_monomial_structural(1, 2).evaluate(0.5, -1.5);
    const auto e = p.evaluate(0.5, -1.5);
    for (std::size_t r = 0; r < 2; ++r) CHECK(std::abs(s(r, 0) - 0.5 * 2.25 * e(r, 0)) < 1e-13);
}
