#include <cmath>
#include <numbers>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "freud2d/moments.hpp"

using namespace freud2d;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

namespace {
const double mu00_exact = std::pow(std::tgamma(0.25) / 2, 2);
const double mu20_exact = std::numbers::pi * std::sqrt(2.0) / 4;
} // namespace

TEST_CASE("closed-form moments of the product weight", "[moments]") {
    const WeightParams p{1, 0, 1, 0, 0};
    const auto fast = compute_moments<double>(p, 8);
    const auto tensor = compute_moments_tensor<double>(p, 8);
    for (const auto* t : {&fast, &tensor}) {
        CHECK_THAT(t->moment(0, 0), WithinRel(mu00_exact, 1e-12));
        CHECK_THAT(t->moment(2, 0), WithinRel(mu20_exact, 1e-12));
        CHECK_THAT(t->moment(0, 2), WithinRel(mu20_exact, 1e-12));
        // mu_{2,2} = (int x^2 e^{-x^4})^2 = (Gamma(3/4)/2)^2
        CHECK_THAT(t->moment(2, 2), WithinRel(std::pow(std::tgamma(0.75) / 2, 2), 1e-12));
    }
}

TEST_CASE("odd moments vanish exactly", "[moments]") {
    const auto t = compute_moments<double>({1, 0.5, 2, 0.3, -0.2}, 10);
    for (int n = 0; n <= 10; ++n)
        for (int m = 0; n + m <= 10; ++m)
            if ((n % 2) || (m % 2)) CHECK(t.moment(n, m) == 0);
}

TEST_CASE("product fast path matches the tensor rule", "[moments]") {
    for (const WeightParams& p : {WeightParams{1, 0, 1, 0, 0}, WeightParams{2, 0, 0.5, -1, 0.7}}) {
        const auto a = compute_moments<double>(p, 20), b = compute_moments_tensor<double>(p, 20);
        for (int n = 0; n <= 20; n += 2)
            for (int m = 0; n + m <= 20; m += 2) CHECK_THAT(a.moment(n, m), WithinRel(b.moment(n, m), 1e-11));
    }
}

TEST_CASE("swapping axes transposes the moment table", "[moments][property]") {
    const WeightParams p{1, 0.5, 2, 0.3, -0.2};
    const auto a = compute_moments<double>(p, 12), b = compute_moments<double>(p.swapped(), 12);
    for (int n = 0; n <= 12; n += 2)
        for (int m = 0; n + m <= 12; m += 2) CHECK_THAT(a.moment(n, m), WithinRel(b.moment(m, n), 1e-12));
}

TEST_CASE("gram blocks are symmetric positive definite", "[moments][property]") {
    const auto t = compute_moments<double>({1, 1, 1, -1, -1}, 12);
    for (int k = 0; k <= 6; ++k) {
        const auto g = t.gram_block(k, k);
        CHECK(max_abs(g - g.transpose()) == 0);
        CHECK_NOTHROW(cholesky(g));
    }
    CHECK(t.gram_block(1, 2).rows() == 2);
    CHECK(t.gram_block(1, 2).cols() == 3);
}

TEST_CASE("panel refinement is converged at default settings", "[moments]") {
    const WeightParams p{1, 0.5, 2, 0.3, -0.2};
    const auto t = compute_moments<double>(p, 16);
    CHECK(t.meta().max_rel_change <= 1e-12);
    QuadratureSettings finer;
    finer.initial_panels = 2 * t.meta().panels;
    const auto f = compute_moments<double>(p, 16, finer);
    for (int n = 0; n <= 16; n += 2)
        for (int m = 0; n + m <= 16; m += 2) CHECK_THAT(f.moment(n, m), WithinRel(t.moment(n, m), 1e-12));
}

TEST_CASE("one-variable moments", "[moments]") {
    const auto m = moments_1d(1, 0, 4);
    CHECK_THAT(static_cast<double>(m.values[0]), WithinRel(std::tgamma(0.25) / 2, 1e-13));
    CHECK_THAT(static_cast<double>(m.values[2]), WithinRel(std::tgamma(0.75) / 2, 1e-13));
    CHECK(m.values[1] == 0);
    CHECK_THROWS_AS(moments_1d(0, -1, 4), ParameterDomain);
    CHECK_NOTHROW(moments_1d(0, 1, 4));
}

TEST_CASE("moment table CSV and index errors", "[moments]") {
    const auto t = compute_moments<double>({1, 0, 1, 0, 0}, 2);
    std::ostringstream os;
    t.write_csv(os);
    const std::string s = os.str();
    CHECK(s.rfind("n,m,value,abs_error_estimate\n0,0,3.28626180164", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 7);
    CHECK_THROWS(t.moment(2, 1));
    CHECK_THROWS_AS(compute_moments<double>({-1, 0, 1, 0, 0}, 2), ParameterDomain);
}

TEST_CASE("extended precision moments", "[moments]") {
    QuadratureSettings q;
    q.rel_tol = 1e-17;
    const auto t = compute_moments<long double>({1, 0, 1, 0, 0}, 4, q);
    const long double exact = std::pow(std::tgamma(0.25L) / 2, 2);
    CHECK(std::abs(static_cast<double>(t.moment(0, 0) / exact - 1)) < 1e-15);
}
