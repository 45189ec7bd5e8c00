#include <catch2/catch_amalgamated.hpp>

#include "freud2d/identities.hpp"

using namespace freud2d;

namespace {
const WeightParams sets[] = {{1, 0, 1, 0, 0}, {1, 0.5, 2, 0.3, -0.2}, {1, 1, 1, -1, -1}};
} // namespace

TEST_CASE("identity suite passes on reference parameter sets", "[identities]") {
    for (const auto& p : sets) {
        const auto s = build_system<double>(p, 8);
        const auto r = run_identity_suite(s);
        CHECK(all_pass(r));
        CHECK(r.size() > 300);
        for (const auto& e : r)
            if (!e.pass) FAIL_CHECK(e.check << " n=" << e.n << " residual=" << e.residual);
    }
}

TEST_CASE("report is sorted by check then degree", "[identities]") {
    const auto r = run_identity_suite(build_system<double>(sets[1], 5));
    for (std::size_t k = 1; k < r.size(); ++k)
        CHECK(std::tie(r[k - 1].check, r[k - 1].n) <= std::tie(r[k].check, r[k].n));
}

TEST_CASE("suite output is reproducible", "[identities]") {
    const auto s = build_system<double>(sets[2], 6);
    const auto a = run_identity_suite(s), b = run_identity_suite(s);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].residual == b[k].residual);
}

TEST_CASE("painleve relation covers both axes and degrees to N-2", "[identities]") {
    const auto s = build_system<double>(sets[2], 9);
    const auto c = check_painleve(s);
    CHECK(c.pass());
    int maxn = -1;
    for (const auto& e : c.entries) maxn = std::max(maxn, e.n);
    CHECK(maxn == 7);
    CHECK(c.entries.size() == 16);
}

TEST_CASE("painleve detects a perturbed coefficient", "[identities]") {
    const auto s = build_system<double>(sets[1], 9);
    for (Axis i : axes) {
        const auto bad = s.with_perturbed_A(3, i, 1, 1, 1e-3);
        CHECK_FALSE(check_painleve(bad).pass());
    }
}

TEST_CASE("structural commutativity detects asymmetric perturbation", "[identities]") {
    const auto s = build_system<double>(sets[1], 6);
    CHECK(check_commutativity(s).pass());
    CHECK_FALSE(check_commutativity(s.with_perturbed_A(2, Axis::X, 0, 0, 1e-6)).pass());
}

TEST_CASE("joint matrices have full rank", "[identities]") {
    CHECK(check_joint_rank(build_system<double>(sets[2], 8)).pass());
}

TEST_CASE("dde and Lambda pairing", "[identities]") {
    for (const auto& p : sets) {
        const auto c = check_dde(build_system<double>(p, 8));
        CHECK(c.pass());
        bool saw_quadrature = false;
        for (const auto& e : c.entries) saw_quadrature |= e.check == "lambda_quadrature";
        CHECK(saw_quadrature);
    }
}

TEST_CASE("Pearson operator annihilates constants", "[identities]") {
    // constants are annihilated
    const auto one = VectorPolynomial<double>::canonical(0);
    const auto r = apply_pearson_operator(sets[1], one);
    CHECK(r.coefficient_norm() == 0);
}

TEST_CASE("make_entry threshold is relative to one plus scale", "[identities]") {
    CHECK(make_entry("x", 0, 1.9e-8, 1.0, 1e-8).pass);
    CHECK_FALSE(make_entry("x", 0, 2.1e-8, 1.0, 1e-8).pass);
    CHECK_FALSE(make_entry("x", 0, std::nan(""), 1.0, 1e-8).pass);
}

TEST_CASE("pointwise sample points are seeded", "[identities]") {
    PointwiseOptions o;
    const auto a = sample_points(o), b = sample_points(o);
    CHECK(a == b);
    o.seed += 1;
    CHECK(sample_points(o) != a);
    for (auto [x, y] : a) CHECK((std::abs(x) <= o.box && std::abs(y) <= o.box));
}
