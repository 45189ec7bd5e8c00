#include <cmath>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "freud2d/lattice.hpp"

using namespace freud2d;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("central differences are exact on quadratics", "[lattice]") {
    auto fam = [](double t) { return (t * t) * Matrix<double>::identity(2); };
    const auto d = fd_derivative<double>(fam, 0.75, FDConfig{1e-2, 2});
    CHECK(max_abs(d.value - 1.5 * Matrix<double>::identity(2)) < 1e-12);
    const auto p = fd_derivative<double>(fam, 0.75, FDConfig{1e-2, 1});
    CHECK(max_abs(p.value - 1.5 * Matrix<double>::identity(2)) < 1e-12);
    CHECK_THROWS(fd_derivative<double>(fam, 0.0, FDConfig{0, 2}));
}

TEST_CASE("Richardson reaches fourth order on a smooth family", "[lattice]") {
    auto fam = [](double t) { return Matrix<double>{{std::sin(t)}}; };
    const double e1 = std::abs(fd_derivative<double>(fam, 0.3, {0.2, 2}).value(0, 0) - std::cos(0.3));
    const double e2 = std::abs(fd_derivative<double>(fam, 0.3, {0.1, 2}).value(0, 0) - std::cos(0.3));
    CHECK_THAT(std::log2(e1 / e2), WithinAbs(4, 0.1));
}

TEST_CASE("time family", "[lattice]") {
    CHECK(time_params({1, 0.5, 2, 7, 9}, 0.25) == WeightParams{1, 0.5, 2, -0.25, -0.25});
}

TEST_CASE("H_0 derivative is the second moment sum", "[lattice]") {
    const StateCurve<double> c({1, 0.5, 2, 0, 0}, 3);
    const double t = 0.2;
    const auto d = fd_derivative<double>([&](double s) { return c.at(s)->H(0); }, t, {1e-3, 2});
    const auto& m = c.at(t)->system().moments();
    CHECK_THAT(d.value(0, 0), WithinRel(m.moment(2, 0) + m.moment(0, 2), 1e-9));
}

TEST_CASE("lattice relations at t = 0", "[lattice]") {
    const StateCurve<double> c({1, 1, 1, 0, 0}, 6);
    const auto r = run_lattice_suite(c, {0.0}, 4);
    CHECK(all_pass(r));
    CHECK(r.front().check.find("@t=0") != std::string::npos);
}

TEST_CASE("uncorrected A_dot forms fail", "[lattice]") {
    const StateCurve<double> c({1, 0.5, 2, 0, 0}, 6);
    for (int n = 1; n <= 4; ++n) {
        CHECK(check_A_dot(c, 0.0, n).pass());
        CHECK_FALSE(check_A_dot(c, 0.0, n, {}, ADotForm::SignFlipped).pass());
        CHECK_FALSE(check_A_dot(c, 0.0, n, {}, ADotForm::WithoutRootTerms).pass());
    }
}

TEST_CASE("RK4 tracks direct recomputation", "[lattice]") {
    const StateCurve<double> c({1, 0.5, 2, 0, 0}, 5);
    const auto traj = integrate_E(c, 0.0, 0.25, 20);
    CHECK(traj.size() == 21);
    CHECK(traj.back().t == 0.25);
    CHECK(endpoint_error(c, traj) < 1e-8);
    CHECK_THROWS(integrate_E(c, 0.5, 0.0, 10));
    std::ostringstream os;
    write_trajectory_csv(os, integrate_E(c, 0.0, 0.1, 1));
    CHECK(os.str().rfind("t,n,component,row,col,value\n", 0) == 0);
}

TEST_CASE("parallel prefetch matches serial evaluation", "[lattice]") {
    const WeightParams b{1, 1, 1, 0, 0};
    const StateCurve<double> serial(b, 5), parallel(b, 5);
    std::vector<double> ts;
    for (int k = 0; k <= 12; ++k) ts.push_back(-0.3 + 0.05 * k);
    parallel.prefetch(ts, 4);
    for (double t : ts)
        for (int n = 1; n <= 5; ++n) CHECK(serial.at(t)->boldE(n) == parallel.at(t)->boldE(n));
}
