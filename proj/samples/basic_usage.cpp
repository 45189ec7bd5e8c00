// Build the orthonormal system for one weight, print a few coefficients and
// run the identity suite.

#include <cstdio>

#include "freud2d/freud2d.hpp"

int main() {
    using namespace freud2d;
    const WeightParams p{1.0, 0.5, 2.0, 0.3, -0.2};
    const auto sys = build_system<double>(p, 6);

    std::printf("mu00 = %.12f\n", sys.moments().moment(0, 0));
    const auto a = sys.A(1, Axis::X);
    std::printf("A_{1,1} =\n");
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) std::printf(" % .10f", a(r, c));
        std::printf("\n");
    }

    const auto report = run_identity_suite(sys, {});
    std::size_t fails = 0;
    for (const auto& e : report) fails += !e.pass;
    std::printf("%zu identity checks, %zu failing\n", report.size(), fails);
    return fails ? 1 : 0;
}
