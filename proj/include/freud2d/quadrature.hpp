#pragma once

// Composite Gauss-Legendre rules on [0, R] and the truncation radius used for
// integrals against exp(-q). Nodes are generated in long double.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "weight.hpp"

namespace freud2d {

struct GaussLegendre {
    std::vector<long double> nodes;    // on [-1, 1], ascending
    std::vector<long double> weights;
};

inline GaussLegendre gauss_legendre(int m) {
    if (m < 1) throw Error("gauss_legendre: need at least one node");
    GaussLegendre gl{std::vector<long double>(m), std::vector<long double>(m)};
    const long double pi = std::numbers::pi_v<long double>;
    for (int i = 0; i < (m + 1) / 2; ++i) {
        long double z = std::cos(pi * (i + 0.75L) / (m + 0.5L));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = 0;
            for (int k = 1; k <= m; ++k) {
                const long double p2 = p1;
                p1 = p0;
                p0 = ((2 * k - 1) * z * p1 - (k - 1) * p2) / k;
            }
            dp = m * (z * p0 - p1) / (z * z - 1);
            const long double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) <= 4 * std::numeric_limits<long double>::epsilon()) {
                // refresh the derivative at the converged root
                p0 = 1, p1 = 0;
                for (int k = 1; k <= m; ++k) {
                    const long double p2 = p1;
                    p1 = p0;
                    p0 = ((2 * k - 1) * z * p1 - (k - 1) * p2) / k;
                }
                dp = m * (z * p0 - p1) / (z * z - 1);
                break;
            }
        }
        const long double w = 2 / ((1 - z * z) * dp * dp);
        gl.nodes[i] = -z;
        gl.nodes[m - 1 - i] = z;
        gl.weights[i] = w;
        gl.weights[m - 1 - i] = w;
    }
    return gl;
}

/// Composite rule on [0, radius] with `panels` equal panels of `points` nodes.
struct PanelRule {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

inline PanelRule panel_rule(long double radius, int panels, int points) {
    const GaussLegendre gl = gauss_legendre(points);
    PanelRule r;
    r.nodes.reserve(static_cast<std::size_t>(panels) * points);
    r.weights.reserve(static_cast<std::size_t>(panels) * points);
    const long double h = radius / panels;
    for (int k = 0; k < panels; ++k) {
        const long double mid = (k + 0.5L) * h;
        for (int i = 0; i < points; ++i) {
            r.nodes.push_back(mid + 0.5L * h * gl.nodes[i]);
            r.weights.push_back(0.5L * h * gl.weights[i]);
        }
    }
    return r;
}

struct QuadratureSettings {
    int points_per_panel = 20;
    int initial_panels = 4;
    int max_panels = 1024;
    double rel_tol = 1e-13;
    /// Tail margin: the integrand is cut where q exceeds its minimum by this much.
    double tail_margin = 80;
    /// For a22 = 0, build moments as products of two 1D quadratures.
    bool product_fast_path = true;
};

namespace detail {

/// Smallest r such that, along every ray, q(r) - degree*log(max(r,1)) has
/// climbed `margin` above the global minimum of q and is still increasing.
template <typename RayQ>
double radius_for(RayQ&& ray_coeffs, int angle_samples, int max_degree, double margin) {
    double qmin = 0;
    for (int k = 0; k <= angle_samples; ++k) {
        const auto [a, b] = ray_coeffs(k);
        if (b < 0) {
            if (!(a > 0)) throw ParameterDomain("weight not integrable along some direction");
            qmin = std::min(qmin, -b * b / (4 * a));
        }
    }
    const double step = 0.01;
    for (int s = 1; s < 1000000; ++s) {
        const double r = s * step;
        const double r2 = r * r;
        const double lg = max_degree * std::log(std::max(r, 1.0));
        bool ok = true;
        for (int k = 0; k <= angle_samples && ok; ++k) {
            const auto [a, b] = ray_coeffs(k);
            const double qr = a * r2 * r2 + b * r2;
            const double slope = 4 * a * r2 * r2 + 2 * b * r2;  // r * d/dr q
            ok = qr - lg >= qmin + margin && slope >= max_degree;
        }
        if (ok) return r;
    }
    throw QuadratureError("no finite truncation radius found", std::numeric_limits<double>::infinity());
}

} // namespace detail

/// Square [-R, R]^2 outside of which x^n y^m exp(-q), n+m <= max_degree, is negligible.
inline double truncation_radius(const WeightParams& p, int max_degree, double margin = 80) {
    constexpr int samples = 256;
    auto ray = [&](int k) {
        const double th = (std::numbers::pi / 2) * k / samples;
        const double c = std::cos(th), s = std::sin(th);
        const double c2 = c * c, s2 = s * s;
        const double a = p.a40 * c2 * c2 + p.a22 * c2 * s2 + p.a04 * s2 * s2;
        const double b = p.a20 * c2 + p.a02 * s2;
        return std::pair<double, double>{a, b};
    };
    return detail::radius_for(ray, samples, max_degree, margin);
}

/// Interval [-R, R] for the one-variable weight exp(-(quartic x^4 + quadratic x^2)).
inline double truncation_radius_1d(double quartic, double quadratic, int max_degree,
                                   double margin = 80) {
    auto ray = [&](int) { return std::pair<double, double>{quartic, quadratic}; };
    return detail::radius_for(ray, 0, max_degree, margin);
}

} // namespace freud2d
