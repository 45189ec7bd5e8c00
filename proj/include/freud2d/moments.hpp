#pragma once

// Moments mu_{n,m} = \iint x^n y^m exp(-q(x,y)) dx dy by tensor-product composite
// Gauss-Legendre quadrature on the truncated square, with panel doubling until
// two successive tables agree. Odd moments vanish by symmetry and are stored
// as exact zeros.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "quadrature.hpp"
#include "weight.hpp"

namespace freud2d {

struct QuadratureMeta {
    int panels = 0;
    int points_per_panel = 0;
    double radius = 0;
    double max_rel_change = 0;  // between the last two refinements
};

template <typename T>
class MomentTable {
public:
    MomentTable(WeightParams params, int max_degree, std::vector<T> values,
                std::vector<double> abs_errors, QuadratureMeta meta)
        : params_(params),
          max_degree_(max_degree),
          values_(std::move(values)),
          abs_errors_(std::move(abs_errors)),
          meta_(meta) {}

    const WeightParams& params() const noexcept { return params_; }
    /// Largest total degree n+m available.
    int max_degree() const noexcept { return max_degree_; }
    const QuadratureMeta& meta() const noexcept { return meta_; }

    T moment(int n, int m) const {
        check(n, m);
        return values_[index(n, m)];
    }

    double abs_error(int n, int m) const {
        check(n, m);
        return abs_errors_[index(n, m)];
    }

    /// <X_j X_k^T>: entry (p, q) is mu_{(j-p)+(k-q), p+q}.
    Matrix<T> gram_block(int j, int k) const {
        if (j < 0 || k < 0) throw Error("gram_block: negative degree");
        Matrix<T> g(static_cast<std::size_t>(j) + 1, static_cast<std::size_t>(k) + 1);
        for (int p = 0; p <= j; ++p)
            for (int q = 0; q <= k; ++q) g(p, q) = moment((j - p) + (k - q), p + q);
        return g;
    }

    /// Columns n, m, value, abs_error_estimate; '.' decimal separator, one row per n+m <= max.
    void write_csv(std::ostream& os) const {
        os << "n,m,value,abs_error_estimate\n";
        char buf[128];
        for (int n = 0; n <= max_degree_; ++n)
            for (int m = 0; n + m <= max_degree_; ++m) {
                std::snprintf(buf, sizeof buf, "%d,%d,%.17Lg,%.6Lg\n", n, m,
                              static_cast<long double>(moment(n, m)),
                              static_cast<long double>(abs_error(n, m)));
                os << buf;
            }
    }

private:
    std::size_t index(int n, int m) const {
        return static_cast<std::size_t>(n) * (max_degree_ + 1) + static_cast<std::size_t>(m);
    }
    void check(int n, int m) const {
        if (n < 0 || m < 0 || n + m > max_degree_)
            throw Error("moment index (" + std::to_string(n) + "," + std::to_string(m) +
                        ") outside table of total degree " + std::to_string(max_degree_));
    }

    WeightParams params_;
    int max_degree_;
    std::vector<T> values_;
    std::vector<double> abs_errors_;
    QuadratureMeta meta_;
};

namespace detail {

/// Even-even moments mu_{2a,2b}, 2a+2b <= max_degree, on one fixed rule.
/// Accumulation is in long double regardless of the output scalar.
inline std::vector<long double> even_moments_on_rule(const WeightParams& p, int max_degree,
                                                     const PanelRule& rule) {
    const int half = max_degree / 2;
    const std::size_t nn = rule.nodes.size();
    const std::size_t nb = static_cast<std::size_t>(half) + 1;
    // s[i][b] = sum_j w_i w_j exp(-q(x_i, y_j)) y_j^{2b}
    std::vector<long double> s(nn * nb, 0.0L);
    std::vector<long double> ypow(nb);
    for (std::size_t j = 0; j < nn; ++j) {
        const long double y = rule.nodes[j];
        ypow[0] = rule.weights[j];
        for (std::size_t b = 1; b < nb; ++b) ypow[b] = ypow[b - 1] * y * y;
        for (std::size_t i = 0; i < nn; ++i) {
            const long double e = rule.weights[i] * std::exp(-p.q<long double>(rule.nodes[i], y));
            if (e == 0.0L) continue;
            long double* row = &s[i * nb];
            for (std::size_t b = 0; b < nb; ++b) row[b] += e * ypow[b];
        }
    }
    std::vector<long double> out(nb * nb, 0.0L);
    for (std::size_t i = 0; i < nn; ++i) {
        const long double x2 = rule.nodes[i] * rule.nodes[i];
        long double xp = 4.0L;  // four quadrants
        for (std::size_t a = 0; a < nb; ++a) {
            for (std::size_t b = 0; a + b < nb; ++b) out[a * nb + b] += xp * s[i * nb + b];
            xp *= x2;
        }
    }
    return out;
}

/// Even moments 2*sum w x^{2a} exp(-(c4 x^4 + c2 x^2)) on one rule.
inline std::vector<long double> even_moments_1d_on_rule(double quartic, double quadratic, int kmax,
                                                        const PanelRule& rule) {
    const std::size_t nb = static_cast<std::size_t>(kmax / 2) + 1;
    std::vector<long double> out(nb, 0.0L);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const long double x2 = rule.nodes[i] * rule.nodes[i];
        long double v = 2 * rule.weights[i] * std::exp(-(quartic * x2 * x2 + quadratic * x2));
        for (std::size_t a = 0; a < nb; ++a, v *= x2) out[a] += v;
    }
    return out;
}

} // namespace detail

/// One-variable moments of exp(-(quartic x^4 + quadratic x^2)); odd entries are 0.
struct Moments1D {
    std::vector<long double> values;  // index k = 0..kmax
    std::vector<double> abs_errors;
    QuadratureMeta meta;
};

inline Moments1D moments_1d(double quartic, double quadratic, int kmax, const QuadratureSettings& settings = {}) {
    if (!std::isfinite(quartic) || !std::isfinite(quadratic))
        throw ParameterDomain("moments_1d: non-finite coefficient");
    if (quartic < 0 || (quartic == 0 && !(quadratic > 0)))
        throw ParameterDomain("moments_1d: weight not integrable");
    if (kmax < 0) throw Error("moments_1d: negative degree");
    const double radius = truncation_radius_1d(quartic, quadratic, kmax, settings.tail_margin);
    int panels = settings.initial_panels;
    auto prev = detail::even_moments_1d_on_rule(quartic, quadratic, kmax,
                                                panel_rule(radius, panels, settings.points_per_panel));
    double change = 0;
    for (;;) {
        const int next_panels = panels * 2;
        if (next_panels > settings.max_panels)
            throw QuadratureError("1D moment quadrature did not converge", change);
        auto cur = detail::even_moments_1d_on_rule(quartic, quadratic, kmax,
                                                   panel_rule(radius, next_panels, settings.points_per_panel));
        change = 0;
        for (std::size_t a = 0; a < cur.size(); ++a) {
            if (!(cur[a] > 0) || !std::isfinite(static_cast<double>(cur[a])))
                throw QuadratureError("non-positive or non-finite 1D moment", change);
            change = std::max(change, static_cast<double>(std::abs(cur[a] - prev[a]) / cur[a]));
        }
        panels = next_panels;
        if (change <= settings.rel_tol) {
            Moments1D m{std::vector<long double>(static_cast<std::size_t>(kmax) + 1, 0.0L),
                        std::vector<double>(static_cast<std::size_t>(kmax) + 1, 0.0),
                        {panels, settings.points_per_panel, radius, change}};
            for (std::size_t a = 0; a < cur.size(); ++a) {
                m.values[2 * a] = cur[a];
                m.abs_errors[2 * a] = static_cast<double>(std::abs(cur[a] - prev[a]));
            }
            return m;
        }
        prev = std::move(cur);
    }
}

/// Builds the moment table up to total degree `max_degree`, refining panels until
/// successive even moments agree to settings.rel_tol.
template <typename T = double>
MomentTable<T> compute_moments(const WeightParams& p, int max_degree,
                               const QuadratureSettings& settings = {}) {
    validate(p);
    if (max_degree < 0) throw Error("compute_moments: negative degree");
    if (p.a22 == 0 && settings.product_fast_path) {
        const auto mx = moments_1d(p.a40, p.a20, max_degree, settings);
        const auto my = moments_1d(p.a04, p.a02, max_degree, settings);
        const std::size_t dim = static_cast<std::size_t>(max_degree) + 1;
        std::vector<T> values(dim * dim, T(0));
        std::vector<double> errors(dim * dim, 0.0);
        for (int a = 0; a <= max_degree; a += 2)
            for (int b = 0; a + b <= max_degree; b += 2) {
                const long double v = mx.values[a] * my.values[b];
                values[a * dim + b] = static_cast<T>(v);
                errors[a * dim + b] = static_cast<double>(v) * (mx.abs_errors[a] / static_cast<double>(mx.values[a]) +
                                                                my.abs_errors[b] / static_cast<double>(my.values[b]));
            }
        QuadratureMeta meta{std::max(mx.meta.panels, my.meta.panels), settings.points_per_panel,
                            std::max(mx.meta.radius, my.meta.radius),
                            std::max(mx.meta.max_rel_change, my.meta.max_rel_change)};
        return MomentTable<T>(p, max_degree, std::move(values), std::move(errors), meta);
    }
    const double radius = truncation_radius(p, max_degree, settings.tail_margin);
    const int half = max_degree / 2;
    const std::size_t nb = static_cast<std::size_t>(half) + 1;

    int panels = settings.initial_panels;
    auto prev = detail::even_moments_on_rule(
        p, max_degree, panel_rule(radius, panels, settings.points_per_panel));
    double change = 0;
    for (;;) {
        const int next_panels = panels * 2;
        if (next_panels > settings.max_panels)
            throw QuadratureError("moment quadrature did not converge; last relative change " +
                                      std::to_string(change),
                                  change);
        auto cur = detail::even_moments_on_rule(
            p, max_degree, panel_rule(radius, next_panels, settings.points_per_panel));
        change = 0;
        for (std::size_t a = 0; a < nb; ++a)
            for (std::size_t b = 0; a + b < nb; ++b) {
                const long double v = cur[a * nb + b];
                if (!(v > 0) || !std::isfinite(static_cast<double>(v)))
                    throw QuadratureError("non-positive or non-finite even moment", change);
                change = std::max(change, static_cast<double>(std::abs(v - prev[a * nb + b]) / v));
            }
        panels = next_panels;
        if (change <= settings.rel_tol) {
            const std::size_t dim = static_cast<std::size_t>(max_degree) + 1;
            std::vector<T> values(dim * dim, T(0));
            std::vector<double> errors(dim * dim, 0.0);
            for (std::size_t a = 0; a < nb; ++a)
                for (std::size_t b = 0; a + b < nb; ++b) {
                    const std::size_t k = (2 * a) * dim + 2 * b;
                    values[k] = static_cast<T>(cur[a * nb + b]);
                    errors[k] = static_cast<double>(std::abs(cur[a * nb + b] - prev[a * nb + b]));
                }
            QuadratureMeta meta{panels, settings.points_per_panel, radius, change};
            return MomentTable<T>(p, max_degree, std::move(values), std::move(errors), meta);
        }
        prev = std::move(cur);
    }
}

/// Tensor-product 2D quadrature, with no product shortcut.
template <typename T = double>
MomentTable<T> compute_moments_tensor(const WeightParams& p, int max_degree, const QuadratureSettings& settings = {}) {
    QuadratureSettings s = settings;
    s.product_fast_path = false;
    return compute_moments<T>(p, max_degree, s);
}

/// Single moment; builds a table just large enough.
template <typename T = double>
T moment(const WeightParams& p, int n, int m, const QuadratureSettings& settings = {}) {
    validate(p);
    if (n < 0 || m < 0) throw Error("moment: negative index");
    if (n % 2 || m % 2) return T(0);
    return compute_moments<T>(p, n + m, settings).moment(n, m);
}

template <typename T = double>
Matrix<T> gram_block(const WeightParams& p, int j, int k, const QuadratureSettings& settings = {}) {
    return compute_moments<T>(p, j + k, settings).gram_block(j, k);
}

} // namespace freud2d
