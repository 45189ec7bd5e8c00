#pragma once

// One-variable Freud weight exp(-(c4 x^4 + c2 x^2)); the t-family is c4 = 1,
// c2 = -t. Recurrences:
//   x q_n = q_{n+1} + beta_n q_{n-1}          (monic, beta_0 = 0)
//   x p_n = a_n p_{n+1} + a_{n-1} p_{n-1}     (orthonormal, beta_{n+1} = a_n^2)

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <vector>

#include "errors.hpp"
#include "moments.hpp"
#include "quadrature.hpp"

namespace freud2d {

template <typename T = double>
struct OneDSystem {
    double quartic = 1;
    double quadratic = 0;
    int max_index = 0;          // M: a_0..a_M, beta_0..beta_{M+1}
    std::vector<T> moments;     // mu_0..mu_{2M+2}
    std::vector<T> a;           // a_n > 0
    std::vector<T> beta;        // beta_0 = 0

    /// The time parameter, when the system belongs to the e^{-x^4 + t x^2} family.
    double t() const { return -quadratic; }
    /// a_n with a_{-1} = 0.
    T a_at(int n) const { return n < 0 ? T(0) : a.at(static_cast<std::size_t>(n)); }
};

/// mu_k for k = 0..kmax; odd k exactly 0.
template <typename T = double>
std::vector<T> oned_moments(double quartic, double quadratic, int kmax, const QuadratureSettings& settings = {}) {
    const auto m = moments_1d(quartic, quadratic, kmax, settings);
    std::vector<T> out(m.values.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<T>(m.values[k]);
    return out;
}

template <typename T = double>
std::vector<T> oned_moments(double t, int kmax, const QuadratureSettings& settings = {}) {
    return oned_moments<T>(1.0, -t, kmax, settings);
}

/// beta_1..beta_{M+1} from the Cholesky factor R of the Hankel matrix [mu_{i+j}]_{i,j<=M}:
/// beta_n = (r_nn / r_{n-1,n-1})^2. Factorization runs in long double.
template <typename T>
std::vector<T> hankel_betas(const std::vector<T>& mu, int max_index) {
    const std::size_t m = static_cast<std::size_t>(max_index) + 2;
    if (mu.size() < 2 * m - 1) throw Error("hankel_betas: need moments up to 2M+2");
    std::vector<long double> r(m * m, 0.0L);  // upper factor, row major
    for (std::size_t i = 0; i < m; ++i) {
        long double d = static_cast<long double>(mu[2 * i]);
        for (std::size_t k = 0; k < i; ++k) d -= r[k * m + i] * r[k * m + i];
        if (!(d > 0)) throw DegreeLimit("Hankel matrix lost positive definiteness", static_cast<int>(i));
        const long double rii = std::sqrt(d);
        r[i * m + i] = rii;
        for (std::size_t j = i + 1; j < m; ++j) {
            long double v = static_cast<long double>(mu[i + j]);
            for (std::size_t k = 0; k < i; ++k) v -= r[k * m + i] * r[k * m + j];
            r[i * m + j] = v / rii;
        }
    }
    std::vector<T> beta(m, T(0));
    for (std::size_t n = 1; n < m; ++n) {
        const long double q = r[n * m + n] / r[(n - 1) * m + (n - 1)];
        beta[n] = static_cast<T>(q * q);
    }
    return beta;
}

/// Orthonormal and monic coefficients up to a_M from the moments alone (Hankel
/// route; loses digits at high index).
template <typename T = double>
OneDSystem<T> oned_coeffs(double quartic, double quadratic, const std::vector<T>& mu, int max_index) {
    OneDSystem<T> s;
    s.quartic = quartic;
    s.quadratic = quadratic;
    s.max_index = max_index;
    s.moments = mu;
    s.beta = hankel_betas(mu, max_index);
    for (int n = 0; n <= max_index; ++n) {
        const T b = s.beta[static_cast<std::size_t>(n) + 1];
        if (!(b > 0) || !std::isfinite(static_cast<double>(b)))
            throw DegreeLimit("1D recurrence coefficient not positive", n);
        s.a.push_back(std::sqrt(b));
    }
    return s;
}

/// beta_0..beta_{M+1} by the discretized Stieltjes procedure: the monic
/// recurrence run on the nodes of a converged quadrature rule. Free of Hankel
/// conditioning, so accurate to rounding at every index.
template <typename T = double>
std::vector<T> stieltjes_betas(double quartic, double quadratic, int max_index, const PanelRule& half_rule) {
    std::vector<long double> x, w;
    for (std::size_t i = 0; i < half_rule.nodes.size(); ++i) {
        const long double xi = half_rule.nodes[i], x2 = xi * xi;
        const long double wi = half_rule.weights[i] * std::exp(-(quartic * x2 * x2 + quadratic * x2));
        x.push_back(xi), w.push_back(wi);
        x.push_back(-xi), w.push_back(wi);
    }
    std::vector<long double> prev(x.size(), 0.0L), cur(x.size(), 1.0L);
    std::vector<T> beta{T(0)};
    long double norm_prev = 0, norm_cur = 0;
    for (std::size_t i = 0; i < x.size(); ++i) norm_cur += w[i];
    for (int n = 0; n <= max_index; ++n) {
        const long double b = n == 0 ? 0.0L : norm_cur / norm_prev;
        std::vector<long double> next(x.size());
        long double norm_next = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            next[i] = x[i] * cur[i] - b * prev[i];
            norm_next += w[i] * next[i] * next[i];
        }
        beta.push_back(static_cast<T>(norm_next / norm_cur));
        prev = std::move(cur);
        cur = std::move(next);
        norm_prev = norm_cur;
        norm_cur = norm_next;
    }
    return beta;
}

/// Moments from the panel quadrature; coefficients by Stieltjes on the same
/// converged rule (refined once more).
template <typename T = double>
OneDSystem<T> build_oned(double quartic, double quadratic, int max_index = 16, const QuadratureSettings& settings = {}) {
    if (max_index < 0) throw Error("build_oned: negative index");
    const auto m = moments_1d(quartic, quadratic, 2 * max_index + 2, settings);
    OneDSystem<T> s;
    s.quartic = quartic;
    s.quadratic = quadratic;
    s.max_index = max_index;
    for (long double v : m.values) s.moments.push_back(static_cast<T>(v));
    s.beta = stieltjes_betas<T>(quartic, quadratic, max_index,
                                panel_rule(m.meta.radius, 2 * m.meta.panels, m.meta.points_per_panel));
    for (int n = 0; n <= max_index; ++n) {
        const T b = s.beta[static_cast<std::size_t>(n) + 1];
        if (!(b > 0) || !std::isfinite(static_cast<double>(b)))
            throw DegreeLimit("1D recurrence coefficient not positive", n);
        s.a.push_back(std::sqrt(b));
    }
    return s;
}

/// Member of the e^{-x^4 + t x^2} family.
template <typename T = double>
OneDSystem<T> build_oned_t(double t, int max_index = 16, const QuadratureSettings& settings = {}) {
    return build_oned<T>(1.0, -t, max_index, settings);
}

/// 4c4 a_n^2 (a_{n+1}^2 + a_n^2 + a_{n-1}^2) + 2c2 a_n^2 - (n+1), n = 0..M-1.
template <typename T>
std::vector<T> check_dPI(const OneDSystem<T>& s) {
    std::vector<T> r;
    for (int n = 0; n + 1 <= s.max_index; ++n) {
        const T an2 = s.a_at(n) * s.a_at(n);
        const T up = s.a_at(n + 1) * s.a_at(n + 1), down = s.a_at(n - 1) * s.a_at(n - 1);
        r.push_back(T(4 * s.quartic) * an2 * (up + an2 + down) + T(2 * s.quadratic) * an2 - T(n + 1));
    }
    return r;
}

struct Langmuir1DEntry {
    int n = 0;
    double beta_residual = 0;   // beta_n' - beta_n (beta_{n+1} - beta_{n-1})
    double a_residual = 0;      // a_n' - (a_n / 2)(a_{n+1}^2 - a_{n-1}^2)
    double fd_error = 0;        // Richardson error estimate of the derivatives
};

/// Central differences of the t-family at t +- h and t +- h/2 with one
/// Richardson step; rows n = 1..max_index - 1.
inline std::vector<Langmuir1DEntry> check_langmuir_1d(double t, double h, int max_index = 10,
                                                      const QuadratureSettings& settings = {}) {
    if (!(h > 0)) throw Error("check_langmuir_1d: step must be positive");
    const auto at = [&](double tt) { return build_oned_t<double>(tt, max_index + 1, settings); };
    const auto s0 = at(t), sp = at(t + h), sm = at(t - h), sp2 = at(t + h / 2), sm2 = at(t - h / 2);
    std::vector<Langmuir1DEntry> out;
    for (int n = 1; n + 1 <= max_index; ++n) {
        const std::size_t k = static_cast<std::size_t>(n);
        const double db_h = (sp.beta[k] - sm.beta[k]) / (2 * h);
        const double db_h2 = (sp2.beta[k] - sm2.beta[k]) / h;
        const double db = db_h2 + (db_h2 - db_h) / 3;
        const double da_h = (sp.a[k] - sm.a[k]) / (2 * h);
        const double da_h2 = (sp2.a[k] - sm2.a[k]) / h;
        const double da = da_h2 + (da_h2 - da_h) / 3;
        Langmuir1DEntry e;
        e.n = n;
        e.beta_residual = db - s0.beta[k] * (s0.beta[k + 1] - s0.beta[k - 1]);
        e.a_residual = da - s0.a[k] / 2 * (s0.a_at(n + 1) * s0.a_at(n + 1) - s0.a_at(n - 1) * s0.a_at(n - 1));
        e.fd_error = std::max(std::abs(db_h2 - db_h), std::abs(da_h2 - da_h)) / 3;
        out.push_back(e);
    }
    return out;
}

/// Columns n, a_n^2, beta_n, dPI residual (blank past M-1).
template <typename T>
void write_oned_csv(std::ostream& os, const OneDSystem<T>& s) {
    os << "n,a_n_squared,beta_n,dpi_residual\n";
    const auto r = check_dPI(s);
    char buf[160];
    for (int n = 0; n <= s.max_index; ++n) {
        const long double a2 = static_cast<long double>(s.a_at(n)) * static_cast<long double>(s.a_at(n));
        const long double b = static_cast<long double>(s.beta[static_cast<std::size_t>(n)]);
        if (n < static_cast<int>(r.size()))
            std::snprintf(buf, sizeof buf, "%d,%.17Lg,%.17Lg,%.6Lg\n", n, a2, b,
                          static_cast<long double>(r[static_cast<std::size_t>(n)]));
        else
            std::snprintf(buf, sizeof buf, "%d,%.17Lg,%.17Lg,\n", n, a2, b);
        os << buf;
    }
}

} // namespace freud2d
