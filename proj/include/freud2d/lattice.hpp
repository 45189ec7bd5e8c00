#pragma once

// The family W_t = exp(-(a40 x^4 + a22 x^2 y^2 + a04 y^4) + t (x^2 + y^2)) as a
// curve of systems, t-derivatives by central differences, and the matrix
// Langmuir lattices
//   H_n' = V_{n+1} H_n
//   E_n' = V_{n+1} E_n - E_n V_n,   E_n = E_{n,1} + E_{n,2}
// together with the derived relation for A_n^T = H_{n+1}^{-1/2} E_{n+1} H_n^{1/2}.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "identities.hpp"
#include "linalg.hpp"
#include "orthosys.hpp"
#include "structural.hpp"
#include "weight.hpp"

namespace freud2d {

template <typename T = double>
class LatticeState {
public:
    LatticeState(double t, OrthoSystem<T> sys) : t_(t), sys_(std::move(sys)) {}

    double t() const noexcept { return t_; }
    int max_degree() const noexcept { return sys_.max_degree(); }
    const OrthoSystem<T>& system() const noexcept { return sys_; }

    const Matrix<T>& H(int n) const { return sys_.H(n); }
    /// H_n^{1/2}
    const Matrix<T>& H_sqrt(int n) const { return sys_.G_inv(n); }
    /// H_n^{-1/2}
    const Matrix<T>& H_inv_sqrt(int n) const { return sys_.G(n); }
    const Matrix<T>& E(int n, Axis i) const { return sys_.E(n, i); }
    Matrix<T> boldE(int n) const { return sys_.E(n, Axis::X) + sys_.E(n, Axis::Y); }
    /// V_n, 1 <= n <= N.
    Matrix<T> V(int n) const { return v_matrix(sys_, n); }
    Matrix<T> A(int n, Axis i) const { return sys_.A(n, i); }
    Matrix<T> boldA(int n) const { return sys_.A(n, Axis::X) + sys_.A(n, Axis::Y); }

private:
    double t_;
    OrthoSystem<T> sys_;
};

/// The static parameters with a20 = a02 = -t.
inline WeightParams time_params(const WeightParams& base, double t) {
    return WeightParams::with_time(base.a40, base.a22, base.a04, t);
}

template <typename T = double>
LatticeState<T> state_at(const WeightParams& base, double t, int max_degree, const BuildOptions& opt = {}) {
    return LatticeState<T>(t, build_system<T>(time_params(base, t), max_degree, opt));
}

/// States along the curve, built on demand and kept. Safe to share between threads.
template <typename T = double>
class StateCurve {
public:
    StateCurve(WeightParams base, int max_degree, BuildOptions opt = {})
        : base_(base), max_degree_(max_degree), opt_(std::move(opt)) {}

    const WeightParams& base() const noexcept { return base_; }
    int max_degree() const noexcept { return max_degree_; }

    std::shared_ptr<const LatticeState<T>> at(double t) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(t);
            if (it != cache_.end()) return it->second;
        }
        auto s = std::make_shared<const LatticeState<T>>(state_at<T>(base_, t, max_degree_, opt_));
        std::lock_guard<std::mutex> lock(mu_);
        return cache_.emplace(t, std::move(s)).first->second;
    }

    /// Builds all missing states, spread over `threads` workers.
    void prefetch(const std::vector<double>& ts, unsigned threads = 1) const {
        if (threads <= 1) {
            for (double t : ts) at(t);
            return;
        }
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(threads);
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t k = w; k < ts.size(); k += threads) at(ts[k]);
                } catch (...) {
                    errs[w] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }

private:
    WeightParams base_;
    int max_degree_;
    BuildOptions opt_;
    mutable std::mutex mu_;
    mutable std::map<double, std::shared_ptr<const LatticeState<T>>> cache_;
};

struct FDConfig {
    double h = 1e-3;
    /// Step sizes h, h/2, ...; levels - 1 Richardson steps on central differences.
    int levels = 2;
};

template <typename T>
struct FDResult {
    Matrix<T> value;
    double error = 0;  // Frobenius estimate of the error in value
};

/// Central-difference derivative of a matrix family with Richardson
/// extrapolation. With levels = 1 the plain difference at h is returned and the
/// error is estimated from one extra evaluation at h/2.
template <typename T, typename F>
FDResult<T> fd_derivative(F&& family, double t, const FDConfig& cfg) {
    if (!(cfg.h > 0)) throw Error("fd_derivative: step must be positive");
    if (cfg.levels < 1) throw Error("fd_derivative: need at least one level");
    const int rows = std::max(cfg.levels, 2);
    std::vector<std::vector<Matrix<T>>> r(static_cast<std::size_t>(rows));
    double h = cfg.h;
    for (int k = 0; k < rows; ++k, h /= 2) {
        const Matrix<T> d = T(1 / (2 * h)) * (Matrix<T>(family(t + h)) - Matrix<T>(family(t - h)));
        r[k].push_back(d);
        double f = 4;
        for (int j = 1; j <= k; ++j, f *= 4) r[k].push_back(r[k][j - 1] + T(1 / (f - 1)) * (r[k][j - 1] - r[k - 1][j - 1]));
    }
    if (cfg.levels == 1)
        return {r[0][0], static_cast<double>(frobenius_norm(r[0][0] - r[1][0])) * 4 / 3};
    const auto& last = r[static_cast<std::size_t>(rows) - 1];
    return {last.back(), static_cast<double>(frobenius_norm(last.back() - last[last.size() - 2]))};
}

namespace detail {

/// Pass threshold max(rel * scale, 10 * fd_error), re-expressed relative to 1 + scale.
inline CheckEntry fd_entry(std::string check, int n, double residual, double scale, double fd_error,
                           double rel = 1e-7) {
    const double abs_tol = std::max(rel * scale, 10 * fd_error);
    CheckEntry e = make_entry(std::move(check), n, residual, scale, abs_tol / (1 + scale));
    e.pass = residual <= abs_tol;
    return e;
}

} // namespace detail

/// H_n' = V_{n+1} H_n, 0 <= n <= N-1.
template <typename T>
IdentityCheck check_H_dot(const StateCurve<T>& c, double t, int n, const FDConfig& cfg = {}) {
    if (n < 0 || n + 1 > c.max_degree()) throw Error("check_H_dot: need 0 <= n <= N-1");
    const auto s = c.at(t);
    const auto d = fd_derivative<T>([&](double tt) { return c.at(tt)->H(n); }, t, cfg);
    const Matrix<T> rhs = s->V(n + 1) * s->H(n);
    IdentityCheck out{"H_dot", "H_n' = V_{n+1} H_n", {}};
    out.entries.push_back(detail::fd_entry("H_dot", n, detail::fnorm(d.value - rhs),
                                           detail::max_norm<T>(d.value, rhs), d.error));
    return out;
}

/// E_n' = V_{n+1} E_n - E_n V_n for the sum and for each component, 1 <= n <= N-1.
template <typename T>
IdentityCheck check_E_dot(const StateCurve<T>& c, double t, int n, const FDConfig& cfg = {}) {
    if (n < 1 || n + 1 > c.max_degree()) throw Error("check_E_dot: need 1 <= n <= N-1");
    const auto s = c.at(t);
    const Matrix<T> vn1 = s->V(n + 1), vn = s->V(n);
    IdentityCheck out{"E_dot", "E_n' = V_{n+1} E_n - E_n V_n", {}};
    auto add = [&](const std::string& name, auto&& fam, const Matrix<T>& e) {
        const auto d = fd_derivative<T>(fam, t, cfg);
        const Matrix<T> rhs = vn1 * e - e * vn;
        out.entries.push_back(detail::fd_entry(name, n, detail::fnorm(d.value - rhs),
                                               detail::max_norm<T>(d.value, vn1 * e, e * vn), d.error));
    };
    add("E_dot", [&](double tt) { return c.at(tt)->boldE(n); }, s->boldE(n));
    for (Axis i : axes)
        add("E_dot_" + std::to_string(axis_index(i)), [&, i](double tt) { return c.at(tt)->E(n, i); }, s->E(n, i));
    return out;
}

enum class ADotForm {
    Corrected,        // ... - A^T [A A^T + (H_n^{-1/2})' H_n^{1/2}]
    SignFlipped,      // ... - A^T [A A^T - (H_n^{-1/2})' H_n^{1/2}]
    WithoutRootTerms  // both (H^{-1/2})' terms dropped
};

/// The relation for (A_n^T)' with A_n = A_{n,1} + A_{n,2}, 1 <= n <= N-2. The
/// derivatives of H^{-1/2} come from finite differences of the SPD root.
template <typename T>
IdentityCheck check_A_dot(const StateCurve<T>& c, double t, int n, const FDConfig& cfg = {},
                          ADotForm form = ADotForm::Corrected) {
    if (n < 1 || n + 2 > c.max_degree()) throw Error("check_A_dot: need 1 <= n <= N-2");
    const auto s = c.at(t);
    const auto& sys = s->system();
    auto gram = [&](int m, bool left) {
        Matrix<T> g = left ? sys.A(m, Axis::X) * sys.A(m, Axis::X).transpose() +
                                 sys.A(m, Axis::Y) * sys.A(m, Axis::Y).transpose()
                           : sys.A(m, Axis::X).transpose() * sys.A(m, Axis::X) +
                                 sys.A(m, Axis::Y).transpose() * sys.A(m, Axis::Y);
        return g;
    };
    const Matrix<T> at = s->boldA(n).transpose();
    const auto d = fd_derivative<T>([&](double tt) { return c.at(tt)->boldA(n).transpose(); }, t, cfg);
    const auto dg1 = fd_derivative<T>([&](double tt) { return c.at(tt)->H_inv_sqrt(n + 1); }, t, cfg);
    const auto dg0 = fd_derivative<T>([&](double tt) { return c.at(tt)->H_inv_sqrt(n); }, t, cfg);
    const Matrix<T> root1 = dg1.value * s->H_sqrt(n + 1);
    const Matrix<T> root0 = dg0.value * s->H_sqrt(n);

    const Matrix<T> t1 = gram(n + 1, true) * at;
    const Matrix<T> t2 = at * gram(n - 1, false);
    const Matrix<T> t3 = gram(n, false) * at;
    const Matrix<T> t4 = at * gram(n, true);
    Matrix<T> rhs = t1 - t2 + t3 - t4;
    if (form != ADotForm::WithoutRootTerms) {
        rhs += root1 * at;
        rhs += (form == ADotForm::Corrected ? T(-1) : T(1)) * (at * root0);
    }
    const double fd_err = d.error + (dg1.error * detail::fnorm(s->H_sqrt(n + 1)) +
                                     dg0.error * detail::fnorm(s->H_sqrt(n))) * detail::fnorm(at);
    std::string name = "A_dot";
    if (form == ADotForm::SignFlipped) name += "_sign_flipped";
    if (form == ADotForm::WithoutRootTerms) name += "_without_root_terms";
    IdentityCheck out{name, "(A_n^T)' = [..]A_n^T - A_n^T[..] + (H_{n+1}^{-1/2})'H_{n+1}^{1/2} A_n^T - A_n^T (H_n^{-1/2})'H_n^{1/2}", {}};
    out.entries.push_back(detail::fd_entry(name, n, detail::fnorm(d.value - rhs),
                                           detail::max_norm<T>(d.value, t1, t2, t3, t4, root1 * at, at * root0),
                                           fd_err));
    return out;
}

/// Log2 ratios of residuals at successive halvings of h, with `levels` fixed.
template <typename T, typename Check>
std::vector<double> observed_orders(Check&& check, const std::vector<double>& steps, int levels) {
    std::vector<double> res;
    for (double h : steps) res.push_back(check(FDConfig{h, levels}));
    std::vector<double> orders;
    for (std::size_t k = 1; k < res.size(); ++k)
        orders.push_back(std::log(res[k - 1] / res[k]) / std::log(steps[k - 1] / steps[k]));
    return orders;
}

/// Runs H_dot, E_dot and A_dot over the given t values and degrees.
template <typename T>
ResidualReport run_lattice_suite(const StateCurve<T>& c, const std::vector<double>& ts, int max_n,
                                 const FDConfig& cfg = {}, unsigned threads = 1) {
    std::vector<double> needed;
    for (double t : ts) {
        needed.push_back(t);
        double h = cfg.h;
        for (int k = 0; k < std::max(cfg.levels, 2); ++k, h /= 2) {
            needed.push_back(t + h);
            needed.push_back(t - h);
        }
    }
    c.prefetch(needed, threads);
    ResidualReport r;
    for (double t : ts) {
        auto take = [&](IdentityCheck ic) {
            for (auto& e : ic.entries) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "@t=%g", t);
                e.check += buf;
                r.push_back(std::move(e));
            }
        };
        for (int n = 0; n <= std::min(max_n, c.max_degree() - 1); ++n) take(check_H_dot(c, t, n, cfg));
        for (int n = 1; n <= std::min(max_n, c.max_degree() - 1); ++n) take(check_E_dot(c, t, n, cfg));
        for (int n = 1; n <= std::min(max_n, c.max_degree() - 2); ++n) take(check_A_dot(c, t, n, cfg));
    }
    sort_report(r);
    return r;
}

// ---------------------------------------------------------------------------
// Integration of the E lattice

template <typename T = double>
struct LatticePoint {
    double t = 0;
    std::vector<Matrix<T>> e[2];  // E_{n,i}, index n - 1, n = 1..N-1

    Matrix<T> boldE(int n) const { return e[0][n - 1] + e[1][n - 1]; }
};

template <typename T = double>
using Trajectory = std::vector<LatticePoint<T>>;

namespace detail {

template <typename T>
LatticePoint<T> lattice_point(const LatticeState<T>& s) {
    LatticePoint<T> p;
    p.t = s.t();
    for (Axis i : axes)
        for (int n = 1; n + 1 <= s.max_degree(); ++n) p.e[axis_index(i) - 1].push_back(s.E(n, i));
    return p;
}

/// Right side of E_{n,i}' = V_{n+1} E_{n,i} - E_{n,i} V_n, with E_{N,i} taken from `top`.
template <typename T>
LatticePoint<T> lattice_rhs(const LatticePoint<T>& p, const LatticeState<T>& top) {
    const int last = static_cast<int>(p.e[0].size());  // N-1
    auto e_at = [&](int n, int i) -> Matrix<T> {
        return n <= last ? p.e[i][n - 1] : top.E(n, axes[i]);
    };
    std::vector<Matrix<T>> v(static_cast<std::size_t>(last) + 2);
    for (int n = 1; n <= last + 1; ++n) {
        Matrix<T> vn(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (int i = 0; i < 2; ++i) {
            vn += make_L<T>(n - 1, axes[i]) * e_at(n, i);
            if (n >= 2) vn += e_at(n - 1, i) * make_L<T>(n - 2, axes[i]);
        }
        v[n] = std::move(vn);
    }
    LatticePoint<T> d;
    d.t = p.t;
    for (int i = 0; i < 2; ++i)
        for (int n = 1; n <= last; ++n) {
            const Matrix<T>& e = p.e[i][n - 1];
            d.e[i].push_back(v[n + 1] * e - e * v[n]);
        }
    return d;
}

template <typename T>
LatticePoint<T> axpy(const LatticePoint<T>& p, T a, const LatticePoint<T>& d) {
    LatticePoint<T> out = p;
    for (int i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < out.e[i].size(); ++k) out.e[i][k] += a * d.e[i][k];
    return out;
}

} // namespace detail

/// Classical RK4 for E_{n,1}, E_{n,2}, n = 1..N-1, from t0 to t1. The top
/// blocks E_{N,i} needed by V_N are recomputed directly at each stage time.
/// The trajectory holds the state after every step, starting with t0.
template <typename T>
Trajectory<T> integrate_E(const StateCurve<T>& c, double t0, double t1, int steps) {
    if (steps < 0) throw Error("integrate_E: negative step count");
    if (steps > 0 && !(t0 < t1)) throw Error("integrate_E: need t0 < t1");
    Trajectory<T> traj{detail::lattice_point(*c.at(t0))};
    if (steps == 0) return traj;
    const double h = (t1 - t0) / steps;
    for (int k = 0; k < steps; ++k) {
        const LatticePoint<T>& y = traj.back();
        const double t = t0 + k * h;
        const double tm = t + h / 2, tn = k + 1 == steps ? t1 : t0 + (k + 1) * h;
        const auto k1 = detail::lattice_rhs(y, *c.at(t));
        const auto k2 = detail::lattice_rhs(detail::axpy(y, T(h / 2), k1), *c.at(tm));
        const auto k3 = detail::lattice_rhs(detail::axpy(y, T(h / 2), k2), *c.at(tm));
        const auto k4 = detail::lattice_rhs(detail::axpy(y, T(h), k3), *c.at(tn));
        LatticePoint<T> next = y;
        next.t = tn;
        for (int i = 0; i < 2; ++i)
            for (std::size_t m = 0; m < next.e[i].size(); ++m) {
                next.e[i][m] += T(h / 6) * (k1.e[i][m] + T(2) * k2.e[i][m] + T(2) * k3.e[i][m] + k4.e[i][m]);
                if (!next.e[i][m].all_finite())
                    throw IntegrationError("integrate_E: non-finite state at t = " + std::to_string(tn));
            }
        traj.push_back(std::move(next));
    }
    return traj;
}

/// Largest Frobenius distance between the final boldE_n of a trajectory and a
/// direct rebuild at the same t.
template <typename T>
double endpoint_error(const StateCurve<T>& c, const Trajectory<T>& traj) {
    const auto& p = traj.back();
    const auto s = c.at(p.t);
    double w = 0;
    for (int n = 1; n <= static_cast<int>(p.e[0].size()); ++n)
        w = std::max(w, static_cast<double>(frobenius_norm(p.boldE(n) - s->boldE(n))));
    return w;
}

/// Columns t, n, component (1, 2 or bold), row, col, value.
template <typename T>
void write_trajectory_csv(std::ostream& os, const Trajectory<T>& traj) {
    os << "t,n,component,row,col,value\n";
    char buf[160];
    for (const auto& p : traj)
        for (int n = 1; n <= static_cast<int>(p.e[0].size()); ++n) {
            const Matrix<T> mats[3] = {p.e[0][n - 1], p.e[1][n - 1], p.boldE(n)};
            const char* names[3] = {"1", "2", "bold"};
            for (int k = 0; k < 3; ++k)
                for (std::size_t r = 0; r < mats[k].rows(); ++r)
                    for (std::size_t col = 0; col < mats[k].cols(); ++col) {
                        std::snprintf(buf, sizeof buf, "%.17g,%d,%s,%zu,%zu,%.17Lg\n", p.t, n, names[k], r, col,
                                      static_cast<long double>(mats[k](r, col)));
                        os << buf;
                    }
        }
}

} // namespace freud2d
