// Acceptance run: one PASS/FAIL line per criterion, with timing. Exit status is
// the number of failed criteria.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "freud2d/bridge.hpp"
#include "freud2d/freud2d.hpp"

using namespace freud2d;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

void note(Outcome& o, bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
void note(Outcome& o, bool ok, const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    o.pass = o.pass && ok;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += buf;
    if (!ok) o.detail += " [!]";
}

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < limit_s;
    const bool ok = o.pass && in_time;
    failures += !ok;
    std::printf("%s criterion %d: %s (%.2f s, limit %.0f s%s) | %s\n", ok ? "PASS" : "FAIL", id, title, secs, limit_s,
                in_time ? "" : ", too slow", o.detail.c_str());
    std::fflush(stdout);
}

double rel(double a, double b) { return std::abs(a / b - 1); }

const WeightParams painleve_sets[] = {{1, 0, 1, 0, 0}, {1, 0.5, 2, 0.3, -0.2}, {1, 1, 1, -1, -1}};

std::string fmt_params(const WeightParams& p) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%g,%g,%g,%g,%g)", p.a40, p.a22, p.a04, p.a20, p.a02);
    return buf;
}

} // namespace

int main() {
    criterion(1, "product moments mu00, mu20 against Gamma closed forms", 5, [] {
        Outcome o;
        const double mu00 = std::pow(std::tgamma(0.25) / 2, 2);
        const double mu20 = std::numbers::pi * std::sqrt(2.0) / 4;
        const WeightParams p{1, 0, 1, 0, 0};
        const auto fast = compute_moments<double>(p, 2);
        const auto tensor = compute_moments_tensor<double>(p, 2);
        note(o, rel(fast.moment(0, 0), mu00) <= 1e-10, "mu00=%.12f rel err %.1e", fast.moment(0, 0),
             rel(fast.moment(0, 0), mu00));
        note(o, rel(fast.moment(2, 0), mu20) <= 1e-10, "mu20=%.12f rel err %.1e", fast.moment(2, 0),
             rel(fast.moment(2, 0), mu20));
        note(o, rel(tensor.moment(0, 0), mu00) <= 1e-10 && rel(tensor.moment(2, 0), mu20) <= 1e-10,
             "2D tensor rule rel err %.1e, %.1e", rel(tensor.moment(0, 0), mu00), rel(tensor.moment(2, 0), mu20));
        return o;
    });

    criterion(2, "1D string equation for t in {-1,0,1}, n <= 8", 5, [] {
        Outcome o;
        for (double t : {-1.0, 0.0, 1.0}) {
            const auto s = build_oned_t<double>(t, 16);
            const auto mu = oned_moments<double>(t, 2);
            const auto r = check_dPI(s);
            double worst = 0;
            for (int n = 0; n <= 8; ++n) worst = std::max(worst, std::abs(r[static_cast<std::size_t>(n)]));
            const double a0 = rel(s.a[0] * s.a[0], mu[2] / mu[0]);
            note(o, worst <= 1e-8 && a0 <= 1e-10, "t=%g max resid %.1e, a0^2 vs mu2/mu0 %.1e", t, worst, a0);
        }
        const auto s0 = build_oned_t<double>(0.0, 16);
        const double exact = std::tgamma(0.75) / std::tgamma(0.25);
        const double err = std::abs(s0.a[0] * s0.a[0] - exact);
        note(o, err <= 1e-10, "t=0 a0^2=%.12f vs Gamma ratio err %.1e", s0.a[0] * s0.a[0], err);
        return o;
    });

    criterion(3, "product bridge A_{n,1}[k][k] = a_{n-k}, n <= 8", 30, [] {
        Outcome o;
        for (const WeightParams& p : {WeightParams{1, 0, 1, 0, 0}, WeightParams{2, 0, 0.5, -1, 0.7}}) {
            const auto s = build_system<double>(p, 9);
            const auto ox = marginal_system<double>(p, Axis::X, 16), oy = marginal_system<double>(p, Axis::Y, 16);
            double diag = 0, off = 0;
            for (int n = 0; n <= 8; ++n) {
                const auto a = s.A(n, Axis::X);
                for (std::size_t r = 0; r < a.rows(); ++r)
                    for (std::size_t c = 0; c < a.cols(); ++c) {
                        const double e = std::abs(a(r, c) - (r == c ? ox.a_at(n - static_cast<int>(r)) : 0.0));
                        (r == c ? diag : off) = std::max(r == c ? diag : off, e);
                    }
            }
            const auto full = check_product_bridge(s, ox, oy, 1e-9);
            note(o, diag <= 1e-9 && off <= 1e-9 && full.pass(),
                 "%s diag err %.1e, off-pattern %.1e, all A/E blocks both axes %.1e", fmt_params(p).c_str(), diag,
                 off, full.worst_residual());
        }
        return o;
    });

    for (const auto& p : painleve_sets) {
        const std::string title = "Painleve relations both axes n <= 7, params " + fmt_params(p);
        criterion(4, title.c_str(), 60, [&] {
            Outcome o;
            const auto s = build_system<double>(p, 9);
            const auto c = check_painleve(s, Tolerances{}, 7);
            double worst_ratio = 0;
            int maxn = 0;
            for (const auto& e : c.entries) {
                worst_ratio = std::max(worst_ratio, e.residual / (1e-8 * (1 + e.scale)));
                maxn = std::max(maxn, e.n);
            }
            note(o, c.pass() && maxn == 7 && c.entries.size() == 16,
                 "%zu entries, worst resid %.1e, worst resid/(1e-8(1+scale)) %.1e", c.entries.size(),
                 c.worst_residual(), worst_ratio);
            return o;
        });
    }

    criterion(5, "identity suite at N = 8 (coefficient relations, FTR, Kronecker, F, psiXLKX)", 60, [] {
        Outcome o;
        for (const auto& p : painleve_sets) {
            const auto s = build_system<double>(p, 8);
            ResidualReport r = run_identity_suite(s);
            const auto ll = check_LLKKLL(p, 8);
            r.insert(r.end(), ll.entries.begin(), ll.entries.end());
            std::size_t bad = 0, structural = 0;
            double worst_structural = 0;
            for (const auto& e : r) {
                bad += !e.pass;
                if (e.check.rfind("psiXLKX", 0) == 0 || e.check.rfind("LLKKLL", 0) == 0) {
                    ++structural;
                    worst_structural = std::max(worst_structural, e.residual / (1 + e.scale));
                }
            }
            note(o, bad == 0 && structural > 0 && worst_structural <= 1e-13,
                 "%s %zu entries, %zu failing, structural worst %.1e", fmt_params(p).c_str(), r.size(), bad,
                 worst_structural);
        }
        return o;
    });

    criterion(6, "differential-difference equation 1 <= n <= 6", 60, [] {
        Outcome o;
        for (const WeightParams& p : {WeightParams{1, 0.5, 2, 0.3, -0.2}, WeightParams{1, 1, 1, -1, -1}}) {
            const auto c = check_dde(build_system<double>(p, 8));
            double worst = 0;
            int count = 0;
            bool ok = true;
            for (const auto& e : c.entries) {
                if (e.check != "dde" || e.n < 1 || e.n > 6) continue;
                ++count;
                worst = std::max(worst, e.residual / e.scale);
                ok = ok && e.residual <= 1e-8 * e.scale;
            }
            note(o, ok && count == 6 && c.pass(), "%s worst resid/scale %.1e over n=1..6, pairing/quadrature %s",
                 fmt_params(p).c_str(), worst, c.pass() ? "ok" : "FAIL");
        }
        return o;
    });

    criterion(7, "Langmuir lattice suite: H_dot, E_dot, A_dot; FD order; RK4", 300, [] {
        Outcome o;
        const WeightParams bases[] = {{1, 0, 1, 0, 0}, {1, 0.5, 2, 0, 0}, {1, 1, 1, 0, 0}};
        const std::vector<double> ts{-0.5, 0.0, 0.5};
        for (const auto& b : bases) {
            const StateCurve<double> c(b, 8);
            const auto r = run_lattice_suite(c, ts, 6, FDConfig{}, 4);
            std::size_t bad = 0;
            double worst = 0;
            for (const auto& e : r) {
                bad += !e.pass;
                worst = std::max(worst, e.residual / (e.tol * (1 + e.scale)));
            }
            note(o, bad == 0, "base %s %zu entries, %zu failing, worst resid/thr %.1e", fmt_params(b).c_str(),
                 r.size(), bad, worst);

            // observed order of plain central differences, h = 1e-2, 5e-3, 2.5e-3
            const std::vector<double> steps{1e-2, 5e-3, 2.5e-3};
            double min_order = 1e9;
            for (double t : ts)
                for (int n : {1, 3, 6}) {
                    auto take = [&](auto&& f) {
                        for (double q : observed_orders<double>(f, steps, 1)) min_order = std::min(min_order, q);
                    };
                    take([&](FDConfig f) { return check_H_dot(c, t, n, f).entries[0].residual; });
                    take([&](FDConfig f) { return check_E_dot(c, t, n, f).entries[0].residual; });
                    take([&](FDConfig f) { return check_A_dot(c, t, n, f).entries[0].residual; });
                }
            const double rounded = std::round(min_order * 100) / 100;
            note(o, rounded >= 2.0, "min observed FD order %.7f (%.2f)", min_order, rounded);

            std::size_t caught = 0, total = 0;
            for (double t : ts)
                for (int n = 1; n <= 6; ++n) {
                    total += 2;
                    caught += !check_A_dot(c, t, n, {}, ADotForm::SignFlipped).pass();
                    caught += !check_A_dot(c, t, n, {}, ADotForm::WithoutRootTerms).pass();
                }
            note(o, caught == total, "uncorrected A_dot forms rejected %zu/%zu", caught, total);

            const auto traj = integrate_E(c, 0.0, 0.5, 200);
            const double end = endpoint_error(c, traj);
            note(o, end <= 1e-6, "RK4 200 steps on [0,0.5] endpoint err %.1e", end);
        }
        return o;
    });

    criterion(8, "negative control: every single A_{n,i} entry (n <= 7) +1e-3 breaks painleve", 10, [] {
        Outcome o;
        for (const auto& p : painleve_sets) {
            const auto s = build_system<double>(p, 9);
            std::size_t total = 0, caught = 0, top_total = 0, top_caught = 0;
            double weakest = 1e300;
            for (int n = 0; n <= 8; ++n)
                for (Axis i : axes) {
                    const auto a = s.A(n, i);
                    for (std::size_t r = 0; r < a.rows(); ++r)
                        for (std::size_t c = 0; c < a.cols(); ++c) {
                            const auto bad = check_painleve(s.with_perturbed_A(n, i, r, c, 1e-3), Tolerances{}, 7);
                            const bool detected = !bad.pass();
                            if (n == 8) {
                                ++top_total;
                                top_caught += detected;
                                continue;
                            }
                            ++total;
                            caught += detected;
                            double ratio = 0;
                            for (const auto& e : bad.entries)
                                ratio = std::max(ratio, e.residual / (e.tol * (1 + e.scale)));
                            weakest = std::min(weakest, ratio);
                        }
                }
            note(o, caught == total,
                 "%s %zu/%zu perturbations detected, weakest resid/thr %.1e (look-ahead A_8 only: %zu/%zu)",
                 fmt_params(p).c_str(), caught, total, weakest, top_caught, top_total);
        }
        return o;
    });

    std::printf("%d criteria failed\n", failures);
    return failures;
}
