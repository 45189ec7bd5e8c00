#pragma once

// Every matrix identity satisfied by the Freud system, evaluated as a residual:
// both sides are computed independently and subtracted. An entry passes when
// residual <= tol * (1 + scale), with scale the largest operand Frobenius norm.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "linalg.hpp"
#include "orthosys.hpp"
#include "polynomial.hpp"
#include "structural.hpp"
#include "weight.hpp"

namespace freud2d {

struct CheckEntry {
    std::string check;
    int n = 0;
    double residual = 0;
    double scale = 0;
    double tol = 0;
    bool pass = false;
};

struct IdentityCheck {
    std::string name;
    std::string formula;
    std::vector<CheckEntry> entries;

    bool pass() const {
        return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
    }
    double worst_residual() const {
        double w = 0;
        for (const auto& e : entries) w = std::max(w, e.residual);
        return w;
    }
};

using ResidualReport = std::vector<CheckEntry>;

/// Tolerances, relative to 1 + scale.
struct Tolerances {
    double structural = 1e-13;
    double orthonormality = 1e-10;
    double leading = 1e-10;      // A A^{-1} = I, leading-block relations
    double coefficient = 1e-9;   // relations mixing lower blocks
    double painleve = 1e-8;
    double dde = 1e-8;
    double pairing = 1e-10;
    double pointwise = 1e-8;
    double finite_difference = 1e-6;
};

inline CheckEntry make_entry(std::string check, int n, double residual, double scale, double tol) {
    return {std::move(check), n, residual, scale, tol, residual <= tol * (1 + scale)};
}

/// Sorted by check name, then n.
inline void sort_report(ResidualReport& r) {
    std::stable_sort(r.begin(), r.end(), [](const CheckEntry& a, const CheckEntry& b) {
        return std::tie(a.check, a.n) < std::tie(b.check, b.n);
    });
}

inline bool all_pass(const ResidualReport& r) {
    return std::all_of(r.begin(), r.end(), [](const CheckEntry& e) { return e.pass; });
}

namespace detail {

inline std::string axis_suffix(Axis i) { return i == Axis::X ? "_x" : "_y"; }

template <typename T>
double fnorm(const Matrix<T>& m) {
    return static_cast<double>(frobenius_norm(m));
}

template <typename T, typename... M>
double max_norm(const M&... ms) {
    double s = 0;
    ((s = std::max(s, fnorm<T>(ms))), ...);
    return s;
}

/// G^n_{n-2} G_{n-2}^{-1}, or an (n+1) x (n-1) zero for n < 2.
template <typename T>
Matrix<T> lower_ratio(const OrthoSystem<T>& s, int n) {
    if (n < 2) return Matrix<T>(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(std::max(n - 1, 0)));
    return s.G_block(n, n - 2) * s.G_inv(n - 2);
}

inline double quartic(const WeightParams& p, Axis i) { return i == Axis::X ? p.a40 : p.a04; }
inline double quadratic(const WeightParams& p, Axis i) { return i == Axis::X ? p.a20 : p.a02; }

/// psi_i * f computed through the structural shift maps.
template <typename T>
VectorPolynomial<T> psi_times_structural(const WeightParams& p, Axis i, const VectorPolynomial<T>& f) {
    if (i == Axis::X)
        return T(-4 * p.a40) * f.times_monomial_structural(3, 0) +
               T(-2 * p.a22) * f.times_monomial_structural(1, 2) +
               T(-2 * p.a20) * f.times_monomial_structural(1, 0);
    return T(-2 * p.a22) * f.times_monomial_structural(2, 1) +
           T(-4 * p.a04) * f.times_monomial_structural(0, 3) +
           T(-2 * p.a02) * f.times_monomial_structural(0, 1);
}

/// psi_i * f by direct monomial bookkeeping.
template <typename T>
VectorPolynomial<T> psi_times_direct(const WeightParams& p, Axis i, const VectorPolynomial<T>& f) {
    if (i == Axis::X)
        return T(-4 * p.a40) * f.times_monomial(3, 0) + T(-2 * p.a22) * f.times_monomial(1, 2) +
               T(-2 * p.a20) * f.times_monomial(1, 0);
    return T(-2 * p.a22) * f.times_monomial(2, 1) + T(-4 * p.a04) * f.times_monomial(0, 3) +
           T(-2 * p.a02) * f.times_monomial(0, 1);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Structural identities (exact up to rounding of parameter multiples)

/// L_{n,i}L_{n+1,i}K_{n+2,i} = 4c L_{n,i}L_{n+1,i} + 2a22 L_{n,j}L_{n+1,j}.
template <typename T = double>
IdentityCheck check_LLKKLL(const WeightParams& p, int max_degree, const Tolerances& tol = {}) {
    IdentityCheck out{"LLKKLL", "L_{n,i}L_{n+1,i}K_{n+2,i} = 4c_i L_{n,i}L_{n+1,i} + 2a22 L_{n,j}L_{n+1,j}", {}};
    for (Axis i : axes)
        for (int n = 0; n <= max_degree; ++n) {
            const Matrix<T> ll = make_L<T>(n, i) * make_L<T>(n + 1, i);
            const Matrix<T> lhs = ll * make_K<T>(n + 2, i, p);
            const Matrix<T> rhs = T(4 * detail::quartic(p, i)) * ll +
                                  T(2 * p.a22) * (make_L<T>(n, other(i)) * make_L<T>(n + 1, other(i)));
            out.entries.push_back(make_entry("LLKKLL" + detail::axis_suffix(i), n,
                                             detail::fnorm(lhs - rhs), detail::max_norm<T>(lhs, rhs),
                                             tol.structural));
        }
    return out;
}

/// psi_i X_{n-1} = -L_{n-1,i}L_{n,i}L_{n+1,i}K_{n+2,i} X_{n+2} - 2c_i L_{n-1,i} X_n,
/// the left side expanded monomial by monomial.
template <typename T = double>
IdentityCheck check_psiXLKX(const WeightParams& p, int n, const Tolerances& tol = {}) {
    if (n < 1) throw Error("check_psiXLKX: n must be >= 1");
    IdentityCheck out{"psiXLKX", "psi_i X_{n-1} = -L L L K_{n+2,i} X_{n+2} - 2c_i L_{n-1,i} X_n", {}};
    for (Axis i : axes) {
        const auto lhs = detail::psi_times_direct(p, i, VectorPolynomial<T>::canonical(n - 1));
        VectorPolynomial<T> rhs(static_cast<std::size_t>(n), n + 2);
        rhs.set_block(n + 2, T(-1) * (make_L<T>(n - 1, i) * make_L<T>(n, i) * make_L<T>(n + 1, i) *
                                      make_K<T>(n + 2, i, p)));
        rhs.set_block(n, T(-2 * detail::quadratic(p, i)) * make_L<T>(n - 1, i));
        const double scale = std::max(static_cast<double>(lhs.coefficient_norm()),
                                      static_cast<double>(rhs.coefficient_norm()));
        out.entries.push_back(make_entry("psiXLKX" + detail::axis_suffix(i), n,
                                         static_cast<double>(coefficient_distance(lhs, rhs)), scale,
                                         tol.structural));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Orthogonality and the defining relations

template <typename T>
IdentityCheck check_orthonormality(const OrthoSystem<T>& s, const Tolerances& tol = {}) {
    IdentityCheck out{"orthonormality", "<P_n P_m^T> = delta_{nm} I", {}};
    for (int n = 0; n <= s.max_degree(); ++n) {
        double worst = 0;
        for (int m = 0; m <= n; ++m) {
            Matrix<T> ip = detail::inner(s.moments(), s.P(n), s.P(m));
            if (m == n) ip -= Matrix<T>::identity(static_cast<std::size_t>(n) + 1);
            worst = std::max(worst, detail::fnorm(ip));
        }
        out.entries.push_back(make_entry("orthonormality", n, worst, 0.0, tol.orthonormality));
    }
    return out;
}

/// x_i P_n - A_{n,i} P_{n+1} - A_{n-1,i}^T P_{n-1} on coefficient blocks.
template <typename T>
IdentityCheck check_ttr_blocks(const OrthoSystem<T>& s, const Tolerances& tol = {}) {
    IdentityCheck out{"ttr_blocks", "x_i P_n = A_{n,i} P_{n+1} + A_{n-1,i}^T P_{n-1}", {}};
    for (Axis i : axes)
        for (int n = 0; n + 1 <= s.max_degree(); ++n) {
            const auto lhs = i == Axis::X ? s.P(n).times_monomial(1, 0) : s.P(n).times_monomial(0, 1);
            auto rhs = s.A(n, i) * s.P(n + 1);
            if (n >= 1) rhs += s.A(n - 1, i).transpose() * s.P(n - 1);
            const double scale = std::max({static_cast<double>(lhs.coefficient_norm()),
                                           static_cast<double>(rhs.coefficient_norm())});
            out.entries.push_back(make_entry("ttr_blocks" + detail::axis_suffix(i), n,
                                             static_cast<double>(coefficient_distance(lhs, rhs)), scale,
                                             tol.coefficient));
        }
    return out;
}

/// x_i Q_n - L_{n,i} Q_{n+1} - E_{n,i} Q_{n-1} on coefficient blocks.
template <typename T>
IdentityCheck check_monic_ttr(const OrthoSystem<T>& s, const Tolerances& tol = {}) {
    IdentityCheck out{"monic_ttr", "x_i Q_n = L_{n,i} Q_{n+1} + E_{n,i} Q_{n-1}", {}};
    for (Axis i : axes)
        for (int n = 0; n + 1 <= s.max_degree(); ++n) {
            const auto lhs = i == Axis::X ? s.Q(n).times_monomial(1, 0) : s.Q(n).times_monomial(0, 1);
            auto rhs = make_L<T>(n, i) * s.Q(n + 1);
            if (n >= 1) rhs += s.E(n, i) * s.Q(n - 1);
            const double scale = std::max(static_cast<double>(lhs.coefficient_norm()),
                                          static_cast<double>(rhs.coefficient_norm()));
            out.entries.push_back(make_entry("monic_ttr" + detail::axis_suffix(i), n,
                                             static_cast<double>(coefficient_distance(lhs, rhs)), scale,
                                             tol.coefficient));
        }
    return out;
}

/// d_i P_n - B_{n,i} P_{n-1} - C_{n,i} P_{n-3} on coefficient blocks.
template <typename T>
IdentityCheck check_structure_blocks(const OrthoSystem<T>& s, const Tolerances& tol = {}) {
    IdentityCheck out{"structure_blocks", "d_i P_n = B_{n,i} P_{n-1} + C_{n,i} P_{n-3}", {}};
    for (Axis i : axes)
        for (int n = 1; n <= s.max_degree(); ++n) {
            const auto lhs = s.P(n).derivative(i);
            auto rhs = s.B(n, i) * s.P(n - 1);
            if (n >= 3) rhs += s.C(n, i) * s.P(n - 3);
            const double scale = std::max(static_cast<double>(lhs.coefficient_norm()),
                                          static_cast<double>(rhs.coefficient_norm()));
            out.entries.push_back(make_entry("structure_blocks" + detail::axis_suffix(i), n,
                                             static_cast<double>(coefficient_distance(lhs, rhs)), scale,
                                             tol.coefficient));
        }
    return out;
}

/// Consequences of x(yP_n) = y(xP_n).
template <typename T>
IdentityCheck check_commutativity(const OrthoSystem<T>& s, const Tolerances& tol = {}) {
    IdentityCheck out{"commutativity", "A_{n,1}A_{n+1,2} = A_{n,2}A_{n+1,1}; A_{n,1}A_{n,2}^T + A_{n-1,1}^T A_{n-1,2} symmetric in 1 <-> 2", {}};
    const Axis x = Axis::X, y = Axis::Y;
    for (int n = 0; n + 2 <= s.max_degree(); ++n) {
        const Matrix<T> l = s.A(n, x) * s.A(n + 1, y), r = s.A(n, y) * s.A(n + 1, x);
        out.entries.push_back(make_entry("commutativity_up", n, detail::fnorm(l - r),
                                         detail::max_norm<T>(l, r), tol.coefficient));
    }
    for (int n = 0; n + 1 <= s.max_degree(); ++n) {
        const Matrix<T> l = s.A(n, x) * s.A(n, y).transpose() + s.A(n - 1, x).transpose() * s.A(n - 1, y);
        const Matrix<T> r = s.A(n, y) * s.A(n, x).transpose() + s.A(n - 1, y).transpose() * s.A(n - 1, x);
        out.entries.push_back(make_entry("commutativity_same", n, detail::fnorm(l - r),
                                         detail::max_norm<T>(l, r), tol.coefficient));
    }
    return out;
}

/// The joint matrix [A_{n,1}; A_{n,2}] has full column rank n+2.
template <typename T>
IdentityCheck check_joint_rank(const OrthoSystem<T>& s) {
    IdentityCheck out{"joint_rank", "rank [A_{n,1}; A_{n,2}] = n+2", {}};
    for (int n = 0; n + 1 <= s.max_degree(); ++n) {
        const auto r = rank(s.joint_A(n), T(1e-10));
        out.entries.push_back(make_entry("joint_rank", n, std::abs(static_cast<double>(r) - (n + 2)), 0.0, 0.0));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Relations between A, B, C and the lower coefficient blocks

template <typename T>
IdentityCheck check_coefficient_relations(const OrthoSystem<T>& s, const Tolerances& tol = {}) {
    IdentityCheck out{"coefficient_relations", "A_inv, B via A, C^T via A, C via B, GLA, GLBC", {}};
    const int N = s.max_degree();
    const WeightParams& prm = s.params();
    for (Axis i : axes) {
        const std::string sx = detail::axis_suffix(i);
        for (int n = 0; n + 1 <= N; ++n) {
            const Matrix<T> prod = s.A(n, i) * s.A_pinv(n, i);
            const Matrix<T> id = Matrix<T>::identity(static_cast<std::size_t>(n) + 1);
            out.entries.push_back(make_entry("A_inv" + sx, n, detail::fnorm(prod - id),
                                             detail::max_norm<T>(s.A(n, i), s.A_pinv(n, i)), tol.leading));
        }
        for (int n = 1; n <= N; ++n) {
            const Matrix<T> rhs = s.A_pinv(n - 1, i) * s.G(n - 1) * make_N<T>(n, i) * s.G_inv(n - 1);
            out.entries.push_back(make_entry("B_ni_A" + sx, n, detail::fnorm(s.B(n, i) - rhs),
                                             detail::max_norm<T>(s.B(n, i), rhs), tol.coefficient));
        }
        for (int n = 3; n <= N; ++n) {
            const Matrix<T> rhs = s.A(n - 3, i) * s.A(n - 2, i) * s.A(n - 1, i) * s.G(n) *
                                  make_K<T>(n, i, prm) * s.G_inv(n);
            const Matrix<T> ct = s.C(n, i).transpose();
            out.entries.push_back(make_entry("CnAn" + sx, n, detail::fnorm(ct - rhs),
                                             detail::max_norm<T>(ct, rhs), tol.coefficient));
        }
        for (int n = 3; n <= N; ++n) {
            const Matrix<T> t1 = s.G_block(n, n - 2) * s.G_inv(n - 2) * s.B(n - 2, i);
            const Matrix<T> t2 = s.B(n, i) * s.G_block(n - 1, n - 3) * s.G_inv(n - 3);
            const Matrix<T> rhs = t1 - t2;
            out.entries.push_back(make_entry("PropCn" + sx, n, detail::fnorm(s.C(n, i) - rhs),
                                             detail::max_norm<T>(s.C(n, i), t1, t2), tol.coefficient));
        }
        // A_{n,i} G^{n+1}_{n-2k+1} + A_{n-1,i}^T G^{n-1}_{n-2k+1} = G^n_{n-2k} L_{n-2k,i}
        for (int n = 0; n + 1 <= N; ++n) {
            double res = 0, scale = 0;
            for (int k = 0; 2 * k <= n; ++k) {
                const int m = n - 2 * k;
                Matrix<T> lhs = s.A(n, i) * s.G_block(n + 1, m + 1);
                if (n >= 1) lhs += s.A(n - 1, i).transpose() * s.G_block(n - 1, m + 1);
                const Matrix<T> rhs = s.G_block(n, m) * make_L<T>(m, i);
                res = std::max(res, detail::fnorm(lhs - rhs));
                scale = std::max(scale, detail::max_norm<T>(lhs, rhs));
            }
            out.entries.push_back(make_entry("GLA" + sx, n, res, scale, tol.leading));
        }
        // B_{n,i} G^{n-1}_{n-2k-1} + C_{n,i} G^{n-3}_{n-2k-1} = G^n_{n-2k} L_{n-2k-1,i}^T N_{n-2k,i}
        for (int n = 1; n <= N; ++n) {
            double res = 0, scale = 0;
            for (int k = 0; n - 2 * k >= 1; ++k) {
                const int m = n - 2 * k;
                Matrix<T> lhs = s.B(n, i) * s.G_block(n - 1, m - 1);
                if (n >= 3) lhs += s.C(n, i) * s.G_block(n - 3, m - 1);
                const Matrix<T> rhs = s.G_block(n, m) * diff_map<T>(m, i);
                res = std::max(res, detail::fnorm(lhs - rhs));
                scale = std::max(scale, detail::max_norm<T>(lhs, rhs));
            }
            out.entries.push_back(make_entry("GLBC" + sx, n, res, scale, tol.coefficient));
        }
    }
    return out;
}

/// A_{n,i}A_{n,j}^T + A_{n-1,i}^T A_{n-1,j} - G^n_{n-2}G_{n-2}^{-1} A_{n-2,i}A_{n-1,j}
///   + A_{n,i}A_{n+1,j} G^{n+2}_n G_n^{-1}, all (i, j).
template <typename T>
Matrix<T> four_term_residual(const OrthoSystem<T>& s, int n, Axis i, Axis j) {
    Matrix<T> r = s.A(n, i) * s.A(n, j).transpose() + s.A(n - 1, i).transpose() * s.A(n - 1, j);
    if (n >= 2) r -= detail::lower_ratio(s, n) * s.A(n - 2, i) * s.A(n - 1, j);
    r += s.A(n, i) * s.A(n + 1, j) * s.G_block(n + 2, n) * s.G_inv(n);
    return r;
}

template <typename T>
IdentityCheck check_four_term(const OrthoSystem<T>& s, const Tolerances& tol = {}) {
    IdentityCheck out{"four_term", "A A^T + A^T A = G^n_{n-2}G^{-1} A A - A A G^{n+2}_n G^{-1}", {}};
    for (Axis i : axes)
        for (Axis j : axes)
            for (int n = 0; n + 2 <= s.max_degree(); ++n) {
                const Matrix<T> r = four_term_residual(s, n, i, j);
                const double scale = detail::max_norm<T>(
                    s.A(n, i) * s.A(n, j).transpose(),
                    s.A(n, i) * s.A(n + 1, j) * s.G_block(n + 2, n) * s.G_inv(n),
                    detail::lower_ratio(s, n));
                out.entries.push_back(make_entry("four_term_" + std::to_string(axis_index(i)) +
                                                     std::to_string(axis_index(j)),
                                                 n, detail::fnorm(r), scale, tol.coefficient));
            }
    return out;
}

/// The four-term relations in joint-matrix form with Kronecker factors, plus
/// an audit that its blocks are exactly the per-(i,j) residuals.
template <typename T>
IdentityCheck check_kron_corollary(const OrthoSystem<T>& s, const Tolerances& tol = {}) {
    IdentityCheck out{"kron_corollary",
                      "A_n A_n^T + Abar^T Abar = (I2 x G G^{-1}) A_{n-2} Abar_{n-1} - A_n Abar_{n+1} (I2 x G G^{-1})",
                      {}};
    const Matrix<T> i2 = Matrix<T>::identity(2);
    for (int n = 0; n + 2 <= s.max_degree(); ++n) {
        const Matrix<T> an = s.joint_A(n);
        const Matrix<T> abar_prev = hcat(s.A(n - 1, Axis::X), s.A(n - 1, Axis::Y));
        Matrix<T> lhs = an * an.transpose() + abar_prev.transpose() * abar_prev;
        Matrix<T> down(lhs.rows(), lhs.cols());
        if (n >= 2) down = kron(i2, detail::lower_ratio(s, n)) * s.joint_A(n - 2) * s.joint_A_bar(n - 1);
        const Matrix<T> up = an * s.joint_A_bar(n + 1) * kron(i2, Matrix<T>(s.G_block(n + 2, n) * s.G_inv(n)));
        const Matrix<T> r = lhs - down + up;
        out.entries.push_back(make_entry("kron_corollary", n, detail::fnorm(r),
                                         detail::max_norm<T>(lhs, down, up), tol.coefficient));

        Matrix<T> assembled(r.rows(), r.cols());
        const std::size_t b = static_cast<std::size_t>(n) + 1;
        for (Axis i : axes)
            for (Axis j : axes)
                assembled.set_block((axis_index(i) - 1) * b, (axis_index(j) - 1) * b, four_term_residual(s, n, i, j));
        out.entries.push_back(make_entry("kron_assembly", n, detail::fnorm(r - assembled),
                                         detail::max_norm<T>(lhs, down, up), tol.structural));
    }
    return out;
}

/// F^n_{n,i} = G^n_{n-2}G_{n-2}^{-1}(F^n_{n-2,i})^T - F^n_{n+2,i}G^{n+2}_nG_n^{-1}, and
/// F^n_{n,i} against the quadrature value <x_i^2 P_n P_n^T>.
template <typename T>
IdentityCheck check_f_corollary(const OrthoSystem<T>& s, const Tolerances& tol = {}) {
    IdentityCheck out{"f_corollary", "F^n_n = G^n_{n-2}G^{-1}(F^n_{n-2})^T - F^n_{n+2}G^{n+2}_nG^{-1}", {}};
    for (Axis i : axes) {
        const std::string sx = detail::axis_suffix(i);
        for (int n = 2; n + 2 <= s.max_degree(); ++n) {
            const auto f = f_blocks(s, n, i);
            const Matrix<T> t1 = detail::lower_ratio(s, n) * f.down.transpose();
            const Matrix<T> t2 = f.up * s.G_block(n + 2, n) * s.G_inv(n);
            out.entries.push_back(make_entry("f_corollary" + sx, n, detail::fnorm(f.same - t1 + t2),
                                             detail::max_norm<T>(f.same, t1, t2), tol.coefficient));
        }
        for (int n = 0; n + 2 <= s.max_degree(); ++n) {
            const auto f = f_blocks(s, n, i);
            const auto x2p = i == Axis::X ? s.P(n).times_monomial(2, 0) : s.P(n).times_monomial(0, 2);
            const Matrix<T> quad = detail::inner(s.moments(), x2p, s.P(n));
            out.entries.push_back(make_entry("f_quadrature" + sx, n, detail::fnorm(f.same - quad),
                                             detail::max_norm<T>(f.same, quad), tol.coefficient));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix Painleve-type difference equations

/// Left side minus right side G_n N_{n+1,i} G_n^{-1} for axis i at degree n.
template <typename T>
std::pair<Matrix<T>, double> painleve_residual(const OrthoSystem<T>& s, int n, Axis i) {
    const WeightParams& p = s.params();
    const Axis j = other(i);
    const Matrix<T> ai = s.A(n, i), aj = s.A(n, j);
    const Matrix<T> ai1 = s.A(n + 1, i), aj1 = s.A(n + 1, j);
    const Matrix<T> aim = s.A(n - 1, i), ajm = s.A(n - 1, j);
    const Matrix<T> quartic_term =
        T(4 * detail::quartic(p, i)) *
        (ai * ((ai1 * ai1.transpose()) * ai.transpose() +
               ai.transpose() * (ai * ai.transpose() + aim.transpose() * aim)));
    const Matrix<T> mixed_term =
        T(2 * p.a22) * (ai * ((aj1 * ai1.transpose()) * aj.transpose() +
                              aj.transpose() * (ai * aj.transpose() + aim.transpose() * ajm)));
    const Matrix<T> quadratic_term = T(2 * detail::quadratic(p, i)) * (ai * ai.transpose());
    const Matrix<T> rhs = s.G(n) * make_N<T>(n + 1, i) * s.G_inv(n);
    const Matrix<T> r = quartic_term + mixed_term + quadratic_term - rhs;
    const double scale = detail::max_norm<T>(quartic_term, mixed_term, quadratic_term, rhs, ai, ai1, aj, aj1);
    return {r, scale};
}

template <typename T>
IdentityCheck check_painleve(const OrthoSystem<T>& s, const Tolerances& tol = {}, int max_n = -1) {
    IdentityCheck out{"painleve",
                      "4c_i A_i[(A'_i A'_i^T)A_i^T + A_i^T(A_iA_i^T + A_-^T A_-)] + 2a22 A_i[...] + 2c'_i A_iA_i^T = G_n N_{n+1,i} G_n^{-1}",
                      {}};
    const int last = max_n < 0 ? s.max_degree() - 2 : std::min(max_n, s.max_degree() - 2);
    for (Axis i : axes)
        for (int n = 0; n <= last; ++n) {
            const auto [r, scale] = painleve_residual(s, n, i);
            out.entries.push_back(
                make_entry("painleve" + detail::axis_suffix(i), n, detail::fnorm(r), scale, tol.painleve));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Second-order differential-difference equation

/// F P_n with F = d_xx + d_yy + psi_1 d_x + psi_2 d_y, through the structural maps.
template <typename T>
VectorPolynomial<T> apply_pearson_operator(const WeightParams& p, const VectorPolynomial<T>& f) {
    const auto fx = f.derivative_structural(Axis::X);
    const auto fy = f.derivative_structural(Axis::Y);
    auto out = fx.derivative_structural(Axis::X) + fy.derivative_structural(Axis::Y);
    out += detail::psi_times_structural(p, Axis::X, fx);
    out += detail::psi_times_structural(p, Axis::Y, fy);
    return out;
}

template <typename T>
IdentityCheck check_dde(const OrthoSystem<T>& s, const Tolerances& tol = {}) {
    IdentityCheck out{"dde", "F P_n = L^n_{n+2} P_{n+2} + L^n_n P_n + L^n_{n-2} P_{n-2}", {}};
    for (int n = 1; n + 2 <= s.max_degree(); ++n) {
        const auto lhs = apply_pearson_operator(s.params(), s.P(n));
        const auto lb = lambda_blocks(s, n);
        const auto up = lb.up * s.P(n + 2);
        const auto same = lb.same * s.P(n);
        auto rhs = up + same;
        double scale = std::max({static_cast<double>(lhs.coefficient_norm()),
                                 static_cast<double>(up.coefficient_norm()),
                                 static_cast<double>(same.coefficient_norm())});
        if (n >= 2) {
            const auto down = lb.down * s.P(n - 2);
            rhs += down;
            scale = std::max(scale, static_cast<double>(down.coefficient_norm()));
        }
        out.entries.push_back(make_entry("dde", n, static_cast<double>(coefficient_distance(lhs, rhs)), scale,
                                         tol.dde));
    }
    for (int n = 3; n + 2 <= s.max_degree(); ++n) {
        const Matrix<T> down = lambda_blocks(s, n).down;
        const Matrix<T> up_t = lambda_blocks(s, n - 2).up.transpose();
        out.entries.push_back(make_entry("lambda_pairing", n, detail::fnorm(down - up_t),
                                         detail::max_norm<T>(down, up_t), tol.pairing));
    }
    // <F P_n P_m^T> = -sum_i <d_i P_n d_i P_m^T>, since F is symmetric for W
    for (int n = 1; n + 2 <= s.max_degree(); ++n) {
        const auto lb = lambda_blocks(s, n);
        double res = 0, scale = 0;
        for (int m = n - 2; m <= n + 2; m += 2) {
            if (m < 0) continue;
            Matrix<T> quad(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(m) + 1);
            for (Axis i : axes) quad -= detail::inner(s.moments(), s.P(n).derivative(i), s.P(m).derivative(i));
            const Matrix<T>& blk = m == n + 2 ? lb.up : m == n ? lb.same : lb.down;
            res = std::max(res, detail::fnorm(blk - quad));
            scale = std::max(scale, detail::max_norm<T>(blk, quad));
        }
        out.entries.push_back(make_entry("lambda_quadrature", n, res, scale, tol.coefficient));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pointwise evaluation, independent of the coefficient algebra

struct PointwiseOptions {
    int points = 24;
    std::uint64_t seed = 20230501;
    double box = 1.5;        // points drawn uniformly from [-box, box]^2
    double fd_step = 1e-6;
};

/// Deterministic sample points: mt19937_64 output mapped to [-box, box].
inline std::vector<std::pair<double, double>> sample_points(const PointwiseOptions& o) {
    std::mt19937_64 gen(o.seed);
    auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < o.points; ++k) {
        const double x = (2 * unit() - 1) * o.box;
        const double y = (2 * unit() - 1) * o.box;
        pts.emplace_back(x, y);
    }
    return pts;
}

template <typename T>
IdentityCheck check_pointwise(const OrthoSystem<T>& s, const PointwiseOptions& opt = {},
                              const Tolerances& tol = {}) {
    IdentityCheck out{"pointwise", "TTR and structure relations at sample points; derivatives vs central differences", {}};
    const auto pts = sample_points(opt);
    const int N = s.max_degree();
    for (Axis i : axes) {
        const std::string sx = detail::axis_suffix(i);
        for (int n = 0; n + 1 <= N; ++n) {
            double res = 0, scale = 0;
            for (auto [x, y] : pts) {
                const Matrix<T> pn = s.P(n).evaluate(T(x), T(y));
                const Matrix<T> lhs = T(i == Axis::X ? x : y) * pn;
                Matrix<T> rhs = s.A(n, i) * s.P(n + 1).evaluate(T(x), T(y));
                if (n >= 1) rhs += s.A(n - 1, i).transpose() * s.P(n - 1).evaluate(T(x), T(y));
                res = std::max(res, detail::fnorm(lhs - rhs));
                scale = std::max(scale, detail::max_norm<T>(lhs, rhs));
            }
            out.entries.push_back(make_entry("pointwise_ttr" + sx, n, res, scale, tol.pointwise));
        }
        for (int n = 1; n <= N; ++n) {
            const auto dp = s.P(n).derivative(i);
            double res = 0, scale = 0, fd_res = 0, fd_scale = 0;
            for (auto [x, y] : pts) {
                const Matrix<T> lhs = dp.evaluate(T(x), T(y));
                Matrix<T> rhs = s.B(n, i) * s.P(n - 1).evaluate(T(x), T(y));
                if (n >= 3) rhs += s.C(n, i) * s.P(n - 3).evaluate(T(x), T(y));
                res = std::max(res, detail::fnorm(lhs - rhs));
                scale = std::max(scale, detail::max_norm<T>(lhs, rhs));

                const T h = T(opt.fd_step);
                const T dx = i == Axis::X ? h : T(0), dy = i == Axis::Y ? h : T(0);
                const Matrix<T> fd = (T(1) / (T(2) * h)) * (s.P(n).evaluate(T(x) + dx, T(y) + dy) -
                                                             s.P(n).evaluate(T(x) - dx, T(y) - dy));
                fd_res = std::max(fd_res, detail::fnorm(lhs - fd));
                fd_scale = std::max(fd_scale, detail::max_norm<T>(lhs, fd));
            }
            out.entries.push_back(make_entry("pointwise_structure" + sx, n, res, scale, tol.pointwise));
            out.entries.push_back(make_entry("pointwise_fd" + sx, n, fd_res, fd_scale, tol.finite_difference));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

struct SuiteOptions {
    Tolerances tol{};
    PointwiseOptions pointwise{};
};

/// Runs every identity on a finished system; the report is sorted by check then n.
template <typename T>
ResidualReport run_identity_suite(const OrthoSystem<T>& s, const SuiteOptions& opt = {}) {
    std::vector<IdentityCheck> checks;
    checks.push_back(check_LLKKLL<T>(s.params(), s.max_degree(), opt.tol));
    for (int n = 1; n <= s.max_degree(); ++n) checks.push_back(check_psiXLKX<T>(s.params(), n, opt.tol));
    checks.push_back(check_orthonormality(s, opt.tol));
    checks.push_back(check_ttr_blocks(s, opt.tol));
    checks.push_back(check_monic_ttr(s, opt.tol));
    checks.push_back(check_structure_blocks(s, opt.tol));
    checks.push_back(check_commutativity(s, opt.tol));
    checks.push_back(check_joint_rank(s));
    checks.push_back(check_coefficient_relations(s, opt.tol));
    checks.push_back(check_four_term(s, opt.tol));
    checks.push_back(check_kron_corollary(s, opt.tol));
    checks.push_back(check_f_corollary(s, opt.tol));
    checks.push_back(check_painleve(s, opt.tol));
    checks.push_back(check_dde(s, opt.tol));
    checks.push_back(check_pointwise(s, opt.pointwise, opt.tol));
    ResidualReport report;
    for (auto& c : checks)
        for (auto& e : c.entries) report.push_back(std::move(e));
    sort_report(report);
    return report;
}

} // namespace freud2d
