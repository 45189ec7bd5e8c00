#pragma once

// Monic and orthonormal vector polynomial systems for W = exp(-q) and their
// coefficient matrices:
//   x_i Q_n = L_{n,i} Q_{n+1} + E_{n,i} Q_{n-1}         (monic, <Q_n Q_n^T> = H_n)
//   x_i P_n = A_{n,i} P_{n+1} + A_{n-1,i}^T P_{n-1}     (P_n = H_n^{-1/2} Q_n)
//   d_i P_n = B_{n,i} P_{n-1} + C_{n,i} P_{n-3}
// The orthonormal gauge is fixed to the SPD root, so G_n = H_n^{-1/2} is symmetric.

#include <cstdio>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "moments.hpp"
#include "polynomial.hpp"
#include "structural.hpp"
#include "weight.hpp"

namespace freud2d {

struct BuildOptions {
    QuadratureSettings quadrature{};
    /// Recompute A, B, C as inner products and compare with the closed forms.
    bool check_dual_routes = true;
    double dual_route_tol = 1e-9;
};

/// Moment table size needed for a system of degree N.
inline int moment_degree_for(int max_degree) { return 4 * max_degree + 4; }

template <typename T>
struct MonicSystem {
    WeightParams params;
    int max_degree = 0;
    std::shared_ptr<const MomentTable<T>> moments;
    std::vector<VectorPolynomial<T>> q;  // Q_0..Q_N, leading block I
    std::vector<Matrix<T>> h;            // H_n = <Q_n Q_n^T>
};

namespace detail {

/// <A B^T> for two vector polynomials, contracted through the Gram blocks.
template <typename T>
Matrix<T> inner(const MomentTable<T>& mom, const VectorPolynomial<T>& a, const VectorPolynomial<T>& b) {
    Matrix<T> out(a.rows(), b.rows());
    for (int j = 0; j <= a.degree(); ++j) {
        const Matrix<T> aj = a.block(j);
        if (max_abs(aj) == T(0)) continue;
        for (int l = 0; l <= b.degree(); ++l) {
            if ((j + l) % 2) continue;  // cross-parity moments vanish
            const Matrix<T> bl = b.block(l);
            if (max_abs(bl) == T(0)) continue;
            out += aj * mom.gram_block(j, l) * bl.transpose();
        }
    }
    return out;
}

} // namespace detail

/// Block Gram-Schmidt of X_n against the same-parity lower Q_k, with one
/// reorthogonalization pass.
template <typename T = double>
MonicSystem<T> build_monic(const WeightParams& p, int max_degree, const BuildOptions& opt = {}) {
    validate(p);
    if (max_degree < 0) throw Error("build_monic: negative degree");
    MonicSystem<T> sys;
    sys.params = p;
    sys.max_degree = max_degree;
    sys.moments = std::make_shared<const MomentTable<T>>(
        compute_moments<T>(p, moment_degree_for(max_degree), opt.quadrature));
    const auto& mom = *sys.moments;

    for (int n = 0; n <= max_degree; ++n) {
        VectorPolynomial<T> qn = VectorPolynomial<T>::canonical(n);
        for (int pass = 0; pass < 2; ++pass) {
            VectorPolynomial<T> correction(qn.rows(), n);
            for (int k = n - 2; k >= 0; k -= 2) {
                const Matrix<T> proj = detail::inner(mom, qn, sys.q[k]);
                const Matrix<T> coef = solve_spd(sys.h[k], proj.transpose()).transpose();
                correction += coef * sys.q[k];
            }
            qn -= correction;
            qn.set_block(n, Matrix<T>::identity(static_cast<std::size_t>(n) + 1));
        }
        Matrix<T> hn = symmetrize(detail::inner(mom, qn, qn));
        try {
            cholesky(hn);
        } catch (const SingularMatrix&) {
            throw DegreeLimit("H_n lost positive definiteness; moment Gram matrix too ill-conditioned", n);
        }
        sys.q.push_back(std::move(qn));
        sys.h.push_back(std::move(hn));
    }
    return sys;
}

template <typename T>
class OrthoSystem;

template <typename T>
OrthoSystem<T> build_orthonormal(const MonicSystem<T>& monic, const BuildOptions& opt = {});

template <typename T>
class OrthoSystem {
public:
    OrthoSystem() = default;

    const WeightParams& params() const noexcept { return params_; }
    int max_degree() const noexcept { return max_degree_; }
    const MomentTable<T>& moments() const { return *moments_; }
    const MonicSystem<T>& monic() const noexcept { return monic_; }

    const Matrix<T>& H(int n) const { return at(h_, n, 0, "H"); }
    /// Leading coefficient G_n = H_n^{-1/2}.
    const Matrix<T>& G(int n) const { return at(g_, n, 0, "G"); }
    /// G_n^{-1} = H_n^{1/2}.
    const Matrix<T>& G_inv(int n) const { return at(ginv_, n, 0, "G_inv"); }
    const VectorPolynomial<T>& P(int n) const { return at(p_, n, 0, "P"); }
    const VectorPolynomial<T>& Q(int n) const { return at(monic_.q, n, 0, "Q"); }

    /// G^n_k, the coefficient of X_k in P_n; zero outside 0 <= k <= n.
    Matrix<T> G_block(int n, int k) const {
        if (n < 0) throw Error("G_block: negative degree");
        if (k < 0) return Matrix<T>(static_cast<std::size_t>(n) + 1, 0);
        if (k > n) return Matrix<T>(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(k) + 1);
        return P(n).block(k);
    }

    /// A_{n,i}, 0 <= n <= N-1. For n = -1 a 0x1 zero matrix (P_{-1} = 0).
    Matrix<T> A(int n, Axis i) const {
        if (n == -1) return Matrix<T>(0, 1);
        return at(a_[ax(i)], n, 0, "A");
    }
    const Matrix<T>& A_pinv(int n, Axis i) const { return at(ainv_[ax(i)], n, 0, "A_pinv"); }
    const Matrix<T>& B(int n, Axis i) const { return at(b_[ax(i)], n, 1, "B"); }
    /// C_{n,i}; (n+1) x (n-2), and empty for n < 3.
    const Matrix<T>& C(int n, Axis i) const { return at(c_[ax(i)], n, 1, "C"); }
    const Matrix<T>& E(int n, Axis i) const { return at(e_[ax(i)], n, 1, "E"); }

    /// Joint 2(n+1) x (n+2) matrix [A_{n,1}; A_{n,2}].
    Matrix<T> joint_A(int n) const { return vcat(A(n, Axis::X), A(n, Axis::Y)); }
    /// Side-by-side (n+1) x 2(n+2) matrix [A_{n,1}, A_{n,2}].
    Matrix<T> joint_A_bar(int n) const { return hcat(A(n, Axis::X), A(n, Axis::Y)); }

    /// Copy with a single entry of A_{n,i} shifted by delta; nothing else is
    /// recomputed. Used to show that the identity checks notice corruption.
    OrthoSystem with_perturbed_A(int n, Axis i, std::size_t r, std::size_t c, T delta) const {
        OrthoSystem copy = *this;
        auto& m = copy.a_[ax(i)].at(static_cast<std::size_t>(n));
        if (r >= m.rows() || c >= m.cols()) throw DimensionMismatch("with_perturbed_A: entry out of range");
        m(r, c) += delta;
        return copy;
    }

    template <typename U>
    friend OrthoSystem<U> build_orthonormal(const MonicSystem<U>& monic, const BuildOptions& opt);

private:
    static std::size_t ax(Axis i) { return i == Axis::X ? 0 : 1; }

    template <typename V>
    const V& at(const std::vector<V>& v, int n, int first, const char* what) const {
        if (n < first || n - first >= static_cast<int>(v.size()))
            throw Error(std::string(what) + ": degree " + std::to_string(n) +
                        " outside available range");
        return v[static_cast<std::size_t>(n - first)];
    }

    WeightParams params_;
    int max_degree_ = 0;
    std::shared_ptr<const MomentTable<T>> moments_;
    MonicSystem<T> monic_;
    std::vector<Matrix<T>> h_, g_, ginv_;
    std::vector<VectorPolynomial<T>> p_;
    std::vector<Matrix<T>> a_[2], ainv_[2];  // n = 0..N-1
    std::vector<Matrix<T>> b_[2], c_[2], e_[2];  // n = 1..N
};

namespace detail {

template <typename T>
void require_agreement(const Matrix<T>& closed, const Matrix<T>& inner, double tol, const std::string& what) {
    const T scale = std::max(frobenius_norm(closed), frobenius_norm(inner));
    const T diff = frobenius_norm(closed - inner);
    if (diff > T(tol) * (T(1) + scale)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, ": closed form and inner product disagree by %.3e (scale %.3e)",
                      static_cast<double>(diff), static_cast<double>(scale));
        throw InternalConsistency(what + buf);
    }
}

} // namespace detail

template <typename T>
OrthoSystem<T> build_orthonormal(const MonicSystem<T>& monic, const BuildOptions& opt) {
    OrthoSystem<T> s;
    const int N = monic.max_degree;
    s.params_ = monic.params;
    s.max_degree_ = N;
    s.moments_ = monic.moments;
    s.monic_ = monic;
    const auto& mom = *monic.moments;
    const WeightParams& prm = monic.params;

    for (int n = 0; n <= N; ++n) {
        const Matrix<T>& hn = monic.h[static_cast<std::size_t>(n)];
        s.h_.push_back(hn);
        s.g_.push_back(sym_inv_sqrt(hn));
        s.ginv_.push_back(sym_sqrt(hn));
        s.p_.push_back(s.g_.back() * monic.q[static_cast<std::size_t>(n)]);
    }

    for (Axis i : axes) {
        const std::size_t k = OrthoSystem<T>::ax(i);
        for (int n = 0; n + 1 <= N; ++n) {
            const Matrix<T> l = make_L<T>(n, i);
            Matrix<T> a = s.g_[n] * l * s.ginv_[n + 1];
            if (opt.check_dual_routes) {
                const Matrix<T> ip = detail::inner(mom, i == Axis::X ? s.p_[n].times_monomial(1, 0)
                                                                     : s.p_[n].times_monomial(0, 1),
                                                   s.p_[n + 1]);
                detail::require_agreement(a, ip, opt.dual_route_tol, "A_{" + std::to_string(n) + "," +
                                                                         std::to_string(axis_index(i)) + "}");
            }
            s.a_[k].push_back(std::move(a));
            s.ainv_[k].push_back(s.g_[n + 1] * l.transpose() * s.ginv_[n]);
        }
        for (int n = 1; n <= N; ++n) {
            Matrix<T> b = s.g_[n] * make_L<T>(n - 1, i).transpose() * make_N<T>(n, i) * s.ginv_[n - 1];
            Matrix<T> c(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(std::max(n - 2, 0)));
            if (n >= 3) {
                c = (s.g_[n - 3] * make_L<T>(n - 3, i) * make_L<T>(n - 2, i) * make_L<T>(n - 1, i) *
                     make_K<T>(n, i, prm) * s.ginv_[n])
                        .transpose();
            }
            if (opt.check_dual_routes) {
                const auto dp = s.p_[n].derivative(i);
                const std::string tag = std::to_string(n) + "," + std::to_string(axis_index(i)) + "}";
                detail::require_agreement(b, detail::inner(mom, dp, s.p_[n - 1]), opt.dual_route_tol,
                                          "B_{" + tag);
                // the A-route: B_{n,i} = A_{n-1,i}^{-1} G_{n-1} N_{n,i} G_{n-1}^{-1}
                detail::require_agreement(
                    b, s.ainv_[k][n - 1] * s.g_[n - 1] * make_N<T>(n, i) * s.ginv_[n - 1],
                    opt.dual_route_tol, "B_{" + tag + " (A-route)");
                if (n >= 3) {
                    detail::require_agreement(c, detail::inner(mom, dp, s.p_[n - 3]), opt.dual_route_tol,
                                              "C_{" + tag);
                    const Matrix<T> ct = s.a_[k][n - 3] * s.a_[k][n - 2] * s.a_[k][n - 1] * s.g_[n] *
                                         make_K<T>(n, i, prm) * s.ginv_[n];
                    detail::require_agreement(c, ct.transpose(), opt.dual_route_tol, "C_{" + tag + " (A-route)");
                }
            }
            s.b_[k].push_back(std::move(b));
            s.c_[k].push_back(std::move(c));
            s.e_[k].push_back(s.h_[n] * make_L<T>(n - 1, i).transpose() * inverse_spd(s.h_[n - 1]));
        }
    }
    return s;
}

/// Monic then orthonormal system of degree N for the weight exp(-q).
template <typename T = double>
OrthoSystem<T> build_system(const WeightParams& p, int max_degree, const BuildOptions& opt = {}) {
    return build_orthonormal(build_monic<T>(p, max_degree, opt), opt);
}

template <typename T>
Matrix<T> ttr_coeff(const OrthoSystem<T>& s, int n, Axis i) {
    return s.A(n, i);
}

template <typename T>
Matrix<T> pseudo_inverse_right(const OrthoSystem<T>& s, int n, Axis i) {
    return s.A_pinv(n, i);
}

template <typename T>
struct StructureCoeffs {
    Matrix<T> b;
    Matrix<T> c;
};

template <typename T>
StructureCoeffs<T> structure_coeffs(const OrthoSystem<T>& s, int n, Axis i) {
    return {s.B(n, i), s.C(n, i)};
}

template <typename T>
Matrix<T> monic_ttr_coeff(const OrthoSystem<T>& s, int n, Axis i) {
    return s.E(n, i);
}

/// V_{n} = L_{n-1,1}E_{n,1} + L_{n-1,2}E_{n,2} + E_{n-1,1}L_{n-2,1} + E_{n-1,2}L_{n-2,2}, n >= 1.
template <typename T>
Matrix<T> v_matrix(const OrthoSystem<T>& s, int n) {
    if (n < 1) throw Error("v_matrix: n must be >= 1");
    Matrix<T> v(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (Axis i : axes) {
        v += make_L<T>(n - 1, i) * s.E(n, i);
        if (n >= 2) v += s.E(n - 1, i) * make_L<T>(n - 2, i);
    }
    return v;
}

template <typename T>
struct LambdaBlocks {
    Matrix<T> up;    // Lambda^n_{n+2}
    Matrix<T> same;  // Lambda^n_n
    Matrix<T> down;  // Lambda^n_{n-2}; (n+1) x (n-1), empty for n < 2
};

template <typename T>
LambdaBlocks<T> lambda_blocks(const OrthoSystem<T>& s, int n) {
    if (n < 1 || n + 2 > s.max_degree()) throw Error("lambda_blocks: need 1 <= n and n+2 <= N");
    const std::size_t r = static_cast<std::size_t>(n) + 1;
    LambdaBlocks<T> lb{Matrix<T>(r, r + 2), Matrix<T>(r, r),
                       Matrix<T>(r, static_cast<std::size_t>(std::max(n - 1, 0)))};
    for (Axis i : axes) {
        lb.up -= s.B(n, i) * s.C(n + 2, i).transpose();
        lb.same -= s.B(n, i) * s.B(n, i).transpose();
        if (n >= 3) {
            lb.same -= s.C(n, i) * s.C(n, i).transpose();
            lb.down -= s.C(n, i) * s.B(n - 2, i).transpose();
        }
    }
    return lb;
}

template <typename T>
struct FBlocks {
    Matrix<T> up;    // F^n_{n+2,i}
    Matrix<T> same;  // F^n_{n,i}
    Matrix<T> down;  // F^n_{n-2,i}
};

/// Coefficients of x_i^2 P_n in P_{n+2}, P_n, P_{n-2}.
template <typename T>
FBlocks<T> f_blocks(const OrthoSystem<T>& s, int n, Axis i) {
    if (n < 0 || n + 2 > s.max_degree()) throw Error("f_blocks: need 0 <= n and n+2 <= N");
    const std::size_t r = static_cast<std::size_t>(n) + 1;
    FBlocks<T> f{s.A(n, i) * s.A(n + 1, i), s.A(n, i) * s.A(n, i).transpose(),
                 Matrix<T>(r, static_cast<std::size_t>(std::max(n - 1, 0)))};
    if (n >= 1) f.same += s.A(n - 1, i).transpose() * s.A(n - 1, i);
    if (n >= 2) f.down = s.A(n - 1, i).transpose() * s.A(n - 2, i).transpose();
    return f;
}

} // namespace freud2d
