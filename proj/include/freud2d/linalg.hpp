#pragma once

// Small dense real matrices. Every matrix in this library is at most a few
// dozen rows, so the kernels favour clarity and determinism over blocking.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace freud2d {

template <typename T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    /// Row-major nested initializer: Matrix<double>{{1, 2}, {3, 4}}.
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix diagonal(const std::vector<T>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<T>& data() const noexcept { return data_; }

    template <typename U>
    Matrix<U> cast() const {
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = static_cast<U>((*this)(i, j));
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
            throw DimensionMismatch("set_block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o, "+=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o, "-=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(T s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(), [](T v) { return std::isfinite(v); });
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    void require_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch(std::string("shape mismatch in ") + op + ": " +
                                    std::to_string(rows_) + "x" + std::to_string(cols_) + " vs " +
                                    std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
void require_finite(const Matrix<T>& m, const char* where) {
    if (!m.all_finite()) throw NonFinite(std::string("non-finite entry produced by ") + where);
}

template <typename T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
    a += b;
    require_finite(a, "add");
    return a;
}

template <typename T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) {
    a -= b;
    require_finite(a, "subtract");
    return a;
}

template <typename T>
Matrix<T> operator-(Matrix<T> a) {
    a *= T(-1);
    return a;
}

template <typename T>
Matrix<T> operator*(T s, Matrix<T> a) {
    a *= s;
    require_finite(a, "scale");
    return a;
}

template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("multiply: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T(0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    require_finite(c, "multiply");
    return c;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    return multiply(a, b);
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
    return a.transpose();
}

template <typename T>
Matrix<T> add(const Matrix<T>& a, const Matrix<T>& b) {
    return a + b;
}

template <typename T>
Matrix<T> scale(const Matrix<T>& a, T s) {
    return s * a;
}

template <typename T>
T frobenius_norm(const Matrix<T>& a) {
    // Scaled accumulation keeps huge/tiny entries from overflowing.
    T amax = 0;
    for (T v : a.data()) amax = std::max(amax, std::abs(v));
    if (amax == T(0)) return T(0);
    T s = 0;
    for (T v : a.data()) {
        const T r = v / amax;
        s += r * r;
    }
    return amax * std::sqrt(s);
}

template <typename T>
T max_abs(const Matrix<T>& a) {
    T m = 0;
    for (T v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

/// Horizontal concatenation [a, b].
template <typename T>
Matrix<T> hcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hcat: row counts differ");
    Matrix<T> c(a.rows(), a.cols() + b.cols());
    c.set_block(0, 0, a);
    c.set_block(0, a.cols(), b);
    return c;
}

/// Vertical concatenation [a; b].
template <typename T>
Matrix<T> vcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vcat: column counts differ");
    Matrix<T> c(a.rows() + b.rows(), a.cols());
    c.set_block(0, 0, a);
    c.set_block(a.rows(), 0, b);
    return c;
}

template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    c(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    return c;
}

template <typename T>
Matrix<T> symmetrize(const Matrix<T>& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("symmetrize: matrix not square");
    Matrix<T> s(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = (a(i, j) + a(j, i)) / T(2);
    return s;
}

namespace detail {

template <typename T>
void require_symmetric(const Matrix<T>& h, const char* where) {
    if (h.rows() != h.cols()) throw DimensionMismatch(std::string(where) + ": matrix not square");
    require_finite(h, where);
    const T tol = T(1e-12) * frobenius_norm(h);
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = i + 1; j < h.cols(); ++j)
            if (std::abs(h(i, j) - h(j, i)) > tol)
                throw DimensionMismatch(std::string(where) + ": matrix not symmetric");
}

} // namespace detail

/// Lower Cholesky factor L with L L^T = h.
template <typename T>
Matrix<T> cholesky(const Matrix<T>& h) {
    detail::require_symmetric(h, "cholesky");
    const std::size_t n = h.rows();
    T diag_max = 0;
    for (std::size_t i = 0; i < n; ++i) diag_max = std::max(diag_max, std::abs(h(i, i)));
    const T floor = T(n) * std::numeric_limits<T>::epsilon() * diag_max;
    Matrix<T> l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        T d = h(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > floor)) throw SingularMatrix("cholesky: matrix not positive definite", j);
        const T ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            T s = h(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return l;
}

/// Solves h x = b for symmetric positive definite h.
template <typename T>
Matrix<T> solve_spd(const Matrix<T>& h, const Matrix<T>& b) {
    if (b.rows() != h.rows()) throw DimensionMismatch("solve_spd: right-hand side rows");
    const Matrix<T> l = cholesky(h);
    const std::size_t n = h.rows();
    Matrix<T> x = b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            T s = x(i, c);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
            x(i, c) = s / l(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            T s = x(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x(k, c);
            x(ii, c) = s / l(ii, ii);
        }
    }
    require_finite(x, "solve_spd");
    return x;
}

template <typename T>
Matrix<T> inverse_spd(const Matrix<T>& h) {
    return symmetrize(solve_spd(h, Matrix<T>::identity(h.rows())));
}

template <typename T>
struct SymmetricEigen {
    std::vector<T> values;  // ascending
    Matrix<T> vectors;      // columns are eigenvectors
};

/// Cyclic Jacobi eigen-decomposition with a fixed row-by-row sweep order, so
/// the result is bit-reproducible for a given input.
template <typename T>
SymmetricEigen<T> jacobi_eigen(const Matrix<T>& h, int max_sweeps = 100) {
    detail::require_symmetric(h, "jacobi_eigen");
    const std::size_t n = h.rows();
    Matrix<T> a = symmetrize(h);
    Matrix<T> v = Matrix<T>::identity(n);
    const T eps = std::numeric_limits<T>::epsilon();
    const T norm = frobenius_norm(a);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        T off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= eps * norm) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const T apq = a(p, q);
                if (std::abs(apq) <= std::numeric_limits<T>::min()) continue;
                const T theta = (a(q, q) - a(p, p)) / (T(2) * apq);
                const T t = (theta >= 0 ? T(1) : T(-1)) /
                            (std::abs(theta) + std::sqrt(theta * theta + T(1)));
                const T c = T(1) / std::sqrt(t * t + T(1));
                const T s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const T akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const T apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const T vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
    SymmetricEigen<T> out{std::vector<T>(n), Matrix<T>(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

namespace detail {

template <typename T, typename F>
Matrix<T> spectral_map(const Matrix<T>& h, F&& f, const char* where) {
    const auto eig = jacobi_eigen(h);
    const std::size_t n = h.rows();
    const T lmax = eig.values.empty() ? T(0) : std::abs(eig.values.back());
    for (std::size_t k = 0; k < n; ++k)
        if (!(eig.values[k] > T(n) * std::numeric_limits<T>::epsilon() * lmax))
            throw SingularMatrix(std::string(where) + ": matrix not positive definite", k);
    Matrix<T> out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const T fk = f(eig.values[k]);
        for (std::size_t i = 0; i < n; ++i) {
            const T vik = eig.vectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * eig.vectors(j, k);
        }
    }
    return symmetrize(out);
}

} // namespace detail

/// The unique symmetric positive definite square root of h.
template <typename T>
Matrix<T> sym_sqrt(const Matrix<T>& h) {
    return detail::spectral_map(h, [](T l) { return std::sqrt(l); }, "sym_sqrt");
}

/// Inverse of the SPD square root, h^{-1/2}.
template <typename T>
Matrix<T> sym_inv_sqrt(const Matrix<T>& h) {
    return detail::spectral_map(h, [](T l) { return T(1) / std::sqrt(l); }, "sym_inv_sqrt");
}

/// Numerical rank from Householder QR with column pivoting; a diagonal entry
/// of R counts when it exceeds tol * ||a||_F.
template <typename T>
std::size_t rank(const Matrix<T>& a, T tol = T(1e-10)) {
    const T norm = frobenius_norm(a);
    if (norm == T(0)) return 0;
    Matrix<T> r = a;
    const std::size_t m = r.rows(), n = r.cols();
    std::vector<T> colnorm(n, T(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) colnorm[j] += r(i, j) * r(i, j);

    std::size_t k = 0;
    for (; k < std::min(m, n); ++k) {
        std::size_t piv = k;
        for (std::size_t j = k + 1; j < n; ++j)
            if (colnorm[j] > colnorm[piv]) piv = j;
        if (piv != k) {
            for (std::size_t i = 0; i < m; ++i) std::swap(r(i, k), r(i, piv));
            std::swap(colnorm[k], colnorm[piv]);
        }
        T alpha = 0;
        for (std::size_t i = k; i < m; ++i) alpha += r(i, k) * r(i, k);
        alpha = std::sqrt(alpha);
        if (alpha <= tol * norm) break;
        if (r(k, k) > 0) alpha = -alpha;
        std::vector<T> v(m, T(0));
        for (std::size_t i = k; i < m; ++i) v[i] = r(i, k);
        v[k] -= alpha;
        T vnorm2 = 0;
        for (std::size_t i = k; i < m; ++i) vnorm2 += v[i] * v[i];
        if (vnorm2 > T(0)) {
            for (std::size_t j = k; j < n; ++j) {
                T s = 0;
                for (std::size_t i = k; i < m; ++i) s += v[i] * r(i, j);
                s = T(2) * s / vnorm2;
                for (std::size_t i = k; i < m; ++i) r(i, j) -= s * v[i];
            }
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            colnorm[j] = 0;
            for (std::size_t i = k + 1; i < m; ++i) colnorm[j] += r(i, j) * r(i, j);
        }
    }
    return k;
}

} // namespace freud2d
