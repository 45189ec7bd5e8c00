#pragma once

// A vector of bivariate polynomials stored by its coefficient blocks on the
// canonical basis: p = sum_d C_d X_d with C_d of size rows x (d+1).

#include <algorithm>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "structural.hpp"

namespace freud2d {

template <typename T>
class VectorPolynomial {
public:
    VectorPolynomial() = default;

    /// Zero polynomial with `rows` entries and room for degrees 0..degree.
    VectorPolynomial(std::size_t rows, int degree) : rows_(rows) {
        if (degree < 0) throw Error("VectorPolynomial: negative degree");
        blocks_.reserve(static_cast<std::size_t>(degree) + 1);
        for (int d = 0; d <= degree; ++d) blocks_.emplace_back(rows, static_cast<std::size_t>(d) + 1);
    }

    /// The canonical basis vector X_n itself.
    static VectorPolynomial canonical(int n) {
        VectorPolynomial p(static_cast<std::size_t>(n) + 1, n);
        p.blocks_[n] = Matrix<T>::identity(static_cast<std::size_t>(n) + 1);
        return p;
    }

    std::size_t rows() const noexcept { return rows_; }
    /// Highest stored degree (coefficients may still be zero there).
    int degree() const noexcept { return static_cast<int>(blocks_.size()) - 1; }

    /// Coefficient block of X_d; zero outside the stored range.
    Matrix<T> block(int d) const {
        if (d < 0 || d > degree()) return Matrix<T>(rows_, static_cast<std::size_t>(std::max(d, -1)) + 1);
        return blocks_[static_cast<std::size_t>(d)];
    }

    void set_block(int d, const Matrix<T>& c) {
        if (d < 0) throw Error("set_block: negative degree");
        if (c.rows() != rows_ || c.cols() != static_cast<std::size_t>(d) + 1)
            throw DimensionMismatch("set_block: coefficient block has wrong shape");
        grow(d);
        blocks_[static_cast<std::size_t>(d)] = c;
    }

    void add_to_block(int d, const Matrix<T>& c) {
        grow(d);
        blocks_[static_cast<std::size_t>(d)] += c;
    }

    VectorPolynomial& operator+=(const VectorPolynomial& o) {
        if (o.rows_ != rows_) throw DimensionMismatch("VectorPolynomial +=: row counts differ");
        for (int d = 0; d <= o.degree(); ++d) add_to_block(d, o.blocks_[static_cast<std::size_t>(d)]);
        return *this;
    }
    VectorPolynomial& operator-=(const VectorPolynomial& o) {
        if (o.rows_ != rows_) throw DimensionMismatch("VectorPolynomial -=: row counts differ");
        for (int d = 0; d <= o.degree(); ++d) add_to_block(d, -o.blocks_[static_cast<std::size_t>(d)]);
        return *this;
    }

    friend VectorPolynomial operator+(VectorPolynomial a, const VectorPolynomial& b) { return a += b; }
    friend VectorPolynomial operator-(VectorPolynomial a, const VectorPolynomial& b) { return a -= b; }

    /// M p, with M of size r x rows().
    friend VectorPolynomial operator*(const Matrix<T>& m, const VectorPolynomial& p) {
        if (m.cols() != p.rows_) throw DimensionMismatch("matrix times VectorPolynomial");
        VectorPolynomial out(m.rows(), std::max(p.degree(), 0));
        for (int d = 0; d <= p.degree(); ++d)
            out.blocks_[static_cast<std::size_t>(d)] = m * p.blocks_[static_cast<std::size_t>(d)];
        return out;
    }

    friend VectorPolynomial operator*(T s, VectorPolynomial p) {
        for (auto& b : p.blocks_) b *= s;
        return p;
    }

    /// x^dx y^dy p by direct exponent bookkeeping.
    VectorPolynomial times_monomial(int dx, int dy) const {
        VectorPolynomial out(rows_, degree() + dx + dy);
        for (int d = 0; d <= degree(); ++d) {
            const auto& c = blocks_[static_cast<std::size_t>(d)];
            auto& o = out.blocks_[static_cast<std::size_t>(d + dx + dy)];
            // column j of X_d is x^{d-j} y^j -> x^{d-j+dx} y^{j+dy}, column j+dy of X_{d+dx+dy}
            for (std::size_t r = 0; r < rows_; ++r)
                for (int j = 0; j <= d; ++j) o(r, static_cast<std::size_t>(j + dy)) += c(r, static_cast<std::size_t>(j));
        }
        return out;
    }

    /// Same product through the shift matrices: C_d X_d -> C_d S X_{d+dx+dy}.
    VectorPolynomial times_monomial_structural(int dx, int dy) const {
        VectorPolynomial out(rows_, degree() + dx + dy);
        for (int d = 0; d <= degree(); ++d)
            out.blocks_[static_cast<std::size_t>(d + dx + dy)] =
                blocks_[static_cast<std::size_t>(d)] * shift_map<T>(d, dx, dy);
        return out;
    }

    /// Partial derivative by direct exponent bookkeeping.
    VectorPolynomial derivative(Axis axis) const {
        VectorPolynomial out(rows_, std::max(degree() - 1, 0));
        for (int d = 1; d <= degree(); ++d) {
            const auto& c = blocks_[static_cast<std::size_t>(d)];
            auto& o = out.blocks_[static_cast<std::size_t>(d - 1)];
            for (std::size_t r = 0; r < rows_; ++r)
                for (int j = 0; j <= d; ++j) {
                    const T v = c(r, static_cast<std::size_t>(j));
                    if (axis == Axis::X) {
                        if (d - j > 0) o(r, static_cast<std::size_t>(j)) += T(d - j) * v;
                    } else if (j > 0) {
                        o(r, static_cast<std::size_t>(j - 1)) += T(j) * v;
                    }
                }
        }
        return out;
    }

    /// Partial derivative through L^T N.
    VectorPolynomial derivative_structural(Axis axis) const {
        VectorPolynomial out(rows_, std::max(degree() - 1, 0));
        for (int d = 1; d <= degree(); ++d)
            out.blocks_[static_cast<std::size_t>(d - 1)] =
                blocks_[static_cast<std::size_t>(d)] * diff_map<T>(d, axis);
        return out;
    }

    /// Values at (x, y) as a rows() x 1 column.
    Matrix<T> evaluate(T x, T y) const {
        Matrix<T> v(rows_, 1);
        for (int d = 0; d <= degree(); ++d) {
            const auto& c = blocks_[static_cast<std::size_t>(d)];
            for (int j = 0; j <= d; ++j) {
                T mono = 1;
                for (int k = 0; k < d - j; ++k) mono *= x;
                for (int k = 0; k < j; ++k) mono *= y;
                for (std::size_t r = 0; r < rows_; ++r) v(r, 0) += c(r, static_cast<std::size_t>(j)) * mono;
            }
        }
        return v;
    }

    /// sqrt of the sum of squared Frobenius norms of all blocks.
    T coefficient_norm() const {
        T s = 0;
        for (const auto& b : blocks_) {
            const T f = frobenius_norm(b);
            s += f * f;
        }
        return std::sqrt(s);
    }

private:
    void grow(int d) {
        while (degree() < d) {
            const std::size_t next = blocks_.size();
            blocks_.emplace_back(rows_, next + 1);
        }
    }

    std::size_t rows_ = 0;
    std::vector<Matrix<T>> blocks_;
};

/// Distance between two vector polynomials over all coefficient blocks.
template <typename T>
T coefficient_distance(const VectorPolynomial<T>& a, const VectorPolynomial<T>& b) {
    return (a - b).coefficient_norm();
}

} // namespace freud2d
