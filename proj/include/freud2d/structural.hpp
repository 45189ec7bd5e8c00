#pragma once

// Parameter-free maps acting on the canonical basis X_n = (x^n, x^{n-1}y, ..., y^n)^T:
//   x X_n = L_{n,1} X_{n+1},  y X_n = L_{n,2} X_{n+1},
//   d/dx X_n = L_{n-1,1}^T N_{n,1} X_{n-1},  d/dy X_n = L_{n-1,2}^T N_{n,2} X_{n-1},
// and the weight-dependent triangular K_{n,i} tied to the Pearson equation.

#include <cstddef>

#include "errors.hpp"
#include "linalg.hpp"
#include "weight.hpp"

namespace freud2d {

enum class Axis { X = 1, Y = 2 };

inline constexpr Axis axes[] = {Axis::X, Axis::Y};

inline constexpr int axis_index(Axis a) { return a == Axis::X ? 1 : 2; }
inline constexpr Axis other(Axis a) { return a == Axis::X ? Axis::Y : Axis::X; }

template <typename T = double>
Matrix<T> make_L(int n, Axis axis) {
    if (n < 0) throw Error("make_L: negative degree");
    const std::size_t r = static_cast<std::size_t>(n) + 1;
    Matrix<T> l(r, r + 1);
    const std::size_t off = axis == Axis::X ? 0 : 1;
    for (std::size_t k = 0; k < r; ++k) l(k, k + off) = T(1);
    return l;
}

template <typename T = double>
Matrix<T> make_N(int n, Axis axis) {
    if (n < 1) throw Error("make_N: degree must be >= 1");
    const std::size_t r = static_cast<std::size_t>(n);
    Matrix<T> m(r, r);
    for (std::size_t k = 0; k < r; ++k) m(k, k) = axis == Axis::X ? T(r - k) : T(k + 1);
    return m;
}

/// K_{n,1}: 4a40 on the diagonal, 2a22 on the second superdiagonal.
/// K_{n,2}: 4a04 on the diagonal, 2a22 on the second subdiagonal.
template <typename T = double>
Matrix<T> make_K(int n, Axis axis, const WeightParams& p) {
    if (n < 0) throw Error("make_K: negative degree");
    const std::size_t r = static_cast<std::size_t>(n) + 1;
    Matrix<T> k(r, r);
    const T diag = T(4) * T(axis == Axis::X ? p.a40 : p.a04);
    for (std::size_t j = 0; j < r; ++j) k(j, j) = diag;
    for (std::size_t j = 0; j + 2 < r; ++j) {
        if (axis == Axis::X)
            k(j, j + 2) = T(2) * T(p.a22);
        else
            k(j + 2, j) = T(2) * T(p.a22);
    }
    return k;
}

/// Matrix S with x^dx y^dy X_n = S X_{n+dx+dy}; x-shifts are applied first.
template <typename T = double>
Matrix<T> shift_map(int n, int dx, int dy) {
    if (n < 0 || dx < 0 || dy < 0) throw Error("shift_map: negative argument");
    Matrix<T> s = Matrix<T>::identity(static_cast<std::size_t>(n) + 1);
    int d = n;
    for (int k = 0; k < dx; ++k, ++d) s = s * make_L<T>(d, Axis::X);
    for (int k = 0; k < dy; ++k, ++d) s = s * make_L<T>(d, Axis::Y);
    return s;
}

/// D with d/dx_i X_n = D X_{n-1}, i.e. L_{n-1,i}^T N_{n,i}. For n = 0 the
/// derivative vanishes and a 1x0 matrix is returned.
template <typename T = double>
Matrix<T> diff_map(int n, Axis axis) {
    if (n < 0) throw Error("diff_map: negative degree");
    if (n == 0) return Matrix<T>(1, 0);
    return make_L<T>(n - 1, axis).transpose() * make_N<T>(n, axis);
}

} // namespace freud2d
