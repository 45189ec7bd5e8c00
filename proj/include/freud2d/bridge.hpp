#pragma once

// Product weights (a22 = 0): P_{n,k}(x, y) = p_{n-k}(x) r_k(y) with p, r the
// one-variable orthonormal families, so A_{n,1}, A_{n,2}, E_{n,1}, E_{n,2} are
// single shifted diagonals of one-variable coefficients.

#include <algorithm>
#include <cmath>
#include <string>

#include "identities.hpp"
#include "oned.hpp"
#include "orthosys.hpp"

namespace freud2d {

/// One-variable factor of a product weight along an axis.
template <typename T = double>
OneDSystem<T> marginal_system(const WeightParams& p, Axis i, int max_index, const QuadratureSettings& q = {}) {
    if (p.a22 != 0) throw ParameterDomain("marginal_system: weight is not a product (a22 != 0)");
    return i == Axis::X ? build_oned<T>(p.a40, p.a20, max_index, q) : build_oned<T>(p.a04, p.a02, max_index, q);
}

/// Expected A_{n,i}: entry (k, k) = a^x_{n-k} for X, (k, k+1) = a^y_k for Y.
template <typename T>
Matrix<T> product_A(const OneDSystem<T>& oned, int n, Axis i) {
    Matrix<T> m(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 2);
    for (int k = 0; k <= n; ++k) {
        if (i == Axis::X) m(k, k) = oned.a_at(n - k);
        else m(k, k + 1) = oned.a_at(k);
    }
    return m;
}

/// Expected E_{n,i}: entry (k, k) = beta^x_{n-k} for X, (k, k-1) = beta^y_k for Y.
template <typename T>
Matrix<T> product_E(const OneDSystem<T>& oned, int n, Axis i) {
    Matrix<T> m(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n));
    for (int k = 0; k <= n; ++k) {
        if (i == Axis::X) {
            if (k < n) m(k, k) = oned.beta.at(static_cast<std::size_t>(n - k));
        } else if (k >= 1) {
            m(k, k - 1) = oned.beta.at(static_cast<std::size_t>(k));
        }
    }
    return m;
}

/// Bivariate coefficients against the one-variable oracle, entrywise max error.
template <typename T>
IdentityCheck check_product_bridge(const OrthoSystem<T>& s, const OneDSystem<T>& ox, const OneDSystem<T>& oy,
                                   double tol = 1e-9) {
    IdentityCheck out{"product_bridge", "A_{n,1}[k][k] = a_{n-k}, E_{n,1}[k][k] = beta_{n-k}, and the y twins", {}};
    for (Axis i : axes) {
        const OneDSystem<T>& o = i == Axis::X ? ox : oy;
        const std::string sx = detail::axis_suffix(i);
        for (int n = 0; n + 1 <= s.max_degree(); ++n) {
            const Matrix<T> ex = product_A(o, n, i);
            out.entries.push_back(make_entry("bridge_A" + sx, n, static_cast<double>(max_abs(s.A(n, i) - ex)),
                                             0.0, tol));
        }
        for (int n = 1; n <= s.max_degree(); ++n) {
            const Matrix<T> ex = product_E(o, n, i);
            const double scale = static_cast<double>(max_abs(ex));
            out.entries.push_back(make_entry("bridge_E" + sx, n, static_cast<double>(max_abs(s.E(n, i) - ex)),
                                             scale, tol));
        }
    }
    return out;
}

/// dPI residuals of a one-variable system as report entries (absolute tolerance).
template <typename T>
IdentityCheck check_dPI_entries(const OneDSystem<T>& o, const std::string& name, int max_n, double tol = 1e-8) {
    IdentityCheck out{name, "4c4 a_n^2 (a_{n+1}^2 + a_n^2 + a_{n-1}^2) + 2c2 a_n^2 = n + 1", {}};
    const auto r = check_dPI(o);
    for (int n = 0; n <= std::min<int>(max_n, static_cast<int>(r.size()) - 1); ++n)
        out.entries.push_back(make_entry(name, n, std::abs(static_cast<double>(r[static_cast<std::size_t>(n)])), 0.0, tol));
    return out;
}

} // namespace freud2d
