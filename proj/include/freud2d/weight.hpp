#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "errors.hpp"

namespace freud2d {

/// Coefficients of q(x,y) = a40 x^4 + a22 x^2 y^2 + a04 y^4 + a20 x^2 + a02 y^2;
/// the weight is W = exp(-q).
struct WeightParams {
    double a40 = 1;
    double a22 = 0;
    double a04 = 1;
    double a20 = 0;
    double a02 = 0;

    /// The time-parameter family a20 = a02 = -t.
    static WeightParams with_time(double a40, double a22, double a04, double t) {
        return {a40, a22, a04, -t, -t};
    }

    /// Exchange the roles of x and y.
    WeightParams swapped() const { return {a04, a22, a40, a02, a20}; }

    bool is_product() const { return a22 == 0.0; }

    template <typename T>
    T q(T x, T y) const {
        const T x2 = x * x, y2 = y * y;
        return T(a40) * x2 * x2 + T(a22) * x2 * y2 + T(a04) * y2 * y2 + T(a20) * x2 +
               T(a02) * y2;
    }

    bool operator==(const WeightParams&) const = default;
};

/// Names the first violated constraint, or nothing when the weight is admissible.
inline std::optional<std::string> weight_violation(const WeightParams& p) {
    for (double v : {p.a40, p.a22, p.a04, p.a20, p.a02})
        if (!std::isfinite(v)) return "parameters must be finite";
    if (p.a40 < 0) return "a40>=0 violated";
    if (p.a22 < 0) return "a22>=0 violated";
    if (p.a04 < 0) return "a04>=0 violated";
    if (!(p.a40 + p.a22 > 0)) return "a40+a22>0 violated";
    if (!(p.a22 + p.a04 > 0)) return "a22+a04>0 violated";
    if (p.a40 == 0 && !(p.a20 > 0)) return "integrability: a40=0 requires a20>0";
    if (p.a04 == 0 && !(p.a02 > 0)) return "integrability: a04=0 requires a02>0";
    return std::nullopt;
}

inline void validate(const WeightParams& p) {
    if (auto v = weight_violation(p)) throw ParameterDomain(*v);
}

} // namespace freud2d
