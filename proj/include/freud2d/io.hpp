#pragma once

// JSON and table output for systems and residual reports. Uses nlohmann::json.

#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "identities.hpp"
#include "linalg.hpp"
#include "orthosys.hpp"
#include "weight.hpp"

namespace freud2d {

inline constexpr const char* tool_name = "freud2d";
inline constexpr const char* tool_version = "0.3.0";

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// {"rows", "cols", "data"} with data row-major.
template <typename T>
nlohmann::json to_json(const Matrix<T>& m) {
    nlohmann::json data = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) data.push_back(static_cast<double>(m(r, c)));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

template <typename T = double>
Matrix<T> matrix_from_json(const nlohmann::json& j) {
    const auto rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
    const auto& data = j.at("data");
    if (data.size() != rows * cols) throw DimensionMismatch("matrix JSON: data length does not match rows*cols");
    Matrix<T> m(rows, cols);
    for (std::size_t k = 0; k < data.size(); ++k) m(k / cols, k % cols) = static_cast<T>(data[k].get<double>());
    return m;
}

inline nlohmann::json to_json(const WeightParams& p) {
    return {{"a40", p.a40}, {"a22", p.a22}, {"a04", p.a04}, {"a20", p.a20}, {"a02", p.a02}};
}

inline nlohmann::json to_json(const Tolerances& t) {
    return {{"structural", t.structural},     {"orthonormality", t.orthonormality},
            {"leading", t.leading},           {"coefficient", t.coefficient},
            {"painleve", t.painleve},         {"dde", t.dde},
            {"pairing", t.pairing},           {"pointwise", t.pointwise},
            {"finite_difference", t.finite_difference}};
}

/// Per degree: H, G and, where defined, A_i (n < N), B_i, C_i, E_i (n >= 1).
template <typename T>
nlohmann::json to_json(const OrthoSystem<T>& s) {
    nlohmann::json degrees = nlohmann::json::array();
    for (int n = 0; n <= s.max_degree(); ++n) {
        nlohmann::json d = {{"n", n}, {"H", to_json(s.H(n))}, {"G", to_json(s.G(n))}};
        for (Axis i : axes) {
            const std::string k = std::to_string(axis_index(i));
            if (n + 1 <= s.max_degree()) d["A_" + k] = to_json(s.A(n, i));
            if (n >= 1) {
                d["B_" + k] = to_json(s.B(n, i));
                d["C_" + k] = to_json(s.C(n, i));
                d["E_" + k] = to_json(s.E(n, i));
            }
        }
        degrees.push_back(std::move(d));
    }
    return {{"params", to_json(s.params())}, {"max_degree", s.max_degree()}, {"degrees", std::move(degrees)}};
}

inline nlohmann::json to_json(const CheckEntry& e) {
    return {{"check", e.check}, {"n", e.n},     {"residual", e.residual},
            {"scale", e.scale}, {"tol", e.tol}, {"pass", e.pass}};
}

inline nlohmann::json to_json(const ResidualReport& r) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : r) a.push_back(to_json(e));
    return a;
}

/// One row per check name: degree range, worst residual/threshold ratio, status.
inline void write_report_table(std::ostream& os, const ResidualReport& r) {
    struct Row {
        int nmin = 1 << 30, nmax = -1, failures = 0;
        double worst = 0, worst_ratio = 0;
    };
    std::map<std::string, Row> rows;
    for (const auto& e : r) {
        Row& row = rows[e.check];
        row.nmin = std::min(row.nmin, e.n);
        row.nmax = std::max(row.nmax, e.n);
        row.worst = std::max(row.worst, e.residual);
        const double thr = e.tol * (1 + e.scale);
        row.worst_ratio = std::max(row.worst_ratio, thr > 0 ? e.residual / thr : (e.residual > 0 ? 1e300 : 0));
        if (!e.pass) ++row.failures;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-40s %7s %12s %12s  %s\n", "check", "n", "max resid", "resid/thr", "status");
    os << buf;
    for (const auto& [name, row] : rows) {
        const std::string range = std::to_string(row.nmin) + ".." + std::to_string(row.nmax);
        std::snprintf(buf, sizeof buf, "%-40s %7s %12.3e %12.3e  %s\n", name.c_str(), range.c_str(), row.worst,
                      row.worst_ratio, row.failures ? ("FAIL x" + std::to_string(row.failures)).c_str() : "pass");
        os << buf;
    }
    std::size_t fails = 0;
    for (const auto& e : r) fails += !e.pass;
    std::snprintf(buf, sizeof buf, "%zu entries, %zu failing\n", r.size(), fails);
    os << buf;
}

} // namespace freud2d
