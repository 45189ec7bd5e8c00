#pragma once

// Run configuration: one JSON object, validated field by field before any
// computation. Unknown keys are rejected.

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "identities.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "quadrature.hpp"
#include "weight.hpp"

namespace freud2d {

enum class Precision { Double, Extended };

struct TGrid {
    double start = 0;
    double stop = 0.5;
    int steps = 200;

    std::vector<double> points() const {
        std::vector<double> ts;
        for (int k = 0; k <= steps; ++k) ts.push_back(k == steps ? stop : start + (stop - start) * k / steps);
        return ts;
    }
};

struct RunConfig {
    WeightParams params{};
    int max_degree = 8;
    Precision precision = Precision::Double;
    /// When set, a20 = a02 = -t.
    std::optional<double> t;
    TGrid t_grid{};
    QuadratureSettings quadrature{};
    Tolerances tolerances{};
    PointwiseOptions pointwise{};
    FDConfig fd{};
    int lattice_max_n = 6;
    int lattice_check_points = 3;
    bool suite_identities = true;
    bool suite_oned = true;
    bool suite_lattice = false;
    std::vector<double> lattice_t_values{-0.5, 0.0, 0.5};
    unsigned threads = 1;
    std::string out = "out";

    WeightParams effective_params() const {
        return t ? WeightParams::with_time(params.a40, params.a22, params.a04, *t) : params;
    }

    /// Extended mode tightens the quadrature target to the long double level.
    QuadratureSettings effective_quadrature() const {
        QuadratureSettings q = quadrature;
        if (precision == Precision::Extended) q.rel_tol = std::min(q.rel_tol, 1e-17);
        return q;
    }
};

inline const char* precision_name(Precision p) { return p == Precision::Double ? "double" : "extended"; }

inline Precision parse_precision(const std::string& s) {
    if (s == "double") return Precision::Double;
    if (s == "extended") return Precision::Extended;
    throw ConfigError("precision: expected \"double\" or \"extended\", got \"" + s + "\"");
}

/// "a:b:steps"
inline TGrid parse_t_grid(const std::string& s) {
    TGrid g;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d%c", &g.start, &g.stop, &g.steps, &tail) != 3)
        throw ConfigError("t_grid: expected a:b:steps, got \"" + s + "\"");
    return g;
}

/// "a40,a22,a04,a20,a02"
inline WeightParams parse_params(const std::string& s) {
    WeightParams p;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf,%lf%c", &p.a40, &p.a22, &p.a04, &p.a20, &p.a02, &tail) != 5)
        throw ConfigError("params: expected a40,a22,a04,a20,a02, got \"" + s + "\"");
    return p;
}

inline nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["params"] = to_json(c.params);
    j["max_degree"] = c.max_degree;
    j["precision"] = precision_name(c.precision);
    j["t"] = c.t ? nlohmann::json(*c.t) : nlohmann::json(nullptr);
    j["t_grid"] = {{"start", c.t_grid.start}, {"stop", c.t_grid.stop}, {"steps", c.t_grid.steps}};
    j["quadrature"] = {{"points_per_panel", c.quadrature.points_per_panel},
                       {"initial_panels", c.quadrature.initial_panels},
                       {"max_panels", c.quadrature.max_panels},
                       {"rel_tol", c.quadrature.rel_tol},
                       {"tail_margin", c.quadrature.tail_margin},
                       {"product_fast_path", c.quadrature.product_fast_path}};
    j["tolerances"] = to_json(c.tolerances);
    j["pointwise"] = {{"points", c.pointwise.points},
                      {"seed", c.pointwise.seed},
                      {"box", c.pointwise.box},
                      {"fd_step", c.pointwise.fd_step}};
    j["fd"] = {{"h", c.fd.h}, {"levels", c.fd.levels}};
    j["lattice"] = {{"max_n", c.lattice_max_n},
                    {"check_points", c.lattice_check_points},
                    {"t_values", c.lattice_t_values}};
    j["suites"] = {{"identities", c.suite_identities}, {"oned", c.suite_oned}, {"lattice", c.suite_lattice}};
    j["threads"] = c.threads;
    j["out"] = c.out;
    return j;
}

/// Stable hash of the canonical (key-sorted) JSON form, without threads and out.
inline std::string config_hash(const RunConfig& c) {
    nlohmann::json j = to_json(c);
    j.erase("threads");
    j.erase("out");
    return "fnv1a64:" + hex64(fnv1a64(j.dump()));
}

namespace detail {

class ConfigReader {
public:
    ConfigReader(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(where("") + "expected an object");
    }

    template <typename F>
    void number(const char* key, F& field) {
        if (!take(key)) return;
        const auto& v = j_.at(key);
        if (!v.is_number()) throw ConfigError(where(key) + "expected a number");
        if constexpr (std::is_integral_v<F>) {
            if (!v.is_number_integer()) throw ConfigError(where(key) + "expected an integer");
            if constexpr (std::is_unsigned_v<F>) {
                if (v.get<long long>() < 0) throw ConfigError(where(key) + "must be non-negative");
            }
        }
        field = v.get<F>();
        if constexpr (std::is_floating_point_v<F>)
            if (!std::isfinite(field)) throw ConfigError(where(key) + "must be finite");
    }

    void boolean(const char* key, bool& field) {
        if (!take(key)) return;
        if (!j_.at(key).is_boolean()) throw ConfigError(where(key) + "expected true or false");
        field = j_.at(key).get<bool>();
    }

    void string(const char* key, std::string& field) {
        if (!take(key)) return;
        if (!j_.at(key).is_string()) throw ConfigError(where(key) + "expected a string");
        field = j_.at(key).get<std::string>();
    }

    template <typename F>
    void object(const char* key, F&& read) {
        if (!take(key)) return;
        ConfigReader sub(j_.at(key), path_ + key + ".");
        read(sub);
        sub.finish();
    }

    bool has(const char* key) const { return j_.contains(key); }
    const nlohmann::json& raw(const char* key) {
        take(key);
        return j_.at(key);
    }
    std::string where(const std::string& key) const { return "config field '" + path_ + key + "': "; }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError(where(it.key()) + "unknown key");
    }

private:
    bool take(const char* key) {
        if (!j_.contains(key)) return false;
        seen_.insert(key);
        return true;
    }

    const nlohmann::json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

} // namespace detail

/// Fills `c` from JSON; absent keys keep their current values.
inline void apply_json(RunConfig& c, const nlohmann::json& j) {
    detail::ConfigReader r(j, "");
    r.object("params", [&](detail::ConfigReader& p) {
        p.number("a40", c.params.a40);
        p.number("a22", c.params.a22);
        p.number("a04", c.params.a04);
        p.number("a20", c.params.a20);
        p.number("a02", c.params.a02);
    });
    r.number("max_degree", c.max_degree);
    if (r.has("precision")) {
        std::string s;
        r.string("precision", s);
        c.precision = parse_precision(s);
    }
    if (r.has("t")) {
        const auto& v = r.raw("t");
        if (v.is_null()) c.t.reset();
        else if (v.is_number() && std::isfinite(v.get<double>())) c.t = v.get<double>();
        else throw ConfigError(r.where("t") + "expected a number or null");
    }
    r.object("t_grid", [&](detail::ConfigReader& g) {
        g.number("start", c.t_grid.start);
        g.number("stop", c.t_grid.stop);
        g.number("steps", c.t_grid.steps);
    });
    r.object("quadrature", [&](detail::ConfigReader& q) {
        q.number("points_per_panel", c.quadrature.points_per_panel);
        q.number("initial_panels", c.quadrature.initial_panels);
        q.number("max_panels", c.quadrature.max_panels);
        q.number("rel_tol", c.quadrature.rel_tol);
        q.number("tail_margin", c.quadrature.tail_margin);
        q.boolean("product_fast_path", c.quadrature.product_fast_path);
    });
    r.object("tolerances", [&](detail::ConfigReader& t) {
        t.number("structural", c.tolerances.structural);
        t.number("orthonormality", c.tolerances.orthonormality);
        t.number("leading", c.tolerances.leading);
        t.number("coefficient", c.tolerances.coefficient);
        t.number("painleve", c.tolerances.painleve);
        t.number("dde", c.tolerances.dde);
        t.number("pairing", c.tolerances.pairing);
        t.number("pointwise", c.tolerances.pointwise);
        t.number("finite_difference", c.tolerances.finite_difference);
    });
    r.object("pointwise", [&](detail::ConfigReader& p) {
        p.number("points", c.pointwise.points);
        p.number("seed", c.pointwise.seed);
        p.number("box", c.pointwise.box);
        p.number("fd_step", c.pointwise.fd_step);
    });
    r.object("fd", [&](detail::ConfigReader& f) {
        f.number("h", c.fd.h);
        f.number("levels", c.fd.levels);
    });
    r.object("lattice", [&](detail::ConfigReader& l) {
        l.number("max_n", c.lattice_max_n);
        l.number("check_points", c.lattice_check_points);
        if (l.has("t_values")) {
            const auto& v = l.raw("t_values");
            if (!v.is_array()) throw ConfigError(l.where("t_values") + "expected an array of numbers");
            c.lattice_t_values.clear();
            for (const auto& x : v) {
                if (!x.is_number()) throw ConfigError(l.where("t_values") + "expected an array of numbers");
                c.lattice_t_values.push_back(x.get<double>());
            }
        }
    });
    r.object("suites", [&](detail::ConfigReader& s) {
        s.boolean("identities", c.suite_identities);
        s.boolean("oned", c.suite_oned);
        s.boolean("lattice", c.suite_lattice);
    });
    r.number("threads", c.threads);
    r.string("out", c.out);
    r.finish();
}

/// Range and domain checks; throws ConfigError naming the field.
inline void validate_config(const RunConfig& c) {
    auto fail = [](const std::string& field, const std::string& msg) {
        throw ConfigError("config field '" + field + "': " + msg);
    };
    if (auto v = weight_violation(c.effective_params())) fail("params", *v);
    if (c.max_degree < 0) fail("max_degree", "must be >= 0");
    if (c.max_degree > 16) fail("max_degree", "must be <= 16");
    if (c.t_grid.steps < 0) fail("t_grid.steps", "must be >= 0");
    if (c.t_grid.steps > 0 && !(c.t_grid.start < c.t_grid.stop)) fail("t_grid", "need start < stop");
    if (c.quadrature.points_per_panel < 2) fail("quadrature.points_per_panel", "must be >= 2");
    if (c.quadrature.initial_panels < 1) fail("quadrature.initial_panels", "must be >= 1");
    if (c.quadrature.max_panels < c.quadrature.initial_panels) fail("quadrature.max_panels", "must be >= initial_panels");
    if (!(c.quadrature.rel_tol > 0)) fail("quadrature.rel_tol", "must be > 0");
    if (!(c.quadrature.tail_margin > 0)) fail("quadrature.tail_margin", "must be > 0");
    if (c.pointwise.points < 1) fail("pointwise.points", "must be >= 1");
    if (!(c.pointwise.box > 0)) fail("pointwise.box", "must be > 0");
    if (!(c.pointwise.fd_step > 0)) fail("pointwise.fd_step", "must be > 0");
    if (!(c.fd.h > 0)) fail("fd.h", "must be > 0");
    if (c.fd.levels < 1 || c.fd.levels > 6) fail("fd.levels", "must be in 1..6");
    if (c.lattice_max_n < 0) fail("lattice.max_n", "must be >= 0");
    if (c.lattice_check_points < 0) fail("lattice.check_points", "must be >= 0");
    if (c.threads < 1 || c.threads > 256) fail("threads", "must be in 1..256");
    if (c.out.empty()) fail("out", "must not be empty");
}

} // namespace freud2d
