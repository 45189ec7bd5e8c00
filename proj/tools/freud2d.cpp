// Command-line front end.
//
//   freud2d [options] moments | coeffs | verify | lattice | config --print-defaults
//
// Exit status: 0 ok, 1 verification failure, 2 configuration error, 3 numeric error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "freud2d/bridge.hpp"
#include "freud2d/config.hpp"
#include "freud2d/freud2d.hpp"
#include "freud2d/io.hpp"

namespace fs = std::filesystem;
using namespace freud2d;

namespace {

enum Exit { ok = 0, verification_failed = 1, config_error = 2, numeric_error = 3 };

struct Corruption {
    int n = 0;
    int axis = 1;
    std::size_t row = 0, col = 0;
    double delta = 0;
};

Corruption parse_corruption(const std::string& s) {
    Corruption c;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%d,%d,%zu,%zu,%lf%c", &c.n, &c.axis, &c.row, &c.col, &c.delta, &tail) != 5 ||
        (c.axis != 1 && c.axis != 2))
        throw ConfigError("corrupt-A: expected n,axis,row,col,delta");
    return c;
}

nlohmann::json header(const RunConfig& cfg) {
    return {{"tool", tool_name},
            {"version", tool_version},
            {"config_hash", config_hash(cfg)},
            {"precision", precision_name(cfg.precision)},
            {"params", to_json(cfg.effective_params())},
            {"max_degree", cfg.max_degree},
            {"tolerances", to_json(cfg.tolerances)}};
}

fs::path prepare_out(const RunConfig& cfg) {
    fs::path dir(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("out: cannot create directory " + dir.string() + ": " + ec.message());
    return dir;
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + p.string());
    f << s;
}

template <typename T>
int cmd_moments(const RunConfig& cfg) {
    const int deg = moment_degree_for(cfg.max_degree);
    const auto table = compute_moments<T>(cfg.effective_params(), deg, cfg.effective_quadrature());
    std::ostringstream csv;
    table.write_csv(csv);
    const fs::path dir = prepare_out(cfg);
    write_text(dir / "moments.csv", csv.str());
    std::printf("moments up to total degree %d: %s (panels %d, radius %.3f, last relative change %.2e)\n", deg,
                (dir / "moments.csv").string().c_str(), table.meta().panels, table.meta().radius,
                table.meta().max_rel_change);
    return ok;
}

template <typename T>
int cmd_coeffs(const RunConfig& cfg) {
    BuildOptions opt;
    opt.quadrature = cfg.effective_quadrature();
    const WeightParams p = cfg.effective_params();
    const auto sys = build_system<T>(p, cfg.max_degree, opt);
    nlohmann::json j = header(cfg);
    j["system"] = to_json(sys);
    const fs::path dir = prepare_out(cfg);
    write_text(dir / "coeffs.json", j.dump(1) + "\n");
    std::printf("coefficients to degree %d: %s\n", cfg.max_degree, (dir / "coeffs.json").string().c_str());
    if (p.a22 == 0) {
        for (Axis i : axes) {
            const auto o = marginal_system<T>(p, i, std::max(cfg.max_degree + 1, 16), opt.quadrature);
            std::ostringstream csv;
            write_oned_csv(csv, o);
            const fs::path f = dir / (i == Axis::X ? "oned_x.csv" : "oned_y.csv");
            write_text(f, csv.str());
            std::printf("one-variable factor: %s\n", f.string().c_str());
        }
    }
    return ok;
}

void append(ResidualReport& r, const IdentityCheck& c) { r.insert(r.end(), c.entries.begin(), c.entries.end()); }

template <typename T>
int cmd_verify(const RunConfig& cfg, const std::optional<Corruption>& corrupt) {
    BuildOptions opt;
    opt.quadrature = cfg.effective_quadrature();
    const WeightParams p = cfg.effective_params();
    auto sys = build_system<T>(p, cfg.max_degree, opt);
    if (corrupt) {
        if (corrupt->n < 0 || corrupt->n + 1 > cfg.max_degree) throw ConfigError("corrupt-A: degree out of range");
        try {
            sys = sys.with_perturbed_A(corrupt->n, corrupt->axis == 1 ? Axis::X : Axis::Y, corrupt->row,
                                       corrupt->col, T(corrupt->delta));
        } catch (const DimensionMismatch& e) {
            throw ConfigError(std::string("corrupt-A: ") + e.what());
        }
    }
    ResidualReport report;
    if (cfg.suite_identities) {
        SuiteOptions so{cfg.tolerances, cfg.pointwise};
        const auto r = run_identity_suite(sys, so);
        report.insert(report.end(), r.begin(), r.end());
    }
    if (cfg.suite_oned && p.a22 == 0) {
        const int m = std::max(cfg.max_degree + 1, 16);
        const auto ox = marginal_system<T>(p, Axis::X, m, opt.quadrature);
        const auto oy = marginal_system<T>(p, Axis::Y, m, opt.quadrature);
        append(report, check_product_bridge(sys, ox, oy));
        append(report, check_dPI_entries(ox, "dPI_x", m - 1));
        append(report, check_dPI_entries(oy, "dPI_y", m - 1));
    }
    if (cfg.suite_lattice) {
        StateCurve<T> curve(p, cfg.max_degree, opt);
        const auto r = run_lattice_suite(curve, cfg.lattice_t_values, cfg.lattice_max_n, cfg.fd, cfg.threads);
        report.insert(report.end(), r.begin(), r.end());
    }
    sort_report(report);
    const bool pass = all_pass(report);
    nlohmann::json j = header(cfg);
    j["pass"] = pass;
    j["entries"] = to_json(report);
    const fs::path dir = prepare_out(cfg);
    write_text(dir / "report.json", j.dump(1) + "\n");
    write_report_table(std::cout, report);
    std::printf("%s: %s\n", pass ? "PASS" : "FAIL", (dir / "report.json").string().c_str());
    return pass ? ok : verification_failed;
}

template <typename T>
int cmd_lattice(const RunConfig& cfg) {
    if (cfg.t_grid.steps < 1) throw ConfigError("t_grid: lattice needs at least one step (use --t-grid a:b:steps)");
    BuildOptions opt;
    opt.quadrature = cfg.effective_quadrature();
    const WeightParams base = cfg.params;
    StateCurve<T> curve(base, cfg.max_degree, opt);

    const auto grid = cfg.t_grid.points();
    std::vector<double> needed = grid;
    const double h = (cfg.t_grid.stop - cfg.t_grid.start) / cfg.t_grid.steps;
    for (int k = 0; k < cfg.t_grid.steps; ++k) needed.push_back(cfg.t_grid.start + k * h + h / 2);
    curve.prefetch(needed, cfg.threads);

    const auto traj = integrate_E(curve, cfg.t_grid.start, cfg.t_grid.stop, cfg.t_grid.steps);

    std::vector<double> check_ts;
    const int cp = cfg.lattice_check_points;
    for (int k = 0; k < cp; ++k) {
        const int idx = cp == 1 ? 0 : static_cast<int>(std::lround(static_cast<double>(k) * cfg.t_grid.steps / (cp - 1)));
        check_ts.push_back(grid[static_cast<std::size_t>(idx)]);
    }
    ResidualReport report = run_lattice_suite(curve, check_ts, cfg.lattice_max_n, cfg.fd, cfg.threads);
    report.push_back(make_entry("rk4_endpoint", cfg.max_degree - 1, endpoint_error(curve, traj), 0.0, 1e-6));
    sort_report(report);
    const bool pass = all_pass(report);

    const fs::path dir = prepare_out(cfg);
    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    write_text(dir / "trajectory.csv", csv.str());
    nlohmann::json j = header(cfg);
    j["t_grid"] = {{"start", cfg.t_grid.start}, {"stop", cfg.t_grid.stop}, {"steps", cfg.t_grid.steps}};
    j["fd"] = {{"h", cfg.fd.h}, {"levels", cfg.fd.levels}};
    j["pass"] = pass;
    j["entries"] = to_json(report);
    write_text(dir / "lattice_report.json", j.dump(1) + "\n");
    write_report_table(std::cout, report);
    std::printf("%s: %s, %s\n", pass ? "PASS" : "FAIL", (dir / "trajectory.csv").string().c_str(),
                (dir / "lattice_report.json").string().c_str());
    return pass ? ok : verification_failed;
}

template <typename T>
int dispatch(const std::string& cmd, const RunConfig& cfg, const std::optional<Corruption>& corrupt) {
    if (cmd == "moments") return cmd_moments<T>(cfg);
    if (cmd == "coeffs") return cmd_coeffs<T>(cfg);
    if (cmd == "verify") return cmd_verify<T>(cfg, corrupt);
    return cmd_lattice<T>(cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bivariate Freud orthogonal polynomials: moments, coefficients, identity checks, lattices"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir, precision, t_grid, params, corrupt;
    std::optional<int> max_degree;
    std::optional<double> t;
    std::optional<unsigned> threads;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--max-degree", max_degree, "maximum polynomial degree N");
    app.add_option("--precision", precision, "double or extended");
    app.add_option("--t", t, "time parameter: a20 = a02 = -t");
    app.add_option("--t-grid", t_grid, "lattice grid a:b:steps");
    app.add_option("--params", params, "a40,a22,a04,a20,a02");
    app.add_option("--threads", threads, "worker threads for grid evaluation");
    app.add_option("--corrupt-A", corrupt, "")->group("");

    app.add_subcommand("moments", "write the moment table as CSV");
    app.add_subcommand("coeffs", "write all coefficient matrices as JSON");
    app.add_subcommand("verify", "run the identity suite and write a residual report");
    app.add_subcommand("lattice", "integrate the E lattice over the t-grid and check the lattice relations");
    auto* config_cmd = app.add_subcommand("config", "configuration utilities");
    bool print_defaults = false;
    config_cmd->add_flag("--print-defaults", print_defaults, "print the default configuration as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "config") {
        if (!print_defaults) {
            std::cerr << "config: nothing to do (try --print-defaults)\n";
            return config_error;
        }
        std::cout << to_json(RunConfig{}).dump(2) << "\n";
        return ok;
    }

    RunConfig cfg;
    std::optional<Corruption> corruption;
    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            nlohmann::json j;
            try {
                f >> j;
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(config_path + ": " + e.what());
            }
            apply_json(cfg, j);
        }
        if (!params.empty()) cfg.params = parse_params(params);
        if (max_degree) cfg.max_degree = *max_degree;
        if (!precision.empty()) cfg.precision = parse_precision(precision);
        if (t) cfg.t = *t;
        if (!t_grid.empty()) cfg.t_grid = parse_t_grid(t_grid);
        if (threads) cfg.threads = *threads;
        if (!out_dir.empty()) cfg.out = out_dir;
        if (!corrupt.empty()) corruption = parse_corruption(corrupt);
        validate_config(cfg);
    } catch (const Error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return config_error;
    }

    try {
        return cfg.precision == Precision::Double ? dispatch<double>(cmd, cfg, corruption)
                                                  : dispatch<long double>(cmd, cfg, corruption);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return config_error;
    } catch (const ParameterDomain& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return config_error;
    } catch (const Error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return numeric_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numeric_error;
    }
}
