// eprsim: command-line front end for the EPR-Bohm simulation harness.
// Emits CSV (with '#' header lines) or JSON (with a top-level "meta" object);
// identical flags and seed produce byte-identical output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epr/chsh.hpp"
#include "epr/correlation.hpp"
#include "epr/direction.hpp"
#include "epr/model.hpp"
#include "epr/multivector.hpp"

namespace {

constexpr const char* kToolVersion = "eprsim 1.0.0";
constexpr int kExitValidation = 2;
constexpr int kExitSingular = 3;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Report {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_meta(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }

    std::string to_csv() const {
        std::ostringstream os;
        for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << "\n";
        }
        return os.str();
    }

    std::string to_json() const {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : meta) j["meta"][k] = v;
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json o;
            for (std::size_t i = 0; i < row.size(); ++i) o[columns[i]] = row[i];
            j["rows"].push_back(o);
        }
        return j.dump(2) + "\n";
    }
};

void emit(const Report& rep, const std::string& format, const std::string& out_path) {
    const std::string text = format == "json" ? rep.to_json() : rep.to_csv();
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output path: " + out_path);
        f << text;
    }
}

// A direction flag: planar angle in degrees, or explicit "x,y,z" components.
// Components off unit by more than 1e-3 are rejected; beyond 1e-6 they are
// normalized with a warning.
epr::Direction parse_direction(const std::optional<double>& angle_deg,
                               const std::string& vec, const std::string& name) {
    if (!vec.empty()) {
        double x, y, z;
        char extra;
        if (std::sscanf(vec.c_str(), "%lf,%lf,%lf%c", &x, &y, &z, &extra) != 3)
            throw CLI::ValidationError(name, "expected three comma-separated components");
        const double n = std::sqrt(x * x + y * y + z * z);
        if (std::abs(n - 1.0) > 1e-3)
            throw CLI::ValidationError(name, "direction is off unit length by more than 1e-3");
        if (std::abs(n - 1.0) > 1e-6)
            std::cerr << "warning: normalizing " << name << " (|v| = " << fmt(n) << ")\n";
        return epr::Direction::normalized(x, y, z);
    }
    if (angle_deg) return epr::Direction::from_angle_deg(*angle_deg);
    throw CLI::ValidationError(name, "direction not specified (angle or components required)");
}

epr::ProductConvention parse_convention(const std::string& s) {
    return s == "lambda" ? epr::ProductConvention::LambdaStructure
                         : epr::ProductConvention::FixedBasis;
}

void add_common_meta(Report& rep, const std::string& convention, std::uint64_t seed,
                     std::size_t n) {
    rep.add_meta("tool", kToolVersion);
    rep.add_meta("convention", convention);
    rep.add_meta("seed", std::to_string(seed));
    rep.add_meta("n", std::to_string(n));
    rep.add_meta("rng", epr::RngStream::kAlgorithmName);
}

const std::vector<std::string> kCorrelationColumns = {
    "theta_deg",     "scalar", "residual_x", "residual_y",    "residual_z",
    "residual_norm", "reference_minus_cos", "n", "standard_error"};

std::vector<std::string> correlation_row(double theta_deg, const epr::CorrelationReport& r) {
    return {fmt(theta_deg),
            fmt(r.scalar_estimate),
            fmt(r.bivector_residual[0]),
            fmt(r.bivector_residual[1]),
            fmt(r.bivector_residual[2]),
            fmt(r.residual_norm),
            fmt(r.target),
            std::to_string(r.n),
            fmt(r.standard_error)};
}

double angle_between_deg(const epr::Direction& a, const epr::Direction& b) {
    return std::acos(std::clamp(epr::dot(a, b), -1.0, 1.0)) * 180.0 / std::numbers::pi;
}

struct DirectionFlags {
    std::optional<double> angle;
    std::string vec;
};

void add_direction_flags(CLI::App* cmd, const std::string& flag, const std::string& vec_flag,
                         DirectionFlags& df, const std::string& desc) {
    cmd->add_option(flag, df.angle, desc + " (planar angle, degrees)");
    cmd->add_option(vec_flag, df.vec, desc + " (components x,y,z)");
}

int run_table(const std::string& convention, const std::string& format,
              const std::string& out) {
    Report rep;
    add_common_meta(rep, convention, 0, 0);
    rep.columns = {"sigma", "j", "k", "s", "bx", "by", "bz"};
    const char* axes = "xyz";
    std::vector<int> sigmas = convention == "lambda" ? std::vector<int>{1, -1}
                                                     : std::vector<int>{1};
    for (int sg : sigmas) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                epr::EvenMultivector bj, bk;
                bj.b[j] = 1.0;
                bk.b[k] = 1.0;
                const auto p = epr::geometric_product(bj, bk, epr::CrossSign(sg));
                rep.rows.push_back({std::to_string(sg), std::string(1, axes[j]),
                                    std::string(1, axes[k]), fmt(p.s), fmt(p.b[0]),
                                    fmt(p.b[1]), fmt(p.b[2])});
            }
        }
    }
    emit(rep, format, out);
    return 0;
}

int run_measure(const epr::Direction& a, const epr::Direction& b,
                const std::optional<int>& lambda, std::size_t n, std::uint64_t seed,
                const std::string& format, const std::string& out) {
    Report rep;
    add_common_meta(rep, "fixed", seed, lambda ? 1 : n);
    if (lambda) {
        rep.columns = {"party", "lambda", "classified", "raw_s", "raw_bx", "raw_by",
                       "raw_bz", "residual_norm"};
        const epr::HiddenVariable lam(*lambda);
        for (const auto& [party, o] :
             {std::pair{"alice", epr::measure_alice(a, lam)},
              std::pair{"bob", epr::measure_bob(b, lam)}}) {
            rep.rows.push_back({party, std::to_string(*lambda), fmt(o.classified_value()),
                                fmt(o.raw.s), fmt(o.raw.b[0]), fmt(o.raw.b[1]),
                                fmt(o.raw.b[2]), fmt(o.residual_norm)});
        }
    } else {
        rep.columns = {"party", "mean", "standard_error", "count_plus", "count_minus"};
        epr::RngStream stream(seed);
        double sum_a = 0, sum_b = 0;
        std::size_t plus_a = 0, plus_b = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto lam = epr::sample_lambda(stream);
            const double va = epr::measure_alice(a, lam).classified_value();
            const double vb = epr::measure_bob(b, lam).classified_value();
            sum_a += va;
            sum_b += vb;
            if (va > 0) ++plus_a;
            if (vb > 0) ++plus_b;
        }
        const double dn = static_cast<double>(n);
        for (const auto& [party, mean, plus] :
             {std::tuple{"alice", sum_a / dn, plus_a}, std::tuple{"bob", sum_b / dn, plus_b}}) {
            const double se = std::sqrt(std::max(0.0, 1.0 - mean * mean) / dn);
            rep.rows.push_back({party, fmt(mean), fmt(se), std::to_string(plus),
                                std::to_string(n - plus)});
        }
    }
    emit(rep, format, out);
    return 0;
}

int run_correlate(const epr::Direction& a, const epr::Direction& b, bool exact, bool naive,
                  std::size_t n, std::uint64_t seed, const std::string& convention,
                  const std::string& format, const std::string& out) {
    const auto conv = parse_convention(convention);
    epr::CorrelationReport r;
    if (naive) r = epr::naive_correlation(a, b, n, seed);
    else if (exact) r = epr::correlation_exact(a, b, conv);
    else r = epr::correlation_mc(a, b, n, seed, conv);
    Report rep;
    add_common_meta(rep, naive ? "naive" : convention, seed, r.n);
    rep.columns = kCorrelationColumns;
    rep.rows.push_back(correlation_row(angle_between_deg(a, b), r));
    emit(rep, format, out);
    return 0;
}

int run_sweep(double step, bool exact, std::size_t n, std::uint64_t seed,
              const std::string& convention, const std::string& format,
              const std::string& out) {
    if (step <= 0.0 || step > 90.0)
        throw CLI::ValidationError("--step", "must be in (0, 90]");
    const auto conv = parse_convention(convention);
    Report rep;
    add_common_meta(rep, convention, seed, exact ? 2 : n);
    rep.columns = kCorrelationColumns;
    const epr::Direction u(1, 0, 0);
    for (double theta = 0.0; theta <= 180.0 + 1e-9; theta += step) {
        const double t = std::min(theta, 180.0);
        const epr::Direction b = epr::Direction::from_angle_deg(t);
        const auto r = exact ? epr::correlation_exact(u, b, conv)
                             : epr::correlation_mc(u, b, n, seed, conv);
        rep.rows.push_back(correlation_row(t, r));
    }
    emit(rep, format, out);
    return 0;
}

int run_chsh(const std::optional<epr::Direction>& a, const std::optional<epr::Direction>& a2,
             const std::optional<epr::Direction>& b, const std::optional<epr::Direction>& b2,
             bool maximize, bool naive, double resolution, std::size_t refine,
             const std::string& format, const std::string& out) {
    const epr::CorrelationFn model_E = [](const epr::Direction& x, const epr::Direction& y) {
        return -epr::dot(x, y);
    };
    const epr::CorrelationFn naive_E = [](const epr::Direction&, const epr::Direction&) {
        return -1.0;
    };
    const epr::CorrelationFn& E = naive ? naive_E : model_E;
    epr::ChshConfig cfg{epr::Direction(1, 0, 0), epr::Direction(0, 1, 0),
                        epr::Direction(1, 0, 0), epr::Direction(0, 1, 0)};
    if (maximize) {
        cfg = epr::maximize_S(E, resolution, refine).first;
    } else {
        if (!a || !a2 || !b || !b2)
            throw CLI::ValidationError("chsh", "provide all four settings or --maximize");
        cfg = epr::ChshConfig{*a, *a2, *b, *b2};
    }
    const auto r = epr::chsh_report(E, cfg);
    Report rep;
    add_common_meta(rep, naive ? "naive" : "lambda", 0, 0);
    rep.columns = {"ax", "ay", "az", "a2x", "a2y", "a2z", "bx", "by", "bz",
                   "b2x", "b2y", "b2z", "S", "paper_bound", "paper_bound_flipped",
                   "tsirelson", "within_paper_bound", "within_tsirelson"};
    rep.rows.push_back({fmt(cfg.a.x()), fmt(cfg.a.y()), fmt(cfg.a.z()),
                        fmt(cfg.a_prime.x()), fmt(cfg.a_prime.y()), fmt(cfg.a_prime.z()),
                        fmt(cfg.b.x()), fmt(cfg.b.y()), fmt(cfg.b.z()),
                        fmt(cfg.b_prime.x()), fmt(cfg.b_prime.y()), fmt(cfg.b_prime.z()),
                        fmt(r.S), fmt(r.paper_bound), fmt(r.paper_bound_flipped),
                        fmt(r.tsirelson), r.within_paper_bound ? "1" : "0",
                        r.within_tsirelson ? "1" : "0"});
    emit(rep, format, out);
    return 0;
}

int run_audit(const epr::Direction& a, const std::vector<epr::Direction>& settings,
              std::size_t n, std::uint64_t seed, const std::string& format,
              const std::string& out) {
    const auto r = epr::locality_audit(a, settings, n, seed);
    Report rep;
    add_common_meta(rep, "fixed", seed, n);
    rep.add_meta("alice_setting_independent", r.alice_setting_independent ? "1" : "0");
    rep.add_meta("bob_setting_independent", r.bob_setting_independent ? "1" : "0");
    rep.columns = {"setting_index", "bx", "by", "bz", "mean_a", "stderr_a", "mean_b",
                   "stderr_b"};
    for (std::size_t j = 0; j < settings.size(); ++j) {
        const auto& m = r.per_setting[j];
        rep.rows.push_back({std::to_string(j), fmt(settings[j].x()), fmt(settings[j].y()),
                            fmt(settings[j].z()), fmt(m.mean_a), fmt(m.stderr_a),
                            fmt(m.mean_b), fmt(m.stderr_b)});
    }
    emit(rep, format, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EPR-Bohm local model simulation harness"};
    app.require_subcommand(1);

    std::string convention = "fixed";
    std::string format = "csv";
    std::string out_path;
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    bool exact = false, naive = false, maximize = false;
    double step = 5.0, resolution = 15.0;
    std::size_t refine = 200;
    std::optional<int> lambda;
    DirectionFlags da, da2, db, db2;

    auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "output path (default: stdout)");
    };
    auto add_convention_flag = [&](CLI::App* cmd) {
        cmd->add_option("--convention", convention, "product convention")
            ->check(CLI::IsMember({"fixed", "lambda"}));
    };
    auto add_mc_flags = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "trial count")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "RNG seed");
    };

    auto* c_table = app.add_subcommand("table", "bivector product table");
    add_convention_flag(c_table);
    add_output_flags(c_table);

    auto* c_measure = app.add_subcommand("measure", "single-trial or sampled outcomes");
    add_direction_flags(c_measure, "--a", "--a-vec", da, "Alice setting");
    add_direction_flags(c_measure, "--b", "--b-vec", db, "Bob setting");
    c_measure->add_option("--lambda", lambda, "hidden variable (+1 or -1)")
        ->check(CLI::IsMember({1, -1}));
    add_mc_flags(c_measure);
    add_output_flags(c_measure);

    auto* c_corr = app.add_subcommand("correlate", "correlation at one setting pair");
    add_direction_flags(c_corr, "--a", "--a-vec", da, "Alice setting");
    add_direction_flags(c_corr, "--b", "--b-vec", db, "Bob setting");
    c_corr->add_flag("--exact", exact, "two-point exact average instead of Monte Carlo");
    c_corr->add_flag("--naive", naive, "unnormalized classified-outcome average");
    add_convention_flag(c_corr);
    add_mc_flags(c_corr);
    add_output_flags(c_corr);

    auto* c_sweep = app.add_subcommand("sweep", "correlation curve over 0..180 degrees");
    c_sweep->add_option("--step", step, "angular step in degrees");
    c_sweep->add_flag("--exact", exact, "two-point exact average instead of Monte Carlo");
    add_convention_flag(c_sweep);
    add_mc_flags(c_sweep);
    add_output_flags(c_sweep);

    auto* c_chsh = app.add_subcommand("chsh", "CHSH string and bound");
    add_direction_flags(c_chsh, "--a", "--a-vec", da, "setting a");
    add_direction_flags(c_chsh, "--a2", "--a2-vec", da2, "setting a'");
    add_direction_flags(c_chsh, "--b", "--b-vec", db, "setting b");
    add_direction_flags(c_chsh, "--b2", "--b2-vec", db2, "setting b'");
    c_chsh->add_flag("--maximize", maximize, "grid + coordinate-descent maximization");
    c_chsh->add_flag("--naive", naive, "use the constant naive correlation");
    c_chsh->add_option("--resolution", resolution, "grid step in degrees");
    c_chsh->add_option("--refine", refine, "refinement passes");
    add_output_flags(c_chsh);

    auto* c_audit = app.add_subcommand("audit", "locality audit");
    add_direction_flags(c_audit, "--a", "--a-vec", da, "Alice setting");
    add_direction_flags(c_audit, "--b", "--b-vec", db, "first Bob setting");
    add_direction_flags(c_audit, "--b2", "--b2-vec", db2, "second Bob setting");
    add_mc_flags(c_audit);
    add_output_flags(c_audit);

    try {
        app.parse(argc, argv);
        auto dir = [&](const DirectionFlags& df, const std::string& name) {
            return parse_direction(df.angle, df.vec, name);
        };
        auto dir_opt = [&](const DirectionFlags& df,
                           const std::string& name) -> std::optional<epr::Direction> {
            if (!df.angle && df.vec.empty()) return std::nullopt;
            return dir(df, name);
        };
        if (c_table->parsed()) return run_table(convention, format, out_path);
        if (c_measure->parsed())
            return run_measure(dir(da, "--a"), dir(db, "--b"), lambda, n, seed, format,
                               out_path);
        if (c_corr->parsed())
            return run_correlate(dir(da, "--a"), dir(db, "--b"), exact, naive, n, seed,
                                 convention, format, out_path);
        if (c_sweep->parsed())
            return run_sweep(step, exact, n, seed, convention, format, out_path);
        if (c_chsh->parsed())
            return run_chsh(dir_opt(da, "--a"), dir_opt(da2, "--a2"), dir_opt(db, "--b"),
                            dir_opt(db2, "--b2"), maximize, naive, resolution, refine,
                            format, out_path);
        if (c_audit->parsed()) {
            std::vector<epr::Direction> settings{dir(db, "--b")};
            if (auto s2 = dir_opt(db2, "--b2")) settings.push_back(*s2);
            return run_audit(dir(da, "--a"), settings, n, seed, format, out_path);
        }
        return kExitValidation;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    } catch (const epr::SingularElementError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSingular;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
