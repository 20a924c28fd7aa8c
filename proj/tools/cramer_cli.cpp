// Command-line surface: rate curves by both solver routes, the randomized
// verification suite, large-deviations experiments, and direct access to the
// exact oracles.

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cramer/cramer.hpp"

namespace {

using namespace cramer;

constexpr const char* kVersion = "0.1.0";
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct GridSpec {
    int count = 41;
    double coverage = 0.98;
};

struct RateRow {
    double alpha = 0.0;
    double legendre = 0.0;
    double variational = 0.0;
    double diff = 0.0;
    double tilt = kNan;
    double kkt_residual = kNan;
    std::string status;
    bool converged = true;
};

std::vector<double> make_grid(const WeightVector& t, const GridSpec& grid)
{
    const double lim = grid.coverage * t.l1_norm();
    std::vector<double> alphas(grid.count);
    for (int j = 0; j < grid.count; ++j)
        alphas[j] = grid.count == 1
                        ? 0.0
                        : -lim + 2.0 * lim * j / (grid.count - 1);
    return alphas;
}

RateRow evaluate_point(const WeightVector& t, double alpha, const SolverConfig& cfg)
{
    RateRow row;
    row.alpha = alpha;
    const RatePoint rp = cramer_transform(t, alpha, cfg);
    row.status = to_string(rp.status);
    row.legendre = rp.value;
    if (rp.tilt) row.tilt = *rp.tilt;

    if (rp.status == RateStatus::exterior ||
        (rp.status == RateStatus::degenerate && alpha != 0.0)) {
        row.variational = kInf;
        row.diff = 0.0;
        return row;
    }
    const VariationalSolution vs = minimize_entropy(t, alpha, cfg);
    row.variational = vs.value;
    row.kkt_residual = vs.kkt_residual;
    row.converged = vs.converged;
    row.diff = std::abs(rp.value - vs.value);
    return row;
}

void write_output(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << text;
}

std::string rate_csv(const std::vector<RateRow>& rows)
{
    std::string s = "alpha,legendre,variational,diff,tilt,kkt_residual,status\n";
    for (const auto& r : rows) {
        s += format_double(r.alpha) + ',' + format_double(r.legendre) + ',' +
             format_double(r.variational) + ',' + format_double(r.diff) + ',' +
             format_double(r.tilt) + ',' + format_double(r.kkt_residual) + ',' +
             r.status + '\n';
    }
    return s;
}

void json_config(JsonWriter& w, const SolverConfig& cfg, const GridSpec& grid)
{
    w.key("config").begin_object();
    w.key("root_tol").value(cfg.root_tol);
    w.key("max_newton_iters").value(cfg.max_newton_iters);
    w.key("bracket_growth").value(cfg.bracket_growth);
    w.key("boundary_guard").value(cfg.boundary_guard);
    w.key("pg_step0").value(cfg.pg_step0);
    w.key("pg_shrink").value(cfg.pg_shrink);
    w.key("pg_tol").value(cfg.pg_tol);
    w.key("pg_max_iters").value(cfg.pg_max_iters);
    w.key("alpha_grid_count").value(grid.count);
    w.key("alpha_grid_coverage").value(grid.coverage);
    w.end_object();
}

void json_header(JsonWriter& w, const WeightVector& t, const SolverConfig& cfg,
                 const GridSpec& grid, std::uint64_t seed)
{
    w.key("weights").begin_array();
    for (double x : t.weights()) w.value(x);
    w.end_array();
    w.key("l1_norm").value(t.l1_norm());
    json_config(w, cfg, grid);
    w.key("seed").value(seed);
    w.key("version").value(kVersion);
    w.key("timestamp").value(static_cast<std::uint64_t>(std::time(nullptr)));
}

std::string rate_json(const WeightVector& t, const std::vector<RateRow>& rows,
                      const SolverConfig& cfg, const GridSpec& grid,
                      std::uint64_t seed)
{
    JsonWriter w;
    w.begin_object();
    json_header(w, t, cfg, grid, seed);
    w.key("rows").begin_array();
    for (const auto& r : rows) {
        w.begin_object();
        w.key("alpha").value(r.alpha);
        w.key("legendre").value(r.legendre);
        w.key("variational").value(r.variational);
        w.key("diff").value(r.diff);
        w.key("tilt").value(r.tilt);
        w.key("kkt_residual").value(r.kkt_residual);
        w.key("status").value(r.status);
        w.end_object();
    }
    w.end_array();
    w.key("suite_results").begin_object().end_object();
    w.end_object();
    return w.str() + "\n";
}

void json_suite(JsonWriter& w, const VerifySummary& summary)
{
    w.key("suite_results").begin_object();
    for (const auto& c : summary.checks) {
        w.key(c.name).begin_object();
        w.key("passes").value(c.passes);
        w.key("failures").value(c.failures);
        w.key("failing_cases").begin_array();
        for (const auto& f : c.failing_cases) w.value(f);
        w.end_array();
        w.end_object();
    }
    w.end_object();
}

int cmd_rate(const WeightVector& t, std::vector<double> alphas,
             const SolverConfig& cfg, const GridSpec& grid, std::uint64_t seed,
             const std::string& format, const std::string& out_path)
{
    std::sort(alphas.begin(), alphas.end());
    std::vector<RateRow> rows;
    rows.reserve(alphas.size());
    for (double a : alphas) rows.push_back(evaluate_point(t, a, cfg));

    write_output(format == "json" ? rate_json(t, rows, cfg, grid, seed)
                                  : rate_csv(rows),
                 out_path);

    for (const auto& r : rows)
        if (!r.converged || !(r.diff <= 1e-6) )
            return 1;
    return 0;
}

int cmd_verify(const SolverConfig& cfg, std::uint64_t seed, int instances,
               const std::string& format, const std::string& out_path)
{
    VerifyOptions opt;
    opt.cfg = cfg;
    opt.seed = seed;
    opt.instances = instances;
    const VerifySummary summary = run_verification(opt);

    if (format == "json") {
        JsonWriter w;
        w.begin_object();
        w.key("seed").value(seed);
        w.key("version").value(kVersion);
        json_suite(w, summary);
        w.key("all_ok").value(summary.all_ok());
        w.end_object();
        write_output(w.str() + "\n", out_path);
    } else {
        std::string s;
        for (const auto& c : summary.checks) {
            s += (c.ok() ? "PASS " : "FAIL ") + c.name + ": " +
                 std::to_string(c.passes) + " passed, " +
                 std::to_string(c.failures) + " failed\n";
            for (const auto& f : c.failing_cases) s += "  case: " + f + "\n";
        }
        s += summary.all_ok() ? "all checks passed\n" : "checks FAILED\n";
        write_output(s, out_path);
    }
    return summary.all_ok() ? 0 : 1;
}

int cmd_ldp(const WeightVector& t, double alpha, const std::vector<int>& schedule,
            const SolverConfig& cfg, const GridSpec& grid, std::uint64_t seed,
            bool allow_mc, const std::string& out_path)
{
    Rng rng(seed);
    const double l1 = t.l1_norm();

    std::vector<double> alphas = make_grid(t, grid);
    std::vector<ChernoffRow> chern;
    try {
        chern = chernoff_check(t, alphas, cfg);
    } catch (const std::length_error& e) {
        if (!allow_mc) {
            std::cerr << "error: " << e.what() << " (pass --mc to allow Monte Carlo)\n";
            return 2;
        }
        for (double a : alphas) chern.push_back(mc_tail(t, a, 100000, rng, cfg));
    }

    std::vector<RateGapRow> gaps;
    if (!schedule.empty()) {
        try {
            gaps = rate_convergence(t, alpha, schedule, rng, cfg);
        } catch (const std::length_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    bool all_ok = true;
    for (const auto& r : chern) all_ok = all_ok && r.chernoff_ok;
    bool decreasing = true;
    for (std::size_t i = 1; i < gaps.size(); ++i)
        decreasing = decreasing && gaps[i].gap < gaps[i - 1].gap;

    const bool near_boundary =
        std::abs(alpha) >= l1 * (1.0 - cfg.boundary_guard) && l1 > 0.0;

    JsonWriter w;
    w.begin_object();
    json_header(w, t, cfg, grid, seed);
    w.key("rows").begin_array();
    for (const auto& r : chern) {
        w.begin_object();
        w.key("alpha").value(r.alpha);
        w.key("rate_value").value(r.rate_value);
        w.key(r.exact ? "exact_tail" : "mc_estimate").value(r.tail);
        if (!r.exact) w.key("ci_half_width").value(r.ci_half_width);
        w.key("chernoff_bound").value(r.bound);
        w.key("chernoff_ok").value(r.chernoff_ok);
        w.end_object();
    }
    w.end_array();
    if (!gaps.empty()) {
        w.key("rate_convergence").begin_array();
        for (const auto& r : gaps) {
            w.begin_object();
            w.key("N").value(r.N);
            w.key(r.exact ? "exact_tail" : "mc_estimate").value(r.tail);
            w.key("g").value(r.g);
            w.key("gap").value(r.gap);
            w.end_object();
        }
        w.end_array();
    }
    w.key("suite_results").begin_object().end_object();
    w.key("all_chernoff_ok").value(all_ok);
    w.key("gaps_decreasing").value(decreasing);
    if (near_boundary)
        w.key("warning").value("alpha in the boundary regime; rate value is the endpoint conjugate m ln 2");
    w.end_object();
    write_output(w.str() + "\n", out_path);

    return (all_ok && decreasing) ? 0 : 1;
}

int cmd_oracle(const WeightVector& t, bool show_dist,
               const std::vector<double>& tail_alphas,
               const std::vector<double>& conj_alphas,
               const std::string& out_path)
{
    JsonWriter w;
    w.begin_object();
    w.key("weights").begin_array();
    for (double x : t.weights()) w.value(x);
    w.end_array();
    w.key("l1_norm").value(t.l1_norm());

    std::optional<ExactDist> dist;
    const auto need_dist = [&]() -> const ExactDist& {
        if (!dist) dist = exact_distribution(t);
        return *dist;
    };

    if (show_dist) {
        const ExactDist& d = need_dist();
        w.key("distribution").begin_object();
        w.key("support").begin_array();
        for (double x : d.support) w.value(x);
        w.end_array();
        w.key("probs").begin_array();
        for (double p : d.probs) w.value(p);
        w.end_array();
        w.end_object();
    }
    if (!tail_alphas.empty()) {
        w.key("tails").begin_array();
        for (double a : tail_alphas) {
            w.begin_object();
            w.key("alpha").value(a);
            w.key("tail").value(tail_probability(need_dist(), a));
            w.end_object();
        }
        w.end_array();
    }
    if (!conj_alphas.empty()) {
        w.key("conjugate").begin_array();
        for (double a : conj_alphas) {
            w.begin_object();
            w.key("alpha").value(a);
            w.key("value").value(conjugate_by_grid(t, a));
            w.end_object();
        }
        w.end_array();
    }
    w.end_object();
    write_output(w.str() + "\n", out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cramér transform of weighted Rademacher sums: Legendre and "
                 "variational solvers with exact oracles"};
    app.require_subcommand(1);

    std::string weights_arg, format = "csv", out_path, grid_arg;
    std::vector<double> alpha_values;
    std::uint64_t seed = 42;
    bool mc = false;
    int instances = 100;
    double ldp_alpha = 0.0;
    std::string schedule_arg;
    SolverConfig cfg;

    const auto add_common = [&](CLI::App* sub, bool needs_weights) {
        auto* w = sub->add_option("--weights", weights_arg,
                                  "inline list \"1 0.5 -2\" or @file");
        if (needs_weights) w->required();
        sub->add_option("--alpha-grid", grid_arg,
                        "grid spec count,coverage (default 41,0.98)");
        sub->add_option("--alpha", alpha_values, "explicit alpha (repeatable)");
        sub->add_option("--format", format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", seed, "RNG seed");
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--root-tol", cfg.root_tol, "tilt solve tolerance");
        sub->add_option("--boundary-guard", cfg.boundary_guard,
                        "relative boundary guard band");
        sub->add_option("--pg-tol", cfg.pg_tol, "KKT residual tolerance");
        sub->add_option("--pg-max-iters", cfg.pg_max_iters,
                        "projected gradient iteration cap");
    };

    auto* rate = app.add_subcommand("rate", "rate curve by both solver routes");
    add_common(rate, true);

    auto* verify = app.add_subcommand("verify", "randomized verification suite");
    add_common(verify, false);
    verify->add_option("--instances", instances, "random instances (default 100)");

    auto* ldp = app.add_subcommand("ldp", "Chernoff and rate-convergence experiments");
    add_common(ldp, true);
    ldp->add_option("--ldp-alpha", ldp_alpha, "alpha for the N-schedule experiment");
    ldp->add_option("--schedule", schedule_arg, "N schedule, e.g. 10,100,1000");
    ldp->add_flag("--mc", mc, "allow Monte Carlo fallback");

    auto* oracle = app.add_subcommand("oracle", "exact distribution, tails, grid conjugate");
    add_common(oracle, true);
    bool show_dist = false;
    std::vector<double> tail_alphas, conj_alphas;
    oracle->add_flag("--dist", show_dist, "emit the exact distribution");
    oracle->add_option("--tail", tail_alphas, "tail P(X >= alpha) (repeatable)");
    oracle->add_option("--conjugate", conj_alphas,
                       "grid-search conjugate at alpha (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.validate();

        GridSpec grid;
        if (!grid_arg.empty()) {
            if (std::sscanf(grid_arg.c_str(), "%d,%lf", &grid.count,
                            &grid.coverage) != 2)
                throw std::invalid_argument("bad --alpha-grid spec '" + grid_arg + "'");
        }
        if (grid.count < 3 || grid.count % 2 == 0)
            throw std::invalid_argument("--alpha-grid count must be odd and >= 3");
        if (!(grid.coverage > 0.0 && grid.coverage < 1.0))
            throw std::invalid_argument("--alpha-grid coverage must be in (0,1)");

        if (app.got_subcommand(verify))
            return cmd_verify(cfg, seed, instances, format, out_path);

        const WeightVector t(parse_weights_arg(weights_arg));

        if (app.got_subcommand(rate)) {
            std::vector<double> alphas =
                alpha_values.empty() ? make_grid(t, grid) : alpha_values;
            return cmd_rate(t, std::move(alphas), cfg, grid, seed, format, out_path);
        }
        if (app.got_subcommand(ldp)) {
            std::vector<int> schedule;
            if (!schedule_arg.empty()) {
                std::istringstream ss(schedule_arg);
                std::string tok;
                while (std::getline(ss, tok, ',')) schedule.push_back(std::stoi(tok));
            }
            return cmd_ldp(t, ldp_alpha, schedule, cfg, grid, seed, mc, out_path);
        }
        if (app.got_subcommand(oracle))
            return cmd_oracle(t, show_dist, tail_alphas, conj_alphas, out_path);
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
