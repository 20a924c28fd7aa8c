// Randomized cross-validation suite: Legendre vs variational equivalence,
// oracle comparisons, Chernoff domination, gradient and convexity checks.
// Shared by the `verify` subcommand and the acceptance tests.

#ifndef CRAMER_VERIFY_HPP
#define CRAMER_VERIFY_HPP

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cramer/config.hpp"
#include "cramer/core.hpp"
#include "cramer/exact.hpp"
#include "cramer/io.hpp"
#include "cramer/ldp.hpp"
#include "cramer/legendre.hpp"
#include "cramer/variational.hpp"

namespace cramer {

struct CheckOutcome {
    std::string name;
    int passes = 0;
    int failures = 0;
    std::vector<std::string> failing_cases;  // serialized for replay

    bool ok() const { return failures == 0; }
    void record(bool pass, const std::string& repro)
    {
        if (pass) ++passes;
        else {
            ++failures;
            if (failing_cases.size() < 20) failing_cases.push_back(repro);
        }
    }
};

struct VerifyOptions {
    int instances = 100;
    std::uint64_t seed = 42;
    int grid_points = 21;
    double coverage = 0.95;  // fraction of the open domain spanned by the grid
    SolverConfig cfg{};
    // tolerances used by the suite
    double equivalence_tol = 1e-7;
    double tilt_tol = 1e-6;
    double kkt_tol = 1e-8;
    double oracle_tol = 1e-6;
    double cgf_id_tol = 1e-10;
    double grad_tol = 1e-6;
    double chord_tol = 1e-8;
    double symmetry_tol = 1e-10;
};

struct VerifySummary {
    std::vector<CheckOutcome> checks;
    double elapsed_seconds = 0.0;

    bool all_ok() const
    {
        for (const auto& c : checks)
            if (!c.ok()) return false;
        return true;
    }
    int total_passes() const
    {
        int s = 0;
        for (const auto& c : checks) s += c.passes;
        return s;
    }
    int total_failures() const
    {
        int s = 0;
        for (const auto& c : checks) s += c.failures;
        return s;
    }
};

namespace detail {

inline std::string repro_string(const WeightVector& t, double alpha,
                                std::uint64_t seed)
{
    std::ostringstream ss;
    ss << "weights=\"";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) ss << ' ';
        ss << format_double(t[i]);
    }
    ss << "\" alpha=" << format_double(alpha) << " seed=" << seed;
    return ss.str();
}

// ln E e^{sX} from an exact distribution, shifted for stability.
inline double log_mgf(const ExactDist& d, double s)
{
    double mx = -kInf;
    for (double x : d.support) mx = std::max(mx, s * x);
    double acc = 0.0;
    for (std::size_t i = 0; i < d.support.size(); ++i)
        acc += d.probs[i] * std::exp(s * d.support[i] - mx);
    return mx + std::log(acc);
}

inline WeightVector random_instance(Rng& rng)
{
    std::uniform_int_distribution<int> nd(1, 10);
    std::uniform_real_distribution<double> wd(0.1, 2.0);
    const int n = nd(rng);
    std::vector<double> w(n);
    for (auto& x : w) {
        x = wd(rng);
        if (rng() & 1u) x = -x;
    }
    return WeightVector(std::move(w));
}

} // namespace detail

/// Runs the whole property suite over randomized instances.
inline VerifySummary run_verification(const VerifyOptions& opt = {})
{
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(opt.seed);

    CheckOutcome equivalence{"route_equivalence"};
    CheckOutcome tilt{"tilt_kkt_agreement"};
    CheckOutcome oracle{"grid_conjugate_agreement"};
    CheckOutcome cgf_id{"exact_cgf_identity"};
    CheckOutcome chernoff{"chernoff_domination"};
    CheckOutcome gradient{"gradient_finite_difference"};
    CheckOutcome shape{"convexity_and_symmetry"};
    CheckOutcome degenerate{"degenerate_weights"};
    CheckOutcome bounds{"entropy_and_cgf_bounds"};

    std::uniform_real_distribution<double> unif(0.0, 1.0);

    for (int inst = 0; inst < opt.instances; ++inst) {
        const WeightVector t = detail::random_instance(rng);
        const double l1 = t.l1_norm();
        const double lim = opt.coverage * l1;

        std::vector<double> values(opt.grid_points);
        std::vector<double> alphas(opt.grid_points);
        for (int j = 0; j < opt.grid_points; ++j) {
            const double alpha =
                -lim + 2.0 * lim * j / (opt.grid_points - 1);
            alphas[j] = alpha;
            const std::string repro = detail::repro_string(t, alpha, opt.seed);

            const RatePoint rp = cramer_transform(t, alpha, opt.cfg);
            const VariationalSolution vs = minimize_entropy(t, alpha, opt.cfg);
            values[j] = rp.value;

            equivalence.record(vs.converged &&
                                   std::abs(rp.value - vs.value) <= opt.equivalence_tol,
                               repro);
            if (rp.tilt) {
                tilt.record(std::abs(vs.s_hat - *rp.tilt) <= opt.tilt_tol &&
                                vs.kkt_residual <= opt.kkt_tol,
                            repro);
            }
            oracle.record(std::abs(conjugate_by_grid(t, alpha) - rp.value) <=
                              opt.oracle_tol,
                          repro);
        }

        // convexity chord condition and symmetry of the computed curve
        for (int j = 1; j + 1 < opt.grid_points; ++j) {
            const double lam = (alphas[opt.grid_points - 1] - alphas[j]) /
                               (alphas[opt.grid_points - 1] - alphas[0]);
            const double chord = lam * values[0] +
                                 (1.0 - lam) * values[opt.grid_points - 1];
            shape.record(values[j] <= chord + opt.chord_tol,
                         detail::repro_string(t, alphas[j], opt.seed));
        }
        for (int j = 0; j < opt.grid_points; ++j) {
            const double mirror = values[opt.grid_points - 1 - j];
            shape.record(std::abs(values[j] - mirror) <= opt.symmetry_tol,
                         detail::repro_string(t, alphas[j], opt.seed));
        }

        // |cgf| <= |s| ||t||_1 on random s
        for (int k = 0; k < 5; ++k) {
            const double s = (unif(rng) - 0.5) * 20.0;
            bounds.record(std::abs(cgf(t, s)) <= std::abs(s) * l1 + 1e-12,
                          detail::repro_string(t, s, opt.seed));
        }

        if (t.size() <= 16) {
            const ExactDist d = exact_distribution(t);
            for (int k = 0; k <= 10; ++k) {
                const double s = -5.0 + k;
                cgf_id.record(std::abs(detail::log_mgf(d, s) - cgf(t, s)) <=
                                  opt.cgf_id_tol,
                              detail::repro_string(t, s, opt.seed));
            }
            for (int j = 0; j < opt.grid_points; ++j) {
                if (alphas[j] <= 0.0) continue;
                chernoff.record(tail_probability(d, alphas[j]) <=
                                    std::exp(-values[j]),
                                detail::repro_string(t, alphas[j], opt.seed));
            }
        }
    }

    // gradient vs centered finite differences at random interior points
    for (int k = 0; k < 100; ++k) {
        std::uniform_int_distribution<int> nd(1, 8);
        const int n = nd(rng);
        std::vector<double> bv(n);
        for (auto& x : bv) x = (unif(rng) - 0.5) * 1.96;  // within +-0.98
        const DualVector b(bv);
        const auto g = psi1_star_grad(b);
        const double h = 1e-6;
        bool pass = true;
        for (int i = 0; i < n; ++i) {
            auto up = bv, dn = bv;
            up[i] += h;
            dn[i] -= h;
            const double fd = (psi1_star(std::span<const double>(up)) -
                               psi1_star(std::span<const double>(dn))) /
                              (2.0 * h);
            const double scale = std::max(1.0, std::abs(g[i]));
            if (std::abs(fd - g[i]) > opt.grad_tol * scale) pass = false;
        }
        gradient.record(pass, detail::repro_string(WeightVector(bv), 0.0, opt.seed));
    }

    // entropy function bounds: f >= x^2, boundary value 2 ln 2
    for (int k = 0; k <= 10000; ++k) {
        const double x = -1.0 + 2.0 * k / 10000.0;
        bounds.record(entropy_f(x) - x * x >= -1e-15,
                      "entropy_f x=" + format_double(x));
    }
    bounds.record(entropy_f(1.0) == 2.0 * kLn2 && entropy_f(-1.0) == 2.0 * kLn2,
                  "entropy_f boundary");

    // all-zero weights: the rate function is the indicator of {0}
    {
        const WeightVector z(std::vector<double>{0.0, 0.0});
        const RatePoint p0 = cramer_transform(z, 0.0, opt.cfg);
        const RatePoint p1 = cramer_transform(z, 0.5, opt.cfg);
        const VariationalSolution v0 = minimize_entropy(z, 0.0, opt.cfg);
        degenerate.record(p0.value == 0.0 && std::isinf(p1.value) &&
                              v0.converged && v0.value == 0.0,
                          "weights=\"0 0\"");
    }

    VerifySummary summary;
    summary.checks = {equivalence, tilt, oracle, cgf_id, chernoff,
                      gradient, shape, degenerate, bounds};
    summary.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return summary;
}

} // namespace cramer

#endif
