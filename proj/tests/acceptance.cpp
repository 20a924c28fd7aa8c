// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are fixed here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cramer/cramer.hpp"

using namespace cramer;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail)
{
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number,
                name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

struct Instance {
    WeightVector t;
    std::vector<double> alphas;
    std::vector<RatePoint> legendre;
    std::vector<VariationalSolution> variational;
};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

} // namespace

int main()
{
    const SolverConfig cfg;
    const std::uint64_t seed = 42;
    Rng rng(seed);

    // ---- criterion 1: Legendre/variational equivalence, random instances ----
    std::vector<Instance> instances;
    double worst_diff = 0.0;
    bool all_converged = true;
    const auto t0 = std::chrono::steady_clock::now();
    {
        std::uniform_int_distribution<int> nd(1, 10);
        std::uniform_real_distribution<double> wd(0.1, 2.0);
        for (int k = 0; k < 100; ++k) {
            std::vector<double> w(nd(rng));
            for (auto& x : w) {
                x = wd(rng);
                if (rng() & 1u) x = -x;
            }
            Instance inst{WeightVector(std::move(w)), {}, {}, {}};
            const double lim = 0.95 * inst.t.l1_norm();
            for (int j = 0; j < 21; ++j) {
                const double alpha = -lim + 2.0 * lim * j / 20.0;
                inst.alphas.push_back(alpha);
                inst.legendre.push_back(cramer_transform(inst.t, alpha, cfg));
                inst.variational.push_back(minimize_entropy(inst.t, alpha, cfg));
                const double d = std::abs(inst.legendre.back().value -
                                          inst.variational.back().value);
                worst_diff = std::max(worst_diff, d);
                all_converged = all_converged && inst.variational.back().converged;
            }
            instances.push_back(std::move(inst));
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(1, "Legendre/variational equivalence, 100 instances x 21 alphas",
           worst_diff <= 1e-7 && all_converged && elapsed < 10.0,
           "max |diff| = " + fmt(worst_diff) + ", seed 42, " + fmt(elapsed) + " s");

    // ---- criterion 2: closed-form spot values ----
    {
        struct Spot { std::vector<double> w; double alpha; double expect; };
        const std::vector<Spot> spots = {
            {{1.0}, 0.5, 0.130812},
            {{1.0, 1.0}, 1.0, 0.261624},
            {{0.5, 0.5}, 0.6, 0.385490},
        };
        bool ok = true;
        double worst = 0.0;
        for (const auto& s : spots) {
            const WeightVector t(s.w);
            const double a = cramer_transform(t, s.alpha, cfg).value;
            const double b = minimize_entropy(t, s.alpha, cfg).value;
            worst = std::max({worst, std::abs(a - s.expect), std::abs(b - s.expect)});
            ok = ok && std::abs(a - s.expect) <= 1e-6 && std::abs(b - s.expect) <= 1e-6;
        }
        report(2, "closed-form spot values", ok, "max deviation " + fmt(worst));
    }

    // ---- criterion 3: tilt/KKT agreement on criterion-1 grid points ----
    {
        double worst_tilt = 0.0, worst_kkt = 0.0;
        for (const auto& inst : instances)
            for (std::size_t j = 0; j < inst.alphas.size(); ++j) {
                if (!inst.legendre[j].tilt) continue;
                worst_tilt = std::max(worst_tilt,
                                      std::abs(inst.variational[j].s_hat -
                                               *inst.legendre[j].tilt));
                worst_kkt = std::max(worst_kkt, inst.variational[j].kkt_residual);
            }
        report(3, "tilt and KKT stationarity agreement",
               worst_tilt <= 1e-6 && worst_kkt <= 1e-8,
               "max |s_hat - s| = " + fmt(worst_tilt) +
                   ", max residual = " + fmt(worst_kkt));
    }

    // ---- criterion 4: oracle equivalence ----
    {
        double worst_grid = 0.0, worst_cgf = 0.0;
        for (const auto& inst : instances) {
            for (std::size_t j = 0; j < inst.alphas.size(); ++j)
                worst_grid = std::max(worst_grid,
                                      std::abs(conjugate_by_grid(inst.t, inst.alphas[j]) -
                                               inst.legendre[j].value));
            if (inst.t.size() <= 16) {
                const ExactDist d = exact_distribution(inst.t);
                for (int k = 0; k <= 10; ++k) {
                    const double s = -5.0 + k;
                    double mx = -kInf;
                    for (double x : d.support) mx = std::max(mx, s * x);
                    double acc = 0.0;
                    for (std::size_t i = 0; i < d.support.size(); ++i)
                        acc += d.probs[i] * std::exp(s * d.support[i] - mx);
                    worst_cgf = std::max(worst_cgf,
                                         std::abs(mx + std::log(acc) - cgf(inst.t, s)));
                }
            }
        }
        report(4, "grid conjugate and exact-CGF oracles",
               worst_grid <= 1e-6 && worst_cgf <= 1e-10,
               "grid dev " + fmt(worst_grid) + ", cgf dev " + fmt(worst_cgf));
    }

    // ---- criterion 5: Chernoff domination, exact tails ----
    {
        int violations = 0, checked = 0;
        for (const auto& inst : instances) {
            if (inst.t.size() > 16) continue;
            const ExactDist d = exact_distribution(inst.t);
            for (std::size_t j = 0; j < inst.alphas.size(); ++j) {
                if (inst.alphas[j] <= 0.0) continue;
                ++checked;
                if (tail_probability(d, inst.alphas[j]) >
                    std::exp(-inst.legendre[j].value))
                    ++violations;
            }
        }
        report(5, "Chernoff domination on exact tails", violations == 0,
               std::to_string(checked) + " tails, " + std::to_string(violations) +
                   " violations");
    }

    // ---- criterion 6: rate convergence along the N-schedule ----
    {
        const WeightVector t(std::vector<double>{0.5, 0.5});
        Rng r2(seed);
        const auto rows = rate_convergence(t, 0.6, {10, 100, 1000}, r2, cfg);
        bool ok = rows.size() == 3;
        for (const auto& row : rows) ok = ok && row.exact && row.gap >= 0.0;
        ok = ok && rows[1].gap < rows[0].gap && rows[2].gap < rows[1].gap &&
             rows[2].gap < 0.05;
        report(6, "empirical-mean rate convergence", ok,
               "gaps " + fmt(rows[0].gap) + " > " + fmt(rows[1].gap) + " > " +
                   fmt(rows[2].gap));
    }

    // ---- criterion 7: entropy and CGF inequalities ----
    {
        bool ok = entropy_f(1.0) == 2.0 * kLn2 && entropy_f(-1.0) == 2.0 * kLn2;
        double worst = 0.0;
        for (int k = 0; k <= 10000; ++k) {
            const double x = -1.0 + 2.0 * k / 10000.0;
            worst = std::min(worst, entropy_f(x) - x * x);
        }
        ok = ok && worst >= -1e-15;
        std::uniform_real_distribution<double> su(-10.0, 10.0);
        for (const auto& inst : instances) {
            const double s = su(rng);
            if (std::abs(cgf(inst.t, s)) > std::abs(s) * inst.t.l1_norm() + 1e-12)
                ok = false;
        }
        report(7, "paper inequalities (f >= x^2, |cgf| bound, f(+-1))", ok,
               "min f - x^2 = " + fmt(worst));
    }

    // ---- criterion 8: gradient vs finite differences ----
    {
        double worst = 0.0;
        std::uniform_real_distribution<double> bu(-0.98, 0.98);
        std::uniform_int_distribution<int> nd(1, 8);
        for (int k = 0; k < 100; ++k) {
            const int n = nd(rng);
            std::vector<double> bv(n);
            for (auto& x : bv) x = bu(rng);
            const auto g = psi1_star_grad(DualVector(bv));
            for (int i = 0; i < n; ++i) {
                auto up = bv, dn = bv;
                up[i] += 1e-6;
                dn[i] -= 1e-6;
                const double fd = (psi1_star(std::span<const double>(up)) -
                                   psi1_star(std::span<const double>(dn))) / 2e-6;
                worst = std::max(worst, std::abs(fd - g[i]) /
                                            std::max(1.0, std::abs(g[i])));
            }
        }
        report(8, "gradient vs centered finite differences", worst <= 1e-6,
               "max relative error " + fmt(worst));
    }

    // ---- criterion 9: boundary and degenerate handling ----
    {
        bool ok = true;
        std::uniform_int_distribution<int> nd(1, 10);
        std::uniform_real_distribution<double> wd(0.1, 2.0);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            std::vector<double> w(nd(rng));
            for (auto& x : w) x = wd(rng);
            const WeightVector t(w);
            const ExactDist d = exact_distribution(t);
            const double atom = d.probs.back();  // mass at +||t||_1
            for (const double sgn : {1.0, -1.0}) {
                const RatePoint p = cramer_transform(t, sgn * t.l1_norm(), cfg);
                const double dev = std::abs(p.value + std::log(atom));
                worst = std::max(worst, dev);
                ok = ok && p.status == RateStatus::boundary && dev <= 1e-10;
            }
        }
        const WeightVector z(std::vector<double>{0.0, 0.0});
        ok = ok && cramer_transform(z, 0.0, cfg).value == 0.0 &&
             std::isinf(cramer_transform(z, 0.25, cfg).value) &&
             minimize_entropy(z, 0.0, cfg).value == 0.0;
        report(9, "boundary value m ln 2 and degenerate indicator", ok,
               "max |psi* + ln P(X = l1)| = " + fmt(worst));
    }

    // ---- criterion 10: n=2 brute-force variational check ----
    {
        bool ok = true;
        double worst = 0.0;
        std::uniform_real_distribution<double> wd(0.1, 2.0);
        for (int k = 0; k < 20; ++k) {
            const double t1 = wd(rng), t2 = wd(rng);
            const WeightVector t(std::vector<double>{t1, t2});
            std::uniform_real_distribution<double> au(-0.9 * t.l1_norm(),
                                                      0.9 * t.l1_norm());
            const double alpha = au(rng);
            double best = kInf;
            for (int i = -1000; i <= 1000; ++i) {
                const double b1 = i / 1000.0;
                const double b2 = (alpha - t1 * b1) / t2;
                if (std::abs(b2) > 1.0) continue;
                best = std::min(best, 0.5 * (entropy_f(b1) + entropy_f(b2)));
            }
            const double dev = std::abs(minimize_entropy(t, alpha, cfg).value - best);
            worst = std::max(worst, dev);
            ok = ok && dev <= 1e-3;
        }
        report(10, "n=2 dense sweep brackets the solver", ok,
               "max deviation " + fmt(worst));
    }

    if (g_failures == 0) std::printf("acceptance: all criteria passed\n");
    else std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
