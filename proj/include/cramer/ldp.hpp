// Large-deviations experiments: plain and exponentially tilted sampling,
// Chernoff verification against exact tails, and empirical-mean rate
// convergence along an N-schedule.

#ifndef CRAMER_LDP_HPP
#define CRAMER_LDP_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cramer/config.hpp"
#include "cramer/core.hpp"
#include "cramer/exact.hpp"
#include "cramer/legendre.hpp"

namespace cramer {

using Rng = std::mt19937_64;

/// One draw of X_t = sum t_i eps_i with independent fair signs.
inline double sample_series(const WeightVector& t, Rng& rng)
{
    double x = 0.0;
    for (double w : t.weights()) {
        // one bit per sign
        const double sign = (rng() & 1u) ? 1.0 : -1.0;
        x += w * sign;
    }
    return x;
}

struct TiltedDraw {
    double draw = 0.0;
    double log_weight = 0.0;  // -s draw + psi_t(s); importance weight back to the fair measure
};

/// Draw X under the product tilted measure P(eps_i = 1) = e^{s t_i}/(2 cosh(s t_i)),
/// whose sign means are b_i = tanh(s t_i).
inline TiltedDraw tilted_sampler(const WeightVector& t, double s, Rng& rng)
{
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double x = 0.0;
    for (double w : t.weights()) {
        const double p_plus = 1.0 / (1.0 + std::exp(-2.0 * s * w));
        x += (unif(rng) < p_plus) ? w : -w;
    }
    return {x, -s * x + cgf(t, s)};
}

/// Wilson score interval for a binomial proportion.
struct Interval {
    double center = 0.0;
    double half_width = 0.0;
};

inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                double z = 1.959963984540054)
{
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double hw = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center, hw};
}

struct ChernoffRow {
    double alpha = 0.0;
    double rate_value = 0.0;
    double tail = 0.0;        // deviation probability P(X >= |alpha|), exact or MC
    double ci_half_width = 0.0;  // 0 in exact mode
    double bound = 0.0;       // exp(-rate_value)
    bool exact = true;
    bool chernoff_ok = false;
};

struct RateGapRow {
    int N = 0;
    double tail = 0.0;        // deviation probability P(S_N / N >= |alpha|)
    double ci_half_width = 0.0;
    double g = 0.0;           // -(1/N) ln tail
    double gap = 0.0;         // g - psi*(alpha)
    bool exact = true;
};

struct ExperimentReport {
    std::vector<double> weights;
    double l1_norm = 0.0;
    std::uint64_t seed = 0;
    std::vector<ChernoffRow> chernoff_rows;
    std::vector<RateGapRow> rate_rows;
    bool all_chernoff_ok = true;
    bool gaps_decreasing = true;
    double final_gap = 0.0;
};

/// Verifies the Chernoff bound at every grid alpha using exact enumeration:
/// P(X >= alpha) <= exp(-psi*(alpha)) for alpha >= 0 and, by symmetry,
/// P(X <= alpha) <= exp(-psi*(alpha)) for alpha < 0 (the deviation event
/// always points away from the mean).
inline std::vector<ChernoffRow> chernoff_check(const WeightVector& t,
                                               const std::vector<double>& alphas,
                                               const SolverConfig& cfg = {})
{
    const ExactDist d = exact_distribution(t);
    std::vector<ChernoffRow> rows;
    rows.reserve(alphas.size());
    for (double a : alphas) {
        ChernoffRow row;
        row.alpha = a;
        row.rate_value = cramer_transform(t, a, cfg).value;
        row.tail = tail_probability(d, std::abs(a));
        row.bound = std::exp(-row.rate_value);
        row.chernoff_ok = row.tail <= row.bound;
        rows.push_back(row);
    }
    return rows;
}

/// Monte Carlo tail estimate under exponential tilting at the rate-optimal s.
inline ChernoffRow mc_tail(const WeightVector& t, double alpha,
                           std::uint64_t samples, Rng& rng,
                           const SolverConfig& cfg = {})
{
    ChernoffRow row;
    row.alpha = alpha;
    row.exact = false;
    const RatePoint rp = cramer_transform(t, alpha, cfg);
    row.rate_value = rp.value;
    row.bound = std::exp(-rp.value);
    const double s = rp.tilt.value_or(0.0);

    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t k = 0; k < samples; ++k) {
        const TiltedDraw td = tilted_sampler(t, s, rng);
        // deviation event: away from the zero mean, matching the bound
        const bool hit = alpha >= 0.0 ? td.draw >= alpha : td.draw <= alpha;
        const double w = hit ? std::exp(td.log_weight) : 0.0;
        sum += w;
        sum_sq += w * w;
    }
    const double n = static_cast<double>(samples);
    row.tail = sum / n;
    const double var = std::max(0.0, sum_sq / n - row.tail * row.tail);
    row.ci_half_width = 1.959963984540054 * std::sqrt(var / n);
    row.chernoff_ok = row.tail <= row.bound + 3.0 * row.ci_half_width;
    return row;
}

/// For each N in the schedule, g_N = -(1/N) ln P(S_N/N >= alpha) via exact
/// convolution; falls back to tilted Monte Carlo on support blow-up.
inline std::vector<RateGapRow> rate_convergence(const WeightVector& t,
                                                double alpha,
                                                const std::vector<int>& Ns,
                                                Rng& rng,
                                                const SolverConfig& cfg = {},
                                                std::size_t max_support = 2'000'000,
                                                std::uint64_t mc_samples = 200'000)
{
    const double rate = cramer_transform(t, alpha, cfg).value;
    const ExactDist base = exact_distribution(t);
    std::vector<RateGapRow> rows;
    rows.reserve(Ns.size());
    for (int N : Ns) {
        RateGapRow row;
        row.N = N;
        try {
            const ExactDist dN = convolve_iid(base, N, max_support);
            // symmetric law: P(S <= N alpha) = P(S >= N |alpha|) for alpha < 0
            row.tail = tail_probability(dN, std::abs(alpha) * N);
        } catch (const std::length_error&) {
            row.exact = false;
            // one tilted estimate of P(sum of N copies >= N alpha)
            const double s = solve_tilt(t, alpha, cfg).s;
            double sum = 0.0;
            for (std::uint64_t k = 0; k < mc_samples; ++k) {
                double total = 0.0, logw = 0.0;
                for (int j = 0; j < N; ++j) {
                    const TiltedDraw td = tilted_sampler(t, s, rng);
                    total += td.draw;
                    logw += td.log_weight;
                }
                const bool hit =
                    alpha >= 0.0 ? total >= alpha * N : total <= alpha * N;
                if (hit) sum += std::exp(logw);
            }
            row.tail = sum / static_cast<double>(mc_samples);
        }
        row.g = -std::log(row.tail) / static_cast<double>(N);
        row.gap = row.g - rate;
        rows.push_back(row);
    }
    return rows;
}

} // namespace cramer

#endif
