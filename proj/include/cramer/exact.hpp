// Desk-scale ground truth: exact distributions of X_t by sign enumeration,
// tail probabilities, N-fold i.i.d. convolutions, and a grid/golden-section
// conjugate that is independent of the Newton code path.

#ifndef CRAMER_EXACT_HPP
#define CRAMER_EXACT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "cramer/core.hpp"

namespace cramer {

/// Finite discrete distribution with sorted, distinct support.
struct ExactDist {
    std::vector<double> support;  // strictly increasing
    std::vector<double> probs;    // same length, sums to 1

    double total_mass() const {
        double s = 0.0;
        for (double p : probs) s += p;
        return s;
    }
    double mean() const {
        double s = 0.0;
        for (std::size_t i = 0; i < support.size(); ++i) s += support[i] * probs[i];
        return s;
    }
    double variance() const {
        const double mu = mean();
        double s = 0.0;
        for (std::size_t i = 0; i < support.size(); ++i)
            s += (support[i] - mu) * (support[i] - mu) * probs[i];
        return s;
    }
};

namespace detail {

// Merge (value, prob) pairs whose values collide within tol.
inline ExactDist merge_points(std::vector<std::pair<double, double>> pts, double tol)
{
    std::sort(pts.begin(), pts.end());
    ExactDist d;
    for (const auto& [v, p] : pts) {
        if (!d.support.empty() && v - d.support.back() <= tol)
            d.probs.back() += p;
        else {
            d.support.push_back(v);
            d.probs.push_back(p);
        }
    }
    return d;
}

} // namespace detail

inline constexpr std::size_t kMaxEnumBits = 24;

/// Distribution of X_t = sum t_i eps_i over all 2^n sign patterns.
inline ExactDist exact_distribution(const WeightVector& t)
{
    const std::size_t n = t.size();
    if (n > kMaxEnumBits)
        throw std::length_error(
            "exact_distribution: n > 24, use Monte Carlo instead");

    // One weight at a time keeps the intermediate point count at the
    // distinct-sum count rather than 2^n.
    ExactDist acc{{0.0}, {1.0}};
    for (double w : t.weights()) {
        std::vector<std::pair<double, double>> next;
        next.reserve(2 * acc.support.size());
        for (std::size_t i = 0; i < acc.support.size(); ++i) {
            next.emplace_back(acc.support[i] + w, 0.5 * acc.probs[i]);
            next.emplace_back(acc.support[i] - w, 0.5 * acc.probs[i]);
        }
        acc = detail::merge_points(std::move(next), 1e-12);
    }
    return acc;
}

/// P(X >= alpha), closed tail.
inline double tail_probability(const ExactDist& d, double alpha)
{
    double s = 0.0;
    for (std::size_t i = d.support.size(); i-- > 0;) {
        if (d.support[i] >= alpha) s += d.probs[i];
        else break;
    }
    return s;
}

/// Exact distribution of the N-fold i.i.d. sum, by iterated pairwise
/// convolution with value merging.
inline ExactDist convolve_iid(const ExactDist& d, int N, std::size_t max_support)
{
    if (N < 1) throw std::invalid_argument("convolve_iid: N must be >= 1");

    ExactDist acc = d;
    for (int k = 1; k < N; ++k) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(acc.support.size() * d.support.size());
        for (std::size_t i = 0; i < acc.support.size(); ++i)
            for (std::size_t j = 0; j < d.support.size(); ++j)
                pts.emplace_back(acc.support[i] + d.support[j],
                                 acc.probs[i] * d.probs[j]);
        acc = detail::merge_points(std::move(pts), 1e-9);
        if (acc.support.size() > max_support)
            throw std::length_error("convolve_iid: support blow-up at fold " +
                                    std::to_string(k + 1));
    }
    return acc;
}

/// sup_s { alpha s - psi_t(s) } by bracket doubling plus golden-section
/// refinement.  Shares no code with the Newton path.
inline double conjugate_by_grid(const WeightVector& t, double alpha)
{
    const double l1 = t.l1_norm();
    if (std::abs(alpha) > l1 || (t.degenerate() && alpha != 0.0)) return kInf;
    if (alpha == 0.0) return 0.0;

    // Find S with |cgf_prime(+-S)| >= |alpha| so the maximizer is inside.
    double S = 1.0 / t.max_abs();
    while (std::abs(cgf_prime(t, std::copysign(S, alpha))) < std::abs(alpha)) {
        S *= 2.0;
        if (S > 1e12) break;  // alpha in the guard band; maximize over a huge bracket
    }

    const auto obj = [&](double s) { return alpha * s - cgf(t, s); };

    // Coarse scan
    const int kScan = 200;
    double best_s = 0.0, best_v = obj(0.0);
    for (int i = 0; i <= kScan; ++i) {
        const double s = -S + 2.0 * S * i / kScan;
        const double v = obj(s);
        if (v > best_v) { best_v = v; best_s = s; }
    }

    // Golden-section refinement around the scan winner
    const double invphi = 0.6180339887498949;
    double a = best_s - 2.0 * S / kScan, b = best_s + 2.0 * S / kScan;
    double c = b - invphi * (b - a), dd = a + invphi * (b - a);
    double fc = obj(c), fd = obj(dd);
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = dd; dd = c; fd = fc;
            c = b - invphi * (b - a); fc = obj(c);
        } else {
            a = c; c = dd; fc = fd;
            dd = a + invphi * (b - a); fd = obj(dd);
        }
    }
    return std::max(0.0, std::max(fc, fd));
}

} // namespace cramer

#endif
