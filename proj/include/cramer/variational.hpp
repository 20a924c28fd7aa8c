// Variational route to the Cramér transform: minimize the entropy functional
// psi1*(b) over the box-hyperplane set {b in [-1,1]^n : <t,b> = alpha} with
// projected gradient descent (Barzilai-Borwein step, Armijo backtracking).
// The solver never inverts psi_t', so agreement with the Legendre route is a
// genuine cross-check.

#ifndef CRAMER_VARIATIONAL_HPP
#define CRAMER_VARIATIONAL_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cramer/config.hpp"
#include "cramer/core.hpp"

namespace cramer {

namespace detail {

inline double clip(double x, double lo, double hi)
{
    return std::min(hi, std::max(lo, x));
}

// Keep iterates strictly inside the box so the gradient stays finite.  The
// interior-alpha minimizer is strictly interior, so this clamp never binds
// at convergence.
inline constexpr double kBoxMargin = 1e-12;

// Line-search objective in extended precision: near the minimum the true
// decrease per Newton step sits below double rounding, and the Armijo test
// needs to resolve it.
inline long double psi1_star_ld(std::span<const double> b)
{
    long double acc = 0.0L;
    for (double x : b) {
        const long double v = x;
        acc += (1.0L + v) * std::log1p(v) + (1.0L - v) * std::log1p(-v);
    }
    return 0.5L * acc;
}

} // namespace detail

namespace detail {

// Projection of v onto {b in [-1,1]^n : <t,b> = alpha} in the diagonal
// metric diag(1/scale_i): b(lambda) = clip(v + lambda scale t, -1, 1).
// The constraint value is continuous and nondecreasing in lambda, so the
// multiplier is found by bracketing plus bisection.  An empty scale span
// means the Euclidean metric.
inline std::vector<double> project_scaled(std::span<const double> v,
                                          std::span<const double> scale,
                                          const WeightVector& t, double alpha)
{
    const std::size_t n = t.size();
    const double l1 = t.l1_norm();
    if (std::abs(alpha) > l1)
        throw std::domain_error("projection: alpha outside [-||t||_1, ||t||_1]");

    const auto sc = [&](std::size_t i) { return scale.empty() ? 1.0 : scale[i]; };

    std::vector<double> b(n);
    if (std::abs(alpha) >= l1 * (1.0 - 1e-15) && l1 > 0.0) {
        // corner: the constraint admits a single point on nonzero weights
        for (std::size_t i = 0; i < n; ++i)
            b[i] = (t[i] != 0.0) ? std::copysign(1.0, t[i] * alpha)
                                 : clip(v[i], -1.0, 1.0);
        return b;
    }

    const auto constraint = [&](double lambda) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (t[i] != 0.0)
                s += t[i] * clip(v[i] + lambda * sc(i) * t[i], -1.0, 1.0);
        return s - alpha;
    };

    double lo = -1.0, hi = 1.0;
    while (constraint(lo) > 0.0) lo *= 2.0;
    while (constraint(hi) < 0.0) hi *= 2.0;
    for (int k = 0; k < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++k) {
        const double mid = 0.5 * (lo + hi);
        if (constraint(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < n; ++i)
        b[i] = (t[i] != 0.0) ? clip(v[i] + lambda * sc(i) * t[i], -1.0, 1.0)
                             : clip(v[i], -1.0, 1.0);
    return b;
}

} // namespace detail

/// Euclidean projection of v onto {b in [-1,1]^n : <t,b> = alpha}.
inline std::vector<double> project_box_hyperplane(std::span<const double> v,
                                                  const WeightVector& t,
                                                  double alpha)
{
    return detail::project_scaled(v, {}, t, alpha);
}

struct KktCertificate {
    double s_hat = 0.0;     // least-squares fit of arctanh(b_i) = s t_i
    double residual = 0.0;  // max_i |arctanh(b_i) - s_hat t_i|
};

/// Stationarity check for a feasible b: at the minimizer b_i = tanh(s t_i)
/// for a common multiplier s, so the fit residual vanishes.
inline KktCertificate kkt_certificate(const WeightVector& t,
                                      std::span<const double> b)
{
    double num = 0.0, den = 0.0;
    bool on_boundary = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == 0.0) continue;
        if (std::abs(b[i]) >= 1.0) { on_boundary = true; continue; }
        num += t[i] * std::atanh(b[i]);
        den += t[i] * t[i];
    }
    KktCertificate cert;
    if (den == 0.0) return cert;
    cert.s_hat = num / den;
    if (on_boundary) {
        cert.residual = kInf;
        return cert;
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == 0.0) continue;
        cert.residual = std::max(cert.residual,
                                 std::abs(std::atanh(b[i]) - cert.s_hat * t[i]));
    }
    return cert;
}

inline KktCertificate kkt_certificate(const WeightVector& t, const DualVector& b)
{
    return kkt_certificate(t, std::span<const double>(b.values()));
}

struct VariationalSolution {
    DualVector b_star;
    double value = 0.0;
    double s_hat = 0.0;
    double kkt_residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// One accepted projected-gradient step, for invariant checks.
struct IterateRecord {
    long double value = 0.0L;     // extended-precision objective
    double feasibility_gap = 0.0; // |<t,b> - alpha|
    double residual = 0.0;
    bool polish = false;          // accepted on residual decrease, not descent
};

/// min psi1*(b) over {b in [-1,1]^n : <t,b> = alpha}.
inline VariationalSolution minimize_entropy(const WeightVector& t, double alpha,
                                            const SolverConfig& cfg = {},
                                            std::vector<IterateRecord>* trace = nullptr)
{
    cfg.validate();
    const std::size_t n = t.size();
    const double l1 = t.l1_norm();
    if (std::abs(alpha) > l1)
        throw std::domain_error("minimize_entropy: alpha outside [-||t||_1, ||t||_1]");

    VariationalSolution sol;

    if (t.degenerate()) {
        // only alpha = 0 is feasible; the minimum is b = 0
        sol.b_star = DualVector(std::vector<double>(n, 0.0));
        sol.converged = true;
        return sol;
    }

    if (std::abs(alpha) >= l1 * (1.0 - 1e-15)) {
        // corner: unique feasible point b_i = sign(t_i alpha), value m ln 2
        std::vector<double> b(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            if (t[i] != 0.0) b[i] = std::copysign(1.0, t[i] * alpha);
        sol.b_star = DualVector(b);
        sol.value = static_cast<double>(t.nonzero_count()) * kLn2;
        sol.s_hat = std::copysign(kInf, alpha);
        sol.converged = true;
        return sol;
    }

    const auto clamp_interior = [&](std::vector<double>& b) {
        for (std::size_t i = 0; i < n; ++i)
            if (t[i] != 0.0)
                b[i] = detail::clip(b[i], -1.0 + detail::kBoxMargin,
                                    1.0 - detail::kBoxMargin);
    };

    std::vector<double> b = project_box_hyperplane(std::vector<double>(n, 0.0), t, alpha);
    clamp_interior(b);
    long double fb = detail::psi1_star_ld(b);

    const auto feasibility_gap = [&]() {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += t[i] * b[i];
        return std::abs(dot - alpha);
    };
    const auto record = [&](bool polish, double residual) {
        if (trace)
            trace->push_back({fb, feasibility_gap(), residual, polish});
    };
    record(false, kInf);

    std::vector<double> g(n), scale(n), v(n), trial(n);
    int iter = 0;
    for (; iter < cfg.pg_max_iters; ++iter) {
        for (std::size_t i = 0; i < n; ++i) g[i] = std::atanh(b[i]);

        const KktCertificate cert = kkt_certificate(t, b);
        sol.s_hat = cert.s_hat;
        sol.kkt_residual = cert.residual;
        if (cert.residual <= cfg.pg_tol) {
            sol.converged = true;
            break;
        }

        // Diagonal scaling by the inverse curvature 1 - b_i^2 of the
        // entropy objective.  The floor keeps coordinates that sit near the
        // box wall mobile far from the solution and fades out as the
        // residual shrinks, so the final phase is an undamped Newton metric.
        const double floor = 1e-3 * std::min(1.0, cert.residual);
        for (std::size_t i = 0; i < n; ++i)
            scale[i] = std::max(1.0 - b[i] * b[i], floor);

        // Once the predicted decrease falls below the coordinate-quantization
        // noise in the objective, descent can no longer be certified in
        // doubles; accept steps on strict residual decrease instead.
        double g_l1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) g_l1 += std::abs(g[i]);
        const double f_noise = 2.3e-16 * g_l1 + 1e-18;

        double step = cfg.pg_step0;
        bool stalled = false;
        while (true) {
            for (std::size_t i = 0; i < n; ++i) v[i] = b[i] - step * scale[i] * g[i];
            trial = detail::project_scaled(v, scale, t, alpha);
            clamp_interior(trial);
            const long double ft = detail::psi1_star_ld(trial);
            long double dir = 0.0L;
            for (std::size_t i = 0; i < n; ++i)
                dir += static_cast<long double>(g[i]) * (trial[i] - b[i]);
            if (static_cast<double>(-dir) < f_noise) {
                // polish phase: Newton steps judged by the residual
                const double trial_res = kkt_certificate(t, trial).residual;
                if (trial_res < cert.residual) {
                    b.swap(trial);
                    fb = detail::psi1_star_ld(b);
                    record(true, trial_res);
                    break;
                }
                if (step < 0.2 * cfg.pg_step0) { stalled = true; break; }
                step *= cfg.pg_shrink;
                continue;
            }
            if (ft <= fb + 1e-4L * dir + 1e-18L) {
                b.swap(trial);
                fb = ft;
                record(false, cert.residual);
                break;
            }
            if (step < 1e-18) { stalled = true; break; }
            step *= cfg.pg_shrink;
        }
        if (stalled) break;  // no representable progress left
    }

    sol.b_star = DualVector(b);
    sol.value = psi1_star(sol.b_star);
    sol.iterations = iter;
    return sol;
}

} // namespace cramer

#endif
