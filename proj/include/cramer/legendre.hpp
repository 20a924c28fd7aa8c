// Classical route to the Cramér transform: invert the strictly monotone
// derivative psi_t'(s) = alpha with safeguarded Newton, then evaluate
// psi_t*(alpha) = alpha s - psi_t(s).

#ifndef CRAMER_LEGENDRE_HPP
#define CRAMER_LEGENDRE_HPP

#include <cmath>
#include <optional>
#include <string>

#include "cramer/config.hpp"
#include "cramer/core.hpp"

namespace cramer {

enum class RateStatus { interior, boundary, exterior, degenerate };

inline const char* to_string(RateStatus s)
{
    switch (s) {
        case RateStatus::interior: return "interior";
        case RateStatus::boundary: return "boundary";
        case RateStatus::exterior: return "exterior";
        case RateStatus::degenerate: return "degenerate";
    }
    return "?";
}

/// One evaluated point of the rate function.
struct RatePoint {
    double alpha = 0.0;
    double value = 0.0;                     // +inf outside the domain
    std::optional<double> tilt;             // s with psi_t'(s) = alpha
    std::optional<DualVector> minimizer;    // filled by the variational route
    RateStatus status = RateStatus::interior;
    int iterations = 0;
};

struct RateDomain {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t m = 0;  // nonzero weight count
};

/// Effective domain of psi_t*: the open interval (-||t||_1, ||t||_1).
inline RateDomain rate_domain(const WeightVector& t)
{
    return {-t.l1_norm(), t.l1_norm(), t.nonzero_count()};
}

struct TiltResult {
    double s = 0.0;
    int iterations = 0;
};

/// Solves psi_t'(s) = alpha for the guarded interior
/// |alpha| < ||t||_1 (1 - boundary_guard).  Expands a bracket until the
/// residual changes sign, then runs Newton with bisection fallback; a Newton
/// step is rejected if it leaves the bracket or fails to shrink the residual.
inline TiltResult solve_tilt(const WeightVector& t, double alpha,
                             const SolverConfig& cfg = {})
{
    cfg.validate();
    const double l1 = t.l1_norm();
    if (t.degenerate())
        throw std::domain_error("solve_tilt: degenerate weights");
    if (!(std::abs(alpha) < l1 * (1.0 - cfg.boundary_guard)))
        throw std::domain_error("solve_tilt: alpha outside guarded interior");
    if (alpha == 0.0) return {0.0, 0};

    const auto residual = [&](double s) { return cgf_prime(t, s) - alpha; };

    // cgf_prime is odd and increasing, so the root shares alpha's sign.
    double lo = 0.0, hi = 0.0;
    double s0 = std::abs(alpha) / (l1 * t.max_abs());
    if (alpha > 0) {
        hi = s0;
        while (residual(hi) < 0) { lo = hi; hi *= cfg.bracket_growth; }
    } else {
        lo = -s0;
        while (residual(lo) > 0) { hi = lo; lo *= cfg.bracket_growth; }
    }

    double s = 0.5 * (lo + hi);
    double r = residual(s);
    int iter = 0;
    for (; iter < cfg.max_newton_iters && std::abs(r) > cfg.root_tol; ++iter) {
        const double d = cgf_second(t, s);
        double trial = s - r / d;
        double rt;
        if (trial > lo && trial < hi &&
            std::abs(rt = residual(trial)) < std::abs(r)) {
            s = trial;
            r = rt;
        } else {
            s = 0.5 * (lo + hi);
            r = residual(s);
        }
        if (r > 0) hi = s; else lo = s;
    }
    if (std::abs(r) > cfg.root_tol)
        throw std::runtime_error("solve_tilt: no convergence after " +
                                 std::to_string(iter) + " iterations, residual " +
                                 std::to_string(r));
    return {s, iter};
}

/// psi_t*(alpha) with full regime handling: interior Newton solve, +inf
/// outside the closed interval, m ln 2 at the endpoints (the finite-n
/// conjugate value there), and the indicator of {0} for all-zero weights.
inline RatePoint cramer_transform(const WeightVector& t, double alpha,
                                  const SolverConfig& cfg = {})
{
    RatePoint p;
    p.alpha = alpha;
    const double l1 = t.l1_norm();

    if (t.degenerate()) {
        p.status = RateStatus::degenerate;
        p.value = (alpha == 0.0) ? 0.0 : kInf;
        return p;
    }
    if (std::abs(alpha) > l1) {
        p.status = RateStatus::exterior;
        p.value = kInf;
        return p;
    }
    if (std::abs(alpha) >= l1 * (1.0 - cfg.boundary_guard)) {
        p.status = RateStatus::boundary;
        p.value = static_cast<double>(t.nonzero_count()) * kLn2;
        return p;
    }

    const TiltResult tr = solve_tilt(t, alpha, cfg);
    p.status = RateStatus::interior;
    p.tilt = tr.s;
    p.iterations = tr.iterations;
    p.value = std::max(0.0, alpha * tr.s - cgf(t, tr.s));
    return p;
}

} // namespace cramer

#endif
