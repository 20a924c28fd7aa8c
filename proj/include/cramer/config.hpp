#ifndef CRAMER_CONFIG_HPP
#define CRAMER_CONFIG_HPP

#include <stdexcept>

namespace cramer {

/// Tolerances and iteration caps shared by the tilt solver and the
/// projected-gradient entropy minimizer.
struct SolverConfig {
    // Newton/bisection tilt solve
    double root_tol = 1e-12;       // on |cgf_prime(s) - alpha|
    int max_newton_iters = 100;
    double bracket_growth = 2.0;
    double boundary_guard = 1e-9;  // relative band around |alpha|/||t||_1 = 1

    // projected gradient
    double pg_step0 = 1.0;
    double pg_shrink = 0.5;
    double pg_tol = 1e-10;         // on the KKT residual
    int pg_max_iters = 10000;

    void validate() const {
        if (root_tol <= 0 || boundary_guard <= 0 || pg_step0 <= 0 ||
            pg_tol <= 0 || bracket_growth <= 1.0)
            throw std::invalid_argument("SolverConfig: tolerances must be positive");
        if (pg_shrink <= 0 || pg_shrink >= 1)
            throw std::invalid_argument("SolverConfig: pg_shrink must be in (0,1)");
        if (max_newton_iters < 1 || pg_max_iters < 1)
            throw std::invalid_argument("SolverConfig: iteration caps must be >= 1");
    }
};

} // namespace cramer

#endif
