// Scalar kernels and functionals for Rademacher-series rate functions:
// ln cosh, the binary entropy function f, the cumulant generating function
// psi_t and its derivatives, and the entropy functional psi1* with gradient.

#ifndef CRAMER_CORE_HPP
#define CRAMER_CORE_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cramer {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kLn2 = 0.6931471805599453094172321214581766;

/// Finite real weight sequence t with cached norms and nonzero count.
class WeightVector {
public:
    WeightVector() = default;

    explicit WeightVector(std::vector<double> weights)
        : weights_(std::move(weights))
    {
        double l1 = 0.0, l2sq = 0.0;
        for (double w : weights_) {
            if (!std::isfinite(w))
                throw std::domain_error("WeightVector: non-finite weight");
            l1 += std::abs(w);
            l2sq += w * w;
            if (w != 0.0) ++nonzero_count_;
        }
        l1_norm_ = l1;
        l2_norm_ = std::sqrt(l2sq);
    }

    const std::vector<double>& weights() const { return weights_; }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::size_t size() const { return weights_.size(); }
    double l1_norm() const { return l1_norm_; }
    double l2_norm() const { return l2_norm_; }
    std::size_t nonzero_count() const { return nonzero_count_; }
    double max_abs() const {
        double m = 0.0;
        for (double w : weights_) m = std::max(m, std::abs(w));
        return m;
    }
    // All-zero weights: the rate function degenerates to the indicator of {0}.
    bool degenerate() const { return nonzero_count_ == 0; }

private:
    std::vector<double> weights_;
    double l1_norm_ = 0.0;
    double l2_norm_ = 0.0;
    std::size_t nonzero_count_ = 0;
};

/// Candidate point of the effective domain of psi1*: |b_i| <= 1.
class DualVector {
public:
    DualVector() = default;

    explicit DualVector(std::vector<double> values)
        : values_(std::move(values))
    {
        for (double v : values_) {
            if (!(std::abs(v) <= 1.0))
                throw std::domain_error("DualVector: component outside [-1, 1]");
        }
    }

    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

private:
    std::vector<double> values_;
};

/// ln cosh(x), stable for all finite x.  Direct evaluation below |x| = 20;
/// above that cosh would eventually overflow and the remainder
/// ln(1 + e^{-2|x|}) is below double rounding anyway.
inline double ln_cosh(double x)
{
    if (!std::isfinite(x))
        throw std::domain_error("ln_cosh: non-finite input");
    const double ax = std::abs(x);
    if (ax < 20.0)
        return std::log(std::cosh(ax));
    return ax - kLn2 + std::log1p(std::exp(-2.0 * ax));
}

/// f(x) = (1+x)ln(1+x) + (1-x)ln(1-x) on [-1,1], with 0 ln 0 = 0 so that
/// f(+-1) = 2 ln 2.  Outside [-1,1] the value is +infinity (outside the
/// effective domain), not an error.
inline double entropy_f(double x)
{
    if (std::isnan(x))
        throw std::domain_error("entropy_f: NaN input");
    const double ax = std::abs(x);
    if (ax > 1.0) return kInf;
    if (ax == 1.0) return 2.0 * kLn2;
    return (1.0 + x) * std::log1p(x) + (1.0 - x) * std::log1p(-x);
}

/// psi_t(s) = sum_i ln cosh(s t_i).
inline double cgf(const WeightVector& t, double s)
{
    if (!std::isfinite(s))
        throw std::domain_error("cgf: non-finite s");
    double acc = 0.0;
    for (double w : t.weights())
        if (w != 0.0) acc += ln_cosh(s * w);
    return acc;
}

/// psi_t'(s) = sum_i t_i tanh(s t_i); strictly increasing, bounded by ||t||_1.
inline double cgf_prime(const WeightVector& t, double s)
{
    if (!std::isfinite(s))
        throw std::domain_error("cgf_prime: non-finite s");
    double acc = 0.0;
    for (double w : t.weights())
        if (w != 0.0) acc += w * std::tanh(s * w);
    return acc;
}

/// psi_t''(s) = sum_i t_i^2 sech^2(s t_i); positive when t has a nonzero
/// weight, equals ||t||_2^2 at s = 0.
inline double cgf_second(const WeightVector& t, double s)
{
    if (!std::isfinite(s))
        throw std::domain_error("cgf_second: non-finite s");
    double acc = 0.0;
    for (double w : t.weights()) {
        if (w == 0.0) continue;
        const double c = 1.0 / std::cosh(s * w);
        acc += w * w * c * c;
    }
    return acc;
}

/// psi1*(b) = (1/2) sum_i f(b_i).
inline double psi1_star(const DualVector& b)
{
    double acc = 0.0;
    for (double v : b.values()) acc += entropy_f(v);
    return 0.5 * acc;
}

inline double psi1_star(std::span<const double> b)
{
    double acc = 0.0;
    for (double v : b) acc += entropy_f(v);
    return 0.5 * acc;
}

/// Gradient of psi1*: component i is arctanh(b_i).  Defined only strictly
/// inside the box.
inline std::vector<double> psi1_star_grad(const DualVector& b)
{
    std::vector<double> g(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (std::abs(b[i]) >= 1.0)
            throw std::domain_error("psi1_star_grad: component on the boundary");
        g[i] = std::atanh(b[i]);
    }
    return g;
}

} // namespace cramer

#endif
