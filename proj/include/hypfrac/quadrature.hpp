#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <memory>
#include <vector>

namespace hypfrac::quad {

/// Nodes and weights of an n-point Gauss rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1 - x)^alpha (1 + x)^beta, alpha, beta > -1.
///
/// Built by Golub-Welsch from the three-term recurrence. Rules are memoized
/// per (n, alpha, beta); the returned rule is immutable and may be shared
/// between threads.
std::shared_ptr<const GaussRule> gauss_jacobi(int n, double alpha, double beta);

/// Gauss-Legendre rule (Jacobi with alpha = beta = 0).
std::shared_ptr<const GaussRule> gauss_legendre(int n);

/// Process-wide double-exponential integrators. Boost's implementation guards
/// its lazily refined tables with a mutex, so these are safe to share.
boost::math::quadrature::tanh_sinh<double>& tanh_sinh();
boost::math::quadrature::exp_sinh<double>& exp_sinh();

/// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
double legendre_integral(const F& f, double a, double b, const GaussRule& rule) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace hypfrac::quad
