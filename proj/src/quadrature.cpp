#include "hypfrac/quadrature.hpp"

#include "hypfrac/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace hypfrac::quad {
namespace {

GaussRule build_gauss_jacobi(int n, double a, double b) {
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        if (k == 0) {
            diag(k) = (b - a) / (ab + 2.0);
        } else {
            diag(k) = (b * b - a * a) / (s * (s + 2.0));
        }
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        double v;
        if (k == 1) {
            // (k + a + b) cancels against (2k + a + b - 1) at k = 1.
            v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            v = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        sub(k - 1) = std::sqrt(v);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    if (n == 1) {
        GaussRule r;
        r.nodes = {diag(0)};
        r.weights = {std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0))};
        return r;
    }
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        detail::numerical_fail("gauss_jacobi", "tridiagonal eigen solve failed");
    }
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace

std::shared_ptr<const GaussRule> gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) {
        detail::domain_fail("gauss_jacobi", "need at least one node");
    }
    if (!(alpha > -1.0) || !(beta > -1.0)) {
        detail::domain_fail("gauss_jacobi", "exponents must exceed -1");
    }
    static std::mutex mutex;
    static std::map<std::tuple<int, double, double>, std::shared_ptr<const GaussRule>> cache;
    const auto key = std::make_tuple(n, alpha, beta);
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    auto rule = std::make_shared<const GaussRule>(build_gauss_jacobi(n, alpha, beta));
    std::lock_guard<std::mutex> lock(mutex);
    // Bounded: orders arrive from parameter sweeps, not from unbounded input.
    if (cache.size() > 4096) {
        cache.clear();
    }
    cache.emplace(key, rule);
    return rule;
}

std::shared_ptr<const GaussRule> gauss_legendre(int n) {
    return gauss_jacobi(n, 0.0, 0.0);
}

boost::math::quadrature::tanh_sinh<double>& tanh_sinh() {
    static boost::math::quadrature::tanh_sinh<double> integrator(15);
    return integrator;
}

boost::math::quadrature::exp_sinh<double>& exp_sinh() {
    static boost::math::quadrature::exp_sinh<double> integrator(12);
    return integrator;
}

}  // namespace hypfrac::quad
