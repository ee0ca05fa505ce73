#include "hypfrac/fraccalc.hpp"

#include "hypfrac/errors.hpp"
#include "hypfrac/quadrature.hpp"
#include "hypfrac/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hypfrac {
namespace {

// int_0^F (F - u)^expo h(u) du for expo > -1, h smooth on (0, F] with at most
// an integrable algebraic singularity at u = 0.
//
// [F/2, F]: Gauss-Jacobi with the endpoint weight absorbed exactly.
// [0, F/2]: tanh-sinh, whose node clustering handles u^gamma, gamma > -1,
//           without knowing gamma.
template <class H>
double endpoint_weighted_integral(const H& h, double F, double expo, int jacobi_nodes, double left_tol) {
    const auto gj = quad::gauss_jacobi(jacobi_nodes, expo, 0.0);
    const double quarter = 0.25 * F;
    quad::CompensatedSum right;
    for (std::size_t i = 0; i < gj->nodes.size(); ++i) {
        const double u = 0.5 * F + quarter * (1.0 + gj->nodes[i]);
        right.add(gj->weights[i] * h(u));
    }
    const double right_part = std::pow(quarter, expo + 1.0) * right.value();

    auto kernel = [&](double u) {
        if (u <= 0.0) {
            return 0.0;
        }
        return std::pow(F - u, expo) * h(u);
    };
    const double left_part = quad::tanh_sinh().integrate(kernel, 0.0, 0.5 * F, left_tol);
    return left_part + right_part;
}

void check_time_change(const TimeChange& f, double t, const char* where) {
    if (!(f(t) > 0.0)) {
        detail::domain_fail(where, "time change must satisfy f(t) > 0 for t > 0");
    }
}

template <class H>
double stabilized(const H& integrate_at, const FracQuadOptions& opts, const char* where) {
    int nj = opts.jacobi_nodes;
    double coarse = integrate_at(nj);
    for (int d = 0; d < opts.max_doublings; ++d) {
        nj *= 2;
        const double fine = integrate_at(nj);
        if (std::abs(fine - coarse) <= opts.stabilization_tol * (1.0 + std::abs(fine))) {
            return fine;
        }
        coarse = fine;
    }
    detail::numerical_fail(where, "quadrature did not stabilize after node doubling");
}

// g'(tau) / f'(tau) at tau = f^{-1}(u), with the monotonicity guard.
struct ClockDerivative {
    const TimeFunction& g;
    const TimeChange& f;
    const char* where;

    double operator()(double u) const {
        const double tau = f.inverse(u);
        const double fp = f.derivative(tau);
        if (!(fp > 0.0) || !std::isfinite(fp)) {
            detail::domain_fail(where, "time change is not strictly increasing on the quadrature grid");
        }
        return g.derivative(tau) / fp;
    }
};

}  // namespace

TimeFunction with_numeric_derivative(std::function<double(double)> value) {
    TimeFunction out;
    out.value = value;
    out.derivative = [value](double t) {
        const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(std::abs(t), 1e-300);
        return (value(t + h) - value(t - h)) / (2.0 * h);
    };
    return out;
}

SampledFunction::SampledFunction(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() != values_.size() || grid_.size() < 2) {
        detail::domain_fail("SampledFunction", "grid and values must have equal length >= 2");
    }
    if (grid_.front() != 0.0) {
        detail::domain_fail("SampledFunction", "grid must start at 0");
    }
    for (std::size_t i = 1; i < grid_.size(); ++i) {
        if (!(grid_[i] > grid_[i - 1])) {
            detail::domain_fail("SampledFunction", "grid must be strictly increasing");
        }
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            detail::domain_fail("SampledFunction", "values must be finite");
        }
    }
}

double SampledFunction::operator()(double t) const {
    if (t < 0.0 || t > grid_.back()) {
        detail::domain_fail("SampledFunction", "evaluation outside the sampled grid");
    }
    auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - grid_.begin()), grid_.size() - 1);
    const std::size_t lo = hi - 1;
    const double w = (t - grid_[lo]) / (grid_[hi] - grid_[lo]);
    return (1.0 - w) * values_[lo] + w * values_[hi];
}

TimeFunction SampledFunction::as_function() const {
    TimeFunction out;
    auto self = std::make_shared<const SampledFunction>(*this);
    out.value = [self](double t) { return (*self)(t); };
    out.derivative = [self](double t) {
        const auto& g = self->grid();
        const auto& v = self->values();
        auto it = std::upper_bound(g.begin(), g.end(), t);
        const std::size_t hi = std::clamp<std::size_t>(static_cast<std::size_t>(it - g.begin()), 1, g.size() - 1);
        return (v[hi] - v[hi - 1]) / (g[hi] - g[hi - 1]);
    };
    return out;
}

double frac_integral(const TimeFunction& g, const TimeChange& f, double nu, double t, const FracQuadOptions& opts) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        detail::domain_fail("frac_integral", "order must be positive");
    }
    if (!(t > 0.0)) {
        detail::domain_fail("frac_integral", "time must be positive");
    }
    check_time_change(f, t, "frac_integral");
    const double F = f(t);
    auto h = [&](double u) {
        const double tau = f.inverse(u);
        if (!(f.derivative(tau) > 0.0)) {
            detail::domain_fail("frac_integral", "time change is not strictly increasing on the quadrature grid");
        }
        return g.value(tau);
    };
    auto at = [&](int nj) { return endpoint_weighted_integral(h, F, nu - 1.0, nj, opts.left_tolerance); };
    return stabilized(at, opts, "frac_integral") / std::tgamma(nu);
}

double frac_derivative(const TimeFunction& g, const TimeChange& f, double nu, double t, const FracQuadOptions& opts) {
    if (!(nu > 0.0 && nu < 1.0)) {
        detail::domain_fail("frac_derivative", "order must lie in (0, 1)");
    }
    if (!(t > 0.0)) {
        detail::domain_fail("frac_derivative", "time must be positive");
    }
    if (!g.has_derivative()) {
        detail::domain_fail("frac_derivative", "g has no derivative; wrap it with with_numeric_derivative");
    }
    check_time_change(f, t, "frac_derivative");
    const double F = f(t);
    const ClockDerivative h{g, f, "frac_derivative"};
    auto at = [&](int nj) { return endpoint_weighted_integral(h, F, -nu, nj, opts.left_tolerance); };
    return stabilized(at, opts, "frac_derivative") / std::tgamma(1.0 - nu);
}

TimeFunction to_caputo_time(const TimeFunction& g, const TimeChange& f) {
    auto value = g.value;
    return with_numeric_derivative([value, f](double s) { return value(f.inverse(s)); });
}

double relaxation_single(double beta, double omega, const TimeChange& f, double t) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        detail::domain_fail("relaxation_single", "order must lie in (0, 1]");
    }
    if (!(omega >= 0.0)) {
        detail::domain_fail("relaxation_single", "omega must be nonnegative");
    }
    if (!(t >= 0.0)) {
        detail::domain_fail("relaxation_single", "time must be nonnegative");
    }
    if (omega == 0.0 || t == 0.0) {
        return 1.0;
    }
    return mittag_leffler(beta, -omega * std::pow(f(t), beta));
}

double talbot_inverse(const std::function<std::complex<double>(std::complex<double>)>& transform, double t,
                      int nodes) {
    // Abate & Valko fixed Talbot contour s(theta) = r theta (cot theta + i).
    const double r = 2.0 * nodes / (5.0 * t);
    double sum = 0.5 * std::real(transform({r, 0.0})) * std::exp(r * t);
    for (int k = 1; k < nodes; ++k) {
        const double theta = k * std::numbers::pi / nodes;
        const double cot = 1.0 / std::tan(theta);
        const std::complex<double> s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const std::complex<double> term = std::exp(t * s) * transform(s) * std::complex<double>(1.0, sigma);
        sum += std::real(term);
    }
    return r / nodes * sum;
}

double relaxation_two_term(double beta, double lambda, double omega, double s) {
    if (!(beta > 0.0 && beta < 0.5)) {
        detail::domain_fail("relaxation_two_term", "beta must lie in (0, 1/2), got " + std::to_string(beta));
    }
    if (!(lambda > 0.0)) {
        detail::domain_fail("relaxation_two_term", "lambda must be positive");
    }
    if (!(omega >= 0.0)) {
        detail::domain_fail("relaxation_two_term", "omega must be nonnegative");
    }
    if (!(s >= 0.0)) {
        detail::domain_fail("relaxation_two_term", "time must be nonnegative");
    }
    if (s == 0.0 || omega == 0.0) {
        return 1.0;
    }
    auto transform = [&](std::complex<double> p) {
        const std::complex<double> pb = std::pow(p, beta);
        const std::complex<double> psi = pb * pb + 2.0 * lambda * pb;
        return psi / (p * (psi + omega));
    };
    const double value = talbot_inverse(transform, s, 32);
    if (!std::isfinite(value)) {
        detail::numerical_fail("relaxation_two_term",
                               "Talbot inversion broke down (beta=" + std::to_string(beta) +
                                   ", lambda=" + std::to_string(lambda) + ", omega=" + std::to_string(omega) +
                                   ", s=" + std::to_string(s) + ")");
    }
    return value;
}

}  // namespace hypfrac
