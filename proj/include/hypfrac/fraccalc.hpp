#pragma once

#include "hypfrac/time_change.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace hypfrac {

/// A scalar function of time with an optional derivative.
struct TimeFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;  // empty when unknown

    [[nodiscard]] bool has_derivative() const { return static_cast<bool>(derivative); }
};

/// Attach a centered finite-difference derivative with step
/// h = cbrt(eps) * max(|t|, 1e-300) to a value-only function.
TimeFunction with_numeric_derivative(std::function<double(double)> value);

/// Samples g(t_i) on a strictly increasing grid starting at 0, read back by
/// piecewise-linear interpolation.
class SampledFunction {
public:
    SampledFunction(std::vector<double> grid, std::vector<double> values);

    [[nodiscard]] double operator()(double t) const;
    [[nodiscard]] const std::vector<double>& grid() const { return grid_; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    /// Value plus the piecewise-constant slope as derivative.
    [[nodiscard]] TimeFunction as_function() const;

private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// Quadrature controls shared by the fractional operators.
struct FracQuadOptions {
    int jacobi_nodes = 32;        // nodes on [f(t)/2, f(t)] absorbing the endpoint weight
    double left_tolerance = 1e-12;  // tanh-sinh target on [0, f(t)/2]
    int max_doublings = 3;
    double stabilization_tol = 1e-9;
};

/// (1/Gamma(nu)) int_0^t f'(tau) (f(t) - f(tau))^{nu-1} g(tau) dtau, nu > 0, t > 0.
double frac_integral(const TimeFunction& g, const TimeChange& f, double nu, double t,
                     const FracQuadOptions& opts = {});

/// Caputo-type derivative (1/Gamma(1-nu)) int_0^t (f(t) - f(tau))^{-nu} g'(tau) dtau,
/// 0 < nu < 1. Requires g.derivative.
double frac_derivative(const TimeFunction& g, const TimeChange& f, double nu, double t,
                       const FracQuadOptions& opts = {});

/// g expressed in the clock variable: s -> g(f^{-1}(s)), with a
/// finite-difference derivative. The Caputo derivative (f = identity) of the
/// result at s = f(t) equals frac_derivative(g, f, nu, t).
TimeFunction to_caputo_time(const TimeFunction& g, const TimeChange& f);

/// E_beta(-omega f(t)^beta): temporal factor of the single-term equation.
double relaxation_single(double beta, double omega, const TimeChange& f, double t);

/// Solution T(s) of D^{2 beta} T + 2 lambda D^beta T = -omega T, T(0) = 1
/// (Caputo derivatives in the clock variable s), 0 < beta < 1/2, lambda > 0.
///
/// Inverts T~(p) = (p^{2b-1} + 2 lambda p^{b-1}) / (p^{2b} + 2 lambda p^b + omega)
/// along a fixed Talbot contour.
double relaxation_two_term(double beta, double lambda, double omega, double s);

/// Fixed-Talbot inverse Laplace transform of F at t > 0 with M contour nodes.
double talbot_inverse(const std::function<std::complex<double>(std::complex<double>)>& transform,
                      double t, int nodes = 32);

}  // namespace hypfrac
