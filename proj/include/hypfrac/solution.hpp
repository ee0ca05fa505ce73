#pragma once

#include "hypfrac/parallel.hpp"
#include "hypfrac/time_change.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace hypfrac {

/// Arguments of u(eta, t) for the single-term equation.
struct SolutionQuery {
    double beta = 0.5;
    TimeChange f = TimeChange::identity();
    double t = 1.0;
    double eta = 1.0;
};

/// Temporal factor T(omega) at a fixed time, omega = 1/4 + x^2 the spectral
/// parameter, with the first terms of its large-omega expansion
/// T(omega) ~ sum_k tail[k] omega^{-(k+1)}. The tail is subtracted before the
/// sine transform and added back in closed form.
struct TemporalFactor {
    std::function<double(double)> value;
    std::array<double, 3> tail{};
    std::string label;
};

/// E_beta(-omega F^beta) with F = f(t).
TemporalFactor mittag_leffler_factor(double beta, double clock);
/// relaxation_two_term(beta, lambda, omega, F) with F = f(t).
TemporalFactor two_term_factor(double beta, double lambda, double clock);

struct SpectralConfig {
    double x_max = 80.0;   // spectral truncation
    int n_x = 3200;        // trapezoid nodes on [0, x_max] (x-first order); GL nodes in phi-inner order
    int n_phi = 24;        // Chebyshev nodes per phi panel
    double phi_panel = 0.5;
    double eta_max = 30.0;  // largest eta the kernel serves
    double eta_min = 1e-6;
    bool swap_order = true;  // false: inner phi integral first, as the formula is written
    double stabilization_tol = 1e-8;
    int max_doublings = 4;
};

/// Spectral evaluator of
///   u(eta) = (2/pi) int_0^inf x T(1/4 + x^2) dx int_eta^inf sin(x phi) / sqrt(2 cosh phi - 2 cosh eta) dphi.
///
/// With swap_order the x-integral is done first: S(phi) = int_0^inf x T sin(x phi) dx
/// is tabulated once on Chebyshev panels, after which each eta costs one
/// tanh-sinh integral in v, phi = eta + v^2. In phi-inner order the inner phi
/// integral is evaluated per outer x node, which only converges when x T(1/4+x^2)
/// decays fast (beta = 1, large clock); otherwise a NumericalError reports the
/// residual envelope.
class SpectralKernel {
public:
    SpectralKernel(TemporalFactor factor, SpectralConfig cfg = {}, Execution exec = Execution::parallel);

    [[nodiscard]] double operator()(double eta) const;
    /// Tabulated S(phi); only meaningful with swap_order.
    [[nodiscard]] double sine_transform(double phi) const;
    [[nodiscard]] const SpectralConfig& config() const { return cfg_; }

private:
    double evaluate_swapped(double eta) const;
    double evaluate_phi_inner(double eta) const;
    double direct_sine_transform(double phi, int stride) const;

    TemporalFactor factor_;
    SpectralConfig cfg_;
    double phi_max_ = 0.0;
    double x_step_ = 0.0;
    std::vector<double> remainder_;   // x (T - tail) at trapezoid nodes
    std::vector<double> cheb_coeffs_; // n_phi coefficients per panel
};

/// Kernel for the fundamental solution of the single-term equation at time t.
SpectralKernel diffusion_kernel(double beta, const TimeChange& f, double t, const SpectralConfig& cfg = {},
                                Execution exec = Execution::parallel);
/// Kernel for the two-term (telegraph-type) equation at time t.
SpectralKernel telegraph_kernel(double beta, double lambda, const TimeChange& f, double t,
                                const SpectralConfig& cfg = {}, Execution exec = Execution::parallel);

double fundamental_solution_spectral(const SolutionQuery& q, const SpectralConfig& cfg = {});

/// Hyperbolic heat kernel (beta = 1, f = identity) in closed single-integral form.
double classical_kernel(double t, double eta);

/// int_0^inf classical_kernel(s, eta) F^{-beta} M_beta(s F^{-beta}) ds, F = f(t).
double fundamental_solution_subordination(const SolutionQuery& q);

double telegraph_solution_spectral(double beta, double lambda, const TimeChange& f, double t, double eta,
                                   const SpectralConfig& cfg = {});

/// Tabulated radial solution. The radial law has density sinh(eta) u(eta, t)
/// with respect to d eta; mass is its integral over the grid.
struct SolutionField {
    std::vector<double> eta;
    std::vector<double> u;
    double t = 0.0;
    double beta = 1.0;
    double lambda = 0.0;  // 0 for the single-term equation
    std::string f_kind = "identity";
    std::string route = "spectral";
    double mass = 0.0;
    std::vector<double> cdf;  // cumulative mass at each grid node
};

/// Geometric nodes from eta_min up to 0.05, then uniform with step `step` to eta_max.
std::vector<double> radial_grid(double eta_max, double step = 0.01, double eta_min = 1e-5);

/// Parses "start:stop:count" into count uniformly spaced values.
std::vector<double> parse_grid(const std::string& spec);

/// Evaluates u on the grid (OpenMP over nodes, or serially) and fills mass and CDF.
SolutionField evaluate_field(const std::function<double(double)>& u, std::vector<double> grid,
                             Execution exec = Execution::parallel);

/// Fills mass and the cumulative table by trapezoid quadrature of sinh(eta) u
/// from eta = 0 (where the integrand vanishes).
void finalize_field(SolutionField& field);

/// Cumulative radial law at eta, linear between grid nodes. Throws for eta < 0
/// or beyond the last node.
double radial_cdf(const SolutionField& field, double eta);

/// int_{eta_min}^{eta_max} sinh(eta) u(eta) d eta with Gauss-Legendre panels
/// (geometric near the origin). Much tighter than the grid trapezoid.
double kernel_mass(const std::function<double(double)>& u, double eta_max = 30.0, double eta_min = 1e-6);

/// CSV with header `eta,u,t,beta,f_kind`, 17 significant digits.
void write_csv(const SolutionField& field, std::ostream& out);

}  // namespace hypfrac
