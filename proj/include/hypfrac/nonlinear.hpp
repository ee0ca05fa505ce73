#pragma once

#include "hypfrac/time_change.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hypfrac {

/// Separable solution u = g(eta) E_beta(-f(t)^beta) of
///   O^{beta,f} u = Lap_radial(u^n) - u,  with d(g^n)/d eta = 1/sinh(eta),
/// i.e. g^n = C + ln tanh(eta/2). g^n > 0 only beyond eta_star, where
/// ln tanh(eta_star/2) = -C, so C must be positive.
struct NonlinearProfile {
    double n = 1.0;
    double C = 1.0;
    double eta_star = 0.0;
};

/// Validates n > 0, C > 0 and fills eta_star = 2 artanh(exp(-C)).
NonlinearProfile make_profile(double n, double C);

/// g(eta) = (C + ln tanh(eta/2))^{1/n}; throws for eta <= eta_star.
double separable_profile(const NonlinearProfile& prof, double eta);

/// g(eta)^n, the quantity the radial Laplacian annihilates.
double profile_power(const NonlinearProfile& prof, double eta);

/// u(eta, t) = g(eta) E_beta(-f(t)^beta).
double separable_solution(const NonlinearProfile& prof, double beta, const TimeChange& f, double eta, double t);

/// O^{beta,f} u - Lap_radial(u^n) + u at (eta, t), with both operators
/// evaluated numerically. Vanishes for the exact solution.
double nonlinear_residual(const NonlinearProfile& prof, double beta, const TimeChange& f, double eta, double t);

struct ResidualRow {
    double n = 0.0;
    double C = 0.0;
    double beta = 0.0;
    std::string f_kind;
    double eta = 0.0;
    double t = 0.0;
    double residual = 0.0;
};

/// CSV `n,C,beta,f_kind,eta,t,residual`, 17 significant digits.
void write_csv(const std::vector<ResidualRow>& rows, std::ostream& out);

}  // namespace hypfrac
