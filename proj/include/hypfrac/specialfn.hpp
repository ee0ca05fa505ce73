#pragma once

namespace hypfrac {

/// One-parameter Mittag-Leffler function E_beta(z) = sum_k z^k / Gamma(beta k + 1).
///
/// Valid for 0 < beta <= 1 and finite z. Accuracy is ~1e-10 relative on z <= 0,
/// the completely monotone regime used by the relaxation solvers. Small |z|
/// uses a compensated power series; larger negative z uses the integral
///
///   E_beta(-x) = sin(beta pi)/(beta pi) * int_0^inf exp(-y^{1/beta}) x / (y^2 + 2 x y cos(beta pi) + x^2) dy,
///
/// which has a positive integrand and no cancellation.
double mittag_leffler(double beta, double z);

/// d/dz E_beta(z), same domain and branch structure as mittag_leffler.
double mittag_leffler_derivative(double beta, double z);

/// M-Wright function M_beta(x) for 0 < beta < 1, x >= 0.
///
/// M_beta is the density of the inverse stable subordinator at unit time;
/// the density of L^beta(t) at s is t^{-beta} M_beta(s t^{-beta}).
double m_wright(double beta, double x);

/// Reciprocal gamma function, zero at the poles of Gamma.
double rgamma(double x);

namespace detail {

// Individual branches, exposed so that tests can check their overlap.
double mittag_leffler_series(double beta, double z);
double mittag_leffler_integral(double beta, double x);  // E_beta(-x), x > 0
double mittag_leffler_series_derivative(double beta, double z);
double mittag_leffler_integral_derivative(double beta, double x);  // E'_beta(-x), x > 0
double m_wright_series(double beta, double x);
double m_wright_integral(double beta, double x);

/// log of Kanter's function
///   A(u) = sin(beta u)^{beta/(1-beta)} sin((1-beta) u) / sin(u)^{1/(1-beta)},  u in (0, pi).
/// A one-sided beta-stable variable with Laplace transform exp(-p^beta) is
/// (A(U)/E)^{(1-beta)/beta} for U ~ Uniform(0, pi), E ~ Exp(1).
double kanter_log_a(double beta, double u);

inline constexpr double kMLSeriesRadius = 1.0;
inline constexpr double kMWrightSeriesRadius = 0.5;

}  // namespace detail
}  // namespace hypfrac
