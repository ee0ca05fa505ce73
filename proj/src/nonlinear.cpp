#include "hypfrac/nonlinear.hpp"

#include "hypfrac/errors.hpp"
#include "hypfrac/fraccalc.hpp"
#include "hypfrac/hypgeo.hpp"
#include "hypfrac/specialfn.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace hypfrac {

NonlinearProfile make_profile(double n, double C) {
    if (!(n > 0.0) || !std::isfinite(n)) {
        detail::domain_fail("make_profile", "exponent n must be positive");
    }
    if (!(C > 0.0) || !std::isfinite(C)) {
        detail::domain_fail("make_profile", "C must be positive: ln tanh(eta/2) < 0 everywhere");
    }
    return {n, C, 2.0 * std::atanh(std::exp(-C))};
}

double profile_power(const NonlinearProfile& prof, double eta) {
    if (!(eta > prof.eta_star)) {
        std::ostringstream msg;
        msg << "eta=" << eta << " not beyond eta_star=" << prof.eta_star;
        detail::domain_fail("separable_profile", msg.str());
    }
    return prof.C + std::log(std::tanh(0.5 * eta));
}

double separable_profile(const NonlinearProfile& prof, double eta) {
    return std::pow(profile_power(prof, eta), 1.0 / prof.n);
}

double separable_solution(const NonlinearProfile& prof, double beta, const TimeChange& f, double eta, double t) {
    return separable_profile(prof, eta) * relaxation_single(beta, 1.0, f, t);
}

double nonlinear_residual(const NonlinearProfile& prof, double beta, const TimeChange& f, double eta, double t) {
    if (!(beta > 0.0 && beta < 1.0)) {
        detail::domain_fail("nonlinear_residual", "order must lie in (0, 1)");
    }
    if (!(t > 0.0)) {
        detail::domain_fail("nonlinear_residual", "time must be positive");
    }
    const double g = separable_profile(prof, eta);

    // Temporal part: g(eta) r(tau) with r = E_beta(-f^beta) and its exact derivative.
    TimeFunction u_of_t;
    u_of_t.value = [&](double tau) { return g * mittag_leffler(beta, -std::pow(f(tau), beta)); };
    u_of_t.derivative = [&](double tau) {
        const double s = f(tau);
        if (s <= 0.0) {
            return 0.0;  // integrable endpoint; the quadrature never samples tau = 0
        }
        const double z = -std::pow(s, beta);
        return g * mittag_leffler_derivative(beta, z) * (-beta * std::pow(s, beta - 1.0) * f.derivative(tau));
    };
    const double d_frac = frac_derivative(u_of_t, f, beta, t);

    const double r = mittag_leffler(beta, -std::pow(f(t), beta));
    const double rn = std::pow(r, prof.n);
    const auto spatial = [&](double e) { return profile_power(prof, e) * rn; };
    const double lap = radial_laplacian(spatial, eta);

    return d_frac - lap + g * r;
}

void write_csv(const std::vector<ResidualRow>& rows, std::ostream& out) {
    out << "n,C,beta,f_kind,eta,t,residual\n";
    out << std::setprecision(17);
    for (const auto& r : rows) {
        out << r.n << ',' << r.C << ',' << r.beta << ',' << r.f_kind << ',' << r.eta << ',' << r.t << ',' << r.residual
            << '\n';
    }
}

}  // namespace hypfrac
