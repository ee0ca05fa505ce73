#include "hypfrac/hypgeo.hpp"

#include "hypfrac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hypfrac {

void validate(const HyperbolicPoint& p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !(p.y > 0.0)) {
        detail::domain_fail("HyperbolicPoint", "requires finite x and y > 0");
    }
}

double distance(const HyperbolicPoint& p, const HyperbolicPoint& q) {
    validate(p);
    validate(q);
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    // cosh d - 1 = 2 sinh^2(d/2)
    const double half_chord = std::sqrt((dx * dx + dy * dy) / (4.0 * p.y * q.y));
    return 2.0 * std::asinh(half_chord);
}

HyperbolicPoint to_cartesian(const HyperbolicPolar& hp) {
    if (!(hp.eta >= 0.0) || !std::isfinite(hp.eta) || !std::isfinite(hp.alpha)) {
        detail::domain_fail("to_cartesian", "eta must be finite and nonnegative");
    }
    const double ch = std::cosh(hp.eta);
    const double sh = std::sinh(hp.eta);
    // cosh - sinh sin(alpha) >= e^{-eta} > 0. For sin(alpha) > 0 the direct
    // form cancels; rewrite as 2 cosh sin^2(pi/4 - alpha/2) + sin(alpha) e^{-eta}.
    const double s = std::sin(hp.alpha);
    double den;
    if (s > 0.0) {
        const double q = std::sin(0.25 * std::numbers::pi - 0.5 * hp.alpha);
        den = 2.0 * ch * q * q + s * std::exp(-hp.eta);
    } else {
        den = ch - sh * s;
    }
    return {std::cos(hp.alpha) * sh / den, 1.0 / den};
}

HyperbolicPolar from_cartesian(const HyperbolicPoint& p) {
    validate(p);
    const double eta = distance(p, {0.0, 1.0});
    if (eta == 0.0) {
        return {0.0, 0.0};
    }
    // sin(alpha) sinh(eta) = (x^2 + y^2 - 1)/(2y), cos(alpha) sinh(eta) = x/y
    double alpha = std::atan2(p.x * p.x + p.y * p.y - 1.0, 2.0 * p.x);
    if (alpha < 0.0) {
        alpha += 2.0 * std::numbers::pi;
    }
    if (alpha >= 2.0 * std::numbers::pi) {
        alpha = 0.0;
    }
    return {eta, alpha};
}

Geodesic geodesic_through(const HyperbolicPoint& p, const HyperbolicPoint& q) {
    validate(p);
    validate(q);
    if (p.x == q.x && p.y == q.y) {
        detail::domain_fail("geodesic_through", "points coincide");
    }
    if (p.x == q.x) {
        return VerticalGeodesic{p.x};
    }
    const double np = p.x * p.x + p.y * p.y;
    const double nq = q.x * q.x + q.y * q.y;
    const double c = (np - nq) / (2.0 * (p.x - q.x));
    return SemicircleGeodesic{c, std::hypot(p.x - c, p.y)};
}

double geodesic_residual(const Geodesic& g, const HyperbolicPoint& p) {
    if (const auto* s = std::get_if<SemicircleGeodesic>(&g)) {
        const double dx = p.x - s->center;
        return dx * dx + p.y * p.y - s->radius * s->radius;
    }
    return p.x - std::get<VerticalGeodesic>(g).x0;
}

double radial_laplacian(const std::function<double(double)>& F, double eta, const RadialLaplacianOptions& opts) {
    if (!(eta >= opts.eta_min)) {
        detail::domain_fail("radial_laplacian", "eta below the coth guard eta_min");
    }
    const double h = std::max(1e-4, 1e-3 * eta);
    const double fm2 = F(eta - 2.0 * h);
    const double fm1 = F(eta - h);
    const double f0 = F(eta);
    const double fp1 = F(eta + h);
    const double fp2 = F(eta + 2.0 * h);
    const double d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    const double d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    return d2 + d1 / std::tanh(eta);
}

}  // namespace hypfrac
