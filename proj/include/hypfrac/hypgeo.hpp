#pragma once

#include <functional>
#include <variant>

namespace hypfrac {

/// Point of the upper half-plane, y > 0.
struct HyperbolicPoint {
    double x = 0.0;
    double y = 1.0;
};

/// Hyperbolic polar coordinates about the center (0, 1): eta is the distance
/// to the center, alpha in [0, 2 pi) the angular coordinate.
struct HyperbolicPolar {
    double eta = 0.0;
    double alpha = 0.0;
};

struct SemicircleGeodesic {
    double center = 0.0;  // on the x-axis
    double radius = 1.0;
};

struct VerticalGeodesic {
    double x0 = 0.0;
};

using Geodesic = std::variant<SemicircleGeodesic, VerticalGeodesic>;

/// Throws DomainError unless y > 0 and both coordinates are finite.
void validate(const HyperbolicPoint& p);

/// Hyperbolic distance: cosh d = 1 + ((x1-x2)^2 + (y1-y2)^2) / (2 y1 y2),
/// evaluated as 2 asinh(sqrt(...)/2) to keep precision near the diagonal.
double distance(const HyperbolicPoint& p, const HyperbolicPoint& q);

HyperbolicPoint to_cartesian(const HyperbolicPolar& hp);
HyperbolicPolar from_cartesian(const HyperbolicPoint& p);

/// The unique geodesic through two distinct points.
Geodesic geodesic_through(const HyperbolicPoint& p, const HyperbolicPoint& q);

/// Residual of the geodesic equation at p: (x-c)^2 + y^2 - r^2 for a
/// semicircle, x - x0 for a vertical line.
double geodesic_residual(const Geodesic& g, const HyperbolicPoint& p);

struct RadialLaplacianOptions {
    double eta_min = 1e-3;
};

/// Radial part of the hyperbolic Laplacian, F'' + coth(eta) F', by fourth-order
/// centered differences with step h = max(1e-4, 1e-3 eta).
double radial_laplacian(const std::function<double(double)>& F, double eta,
                        const RadialLaplacianOptions& opts = {});

}  // namespace hypfrac
