#pragma once

namespace hypembed {

// Point in the native-disk representation of the hyperbolic plane: the
// Euclidean radial coordinate equals the hyperbolic distance from the origin.
struct PolarCoord {
  double r = 0.0;      // >= 0
  double theta = 0.0;  // kept in [0, 2*pi) by producers
};

// Map any real angle into [0, 2*pi).
[[nodiscard]] double normalize_angle(double theta);

// pi - |pi - |theta_i - theta_j||: angular separation along the circle,
// in [0, pi]. Inputs are normalized first.
[[nodiscard]] double angular_difference(double theta_i, double theta_j);

// cosh(zeta * d(a,b)), evaluated as
//   cosh(zeta (r_a - r_b)) + (1 - cos dtheta) sinh(zeta r_a) sinh(zeta r_b),
// an exact rearrangement of the hyperbolic law of cosines that avoids
// cancellation at small dtheta. Strictly increasing in the distance, so it
// doubles as a cheap comparison key on hot paths.
[[nodiscard]] double distance_cosh_arg(const PolarCoord& a, const PolarCoord& b,
                                       double zeta);

// Hyperbolic distance at curvature K = -zeta^2. The acosh argument is
// clamped to >= 1 against rounding when points nearly coincide.
[[nodiscard]] double hyperbolic_distance(const PolarCoord& a, const PolarCoord& b,
                                         double zeta);

}  // namespace hypembed
