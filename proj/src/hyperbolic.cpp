#include "hypembed/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hypembed {

double normalize_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;  // fmod of a tiny negative can round back up
  return t;
}

double angular_difference(double theta_i, double theta_j) {
  const double d = std::fabs(normalize_angle(theta_i) - normalize_angle(theta_j));
  return std::numbers::pi - std::fabs(std::numbers::pi - d);
}

double distance_cosh_arg(const PolarCoord& a, const PolarCoord& b, double zeta) {
  const double dt = angular_difference(a.theta, b.theta);
  return std::cosh(zeta * (a.r - b.r)) +
         (1.0 - std::cos(dt)) * std::sinh(zeta * a.r) * std::sinh(zeta * b.r);
}

double hyperbolic_distance(const PolarCoord& a, const PolarCoord& b, double zeta) {
  const double arg = distance_cosh_arg(a, b, zeta);
  return std::acosh(std::max(arg, 1.0)) / zeta;
}

}  // namespace hypembed
