#pragma once

// Test-only reference computations. None of these call into the code they
// are used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>

namespace oracle {

// Hyperbolic circle of Euclidean centre (cx, cy) and radius rho in the
// Poincare disk has geodesic curvature |1 + rho^2 - |c|^2| / (2 rho).
inline double disk_curvature(std::array<double, 2> a, std::array<double, 2> b, std::array<double, 2> c) {
  const double ax = a[0], ay = a[1], bx = b[0], by = b[1], cx = c[0], cy = c[1];
  const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
  const double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
  const double rho = std::hypot(ax - ux, ay - uy);
  return std::abs(1.0 + rho * rho - (ux * ux + uy * uy)) / (2.0 * rho);
}

// Hyperbolic triangle area from its side lengths via the law of cosines.
inline double angle_sum_area(double a, double b, double c) {
  auto angle = [](double opp, double s1, double s2) {
    const double v = (std::cosh(s1) * std::cosh(s2) - std::cosh(opp)) / (std::sinh(s1) * std::sinh(s2));
    return std::acos(std::clamp(v, -1.0, 1.0));
  };
  return M_PI - angle(a, b, c) - angle(b, c, a) - angle(c, a, b);
}

// Distance of points given in hyperboloid coordinates.
inline double hyp_distance(const std::array<double, 3>& p, const std::array<double, 3>& q) {
  return std::acosh(std::max(1.0, p[0] * q[0] - p[1] * q[1] - p[2] * q[2]));
}

// Central difference of a scalar function.
inline double central(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Circle of radius r in H^2: length and area.
inline double circle_length(double r) { return 2.0 * M_PI * std::sinh(r); }
inline double circle_area(double r) { return 2.0 * M_PI * (std::cosh(r) - 1.0); }

// Length of a cycle arc of geodesic curvature k over a chord of length 2a.
inline double cycle_arc_over_chord(double k, double a) {
  if (k > 1.0) {
    const double sr = 1.0 / std::sqrt(k * k - 1.0);
    return 2.0 * sr * std::asin(std::sinh(a) / sr);
  }
  if (k < 1.0) {
    const double cd = 1.0 / std::sqrt(1.0 - k * k);
    return 2.0 * cd * std::asinh(std::sinh(a) / cd);
  }
  return 2.0 * std::sinh(a);
}

// Admissible control state: uniform in the disk of radius 1 - margin.
inline std::array<double, 2> random_state(std::mt19937_64& rng, double margin = 1e-3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::sqrt(u(rng)) * (1.0 - margin);
  const double phi = 2.0 * M_PI * u(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace oracle
