#pragma once

// Reverse isoperimetric lower bounds for lambda-convex curves on the
// hyperbolic plane of curvature -k^2.

#include <limits>
#include <vector>

namespace riso {

enum class Regime { Supercritical, Critical, Subcritical };

const char* to_string(Regime r);

/// Compares lambda with k; equality within 1e-12 relative is Critical.
Regime classify(double lambda, double k);

/// 2pi / sqrt(lambda^2 - k^2) when lambda > k, +inf otherwise.
double max_length(double lambda, double k);

struct BoundResult {
  Regime regime;
  double length;
  double bound;
  double max_length;
};

/// Minimal area enclosed by a lambda-convex curve of length L.
BoundResult reverse_bound(double lambda, double k, double length);

/// L/k - (4/k^2) arctan(kL/4); valid for every lambda >= k.
double horocyclic_bound(double k, double length);

/// L^2 - 4 pi A + c A^2 for curvature c.
double classical_defect(double length, double area, double c);

/// Area of the Euclidean lune of curvature lambda and length L.
double planar_lune_area(double lambda, double length);

struct LimitSample {
  double eps;
  double above;      // supercritical bound at lambda = k (1 + eps)
  double below;      // subcritical bound at lambda = k (1 - eps)
  double critical;   // critical bound at lambda = k
  double dev_above;  // |above - critical|, NaN if L exceeds the supercritical max length
  double dev_below;
};

struct LimitsReport {
  double k;
  double length;
  std::vector<LimitSample> samples;  // eps = 1e-3, 1e-5
  bool converging;                   // deviations shrink with eps on both sides
};

LimitsReport regime_limits_check(double k, double length);

}  // namespace riso
