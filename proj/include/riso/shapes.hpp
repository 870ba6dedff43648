#pragma once

// Lambda-convex lunes and polygons on the hyperbolic plane of curvature -1.
//
// A lambda-polygon is a compact intersection of convex regions bounded by
// cycles of one common geodesic curvature lambda; a lune is the two-arc case.
// Areas come from Gauss-Bonnet, -A + lambda L + sum(exterior angles) = 2 pi,
// and are cross-checked by fan triangulation of the sampled boundary.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "riso/hyperbolic.hpp"
#include "riso/support.hpp"

namespace riso {

struct Arc {
  CyclePlane cycle;
  CycleCurve curve;
  double s_begin = 0.0;  // curve parameter of the start vertex
  double length = 0.0;
  std::size_t source = 0;  // index into the input cycle list

  /// Point at fraction t in [0, 1] along the arc.
  HPoint at(double t) const { return curve.point(s_begin + t * length); }
};

struct LambdaPolygon {
  double lambda = 0.0;
  std::vector<Arc> arcs;             // counterclockwise; arc i runs from vertex i to vertex i+1
  std::vector<HPoint> vertices;
  std::vector<double> exterior_angles;
  double length = 0.0;
  double area = 0.0;                 // Gauss-Bonnet
  double area_numeric = 0.0;         // triangulated cross-check
  HPoint interior = HPoint::origin();
  std::vector<std::size_t> dropped;  // input cycles that do not reach the boundary

  /// -A + lambda L + sum(exterior) - 2 pi.
  double gauss_bonnet_residual() const;
  LambdaPolygon transformed(const Isometry& g) const;
};

struct Lune {
  double lambda = 0.0;
  double half_distance = 0.0;  // half the distance between the vertices
  LambdaPolygon polygon;
  double exterior_angle = 0.0;

  double length() const { return polygon.length; }
  double area() const { return polygon.area; }
  const std::vector<HPoint>& vertices() const { return polygon.vertices; }
};

/// Largest admissible half vertex distance: artanh(1/lambda) for lambda > 1,
/// +inf otherwise. At the limit the lune is the circle of curvature lambda.
double lune_max_half_distance(double lambda);

/// Symmetric lune with vertices (cosh a, 0, +-sinh a), centred at the origin.
Lune build_lune(double lambda, double half_distance);

/// Lune of the prescribed length; |L - target| < tol.
Lune lune_for_length(double lambda, double target_length, double tol = 1e-11);

/// Intersection of the convex sides of the given cycles.
LambdaPolygon polygon_from_regions(const std::vector<CyclePlane>& cycles);

struct RandomPolygonOptions {
  std::size_t max_attempts = 2000;
};

/// Seeded random lambda-polygon with exactly n_arcs boundary arcs.
LambdaPolygon random_polygon(double lambda, std::size_t n_arcs, std::uint64_t seed,
                             const RandomPolygonOptions& options = {});

struct ShapeProfile {
  SupportProfile profile;
  std::vector<double> switches;  // angles where the support point enters/leaves a vertex
};

/// Support profile about the polygon's interior point, sampled at n angles.
ShapeProfile polygon_support_profile(const LambdaPolygon& polygon, std::size_t n = 4096);
/// Support profile of a lune about its centre of symmetry.
ShapeProfile lune_support_profile(const Lune& lune, std::size_t n = 4096);

/// Largest distance between two boundary points.
double diameter(const LambdaPolygon& polygon);

/// Lower bound on the Hausdorff distance from the polygon to every lune of
/// the same lambda, from the diameter and the length of parallel sets.
double lune_hausdorff_lower_bound(const LambdaPolygon& polygon);

/// JSON document with cycles, vertices and measurements.
std::string polygon_to_json(const LambdaPolygon& polygon, int indent = 2);
/// CSV polyline of the boundary in the Poincare disk: arc,index,u,v.
void write_poincare_polyline(std::ostream& out, const LambdaPolygon& polygon, std::size_t samples_per_arc = 64);

}  // namespace riso
