#pragma once

// Hyperboloid-model primitives for the hyperbolic plane of curvature -1.
//
// Points live on the upper sheet {x : <x,x> = -1, x0 > 0} of Minkowski
// 3-space with <x,y> = -x0*y0 + x1*y1 + x2*y2. Curves of constant geodesic
// curvature (circles, horocycles, equidistants, geodesics) are the plane
// sections {p : <p,v> = c}; every CyclePlane stores (v, c) so that the convex
// side of the curve is the sub-level set {p : <p,v> <= c}.

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Core>

namespace riso {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Minkowski bilinear form -a0*b0 + a1*b1 + a2*b2.
double minkowski(const Vec3& a, const Vec3& b);

/// Lorentzian cross product J(a x b); orthogonal to a and b in the Minkowski form.
Vec3 lorentz_cross(const Vec3& a, const Vec3& b);

/// Normalizes a spacelike vector to <v,v> = 1.
Vec3 unit_spacelike(const Vec3& v);

class HPoint {
 public:
  /// Accepts coordinates within 1e-6 of the sheet and projects them onto it.
  static HPoint from_coords(double x0, double x1, double x2);
  /// Projects any future-pointing timelike vector onto the sheet.
  static HPoint from_timelike(const Vec3& x);
  static HPoint origin();
  /// Point at distance r from the origin in direction `angle`.
  static HPoint polar(double r, double angle);

  const Vec3& coords() const { return x_; }
  double x0() const { return x_[0]; }
  double x1() const { return x_[1]; }
  double x2() const { return x_[2]; }

  /// Klein-model coordinates (x1, x2) / x0.
  std::array<double, 2> klein() const { return {x_[1] / x_[0], x_[2] / x_[0]}; }

 private:
  explicit HPoint(const Vec3& x) : x_(x) {}
  Vec3 x_;
};

/// Geodesic distance; symmetric, zero iff p == q.
double distance(const HPoint& p, const HPoint& q);

/// Unit tangent at p of the geodesic from p towards q (requires p != q).
Vec3 direction_towards(const HPoint& p, const HPoint& q);

/// Angle at p between tangent vectors a and b (both tangent at p).
double tangent_angle(const Vec3& a, const Vec3& b);

/// Area of the geodesic triangle abc.
double triangle_area(const HPoint& a, const HPoint& b, const HPoint& c);

struct DiskPoint {
  double u = 0.0;
  double v = 0.0;
};

DiskPoint to_poincare_disk(const HPoint& p);
HPoint from_poincare_disk(const DiskPoint& d);

/// Orthochronous linear map preserving the Minkowski form.
class Isometry {
 public:
  Isometry() : m_(Mat3::Identity()) {}
  /// Validates M^T J M = J within 1e-10 and M(sheet) = sheet.
  static Isometry from_matrix(const Mat3& m);
  static Isometry rotation(double angle);
  /// Boost along the x1 axis by hyperbolic distance t.
  static Isometry boost(double t);
  /// An isometry moving p to the origin.
  static Isometry to_origin(const HPoint& p);
  /// Reflection across the geodesic x2 = 0 (orientation reversing).
  static Isometry reflection_x2();
  static Isometry reflection_x1();

  const Mat3& matrix() const { return m_; }
  HPoint apply(const HPoint& p) const;
  Vec3 apply(const Vec3& v) const { return m_ * v; }
  Isometry then(const Isometry& next) const { return Isometry(next.m_ * m_); }
  Isometry inverse() const;

 private:
  explicit Isometry(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

enum class CycleKind { Circle, Horocycle, Equidistant, Geodesic };

const char* to_string(CycleKind kind);

class CyclePlane {
 public:
  /// Normalizes (v, c) to the convex-side convention. Throws
  /// DegenerateCycleError when the plane misses the sheet or touches it in a
  /// single point.
  CyclePlane(const Vec3& normal, double offset);

  static CyclePlane circle(const HPoint& center, double radius);
  /// Horocycle through p whose convex side is the horodisk with inner unit
  /// normal `inward` at p.
  static CyclePlane horocycle_through(const HPoint& p, const Vec3& inward);
  /// Equidistant at distance d > 0 from the geodesic {<x,m> = 0}, on the side <x,m> > 0.
  static CyclePlane equidistant(const Vec3& geodesic_normal, double d);
  static CyclePlane geodesic(const Vec3& normal);
  /// Cycle of geodesic curvature `curvature` through p, tangent to the
  /// geodesic orthogonal to the unit tangent `outward` at p, convex side
  /// opposite to `outward`.
  static CyclePlane supporting(const HPoint& p, const Vec3& outward, double curvature);

  const Vec3& normal() const { return v_; }
  double offset() const { return c_; }
  CycleKind kind() const { return kind_; }
  /// Normalized <v,v> in {-1, 0, 1}.
  int sigma() const { return sigma_; }

  /// <p,v> - c; negative inside the convex region.
  double level(const HPoint& p) const;
  bool contains(const HPoint& p, double tol = 1e-10) const { return level(p) <= tol; }
  /// Outward unit normal (tangent to the sheet) at a point of the curve.
  Vec3 outward_normal(const HPoint& p) const;
  CyclePlane transformed(const Isometry& g) const;

 private:
  CyclePlane() = default;
  Vec3 v_;
  double c_ = 0.0;
  int sigma_ = 0;
  CycleKind kind_ = CycleKind::Geodesic;
};

/// Geodesic curvature of the cycle: |c| / sqrt(c^2 + sigma).
double cycle_curvature(const CyclePlane& s);

/// Intersection points of two cycles on the upper sheet (0, 1 or 2 points).
/// Throws DegenerateCycleError for identical cycles.
std::vector<HPoint> intersect_cycles(const CyclePlane& a, const CyclePlane& b);

/// Curvature of the unique cycle through three distinct points.
double three_point_curvature(const HPoint& a, const HPoint& b, const HPoint& c);

/// Arclength parametrization of a cycle, oriented so that the convex region
/// lies to the left (counterclockwise traversal of its boundary).
class CycleCurve {
 public:
  explicit CycleCurve(const CyclePlane& cycle, const HPoint& anchor = HPoint::origin());

  HPoint point(double s) const;
  /// Unit tangent dp/ds.
  Vec3 tangent(double s) const;
  /// Arclength coordinate of a point on the curve; in [0, period) for circles.
  double parameter(const HPoint& p) const;
  /// Circle perimeter, +inf for the open cycles.
  double period() const { return period_; }
  const CyclePlane& cycle() const { return cycle_; }

 private:
  CyclePlane cycle_;
  Vec3 base_;   // circle: centre; equidistant/geodesic: point of the base geodesic; horocycle: anchor point
  Vec3 dir_;    // first in-plane direction
  Vec3 aux_;    // circle: second direction; equidistant: normal v; horocycle: null vector
  double scale_ = 1.0;  // sinh r (circle) or cosh d (equidistant)
  double height_ = 0.0; // cosh r (circle) or sinh d (equidistant)
  double period_ = std::numeric_limits<double>::infinity();
};

}  // namespace riso
