#include "riso/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include <Eigen/Dense>

#include "riso/error.hpp"

namespace riso {
namespace {

const Mat3 kJ = Eigen::Vector3d(-1.0, 1.0, 1.0).asDiagonal();

double orientation(const Vec3& p, const Vec3& a, const Vec3& b) {
  Mat3 m;
  m << p, a, b;
  return m.determinant();
}

Vec3 tangent_part(const HPoint& p, const Vec3& v) {
  return v + minkowski(p.coords(), v) * p.coords();
}

}  // namespace

double minkowski(const Vec3& a, const Vec3& b) { return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 lorentz_cross(const Vec3& a, const Vec3& b) { return kJ * a.cross(b); }

Vec3 unit_spacelike(const Vec3& v) {
  const double q = minkowski(v, v);
  if (!(q > 0.0)) throw DomainError("vector is not spacelike");
  return v / std::sqrt(q);
}

HPoint HPoint::from_coords(double x0, double x1, double x2) {
  const Vec3 x(x0, x1, x2);
  const double q = minkowski(x, x);
  if (!(x0 > 0.0) || !std::isfinite(q) || std::abs(q + 1.0) > 1e-6 * std::max(1.0, x0 * x0)) {
    throw InvalidPointError("coordinates are not on the upper hyperboloid sheet");
  }
  return HPoint(Vec3(std::sqrt(1.0 + x1 * x1 + x2 * x2), x1, x2));
}

HPoint HPoint::from_timelike(const Vec3& x) {
  const double q = minkowski(x, x);
  if (!(q < 0.0) || !(x[0] > 0.0)) throw InvalidPointError("vector is not future timelike");
  const double s = 1.0 / std::sqrt(-q);
  const double x1 = x[1] * s;
  const double x2 = x[2] * s;
  return HPoint(Vec3(std::sqrt(1.0 + x1 * x1 + x2 * x2), x1, x2));
}

HPoint HPoint::origin() { return HPoint(Vec3(1.0, 0.0, 0.0)); }

HPoint HPoint::polar(double r, double angle) {
  const double sh = std::sinh(r);
  return HPoint(Vec3(std::cosh(r), sh * std::cos(angle), sh * std::sin(angle)));
}

double distance(const HPoint& p, const HPoint& q) {
  const double c = -minkowski(p.coords(), q.coords());
  if (c < 1.0 - 1e-9) throw InvalidPointError("inner product of points exceeds -1");
  // 2 asinh(|p - q| / 2) is arccosh(-<p,q>) without the cancellation near 0.
  const Vec3 w = p.coords() - q.coords();
  return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, minkowski(w, w))));
}

Vec3 direction_towards(const HPoint& p, const HPoint& q) {
  return unit_spacelike(tangent_part(p, q.coords()));
}

double tangent_angle(const Vec3& a, const Vec3& b) {
  const double ab = minkowski(a, b);
  const double cross2 = minkowski(a, a) * minkowski(b, b) - ab * ab;
  return std::atan2(std::sqrt(std::max(0.0, cross2)), ab);
}

double triangle_area(const HPoint& a, const HPoint& b, const HPoint& c) {
  Mat3 m;
  m << a.coords(), b.coords(), c.coords();
  const double den = 1.0 - minkowski(a.coords(), b.coords()) - minkowski(b.coords(), c.coords()) -
                     minkowski(c.coords(), a.coords());
  return 2.0 * std::atan2(std::abs(m.determinant()), den);
}

DiskPoint to_poincare_disk(const HPoint& p) {
  const double s = 1.0 / (1.0 + p.x0());
  return {p.x1() * s, p.x2() * s};
}

HPoint from_poincare_disk(const DiskPoint& d) {
  const double r2 = d.u * d.u + d.v * d.v;
  if (!(r2 < 1.0)) throw InvalidPointError("point outside the open unit disk");
  const double s = 2.0 / (1.0 - r2);
  return HPoint::from_coords((1.0 + r2) / (1.0 - r2), s * d.u, s * d.v);
}

// ---------------------------------------------------------------------------
// Isometry

Isometry Isometry::from_matrix(const Mat3& m) {
  if ((m.transpose() * kJ * m - kJ).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("matrix does not preserve the Minkowski form");
  }
  if (!(m(0, 0) > 0.0)) throw DomainError("matrix does not preserve the upper sheet");
  return Isometry(m);
}

Isometry Isometry::rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 m;
  m << 1, 0, 0, 0, c, -s, 0, s, c;
  return Isometry(m);
}

Isometry Isometry::boost(double t) {
  const double c = std::cosh(t);
  const double s = std::sinh(t);
  Mat3 m;
  m << c, s, 0, s, c, 0, 0, 0, 1;
  return Isometry(m);
}

Isometry Isometry::to_origin(const HPoint& p) {
  const double r = std::asinh(std::hypot(p.x1(), p.x2()));
  const double phi = std::atan2(p.x2(), p.x1());
  return rotation(-phi).then(boost(-r));
}

Isometry Isometry::reflection_x2() { return Isometry(Eigen::Vector3d(1.0, 1.0, -1.0).asDiagonal()); }

Isometry Isometry::reflection_x1() { return Isometry(Eigen::Vector3d(1.0, -1.0, 1.0).asDiagonal()); }

HPoint Isometry::apply(const HPoint& p) const { return HPoint::from_timelike(m_ * p.coords()); }

Isometry Isometry::inverse() const { return Isometry(kJ * m_.transpose() * kJ); }

// ---------------------------------------------------------------------------
// CyclePlane

const char* to_string(CycleKind kind) {
  switch (kind) {
    case CycleKind::Circle: return "circle";
    case CycleKind::Horocycle: return "horocycle";
    case CycleKind::Equidistant: return "equidistant";
    case CycleKind::Geodesic: return "geodesic";
  }
  return "unknown";
}

CyclePlane::CyclePlane(const Vec3& normal, double offset) {
  const double scale = normal.squaredNorm();
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(offset)) {
    throw DegenerateCycleError("cycle normal must be a finite nonzero vector");
  }
  Vec3 v = normal;
  double c = offset;
  const double q = minkowski(v, v);

  if (std::abs(q) <= 1e-9 * scale) {
    // On the sheet <p,v> has the sign opposite to v0, so the curve needs c of that sign.
    if (v[0] > 0.0) {
      v = -v;
      c = -c;
    }
    if (!(c > 0.0)) throw DegenerateCycleError("horocycle plane misses the hyperboloid");
    v /= c;
    v[0] = -std::hypot(v[1], v[2]);
    c = 1.0;
    sigma_ = 0;
    kind_ = CycleKind::Horocycle;
  } else if (q < 0.0) {
    const double n = std::sqrt(-q);
    v /= n;
    c /= n;
    if (v[0] > 0.0) {
      v = -v;
      c = -c;
    }
    // For past-pointing unit v, <p,v> = cosh(dist(p, -v)) >= 1.
    if (!(c > 1.0)) throw DegenerateCycleError("circle offset must satisfy c^2 > 1");
    v[0] = -std::sqrt(1.0 + v[1] * v[1] + v[2] * v[2]);
    sigma_ = -1;
    kind_ = CycleKind::Circle;
  } else {
    const double n = std::sqrt(q);
    v /= n;
    c /= n;
    sigma_ = 1;
    if (std::abs(c) <= 1e-12) {
      c = 0.0;
      kind_ = CycleKind::Geodesic;
    } else {
      if (c < 0.0) {
        v = -v;
        c = -c;
      }
      kind_ = CycleKind::Equidistant;
    }
  }
  v_ = v;
  c_ = c;
}

CyclePlane CyclePlane::circle(const HPoint& center, double radius) {
  if (!(radius > 0.0)) throw DegenerateCycleError("circle radius must be positive");
  return CyclePlane(-center.coords(), std::cosh(radius));
}

CyclePlane CyclePlane::horocycle_through(const HPoint& p, const Vec3& inward) {
  return supporting(p, -inward, 1.0);
}

CyclePlane CyclePlane::equidistant(const Vec3& geodesic_normal, double d) {
  if (!(d > 0.0)) throw DegenerateCycleError("equidistant distance must be positive");
  return CyclePlane(unit_spacelike(geodesic_normal), std::sinh(d));
}

CyclePlane CyclePlane::geodesic(const Vec3& normal) { return CyclePlane(unit_spacelike(normal), 0.0); }

CyclePlane CyclePlane::supporting(const HPoint& p, const Vec3& outward, double curvature) {
  if (!(curvature >= 0.0)) throw DomainError("curvature must be nonnegative");
  const Vec3 n = unit_spacelike(tangent_part(p, outward));
  // <p, n - kp> = k and the outward normal at p is n; |c| / sqrt(c^2 + <v,v>) = k.
  return CyclePlane(n - curvature * p.coords(), curvature);
}

double CyclePlane::level(const HPoint& p) const { return minkowski(p.coords(), v_) - c_; }

Vec3 CyclePlane::outward_normal(const HPoint& p) const { return unit_spacelike(tangent_part(p, v_)); }

CyclePlane CyclePlane::transformed(const Isometry& g) const { return CyclePlane(g.apply(v_), c_); }

double cycle_curvature(const CyclePlane& s) {
  switch (s.kind()) {
    case CycleKind::Horocycle: return 1.0;
    case CycleKind::Geodesic: return 0.0;
    default: {
      const double c = s.offset();
      return std::abs(c) / std::sqrt(c * c + s.sigma());
    }
  }
}

std::vector<HPoint> intersect_cycles(const CyclePlane& a, const CyclePlane& b) {
  Vec3 na = kJ * a.normal();
  Vec3 nb = kJ * b.normal();
  double ca = a.offset();
  double cb = b.offset();
  {
    const double sa = na.norm();
    const double sb = nb.norm();
    na /= sa;
    ca /= sa;
    nb /= sb;
    cb /= sb;
  }
  Vec3 d = na.cross(nb);
  if (d.norm() <= 1e-12) {
    const double sign = na.dot(nb) > 0.0 ? 1.0 : -1.0;
    if (std::abs(ca - sign * cb) <= 1e-12 * (1.0 + std::abs(ca))) {
      throw DegenerateCycleError("cannot intersect a cycle with itself");
    }
    return {};
  }
  d.normalize();

  Mat3 m;
  m.row(0) = na.transpose();
  m.row(1) = nb.transpose();
  m.row(2) = d.transpose();
  const Vec3 p0 = m.fullPivLu().solve(Vec3(ca, cb, 0.0));

  // <p0 + t d, p0 + t d> = -1
  const double qa = minkowski(d, d);
  const double qb = 2.0 * minkowski(p0, d);
  const double qc = minkowski(p0, p0) + 1.0;

  std::vector<double> roots;
  if (std::abs(qa) <= 1e-14) {
    if (std::abs(qb) > 1e-14) roots.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    // Roots closer than rounding can resolve are one tangency point.
    const double tol = 1e-13 * (qb * qb + 4.0 * std::abs(qa * qc) + qa * qa);
    if (std::abs(disc) <= tol) {
      roots.push_back(-qb / (2.0 * qa));
    } else if (disc > 0.0) {
      const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
      roots.push_back(q / qa);
      if (q != 0.0) roots.push_back(qc / q);
    }
  }

  std::vector<HPoint> out;
  for (double t : roots) {
    const Vec3 x = p0 + t * d;
    if (x[0] > 0.0) out.push_back(HPoint::from_coords(x[0], x[1], x[2]));
  }
  std::sort(out.begin(), out.end(), [](const HPoint& l, const HPoint& r) {
    return std::tie(l.coords()[1], l.coords()[2]) < std::tie(r.coords()[1], r.coords()[2]);
  });
  return out;
}

double three_point_curvature(const HPoint& a, const HPoint& b, const HPoint& c) {
  const Vec3 n = (b.coords() - a.coords()).cross(c.coords() - a.coords());
  const Vec3 v = kJ * n;
  const double off = n.dot(a.coords());
  return std::abs(off) / std::sqrt(off * off + minkowski(v, v));
}

// ---------------------------------------------------------------------------
// CycleCurve

CycleCurve::CycleCurve(const CyclePlane& cycle, const HPoint& anchor) : cycle_(cycle) {
  const Vec3& v = cycle.normal();
  const Vec3& a = anchor.coords();
  switch (cycle.kind()) {
    case CycleKind::Circle: {
      base_ = -v;
      height_ = cycle.offset();
      scale_ = std::sqrt((height_ - 1.0) * (height_ + 1.0));
      Vec3 e1 = a + minkowski(a, base_) * base_;
      if (minkowski(e1, e1) < 1e-20) {
        const Vec3 x(0.0, 1.0, 0.0);
        e1 = x + minkowski(x, base_) * base_;
      }
      dir_ = unit_spacelike(e1);
      aux_ = unit_spacelike(lorentz_cross(base_, dir_));
      period_ = 2.0 * std::numbers::pi * scale_;
      break;
    }
    case CycleKind::Equidistant:
    case CycleKind::Geodesic: {
      height_ = cycle.offset();
      scale_ = std::sqrt(1.0 + height_ * height_);
      aux_ = v;
      base_ = HPoint::from_timelike(a - minkowski(a, v) * v).coords();
      dir_ = unit_spacelike(lorentz_cross(base_, v));
      break;
    }
    case CycleKind::Horocycle: {
      aux_ = -v;  // future null vector; the curve is <p, aux_> = -1
      const double m = -minkowski(a, aux_);
      base_ = a / m + 0.5 * (1.0 - 1.0 / (m * m)) * aux_;
      dir_ = unit_spacelike(lorentz_cross(base_, aux_));
      break;
    }
  }
  // Counterclockwise: det[p, T, outward] < 0 at s = 0.
  const HPoint p0 = point(0.0);
  if (orientation(p0.coords(), tangent(0.0), cycle_.outward_normal(p0)) > 0.0) {
    if (cycle.kind() == CycleKind::Circle) {
      aux_ = -aux_;
    } else {
      dir_ = -dir_;
    }
  }
}

HPoint CycleCurve::point(double s) const {
  switch (cycle_.kind()) {
    case CycleKind::Circle: {
      const double phi = s / scale_;
      return HPoint::from_timelike(height_ * base_ + scale_ * (std::cos(phi) * dir_ + std::sin(phi) * aux_));
    }
    case CycleKind::Equidistant:
    case CycleKind::Geodesic: {
      const double t = s / scale_;
      return HPoint::from_timelike(scale_ * (std::cosh(t) * base_ + std::sinh(t) * dir_) + height_ * aux_);
    }
    case CycleKind::Horocycle:
      return HPoint::from_timelike(base_ + s * dir_ + 0.5 * s * s * aux_);
  }
  return HPoint::origin();
}

Vec3 CycleCurve::tangent(double s) const {
  switch (cycle_.kind()) {
    case CycleKind::Circle: {
      const double phi = s / scale_;
      return -std::sin(phi) * dir_ + std::cos(phi) * aux_;
    }
    case CycleKind::Equidistant:
    case CycleKind::Geodesic: {
      const double t = s / scale_;
      return std::sinh(t) * base_ + std::cosh(t) * dir_;
    }
    case CycleKind::Horocycle:
      return dir_ + s * aux_;
  }
  return Vec3::Zero();
}

double CycleCurve::parameter(const HPoint& p) const {
  const Vec3& x = p.coords();
  switch (cycle_.kind()) {
    case CycleKind::Circle: {
      double phi = std::atan2(minkowski(x, aux_), minkowski(x, dir_));
      if (phi < 0.0) phi += 2.0 * std::numbers::pi;
      return std::min(phi * scale_, std::nextafter(period_, 0.0));
    }
    case CycleKind::Equidistant:
    case CycleKind::Geodesic:
      return scale_ * std::asinh(minkowski(x, dir_) / scale_);
    case CycleKind::Horocycle:
      return minkowski(x, dir_);
  }
  return 0.0;
}

}  // namespace riso
