#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "riso/error.hpp"
#include "riso/hyperbolic.hpp"

using namespace riso;

namespace {

HPoint random_point(std::mt19937_64& rng, double rmax = 3.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return HPoint::polar(rmax * u(rng), 2.0 * M_PI * u(rng));
}

Isometry random_isometry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return Isometry::rotation(3.0 * u(rng)).then(Isometry::boost(2.0 * u(rng))).then(Isometry::rotation(3.0 * u(rng)));
}

std::array<double, 3> arr(const HPoint& p) { return {p.x0(), p.x1(), p.x2()}; }

}  // namespace

TEST(HPoint, LiesOnUpperSheet) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const HPoint p = random_point(rng, 6.0);
    EXPECT_NEAR(minkowski(p.coords(), p.coords()), -1.0, 1e-12 * p.x0() * p.x0());
    EXPECT_GE(p.x0(), 1.0);
  }
}

TEST(HPoint, RejectsOffSheetCoordinates) {
  EXPECT_THROW(HPoint::from_coords(2.0, 0.0, 0.0), InvalidPointError);
  EXPECT_THROW(HPoint::from_coords(-1.0, 0.0, 0.0), InvalidPointError);
  EXPECT_NO_THROW(HPoint::from_coords(std::cosh(1.0), std::sinh(1.0), 0.0));
}

TEST(Distance, AnchorsAndSymmetry) {
  const HPoint o = HPoint::origin();
  EXPECT_EQ(distance(o, o), 0.0);
  EXPECT_NEAR(distance(o, HPoint::from_coords(std::cosh(1.0), std::sinh(1.0), 0.0)), 1.0, 1e-15);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const HPoint p = random_point(rng), q = random_point(rng);
    EXPECT_DOUBLE_EQ(distance(p, q), distance(q, p));
    EXPECT_NEAR(distance(p, q), oracle::hyp_distance(arr(p), arr(q)), 1e-9);
  }
}

TEST(Distance, TriangleInequalityOnRandomTriples) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const HPoint a = random_point(rng), b = random_point(rng), c = random_point(rng);
    EXPECT_LE(distance(a, c), distance(a, b) + distance(b, c) + 1e-12);
  }
}

TEST(Isometry, PreservesDistanceAndInverts) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Isometry g = random_isometry(rng);
    const HPoint p = random_point(rng), q = random_point(rng);
    EXPECT_NEAR(distance(g.apply(p), g.apply(q)), distance(p, q), 1e-9);
    const HPoint back = g.inverse().apply(g.apply(p));
    EXPECT_NEAR(distance(back, p), 0.0, 1e-9);
  }
}

TEST(Isometry, FromMatrixValidates) {
  EXPECT_NO_THROW(Isometry::from_matrix(Isometry::boost(0.7).matrix()));
  Mat3 bad = Mat3::Identity();
  bad(0, 0) = 2.0;
  EXPECT_THROW(Isometry::from_matrix(bad), DomainError);
  EXPECT_THROW(Isometry::from_matrix(-Mat3::Identity()), DomainError);
}

TEST(Isometry, ToOriginMovesPoint) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const HPoint p = random_point(rng);
    EXPECT_NEAR(distance(Isometry::to_origin(p).apply(p), HPoint::origin()), 0.0, 1e-9);
  }
}

TEST(PoincareDisk, AnchorsAndRoundTrip) {
  const DiskPoint o = to_poincare_disk(HPoint::origin());
  EXPECT_EQ(o.u, 0.0);
  EXPECT_EQ(o.v, 0.0);
  const DiskPoint d = to_poincare_disk(HPoint::from_coords(std::cosh(1.0), std::sinh(1.0), 0.0));
  EXPECT_NEAR(d.u, std::tanh(0.5), 1e-15);
  EXPECT_NEAR(d.v, 0.0, 1e-15);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    const HPoint p = random_point(rng, 5.0);
    const HPoint q = from_poincare_disk(to_poincare_disk(p));
    EXPECT_LT((p.coords() - q.coords()).norm() / p.x0(), 1e-10);
  }
  EXPECT_THROW(from_poincare_disk({1.0, 0.0}), InvalidPointError);
}

TEST(TriangleArea, MatchesAngleSumOracle) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const HPoint a = random_point(rng), b = random_point(rng), c = random_point(rng);
    const double ab = distance(a, b), bc = distance(b, c), ca = distance(c, a);
    if (std::min({ab, bc, ca}) < 1e-3) continue;
    EXPECT_NEAR(triangle_area(a, b, c), oracle::angle_sum_area(bc, ca, ab), 1e-7);
  }
}

TEST(CyclePlane, CurvatureAnchors) {
  const CyclePlane c(Vec3(1.0, 0.0, 0.0), -std::cosh(1.0));
  EXPECT_EQ(c.kind(), CycleKind::Circle);
  EXPECT_NEAR(cycle_curvature(c), 1.0 / std::tanh(1.0), 1e-14);

  const CyclePlane h = CyclePlane::horocycle_through(HPoint::origin(), Vec3(0.0, -1.0, 0.0));
  EXPECT_EQ(h.kind(), CycleKind::Horocycle);
  EXPECT_EQ(cycle_curvature(h), 1.0);

  const CyclePlane e = CyclePlane::equidistant(Vec3(0.0, 1.0, 0.0), 0.8);
  EXPECT_EQ(e.kind(), CycleKind::Equidistant);
  EXPECT_NEAR(cycle_curvature(e), std::tanh(0.8), 1e-14);

  const CyclePlane g = CyclePlane::geodesic(Vec3(0.0, 0.0, 1.0));
  EXPECT_EQ(g.kind(), CycleKind::Geodesic);
  EXPECT_EQ(cycle_curvature(g), 0.0);

  EXPECT_THROW(CyclePlane(Vec3(-1.0, 0.0, 0.0), 0.5), DegenerateCycleError);
  EXPECT_THROW(CyclePlane(Vec3(-1.0, 0.0, 0.0), 1.0), DegenerateCycleError);
}

TEST(CyclePlane, TrichotomyAndNormalization) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> k(0.05, 3.0);
  for (int i = 0; i < 300; ++i) {
    const HPoint p = random_point(rng);
    const Isometry g = random_isometry(rng);
    const Vec3 dir = g.apply(Vec3(0.0, 1.0, 0.0));
    const double kappa = (i % 7 == 0) ? 1.0 : k(rng);
    const CyclePlane s = CyclePlane::supporting(p, dir, kappa);
    const int sigma = s.sigma();
    EXPECT_NEAR(minkowski(s.normal(), s.normal()), sigma, 1e-9);
    EXPECT_NEAR(cycle_curvature(s), kappa, 1e-9);
    if (kappa > 1.0) EXPECT_EQ(s.kind(), CycleKind::Circle);
    if (kappa == 1.0) EXPECT_EQ(s.kind(), CycleKind::Horocycle);
    if (kappa < 1.0) EXPECT_EQ(s.kind(), CycleKind::Equidistant);
    EXPECT_NEAR(s.level(p), 0.0, 1e-9 * p.x0());
  }
}

TEST(CyclePlane, IsometriesPreserveKindAndCurvature) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const double kappa = 0.2 + 0.01 * i;
    const CyclePlane s = CyclePlane::supporting(random_point(rng), Vec3(0.3, 1.0, -0.4), kappa);
    const CyclePlane t = s.transformed(random_isometry(rng));
    EXPECT_EQ(t.kind(), s.kind());
    EXPECT_NEAR(cycle_curvature(t), cycle_curvature(s), 1e-9);
  }
}

TEST(CycleCurve, SampledBoundaryHasConstantCurvature) {
  std::mt19937_64 rng(10);
  for (double kappa : {0.25, 0.7, 1.0, 1.3, 2.5}) {
    const CyclePlane s = CyclePlane::supporting(random_point(rng, 1.0), Vec3(0.0, 0.6, 0.8), kappa);
    const CycleCurve curve(s);
    const double step = 1e-3;
    for (double t : {-1.0, -0.2, 0.0, 0.5, 1.3}) {
      const HPoint a = curve.point(t - step), b = curve.point(t), c = curve.point(t + step);
      EXPECT_NEAR(three_point_curvature(a, b, c), kappa, 1e-5);
      const DiskPoint da = to_poincare_disk(a), db = to_poincare_disk(b), dc = to_poincare_disk(c);
      EXPECT_NEAR(oracle::disk_curvature({da.u, da.v}, {db.u, db.v}, {dc.u, dc.v}), kappa, 1e-5);
      EXPECT_NEAR(s.level(b), 0.0, 1e-10 * b.x0());
    }
  }
}

TEST(CycleCurve, UnitSpeedAndParameterInverse) {
  std::mt19937_64 rng(11);
  for (double kappa : {0.4, 1.0, 1.8}) {
    const CyclePlane s = CyclePlane::supporting(random_point(rng, 1.0), Vec3(0.0, -1.0, 0.2), kappa);
    const CycleCurve curve(s, HPoint::origin());
    for (double t : {0.1, 0.7, 1.9}) {
      EXPECT_NEAR(distance(curve.point(t), curve.point(t + 1e-4)), 1e-4, 1e-9);
      EXPECT_NEAR(curve.parameter(curve.point(t)), t, 1e-9);
      EXPECT_NEAR(minkowski(curve.tangent(t), curve.tangent(t)), 1.0, 1e-12);
    }
  }
}

TEST(CycleCurve, ConvexRegionLiesToTheLeft) {
  for (double kappa : {0.5, 1.0, 2.0}) {
    const CyclePlane s = CyclePlane::supporting(HPoint::polar(0.5, 0.3), Vec3(0.0, 1.0, 0.0), kappa);
    const CycleCurve curve(s);
    const HPoint p = curve.point(0.2);
    const Vec3 t = curve.tangent(0.2);
    // Left normal: J(p x t) points into the region for a counterclockwise traversal.
    const Vec3 left = unit_spacelike(lorentz_cross(p.coords(), t));
    const double eps = 1e-3;
    const HPoint inward = HPoint::from_timelike(std::cosh(eps) * p.coords() + std::sinh(eps) * left);
    EXPECT_LT(s.level(inward), 0.0) << "kappa=" << kappa;
  }
}

TEST(IntersectCycles, UnitCirclesAtUnitDistance) {
  const HPoint c1 = HPoint::origin();
  const HPoint c2 = HPoint::polar(1.0, 0.4);
  const auto pts = intersect_cycles(CyclePlane::circle(c1, 1.0), CyclePlane::circle(c2, 1.0));
  ASSERT_EQ(pts.size(), 2u);
  for (const HPoint& p : pts) {
    EXPECT_NEAR(distance(p, c1), 1.0, 1e-10);
    EXPECT_NEAR(distance(p, c2), 1.0, 1e-10);
  }
}

TEST(IntersectCycles, DisjointTangentAndIdentical) {
  const CyclePlane a = CyclePlane::circle(HPoint::origin(), 1.0);
  EXPECT_TRUE(intersect_cycles(a, CyclePlane::circle(HPoint::polar(2.5, 0.0), 1.0)).empty());
  EXPECT_EQ(intersect_cycles(a, CyclePlane::circle(HPoint::polar(2.0, 1.0), 1.0)).size(), 1u);
  EXPECT_THROW(intersect_cycles(a, a), DegenerateCycleError);
}

TEST(IntersectCycles, MixedKindsSatisfyBothPlanes) {
  std::mt19937_64 rng(12);
  int found = 0;
  for (int i = 0; i < 300; ++i) {
    const CyclePlane a = CyclePlane::supporting(random_point(rng, 1.5), Vec3(0.0, 1.0, 0.3), 0.3 + 0.005 * i);
    const CyclePlane b = CyclePlane::supporting(random_point(rng, 1.5), Vec3(0.0, -0.2, 1.0), 2.0 - 0.005 * i);
    for (const HPoint& p : intersect_cycles(a, b)) {
      ++found;
      EXPECT_NEAR(a.level(p), 0.0, 1e-10 * p.x0() * p.x0());
      EXPECT_NEAR(b.level(p), 0.0, 1e-10 * p.x0() * p.x0());
    }
  }
  EXPECT_GT(found, 50);
}
