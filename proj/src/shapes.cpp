#include "riso/shapes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include <boost/math/tools/roots.hpp>

#include "riso/error.hpp"

namespace riso {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kOnCycle = 1e-9;
constexpr std::size_t kAreaSamples = 256;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

bool inside_all(const std::vector<CyclePlane>& cycles, const HPoint& p, double tol) {
  return std::all_of(cycles.begin(), cycles.end(), [&](const CyclePlane& c) { return c.level(p) <= tol; });
}

double fan_area(const LambdaPolygon& poly, std::size_t m) {
  std::vector<HPoint> pts;
  pts.reserve(poly.arcs.size() * m);
  for (const Arc& arc : poly.arcs) {
    // Long arcs keep the spacing of a unit-length arc.
    const std::size_t k = m * static_cast<std::size_t>(std::max(1.0, std::ceil(arc.length)));
    for (std::size_t j = 0; j < k; ++j) pts.push_back(arc.at(static_cast<double>(j) / static_cast<double>(k)));
  }
  double a = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) a += triangle_area(poly.interior, pts[j], pts[(j + 1) % pts.size()]);
  return a;
}

// Orders the vertices counterclockwise about `interior` and attaches the
// boundary arc between each consecutive pair.
LambdaPolygon assemble(double lambda, const std::vector<CyclePlane>& cycles, std::vector<HPoint> vertices,
                       const HPoint& interior) {
  if (vertices.size() < 2) throw ShapeError("region intersection has fewer than two vertices");
  if (!inside_all(cycles, interior, -1e-12)) throw ShapeError("region intersection has empty interior");

  const Isometry to0 = Isometry::to_origin(interior);
  std::vector<std::pair<double, HPoint>> sorted;
  for (const HPoint& v : vertices) {
    const HPoint w = to0.apply(v);
    sorted.emplace_back(wrap_angle(std::atan2(w.x2(), w.x1())), v);
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

  LambdaPolygon poly;
  poly.lambda = lambda;
  poly.interior = interior;
  for (const auto& [ang, v] : sorted) {
    if (!poly.vertices.empty() && distance(poly.vertices.back(), v) < 1e-9) continue;
    poly.vertices.push_back(v);
  }
  if (poly.vertices.size() > 2 && distance(poly.vertices.back(), poly.vertices.front()) < 1e-9) poly.vertices.pop_back();
  const std::size_t n = poly.vertices.size();
  if (n < 2) throw ShapeError("region intersection has fewer than two vertices");

  std::vector<bool> used(cycles.size(), false);
  for (std::size_t i = 0; i < n; ++i) {
    const HPoint& a = poly.vertices[i];
    const HPoint& b = poly.vertices[(i + 1) % n];
    std::optional<Arc> best;
    double best_excess = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cycles.size(); ++j) {
      const CyclePlane& c = cycles[j];
      if (std::abs(c.level(a)) > kOnCycle || std::abs(c.level(b)) > kOnCycle) continue;
      CycleCurve curve(c, interior);
      const double sa = curve.parameter(a);
      const double sb = curve.parameter(b);
      double len = sb - sa;
      if (c.kind() == CycleKind::Circle) {
        len = std::fmod(len + curve.period(), curve.period());
        if (n == 2 && len < 1e-12) len = curve.period();
      }
      if (!(len > 0.0)) continue;
      const HPoint mid = curve.point(sa + 0.5 * len);
      double excess = -std::numeric_limits<double>::infinity();
      for (const CyclePlane& other : cycles) excess = std::max(excess, other.level(mid));
      if (excess > 1e-9 || excess >= best_excess) continue;
      best_excess = excess;
      best = Arc{c, curve, sa, len, j};
    }
    if (!best) throw ShapeError("region intersection is unbounded or not a lambda-polygon");
    used[best->source] = true;
    poly.arcs.push_back(*best);
  }
  for (std::size_t j = 0; j < cycles.size(); ++j) {
    if (!used[j]) poly.dropped.push_back(j);
  }

  double ext_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Arc& in = poly.arcs[(i + n - 1) % n];
    const Arc& out = poly.arcs[i];
    const double ext = tangent_angle(in.curve.tangent(in.s_begin + in.length), out.curve.tangent(out.s_begin));
    poly.exterior_angles.push_back(ext);
    ext_sum += ext;
    poly.length += in.length;
  }
  poly.area = lambda * poly.length + ext_sum - kTwoPi;

  const double coarse = fan_area(poly, kAreaSamples);
  const double fine = fan_area(poly, 2 * kAreaSamples);
  poly.area_numeric = (4.0 * fine - coarse) / 3.0;
  if (!(poly.area > -1e-9) || std::abs(poly.area - poly.area_numeric) > 1e-6 * std::max(1.0, poly.area)) {
    throw ShapeError("boundary does not close up around the interior point");
  }
  poly.area = std::max(poly.area, 0.0);
  return poly;
}

double lune_offset(double lambda) {
  if (std::abs(lambda - 1.0) <= 1e-12) return 1.0;
  return lambda / std::sqrt(std::abs(lambda * lambda - 1.0));
}

int lune_sigma(double lambda) {
  if (std::abs(lambda - 1.0) <= 1e-12) return 0;
  return lambda > 1.0 ? -1 : 1;
}

// Klein-model support point of the region {<p,v> <= c} in direction theta.
std::optional<HPoint> region_support_point(const CyclePlane& cyc, double ct, double st) {
  const Vec3& v = cyc.normal();
  const double c = cyc.offset();
  if (c == 0.0) return std::nullopt;
  const double alpha = -v[0];
  const double beta = v[1] * ct + v[2] * st;
  const double rho = std::sqrt(cyc.sigma() + c * c);
  const double q = alpha * alpha + rho * rho;
  const double disc = q - beta * beta;
  if (!(disc > 0.0)) return std::nullopt;
  const double g = (-alpha * beta + rho * std::sqrt(disc)) / q;
  if (!(std::abs(g) < 1.0) || !(alpha * g + beta > 0.0)) return std::nullopt;
  const Vec3 m = Vec3(g, ct, st) / std::sqrt(1.0 - g * g);
  const Vec3 p = (rho * m - v) / c;
  if (!(p[0] > 0.0)) return std::nullopt;
  return HPoint::from_timelike(p);
}

}  // namespace

double LambdaPolygon::gauss_bonnet_residual() const {
  double ext = 0.0;
  for (double e : exterior_angles) ext += e;
  return -area + lambda * length + ext - kTwoPi;
}

LambdaPolygon LambdaPolygon::transformed(const Isometry& g) const {
  LambdaPolygon out(*this);
  out.interior = g.apply(interior);
  for (HPoint& v : out.vertices) v = g.apply(v);
  for (Arc& arc : out.arcs) {
    const HPoint start = g.apply(arc.at(0.0));
    arc.cycle = arc.cycle.transformed(g);
    arc.curve = CycleCurve(arc.cycle, out.interior);
    arc.s_begin = arc.curve.parameter(start);
  }
  return out;
}

double lune_max_half_distance(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (lambda > 1.0 + 1e-12) return std::atanh(1.0 / lambda);
  return std::numeric_limits<double>::infinity();
}

Lune build_lune(double lambda, double a) {
  const double amax = lune_max_half_distance(lambda);
  if (!(a > 0.0) || a > amax * (1.0 + 1e-12)) throw DomainError("lune half distance outside (0, a_max]");
  a = std::min(a, amax);
  const double c = lune_offset(lambda);
  const int sigma = lune_sigma(lambda);
  const double v0 = -c / std::cosh(a);
  const double v1 = std::sqrt(std::max(0.0, sigma + v0 * v0));
  const HPoint vp = HPoint::from_coords(std::cosh(a), 0.0, std::sinh(a));
  const HPoint vm = HPoint::from_coords(std::cosh(a), 0.0, -std::sinh(a));

  Lune lune;
  lune.lambda = lambda;
  lune.half_distance = a;
  if (v1 < 1e-9) {
    // Both arcs are halves of the circle of curvature lambda.
    const CyclePlane circle(Vec3(-1.0, 0.0, 0.0), c);
    lune.polygon = assemble(lambda, {circle, circle}, {vp, vm}, HPoint::origin());
    lune.polygon.dropped.clear();
  } else {
    const std::vector<CyclePlane> cycles{CyclePlane(Vec3(v0, v1, 0.0), c), CyclePlane(Vec3(v0, -v1, 0.0), c)};
    lune.polygon = assemble(lambda, cycles, {vp, vm}, HPoint::origin());
  }
  lune.exterior_angle = 0.5 * (lune.polygon.exterior_angles[0] + lune.polygon.exterior_angles[1]);
  return lune;
}

Lune lune_for_length(double lambda, double target, double tol) {
  const double amax = lune_max_half_distance(lambda);
  if (!(target > 0.0)) throw DomainError("lune length must be positive");
  auto len = [lambda](double a) { return build_lune(lambda, a).length(); };
  double hi = std::isfinite(amax) ? amax : 1.0;
  if (std::isfinite(amax)) {
    const double lmax = len(amax);
    if (target > lmax * (1.0 + 1e-12)) throw DomainError("lune length exceeds the maximal length");
    if (target >= lmax) return build_lune(lambda, amax);
  } else {
    while (len(hi) < target) {
      hi *= 2.0;
      if (hi > 300.0) throw DomainError("lune length too large to represent");
    }
  }
  double lo = hi;
  while (len(lo) > target) {
    lo *= 0.5;
    if (lo < 1e-300) throw DomainError("lune length too small to represent");
  }
  std::uintmax_t iters = 200;
  boost::math::tools::eps_tolerance<double> stop(52);
  const auto [x0, x1] = boost::math::tools::toms748_solve([&](double a) { return len(a) - target; }, lo, hi, stop, iters);
  Lune best = build_lune(lambda, x0);
  Lune other = build_lune(lambda, x1);
  if (std::abs(other.length() - target) < std::abs(best.length() - target)) best = other;
  if (std::abs(best.length() - target) > tol * std::max(1.0, target)) {
    throw DomainError("lune length solve did not converge");
  }
  return best;
}

LambdaPolygon polygon_from_regions(const std::vector<CyclePlane>& cycles) {
  if (cycles.size() < 2) throw ShapeError("a lambda-polygon needs at least two cycles");
  const double lambda = cycle_curvature(cycles.front());
  for (const CyclePlane& c : cycles) {
    if (std::abs(cycle_curvature(c) - lambda) > 1e-10 * std::max(1.0, lambda)) {
      throw ShapeError("cycles have different curvatures");
    }
  }
  if (!(lambda > 0.0)) throw ShapeError("geodesic boundaries are not lambda-convex for lambda > 0");

  std::vector<HPoint> verts;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      for (const HPoint& p : intersect_cycles(cycles[i], cycles[j])) {
        if (inside_all(cycles, p, 1e-9)) verts.push_back(p);
      }
    }
  }
  if (verts.size() < 2) throw ShapeError("region intersection is empty, unbounded, or a single disk");
  Vec3 sum = Vec3::Zero();
  for (const HPoint& p : verts) sum += p.coords();
  return assemble(lambda, cycles, verts, HPoint::from_timelike(sum));
}

namespace {

// Angle between a chord of half length t and the lambda-arc over it.
double tangent_chord_angle(double lambda, double t) {
  const double c = lune_offset(lambda);
  const double ch = std::cosh(t);
  const double w = std::sqrt(std::max(0.0, lune_sigma(lambda) + c * c / (ch * ch)));
  return std::atan2(c * std::tanh(t), w);
}

// Exterior angle at a vertex of the regular n-vertex lambda-polygon inscribed
// in the circle of radius r; negative when the configuration is infeasible.
double regular_exterior_angle(double lambda, std::size_t n, double r) {
  const double chord = std::acosh(std::cosh(r) * std::cosh(r) - std::sinh(r) * std::sinh(r) * std::cos(kTwoPi / n));
  const double t = 0.5 * chord;
  if (t > lune_max_half_distance(lambda)) return -1.0;
  const double base = std::acos(std::clamp(std::cosh(r) * (std::cosh(chord) - 1.0) / (std::sinh(r) * std::sinh(chord)),
                                           -1.0, 1.0));
  return M_PI - 2.0 * base - 2.0 * tangent_chord_angle(lambda, t);
}

double regular_max_radius(double lambda, std::size_t n) {
  constexpr double cap = 3.0;
  if (regular_exterior_angle(lambda, n, cap) > 0.0) return cap;
  double lo = 1e-6, hi = cap;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (regular_exterior_angle(lambda, n, mid) > 0.0 ? lo : hi) = mid;
  }
  return lo;
}

// Cycle of curvature lambda through a and b with its convex side to the left
// of the direction a -> b; the arc from a to b bulges to the right.
std::optional<CyclePlane> cycle_through(const HPoint& a, const HPoint& b, double lambda) {
  const double t = 0.5 * distance(a, b);
  const double c = lune_offset(lambda);
  const double v0 = -c / std::cosh(t);
  const double q = lune_sigma(lambda) + v0 * v0;
  if (!(t > 0.0) || q <= 1e-12) return std::nullopt;
  const Isometry to0 = Isometry::to_origin(HPoint::from_timelike(a.coords() + b.coords()));
  const HPoint bb = to0.apply(b);
  const Isometry g = to0.then(Isometry::rotation(0.5 * M_PI - std::atan2(bb.x2(), bb.x1())));
  return CyclePlane(Vec3(v0, std::sqrt(q), 0.0), c).transformed(g.inverse());
}

}  // namespace

LambdaPolygon random_polygon(double lambda, std::size_t n_arcs, std::uint64_t seed, const RandomPolygonOptions& opt) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (n_arcs < 2) throw DomainError("a lambda-polygon needs at least two arcs");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Vertices scattered around a circle small enough that the regular
  // configuration keeps positive exterior angles; consecutive vertices are
  // joined by lambda-arcs bulging outwards.
  const double rmax = regular_max_radius(lambda, n_arcs);
  const double sector = kTwoPi / static_cast<double>(n_arcs);
  for (std::size_t attempt = 0; attempt < opt.max_attempts; ++attempt) {
    const double r = rmax * (0.15 + 0.8 * unit(rng));
    const double phase = kTwoPi * unit(rng);
    std::vector<HPoint> verts;
    for (std::size_t i = 0; i < n_arcs; ++i) {
      const double phi = phase + sector * (static_cast<double>(i) + 0.5 * (unit(rng) - 0.5));
      verts.push_back(HPoint::polar(r * (1.0 + 0.25 * (unit(rng) - 0.5)), phi));
    }
    std::vector<CyclePlane> cycles;
    for (std::size_t i = 0; i < n_arcs; ++i) {
      const auto c = cycle_through(verts[i], verts[(i + 1) % n_arcs], lambda);
      if (!c) break;
      cycles.push_back(*c);
    }
    if (cycles.size() != n_arcs) continue;
    try {
      LambdaPolygon poly = polygon_from_regions(cycles);
      if (poly.dropped.empty() && poly.arcs.size() == n_arcs) return poly;
    } catch (const Error&) {
    }
  }
  throw GenerationError("random_polygon: retry budget exhausted");
}

ShapeProfile polygon_support_profile(const LambdaPolygon& poly, std::size_t n) {
  if (n < 64) throw DomainError("support profile needs at least 64 samples");
  const Isometry to0 = Isometry::to_origin(poly.interior);
  std::vector<CyclePlane> cycles;
  for (const Arc& arc : poly.arcs) cycles.push_back(arc.cycle.transformed(to0));
  std::vector<HPoint> verts;
  for (const HPoint& v : poly.vertices) verts.push_back(to0.apply(v));
  const double lambda = poly.lambda;

  ShapeProfile out;
  const std::size_t m = verts.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (poly.exterior_angles[i] < 1e-12) continue;
    const CyclePlane& in = cycles[(i + m - 1) % m];
    const CyclePlane& next = cycles[i];
    for (const CyclePlane* c : {&in, &next}) {
      const Vec3 nrm = c->outward_normal(verts[i]);
      out.switches.push_back(wrap_angle(std::atan2(nrm[2], nrm[1])));
    }
  }
  std::sort(out.switches.begin(), out.switches.end());

  std::vector<double> g(n), g1(n), g2(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    const double ct = std::cos(t), st = std::sin(t);
    double best = -std::numeric_limits<double>::infinity();
    std::array<double, 2> y{};
    bool on_arc = false;
    for (const HPoint& v : verts) {
      const auto kv = v.klein();
      const double val = kv[0] * ct + kv[1] * st;
      if (val > best) {
        best = val;
        y = kv;
        on_arc = false;
      }
    }
    for (const CyclePlane& c : cycles) {
      const auto p = region_support_point(c, ct, st);
      if (!p || !inside_all(cycles, *p, 1e-10)) continue;
      const auto kp = p->klein();
      const double val = kp[0] * ct + kp[1] * st;
      if (val > best - 1e-14) {
        best = std::max(best, val);
        y = kp;
        on_arc = true;
      }
    }
    const double gk = best;
    const double gk1 = -y[0] * st + y[1] * ct;
    g[k] = gk;
    g1[k] = gk1;
    if (on_arc) {
      const double a = 1.0 - gk * gk;
      g2[k] = std::pow((a - gk1 * gk1) / a, 1.5) / lambda - gk;
    } else {
      g2[k] = -gk;
    }
  }
  out.profile = SupportProfile::from_contact(std::move(g), std::move(g1), std::move(g2), 1.0, out.switches);
  return out;
}

ShapeProfile lune_support_profile(const Lune& lune, std::size_t n) { return polygon_support_profile(lune.polygon, n); }

double diameter(const LambdaPolygon& poly) {
  constexpr std::size_t coarse = 48;
  const std::size_t n = poly.arcs.size();
  auto far = [](const HPoint& p, const HPoint& q) { return -minkowski(p.coords(), q.coords()); };
  double best = 1.0;
  std::size_t bi = 0, bj = 0;
  double bs = 0.0, bt = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t a = 0; a <= coarse; ++a) {
        const double s = static_cast<double>(a) / coarse;
        const HPoint p = poly.arcs[i].at(s);
        for (std::size_t b = 0; b <= coarse; ++b) {
          const double t = static_cast<double>(b) / coarse;
          const double d = far(p, poly.arcs[j].at(t));
          if (d > best) {
            best = d;
            bi = i;
            bj = j;
            bs = s;
            bt = t;
          }
        }
      }
    }
  }
  // Coordinate-wise golden-section refinement around the best coarse pair.
  const double w = 1.0 / coarse;
  auto refine = [&](bool first) {
    double lo = std::max(0.0, (first ? bs : bt) - w);
    double hi = std::min(1.0, (first ? bs : bt) + w);
    auto f = [&](double x) {
      return first ? far(poly.arcs[bi].at(x), poly.arcs[bj].at(bt)) : far(poly.arcs[bi].at(bs), poly.arcs[bj].at(x));
    };
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 60; ++it) {
      const double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
      if (f(x1) < f(x2)) lo = x1; else hi = x2;
    }
    const double x = 0.5 * (lo + hi);
    if (f(x) > best) {
      best = f(x);
      (first ? bs : bt) = x;
    }
  };
  for (int round = 0; round < 8; ++round) {
    refine(true);
    refine(false);
  }
  return std::acosh(std::max(1.0, best));
}

namespace {

// Length and area of the lune with half vertex distance a, from the arc
// length over a chord and Gauss-Bonnet.
std::array<double, 2> lune_length_area(double lambda, double a) {
  double arc = 0.0;
  if (lambda > 1.0 + 1e-12) {
    const double sr = 1.0 / std::sqrt(lambda * lambda - 1.0);  // sinh of the radius
    arc = 2.0 * sr * std::asin(std::min(1.0, std::sinh(a) / sr));
  } else if (lambda < 1.0 - 1e-12) {
    const double cd = 1.0 / std::sqrt(1.0 - lambda * lambda);  // cosh of the distance to the base
    arc = 2.0 * cd * std::asinh(std::sinh(a) / cd);
  } else {
    arc = 2.0 * std::sinh(a);
  }
  const double length = 2.0 * arc;
  const double exterior = kPi - 2.0 * tangent_chord_angle(lambda, a);
  return {length, lambda * length + 2.0 * exterior - kTwoPi};
}

}  // namespace

double lune_hausdorff_lower_bound(const LambdaPolygon& poly) {
  const double lambda = poly.lambda;
  const double dk = diameter(poly);
  const double lk = poly.length;
  const double ak = poly.area;
  // Parallel sets of convex bodies: L_r = L cosh r + (2 pi + A) sinh r.
  auto length_gap = [](double l_small, double l_big, double a_small) {
    if (l_big <= l_small) return 0.0;
    const double q = kTwoPi + a_small;
    auto grown = [&](double r) { return l_small * std::cosh(r) + q * std::sinh(r); };
    double lo = 0.0, hi = 1.0;
    while (grown(hi) < l_big) hi *= 2.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (grown(mid) < l_big) lo = mid; else hi = mid;
    }
    return lo;
  };
  auto bound_for = [&](double a) {
    const auto [ll, la] = lune_length_area(lambda, a);
    const double diam = 0.5 * std::abs(dk - 2.0 * a);
    const double len = std::max(length_gap(lk, ll, ak), length_gap(ll, lk, la));
    return std::max(diam, len);
  };
  const double amax = lune_max_half_distance(lambda);
  const double ahi = std::min(std::isfinite(amax) ? amax : 50.0, std::max(dk, 1e-6) * 4.0 + 1.0);
  constexpr int steps = 400;
  double best = std::numeric_limits<double>::infinity();
  int arg = 1;
  for (int i = 1; i <= steps; ++i) {
    const double v = bound_for(ahi * static_cast<double>(i) / steps);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  double lo = ahi * (arg - 1) / steps, hi = ahi * std::min(arg + 1, steps) / steps;
  lo = std::max(lo, 1e-9 * ahi);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    if (bound_for(x1) < bound_for(x2)) hi = x2; else lo = x1;
  }
  return std::min(best, bound_for(0.5 * (lo + hi)));
}

}  // namespace riso
