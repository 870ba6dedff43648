#include "riso/support.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "riso/error.hpp"

namespace riso {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMinSamples = 64;

std::vector<double> uniform_grid(std::size_t n) {
  std::vector<double> t(n);
  const double d = kTwoPi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = d * static_cast<double>(i);
  return t;
}

std::size_t wrap(long long i, std::size_t n) {
  const long long m = static_cast<long long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

// Fourth-order periodic central differences.
void differentiate(const std::vector<double>& f, double d, std::vector<double>& f1, std::vector<double>& f2) {
  const std::size_t n = f.size();
  f1.assign(n, 0.0);
  f2.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const long long j = static_cast<long long>(i);
    const double m2 = f[wrap(j - 2, n)], m1 = f[wrap(j - 1, n)];
    const double p1 = f[wrap(j + 1, n)], p2 = f[wrap(j + 2, n)];
    f1[i] = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * d);
    f2[i] = (-m2 + 16.0 * m1 - 30.0 * f[i] + 16.0 * p1 - p2) / (12.0 * d * d);
  }
}

// Integral over [a, b] of the cubic through (x[j], y[j]); two-point Gauss is exact.
double extrapolated_segment(const double* x, const double* y, std::size_t m, double a, double b) {
  if (b <= a || m == 0) return 0.0;
  auto interp = [&](double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double w = 1.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i) w *= (t - x[j]) / (x[i] - x[j]);
      }
      s += w * y[i];
    }
    return s;
  };
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a) / std::sqrt(3.0);
  return 0.5 * (b - a) * (interp(c - r) + interp(c + r));
}

// Composite rule on equally spaced samples: Gregory end corrections when
// there are enough points, trapezoid otherwise.
double composite(const std::vector<double>& y, double d) {
  const std::size_t m = y.size();
  if (m < 2) return 0.0;
  if (m < 6) {
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < m; ++i) s += y[i];
    return s * d;
  }
  static constexpr double w[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double wi = 1.0;
    if (i < 3) wi = w[i];
    if (m - 1 - i < 3) wi = w[m - 1 - i];
    s += wi * y[i];
  }
  return s * d;
}

// Integral of periodic samples f over [0, 2pi). Smooth data uses the
// trapezoid rule; with breakpoints every smooth piece is integrated
// separately and the gaps to the breakpoints are filled by extrapolation.
double periodic_integral(const std::vector<double>& f, const std::vector<double>& breakpoints) {
  const std::size_t n = f.size();
  const double d = kTwoPi / static_cast<double>(n);
  if (breakpoints.empty()) {
    double s = 0.0;
    for (double v : f) s += v;
    return s * d;
  }
  std::vector<double> b(breakpoints);
  for (double& x : b) x = std::fmod(std::fmod(x, kTwoPi) + kTwoPi, kTwoPi);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }), b.end());

  const double snap = 1e-9;
  double total = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    const double lo = b[j];
    const double hi = (j + 1 < b.size()) ? b[j + 1] : b[0] + kTwoPi;
    long long first = static_cast<long long>(std::ceil(lo / d));
    long long last = static_cast<long long>(std::floor(hi / d));
    if (static_cast<double>(first) * d - lo < snap) ++first;
    if (hi - static_cast<double>(last) * d < snap) --last;
    if (last < first) {
      // Piece narrower than one grid step.
      const double mid = 0.5 * (lo + hi);
      total += (hi - lo) * f[wrap(std::llround(mid / d), n)];
      continue;
    }
    std::vector<double> xs, ys;
    for (long long i = first; i <= last; ++i) {
      xs.push_back(static_cast<double>(i) * d);
      ys.push_back(f[wrap(i, n)]);
    }
    total += composite(ys, d);
    const std::size_t m = std::min<std::size_t>(4, xs.size());
    total += extrapolated_segment(xs.data(), ys.data(), m, lo, xs.front());
    total += extrapolated_segment(xs.data() + xs.size() - m, ys.data() + ys.size() - m, m, xs.back(), hi);
  }
  return total;
}

}  // namespace

double SupportProfile::step() const { return theta.empty() ? 0.0 : kTwoPi / static_cast<double>(theta.size()); }

SupportProfile SupportProfile::from_support(std::span<const double> h, double k) {
  if (!(k > 0.0)) throw DomainError("curvature scale k must be positive");
  if (h.size() < kMinSamples) throw DomainError("support profile needs at least 64 samples");
  SupportProfile p;
  p.k = k;
  p.theta = uniform_grid(h.size());
  p.h.assign(h.begin(), h.end());
  p.g.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) p.g[i] = contact_radius(h[i], k);
  differentiate(p.g, p.step(), p.g1, p.g2);
  return p;
}

SupportProfile SupportProfile::from_contact(std::vector<double> g, std::vector<double> g1, std::vector<double> g2,
                                            double k, std::vector<double> breakpoints) {
  if (!(k > 0.0)) throw DomainError("curvature scale k must be positive");
  if (g.size() < kMinSamples) throw DomainError("support profile needs at least 64 samples");
  if (g1.size() != g.size() || g2.size() != g.size()) throw DomainError("profile columns differ in length");
  SupportProfile p;
  p.k = k;
  p.theta = uniform_grid(g.size());
  p.h.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(std::abs(k * g[i]) < 1.0)) throw AdmissibilityError("contact radius outside (-1/k, 1/k)", p.theta[i]);
    p.h[i] = std::atanh(k * g[i]) / k;
  }
  p.g = std::move(g);
  p.g1 = std::move(g1);
  p.g2 = std::move(g2);
  for (double& b : breakpoints) b = std::fmod(std::fmod(b, kTwoPi) + kTwoPi, kTwoPi);
  std::sort(breakpoints.begin(), breakpoints.end());
  p.breakpoints = std::move(breakpoints);
  return p;
}

SupportProfile SupportProfile::circle(double r, std::size_t n, double k) {
  if (!(r >= 0.0)) throw DomainError("circle radius must be non-negative");
  const double g = contact_radius(r, k);
  return from_contact(std::vector<double>(n, g), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), k);
}

void SupportProfile::validate() const {
  const std::size_t n = theta.size();
  if (n < kMinSamples) throw DomainError("support profile needs at least 64 samples");
  if (h.size() != n || g.size() != n || g1.size() != n || g2.size() != n) {
    throw DomainError("profile columns differ in length");
  }
  if (!(k > 0.0)) throw DomainError("curvature scale k must be positive");
  const double d = step();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(theta[i] - d * static_cast<double>(i)) > 1e-9) throw DomainError("theta grid is not uniform");
    if (std::abs(std::tanh(k * h[i]) / k - g[i]) > 1e-12) {
      throw AdmissibilityError("g differs from tanh(k h)/k", theta[i]);
    }
    const double kg = k * g[i], kg1 = k * g1[i];
    if (1.0 - kg * kg - kg1 * kg1 < -1e-12) {
      throw AdmissibilityError("1 - g^2 - g'^2 is negative", theta[i]);
    }
    if (g2[i] + g[i] < -1e-9) throw AdmissibilityError("g'' + g is negative (curve not convex)", theta[i]);
  }
}

double contact_radius(double h, double k) {
  if (!(k > 0.0)) throw DomainError("curvature scale k must be positive");
  if (!(h >= 0.0)) throw DomainError("support distance must be non-negative");
  return std::tanh(k * h) / k;
}

double radius_of_curvature(double g, double g1, double g2, double k) {
  if (!(k > 0.0)) throw DomainError("curvature scale k must be positive");
  const double kg = k * g, kg1 = k * g1;
  const double a = 1.0 - kg * kg;
  const double base = (a - kg1 * kg1) / a;
  if (!(a > 0.0) || !(base > 0.0)) throw AdmissibilityError("1 - g^2 - g'^2 is not positive", 0.0);
  return (g2 + g) / std::pow(base, 1.5);
}

std::array<double, 2> functional_integrands(const SupportProfile& p, std::size_t i) {
  const double k = p.k;
  const double g = k * p.g[i], g1 = k * p.g1[i], g2 = k * p.g2[i];
  const double a = 1.0 - g * g;
  const double s = a - g1 * g1;
  if (!(a > 0.0) || s < -1e-12) throw AdmissibilityError("1 - g^2 - g'^2 is negative", p.theta[i]);
  const double w = std::sqrt(std::max(s, 0.0)) / a;
  const double r = g2 + g;
  return {w - 1.0, r == 0.0 ? 0.0 : r * std::sqrt(a) / s};
}

CurveMeasurements length_and_area(const SupportProfile& profile) {
  const std::size_t n = profile.size();
  if (n < kMinSamples) throw DomainError("support profile needs at least 64 samples");
  std::vector<double> fa(n), fl(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = functional_integrands(profile, i);
    fa[i] = v[0];
    fl[i] = v[1];
  }
  const double a = periodic_integral(fa, profile.breakpoints);
  const double l = periodic_integral(fl, profile.breakpoints);
  const double k = profile.k;
  return {std::max(l, 0.0) / k, std::max(a, 0.0) / (k * k)};
}

UnitCurvatureData rescale(double lambda, double k, double length, double area) {
  if (!(k > 0.0)) throw DomainError("curvature scale k must be positive");
  return {lambda / k, k * length, k * k * area};
}

UnitCurvatureData unscale(double lambda, double k, double length, double area) {
  if (!(k > 0.0)) throw DomainError("curvature scale k must be positive");
  return {lambda * k, length / k, area / (k * k)};
}

ControlSignal ControlSignal::constant(double value) {
  return {[value](double) { return value; }, {}};
}

ControlSignal ControlSignal::piecewise(std::vector<double> switches, std::vector<double> values) {
  if (values.size() != switches.size() + 1) throw DomainError("piecewise control needs one more value than switches");
  if (!std::is_sorted(switches.begin(), switches.end())) throw DomainError("control switches must be sorted");
  for (double s : switches) {
    if (!(s > 0.0 && s < kTwoPi)) throw DomainError("control switches must lie in (0, 2pi)");
  }
  auto sw = switches;
  auto fn = [sw, values = std::move(values)](double t) {
    t = std::fmod(std::fmod(t, kTwoPi) + kTwoPi, kTwoPi);
    const auto it = std::upper_bound(sw.begin(), sw.end(), t);
    return values[static_cast<std::size_t>(it - sw.begin())];
  };
  return {fn, std::move(switches)};
}

namespace detail {

std::array<double, 2> state_rate(double x1, double x2, double u) {
  const double a = 1.0 - x1 * x1;
  const double s = a - x2 * x2;
  return {x2, u * std::pow(s / a, 1.5) - x1};
}

}  // namespace detail

namespace {

void check_state(double x1, double x2, double t) {
  const double s = 1.0 - x1 * x1 - x2 * x2;
  if (!(s > 0.0)) throw IntegrationError("state left the admissible set", t);
}

void rk4_step(double& x1, double& x2, double t, double dt, double u) {
  auto f = [u, t](double a, double b) {
    check_state(a, b, t);
    return detail::state_rate(a, b, u);
  };
  const auto k1 = f(x1, x2);
  const auto k2 = f(x1 + 0.5 * dt * k1[0], x2 + 0.5 * dt * k1[1]);
  const auto k3 = f(x1 + 0.5 * dt * k2[0], x2 + 0.5 * dt * k2[1]);
  const auto k4 = f(x1 + dt * k3[0], x2 + dt * k3[1]);
  x1 += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
  x2 += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
}

}  // namespace

IntegratedProfile profile_from_control(const ControlSignal& control, double g0, double g1_0, std::size_t steps,
                                       double closure_tol) {
  if (steps < kMinSamples) throw DomainError("integration needs at least 64 steps");
  if (!control.u) throw DomainError("control function is empty");
  check_state(g0, g1_0, 0.0);
  const double d = kTwoPi / static_cast<double>(steps);
  std::vector<double> g(steps), g1(steps), g2(steps);
  double x1 = g0, x2 = g1_0;
  std::size_t next_switch = 0;
  const auto& sw = control.switches;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t0 = d * static_cast<double>(i);
    const double t1 = (i + 1 == steps) ? kTwoPi : d * static_cast<double>(i + 1);
    g[i] = x1;
    g1[i] = x2;
    g2[i] = detail::state_rate(x1, x2, control.u(t0))[1];
    double t = t0;
    while (next_switch < sw.size() && sw[next_switch] <= t0) ++next_switch;
    while (next_switch < sw.size() && sw[next_switch] < t1) {
      const double s = sw[next_switch];
      if (s - t > 0.0) rk4_step(x1, x2, t, s - t, control.u(0.5 * (t + s)));
      t = s;
      ++next_switch;
    }
    rk4_step(x1, x2, t, t1 - t, control.u(0.5 * (t + t1)));
  }
  check_state(x1, x2, kTwoPi);
  IntegratedProfile out;
  out.residual = {x1 - g0, x2 - g1_0};
  out.closed = std::hypot(out.residual[0], out.residual[1]) < closure_tol;
  out.profile = SupportProfile::from_contact(std::move(g), std::move(g1), std::move(g2), 1.0, sw);
  return out;
}

HPoint support_point(const SupportProfile& p, std::size_t i) {
  const double k = p.k;
  const double c = std::cos(p.theta[i]), s = std::sin(p.theta[i]);
  const double g = k * p.g[i], g1 = k * p.g1[i];
  const double y1 = g * c - g1 * s;
  const double y2 = g * s + g1 * c;
  const double q = 1.0 - y1 * y1 - y2 * y2;
  if (!(q > 0.0)) throw AdmissibilityError("support point is not inside the Klein disk", p.theta[i]);
  const double x0 = 1.0 / std::sqrt(q);
  return HPoint::from_timelike(Vec3(x0, x0 * y1, x0 * y2));
}

void write_profile_csv(std::ostream& out, const SupportProfile& p) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "# riso-profile v1\n";
  buf << "# k: " << p.k << "\n";
  buf << "# breakpoints:";
  for (std::size_t i = 0; i < p.breakpoints.size(); ++i) buf << (i == 0 ? " " : ";") << p.breakpoints[i];
  buf << "\n";
  buf << "theta,h,g,g1,g2\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    buf << p.theta[i] << ',' << p.h[i] << ',' << p.g[i] << ',' << p.g1[i] << ',' << p.g2[i] << '\n';
  }
  out << buf.str();
}

SupportProfile read_profile_csv(std::istream& in) {
  SupportProfile p;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# k:", 0) == 0) {
        p.k = std::stod(line.substr(4));
      } else if (line.rfind("# breakpoints:", 0) == 0) {
        std::stringstream ss(line.substr(14));
        std::string item;
        while (std::getline(ss, item, ';')) {
          if (item.find_first_not_of(" \t") != std::string::npos) p.breakpoints.push_back(std::stod(item));
        }
      }
      continue;
    }
    if (!header) {
      if (line != "theta,h,g,g1,g2") throw DomainError("profile CSV: expected header theta,h,g,g1,g2");
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    double v[5];
    for (int c = 0; c < 5; ++c) {
      if (!std::getline(ss, cell, ',')) {
        throw DomainError("profile CSV: short row at line " + std::to_string(lineno));
      }
      try {
        v[c] = std::stod(cell);
      } catch (const std::exception&) {
        throw DomainError("profile CSV: bad number at line " + std::to_string(lineno));
      }
    }
    p.theta.push_back(v[0]);
    p.h.push_back(v[1]);
    p.g.push_back(v[2]);
    p.g1.push_back(v[3]);
    p.g2.push_back(v[4]);
  }
  if (!header) throw DomainError("profile CSV: missing header row");
  p.validate();
  return p;
}

}  // namespace riso
