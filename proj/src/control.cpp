#include "riso/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <json.hpp>

#include "riso/error.hpp"

namespace riso {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Geom {
  double a;   // 1 - x1^2
  double s;   // 1 - x1^2 - x2^2
  double rs;  // sqrt(s)
};

Geom geom(const ControlState& x) {
  const double a = 1.0 - x.x1 * x.x1;
  const double s = a - x.x2 * x.x2;
  return {a, s, std::sqrt(s)};
}

Geom checked_geom(const ControlState& x, double t) {
  const Geom g = geom(x);
  if (!(g.s > 0.0) || !(g.a > 0.0)) throw IntegrationError("trajectory left the admissible set", t);
  return g;
}

std::array<double, 2> adjoint_unchecked(const ControlState& x, const Geom& g, double u, const Costate& p,
                                        const Multipliers& mu) {
  const double m = mu.mu0 - mu.mu1 * u;
  const double dp1 = p.p2 * (1.0 + 3.0 * u * x.x1 * x.x2 * x.x2 * g.rs / std::pow(g.a, 2.5)) +
                     m * x.x1 * (1.0 - x.x1 * x.x1 - 2.0 * x.x2 * x.x2) / (g.a * g.a * g.rs);
  const double dp2 = -p.p1 + 3.0 * p.p2 * u * x.x2 * g.rs / std::pow(g.a, 1.5) - x.x2 * m / (g.a * g.rs);
  return {dp1, dp2};
}

// State followed by one costate per multiplier set.
using Bundle = std::vector<double>;

void bundle_rate(const Bundle& y, double u, const std::vector<Multipliers>& mus, double t, Bundle& out) {
  const ControlState x{y[0], y[1]};
  const Geom g = checked_geom(x, t);
  out.resize(y.size());
  out[0] = x.x2;
  out[1] = u * std::pow(g.s / g.a, 1.5) - x.x1;
  for (std::size_t k = 0; k < mus.size(); ++k) {
    const auto d = adjoint_unchecked(x, g, u, {y[2 + 2 * k], y[3 + 2 * k]}, mus[k]);
    out[2 + 2 * k] = d[0];
    out[3 + 2 * k] = d[1];
  }
}

void bundle_step(Bundle& y, double t, double dt, double u, const std::vector<Multipliers>& mus) {
  const std::size_t n = y.size();
  Bundle k1, k2, k3, k4, tmp(n);
  bundle_rate(y, u, mus, t, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
  bundle_rate(tmp, u, mus, t, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
  bundle_rate(tmp, u, mus, t, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
  bundle_rate(tmp, u, mus, t, k4);
  for (std::size_t i = 0; i < n; ++i) y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

struct BundleRun {
  std::vector<double> t;
  std::vector<Bundle> y;         // grid samples, t = 0 .. 2pi inclusive
  std::vector<Bundle> at_switch;  // one per control switch
};

BundleRun run_bundle(const Bundle& y0, const std::vector<Multipliers>& mus, const ControlSignal& control,
                     std::size_t steps) {
  const double d = kTwoPi / static_cast<double>(steps);
  const auto& sw = control.switches;
  BundleRun run;
  run.t.reserve(steps + 1);
  run.y.reserve(steps + 1);
  Bundle y = y0;
  std::size_t next = 0;
  while (next < sw.size() && sw[next] <= 0.0) {
    run.at_switch.push_back(y);
    ++next;
  }
  for (std::size_t i = 0; i < steps; ++i) {
    const double t0 = d * static_cast<double>(i);
    const double t1 = (i + 1 == steps) ? kTwoPi : d * static_cast<double>(i + 1);
    run.t.push_back(t0);
    run.y.push_back(y);
    double t = t0;
    while (next < sw.size() && sw[next] < t1) {
      const double s = sw[next];
      if (s > t) bundle_step(y, t, s - t, control.u(0.5 * (t + s)), mus);
      run.at_switch.push_back(y);
      t = std::max(t, s);
      ++next;
    }
    bundle_step(y, t, t1 - t, control.u(0.5 * (t + t1)), mus);
  }
  while (run.at_switch.size() < sw.size()) run.at_switch.push_back(y);
  run.t.push_back(kTwoPi);
  run.y.push_back(y);
  return run;
}

// Solution and null-space basis of a (possibly rank-deficient) system.
struct LsqSolution {
  Eigen::VectorXd x;
  Eigen::MatrixXd null;
};

LsqSolution solve_lsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return {Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Identity(n, n)};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol) ++rank;
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < rank; ++i) {
    x += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(b) / sv[i]);
  }
  return {x, svd.matrixV().rightCols(n - rank)};
}

double cyclic_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

void require_admissible(const ControlState& x) {
  const Geom g = geom(x);
  if (!(g.a > 0.0) || !(g.s > 0.0)) throw DomainError("state outside the admissible set 1 - x1^2 - x2^2 > 0");
}

std::array<double, 2> dynamics(const ControlState& x, double u) {
  require_admissible(x);
  return detail::state_rate(x.x1, x.x2, u);
}

std::array<double, 2> integrands(const ControlState& x, double u) {
  require_admissible(x);
  const Geom g = geom(x);
  const double w = g.rs / g.a;
  return {w - 1.0, u * w};
}

double pontryagin_H(const ControlState& x, double u, const Costate& p, const Multipliers& mu) {
  require_admissible(x);
  const Geom g = geom(x);
  const double w = g.rs / g.a;
  return p.p1 * x.x2 + p.p2 * (u * std::pow(g.s / g.a, 1.5) - x.x1) + mu.mu1 * u * w - mu.mu0 * (w - 1.0);
}

double switching_H1(const ControlState& x, double p2, double mu1) {
  require_admissible(x);
  const Geom g = geom(x);
  return mu1 * g.rs / g.a + p2 * std::pow(g.s / g.a, 1.5);
}

std::array<double, 2> adjoint_rhs(const ControlState& x, double u, const Costate& p, const Multipliers& mu) {
  require_admissible(x);
  return adjoint_unchecked(x, geom(x), u, p, mu);
}

std::array<double, 2> adjoint_rhs_printed(const ControlState& x, double u, const Costate& p, const Multipliers& mu) {
  require_admissible(x);
  const Geom g = geom(x);
  const double m = mu.mu0 - mu.mu1 * u;
  const double dp1 =
      p.p2 * (std::pow(1.0 - x.x1, 2.5) + 3.0 * u * x.x1 * x.x2 * x.x2 * g.rs) / std::sqrt(g.a) +
      x.x1 * m * (1.0 - x.x1 * x.x1 - 2.0 * x.x2 * x.x2) / (g.a * g.a * g.rs);
  const double dp2 = p.p1 + p.p2 * 3.0 * u * x.x2 * g.rs / std::pow(g.a, 1.5) - x.x2 * m / (g.a * g.rs);
  return {dp1, dp2};
}

double singular_p2(const ControlState& x, double mu1) {
  require_admissible(x);
  const Geom g = geom(x);
  return -mu1 * std::sqrt(g.a) / g.s;
}

double singular_p1(const ControlState& x, double mu0, double mu1) {
  require_admissible(x);
  const Geom g = geom(x);
  return -x.x2 * (mu1 * x.x1 * std::sqrt(g.a) + mu0 * g.rs) / (g.a * g.s);
}

double singular_residual(const ControlState& x, double u, const Multipliers& mu) {
  require_admissible(x);
  const Geom g = geom(x);
  return (mu.mu1 - mu.mu0 * u) / std::pow(g.a, 1.5);
}

double legendre_clebsch_quantity(const ControlState& x) {
  require_admissible(x);
  const Geom g = geom(x);
  return std::pow(g.s, 1.5) / (g.a * g.a * g.a);
}

double synthesize_control(double h1, double mu1, double lambda, double tol) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (h1 > tol) return 1.0 / lambda;
  if (h1 < -tol) return 0.0;
  return mu1;
}

Trajectory integrate_extremal(const ControlState& x0, const Costate& p0, const Multipliers& mu,
                              const ControlSignal& control, std::size_t steps) {
  require_admissible(x0);
  if (steps < 4) throw DomainError("integration needs at least 4 steps");
  const BundleRun run = run_bundle({x0.x1, x0.x2, p0.p1, p0.p2}, {mu}, control, steps);
  Trajectory tr;
  tr.mu = mu;
  tr.switches = control.switches;
  for (std::size_t i = 0; i < run.t.size(); ++i) {
    const ControlState x{run.y[i][0], run.y[i][1]};
    const Costate p{run.y[i][2], run.y[i][3]};
    const double u = control.u(run.t[i]);
    tr.t.push_back(run.t[i]);
    tr.x.push_back(x);
    tr.p.push_back(p);
    tr.u.push_back(u);
    tr.h1.push_back(switching_H1(x, p.p2, mu.mu1));
    tr.h.push_back(pontryagin_H(x, u, p, mu));
  }
  return tr;
}

Trajectory integrate_feedback(const ControlState& x0, const Costate& p0, const Multipliers& mu, double lambda,
                              double span, std::size_t steps) {
  require_admissible(x0);
  if (!(span > 0.0) || steps < 1) throw DomainError("integration span and steps must be positive");
  const std::vector<Multipliers> mus{mu};
  const double d = span / static_cast<double>(steps);
  auto h1_of = [&](const Bundle& y) { return switching_H1({y[0], y[1]}, y[3], mu.mu1); };
  Trajectory tr;
  tr.mu = mu;
  Bundle y{x0.x1, x0.x2, p0.p1, p0.p2};
  double u = synthesize_control(h1_of(y), mu.mu1, lambda);
  auto record = [&](double t) {
    const ControlState x{y[0], y[1]};
    const Costate p{y[2], y[3]};
    tr.t.push_back(t);
    tr.x.push_back(x);
    tr.p.push_back(p);
    tr.u.push_back(u);
    tr.h1.push_back(h1_of(y));
    tr.h.push_back(pontryagin_H(x, u, p, mu));
  };
  for (std::size_t i = 0; i < steps; ++i) {
    const double t0 = d * static_cast<double>(i);
    record(t0);
    const double h0 = h1_of(y);
    Bundle trial = y;
    bundle_step(trial, t0, d, u, mus);
    const double h_end = h1_of(trial);
    if (std::abs(h0) > 1e-10 && h0 * h_end < 0.0) {
      double lo = 0.0, hi = d;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        Bundle probe = y;
        bundle_step(probe, t0, mid, u, mus);
        if (h1_of(probe) * h0 > 0.0) lo = mid; else hi = mid;
      }
      const double tau = 0.5 * (lo + hi);
      bundle_step(y, t0, tau, u, mus);
      tr.switches.push_back(t0 + tau);
      u = synthesize_control(h_end, mu.mu1, lambda);
      bundle_step(y, t0 + tau, d - tau, u, mus);
    } else {
      y = trial;
      if (std::abs(h0) <= 1e-10) u = synthesize_control(h_end, mu.mu1, lambda);
    }
  }
  record(span);
  return tr;
}

const char* to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::Certified:
      return "certified";
    case CertificateStatus::Refuted:
      return "refuted";
    case CertificateStatus::NoCertificate:
      return "no-certificate";
  }
  return "unknown";
}

CertificateReport pmp_certificate(const SupportProfile& profile_in, double lambda_in, const CertificateOptions& opt) {
  if (!(lambda_in > 0.0)) throw DomainError("lambda must be positive");
  profile_in.validate();
  // Work at unit curvature.
  SupportProfile prof = profile_in;
  const double k = prof.k;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    prof.g[i] *= k;
    prof.g1[i] *= k;
    prof.g2[i] *= k;
    prof.h[i] *= k;
  }
  prof.k = 1.0;
  const double lambda = lambda_in / k;
  const double umax = 1.0 / lambda;
  const std::size_t n = prof.size();
  const double step = prof.step();

  CertificateReport rep;
  rep.lambda = lambda_in;

  // Control recovered from the radius of curvature.
  std::vector<double> r(n);
  bool bang = true;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = radius_of_curvature(prof.g[i], prof.g1[i], prof.g2[i]);
    const bool lo = std::abs(r[i]) <= opt.bang_tol * umax;
    const bool hi = std::abs(r[i] - umax) <= opt.bang_tol * umax;
    bang = bang && (lo || hi);
  }
  rep.bang_bang = bang;
  auto sample_class = [&](std::size_t i) { return r[i] > 0.5 * umax ? umax : 0.0; };

  ControlSignal control;
  if (bang) {
    std::vector<double> sw;
    if (!prof.breakpoints.empty()) {
      for (double b : prof.breakpoints) {
        if (b > 1e-12 && b < kTwoPi - 1e-12) sw.push_back(b);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (sample_class(i) != sample_class((i + 1) % n)) sw.push_back(std::min(step * (i + 0.5), kTwoPi - 1e-9));
      }
    }
    std::sort(sw.begin(), sw.end());
    std::vector<double> vals;
    for (std::size_t j = 0; j <= sw.size(); ++j) {
      const double lo = j == 0 ? 0.0 : sw[j - 1];
      const double hi = j == sw.size() ? kTwoPi : sw[j];
      const std::size_t idx = static_cast<std::size_t>(std::llround(0.5 * (lo + hi) / step)) % n;
      vals.push_back(sample_class(idx));
    }
    // Drop switches that do not change the value.
    std::vector<double> sw2;
    std::vector<double> vals2{vals[0]};
    for (std::size_t j = 0; j < sw.size(); ++j) {
      if (vals[j + 1] != vals2.back()) {
        sw2.push_back(sw[j]);
        vals2.push_back(vals[j + 1]);
      }
    }
    control = ControlSignal::piecewise(sw2, vals2);
  } else {
    std::vector<double> uc(n);
    for (std::size_t i = 0; i < n; ++i) uc[i] = std::clamp(r[i], 0.0, umax);
    control.u = [uc, step, n](double t) {
      const double x = std::fmod(std::fmod(t, kTwoPi) + kTwoPi, kTwoPi) / step;
      const std::size_t i = static_cast<std::size_t>(x) % n;
      const double f = x - std::floor(x);
      return (1.0 - f) * uc[i] + f * uc[(i + 1) % n];
    };
  }
  rep.switches = control.switches;

  // Superposition: one forced costate (mu0 = 1) plus three unit responses.
  const ControlState x0{prof.g[0], prof.g1[0]};
  const std::vector<Multipliers> mus{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}};
  const Bundle y0{x0.x1, x0.x2, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
  BundleRun run;
  try {
    run = run_bundle(y0, mus, control, n);
  } catch (const IntegrationError& e) {
    rep.message = std::string("integration failed: ") + e.what();
    return rep;
  }
  const Bundle& y_end = run.y.back();
  rep.state_residual = {y_end[0] - y0[0], y_end[1] - y0[1]};

  auto w_of = [](double x1, double x2) {
    const double a = 1.0 - x1 * x1;
    return std::sqrt(a - x2 * x2) / a;
  };
  auto q_of = [](double x1, double x2) {
    const double a = 1.0 - x1 * x1;
    return std::pow((a - x2 * x2) / a, 1.5);
  };
  // H1 = base + row . z with z = (p1(0), p2(0), mu1).
  auto h1_row = [&](const Bundle& y, Eigen::RowVector3d& row) {
    const double w = w_of(y[0], y[1]);
    const double q = q_of(y[0], y[1]);
    row << y[5] * q, y[7] * q, y[9] * q + w;
    return y[3] * q;
  };

  Eigen::MatrixXd a_per(2, 3);
  Eigen::VectorXd b_per(2);
  for (int c = 0; c < 2; ++c) {
    for (int j = 0; j < 3; ++j) a_per(c, j) = y_end[4 + 2 * j + c] - y0[4 + 2 * j + c];
    b_per(c) = -(y_end[2 + c] - y0[2 + c]);
  }
  const std::size_t ns = control.switches.size();
  Eigen::MatrixXd a_sw(ns, 3);
  Eigen::VectorXd b_sw(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    Eigen::RowVector3d row;
    b_sw(i) = -h1_row(run.at_switch[i], row);
    a_sw.row(i) = row;
  }

  const double rank_tol = 1e-8;
  const LsqSolution s1 = solve_lsq(a_per, b_per, rank_tol);
  Eigen::Vector3d z = s1.x;
  Eigen::MatrixXd null = s1.null;
  if (ns > 0 && null.cols() > 0) {
    const LsqSolution s2 = solve_lsq(a_sw * null, b_sw - a_sw * z, rank_tol);
    z += null * s2.x;
    null = null * s2.null;
  }
  if (null.cols() > 0) {
    // Remaining freedom: closest to H1 = +1 on arcs and -1 on corners.
    Eigen::MatrixXd a_soft(n, null.cols());
    Eigen::VectorXd b_soft(n);
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::RowVector3d row;
      const double base = h1_row(run.y[i], row);
      const double target = control.u(run.t[i]) > 0.5 * umax ? 1.0 : -1.0;
      a_soft.row(static_cast<Eigen::Index>(i)) = row * null;
      b_soft(static_cast<Eigen::Index>(i)) = target - base - row.dot(z);
    }
    z += null * solve_lsq(a_soft, b_soft, rank_tol).x;
  }

  rep.mu = {1.0, z[2]};
  rep.p0 = {z[0], z[1]};
  rep.nontriviality = std::abs(z[0]) + std::abs(z[1]) + std::abs(z[2]);
  for (std::size_t i = 0; i < ns; ++i) {
    Eigen::RowVector3d row;
    const double base = h1_row(run.at_switch[i], row);
    rep.switch_residuals.push_back(base + row.dot(z));
  }

  Trajectory tr;
  try {
    tr = integrate_extremal(x0, rep.p0, rep.mu, control, n);
  } catch (const Error& e) {
    rep.message = std::string("integration failed: ") + e.what();
    return rep;
  }
  rep.periodicity_residual = {tr.p.back().p1 - tr.p.front().p1, tr.p.back().p2 - tr.p.front().p2};

  // Sign pattern per window.
  std::vector<double> edges{0.0};
  for (double s : control.switches) edges.push_back(s);
  edges.push_back(kTwoPi);
  if (bang) {
    for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
      ControlWindow w;
      w.begin = edges[j];
      w.end = edges[j + 1];
      w.u = control.u(0.5 * (w.begin + w.end));
      w.h1_min = std::numeric_limits<double>::infinity();
      w.h1_max = -std::numeric_limits<double>::infinity();
      rep.windows.push_back(w);
    }
  } else {
    ControlWindow w;
    w.begin = 0.0;
    w.end = kTwoPi;
    w.u = std::numeric_limits<double>::quiet_NaN();
    w.h1_min = std::numeric_limits<double>::infinity();
    w.h1_max = -std::numeric_limits<double>::infinity();
    rep.windows.push_back(w);
  }
  rep.sign_pattern_ok = true;
  rep.lc_min = std::numeric_limits<double>::infinity();
  double hmin = std::numeric_limits<double>::infinity(), hmax = -hmin;
  for (std::size_t i = 0; i + 1 < tr.t.size(); ++i) {
    const double t = tr.t[i];
    const double h1 = tr.h1[i];
    const double u = tr.u[i];
    rep.lc_min = std::min(rep.lc_min, legendre_clebsch_quantity(tr.x[i]));
    hmin = std::min(hmin, tr.h[i]);
    hmax = std::max(hmax, tr.h[i]);
    rep.maximality_violation = std::max({rep.maximality_violation, h1 * (umax - u), -h1 * u});
    std::size_t wi = 0;
    if (bang) {
      wi = static_cast<std::size_t>(std::upper_bound(edges.begin() + 1, edges.end() - 1, t) - (edges.begin() + 1));
    }
    ControlWindow& w = rep.windows[wi];
    w.h1_min = std::min(w.h1_min, h1);
    w.h1_max = std::max(w.h1_max, h1);
    bool ok = true;
    if (std::abs(u - umax) <= opt.bang_tol * umax) {
      ok = h1 > -opt.sign_tol;
    } else if (std::abs(u) <= opt.bang_tol * umax) {
      ok = h1 < opt.sign_tol;
    } else {
      ok = std::abs(h1) <= opt.sign_tol;
    }
    if (!ok) {
      w.consistent = false;
      rep.sign_pattern_ok = false;
    }
  }
  rep.h_variation = hmax - hmin;

  // Zero crossings of H1 against the control switches.
  for (std::size_t i = 0; i + 1 < tr.t.size(); ++i) {
    const double a = tr.h1[i], b = tr.h1[i + 1];
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      rep.zero_crossings.push_back(tr.t[i] + (tr.t[i + 1] - tr.t[i]) * a / (a - b));
    }
  }
  double worst = 0.0;
  for (double s : control.switches) {
    double best = std::numeric_limits<double>::infinity();
    for (double c : rep.zero_crossings) best = std::min(best, cyclic_gap(s, c));
    worst = std::max(worst, best / step);
  }
  for (double c : rep.zero_crossings) {
    double best = std::numeric_limits<double>::infinity();
    for (double s : control.switches) best = std::min(best, cyclic_gap(s, c));
    worst = std::max(worst, best / step);
  }
  rep.max_alignment_steps = worst;
  rep.alignment_ok = worst <= opt.align_steps;

  const double per = std::hypot(rep.periodicity_residual[0], rep.periodicity_residual[1]);
  const double closure = std::hypot(rep.state_residual[0], rep.state_residual[1]);
  double sw_max = 0.0;
  for (double v : rep.switch_residuals) sw_max = std::max(sw_max, std::abs(v));
  rep.trajectory = std::move(tr);
  if (closure > opt.periodicity_tol) {
    rep.status = CertificateStatus::NoCertificate;
    rep.message = "profile state does not close under its own control";
  } else if (per > opt.periodicity_tol) {
    rep.status = CertificateStatus::NoCertificate;
    rep.message = "no periodic costate found";
  } else if (!bang) {
    rep.status = CertificateStatus::Refuted;
    rep.message = "control is not bang-bang and singular arcs violate the Legendre-Clebsch condition";
  } else if (rep.sign_pattern_ok && rep.alignment_ok && sw_max <= opt.switch_tol && rep.nontriviality > 0.0) {
    rep.status = CertificateStatus::Certified;
    rep.message = "maximum principle satisfied";
  } else {
    rep.status = CertificateStatus::Refuted;
    rep.message = !rep.sign_pattern_ok ? "H1 sign pattern contradicts the control"
                  : !rep.alignment_ok  ? "H1 zeros do not match the control switches"
                                       : "H1 does not vanish at the control switches";
  }
  return rep;
}

std::string certificate_to_json(const CertificateReport& rep, int indent) {
  nlohmann::json doc;
  doc["status"] = to_string(rep.status);
  doc["message"] = rep.message;
  doc["lambda"] = rep.lambda;
  doc["bang_bang"] = rep.bang_bang;
  doc["switches"] = rep.switches;
  doc["state_residual"] = rep.state_residual;
  doc["periodicity_residual"] = rep.periodicity_residual;
  doc["switch_residuals"] = rep.switch_residuals;
  doc["zero_crossings"] = rep.zero_crossings;
  doc["max_alignment_steps"] = rep.max_alignment_steps;
  doc["sign_pattern_ok"] = rep.sign_pattern_ok;
  doc["alignment_ok"] = rep.alignment_ok;
  doc["maximality_violation"] = rep.maximality_violation;
  doc["legendre_clebsch_min"] = rep.lc_min;
  doc["hamiltonian_variation"] = rep.h_variation;
  doc["mu0"] = rep.mu.mu0;
  doc["mu1"] = rep.mu.mu1;
  doc["p0"] = {rep.p0.p1, rep.p0.p2};
  doc["nontriviality"] = rep.nontriviality;
  auto& wins = doc["windows"] = nlohmann::json::array();
  for (const ControlWindow& w : rep.windows) {
    nlohmann::json jw{{"begin", w.begin}, {"end", w.end}, {"h1_min", w.h1_min}, {"h1_max", w.h1_max},
                      {"consistent", w.consistent}};
    if (std::isnan(w.u)) jw["u"] = nullptr; else jw["u"] = w.u;
    wins.push_back(jw);
  }
  return doc.dump(indent);
}

}  // namespace riso
