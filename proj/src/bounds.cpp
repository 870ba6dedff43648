#include "riso/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "riso/error.hpp"

namespace riso {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double lambda, double k) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be positive");
}

// y - atan(y), summed as a series where the difference cancels.
double y_minus_atan(double y) {
  if (std::abs(y) >= 0.5) return y - std::atan(y);
  const double y2 = y * y;
  double term = y * y2, sum = 0.0;
  for (int n = 3; std::abs(term) > 1e-18 * std::abs(sum) || sum == 0.0; n += 2) {
    sum += (n % 4 == 3 ? term : -term) / n;
    term *= y2;
    if (term == 0.0) break;
  }
  return sum;
}

// x - sin(x).
double x_minus_sin(double x) {
  if (std::abs(x) >= 1.0) return x - std::sin(x);
  const double x2 = x * x;
  double term = x * x2 / 6.0, sum = 0.0;
  for (int n = 4; term != 0.0 && std::abs(term) > 1e-18 * std::abs(sum); n += 2) {
    sum += term;
    term *= -x2 / (n * (n + 1));
  }
  return sum;
}

// t - tanh(t), via atanh(u) - u with u = tanh(t).
double t_minus_tanh(double t) {
  const double u = std::tanh(t);
  if (u >= 0.5) return t - u;
  const double u2 = u * u;
  double term = u * u2, sum = 0.0;
  for (int n = 3; term != 0.0 && term > 1e-18 * sum; n += 2) {
    sum += term / n;
    term *= u2;
  }
  return sum;
}

// Unit-curvature bound for the given regime; L already checked. Each branch
// is written as a sum of non-negative terms so small areas keep full precision.
double unit_bound(Regime r, double lambda, double length) {
  if (length == 0.0) return 0.0;
  switch (r) {
    case Regime::Critical:
      return 4.0 * y_minus_atan(length / 4.0);
    case Regime::Supercritical: {
      // lambda L - 4 atan(r tan th) with r = lambda / mu, th = mu L / 4, r - 1 = s.
      const double mu = std::sqrt((lambda - 1.0) * (lambda + 1.0));
      const double s = 1.0 / (mu * (lambda + mu));
      const double th = std::min(mu * length / 4.0, kPi / 2.0);
      const double sn = std::sin(th), cs = std::cos(th);
      const double g = sn * cs / (1.0 + s * sn * sn);
      const double th_minus_g = 0.5 * x_minus_sin(2.0 * th) + sn * cs * s * sn * sn / (1.0 + s * sn * sn);
      return 4.0 * (s * th_minus_g + y_minus_atan(s * g));
    }
    case Regime::Subcritical: {
      const double nu = std::sqrt((1.0 - lambda) * (1.0 + lambda));
      const double rr = lambda / nu;
      const double th = nu * length / 4.0;
      return 4.0 * (rr * t_minus_tanh(th) + y_minus_atan(rr * std::tanh(th)));
    }
  }
  return 0.0;
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Supercritical:
      return "supercritical";
    case Regime::Critical:
      return "critical";
    case Regime::Subcritical:
      return "subcritical";
  }
  return "unknown";
}

Regime classify(double lambda, double k) {
  require_positive(lambda, k);
  if (std::abs(lambda - k) <= 1e-12 * std::max(lambda, k)) return Regime::Critical;
  return lambda > k ? Regime::Supercritical : Regime::Subcritical;
}

double max_length(double lambda, double k) {
  if (classify(lambda, k) != Regime::Supercritical) return std::numeric_limits<double>::infinity();
  return 2.0 * kPi / std::sqrt((lambda - k) * (lambda + k));
}

BoundResult reverse_bound(double lambda, double k, double length) {
  const Regime r = classify(lambda, k);
  if (!(length >= 0.0)) throw DomainError("length must be non-negative");
  const double lmax = max_length(lambda, k);
  if (length > lmax * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "length " << length << " outside the admissible interval [0, L_max], L_max = " << lmax;
    throw DomainError(msg.str());
  }
  const double b = unit_bound(r, lambda / k, std::min(k * length, k * lmax)) / (k * k);
  return {r, length, std::max(b, 0.0), lmax};
}

double horocyclic_bound(double k, double length) {
  if (!(k > 0.0)) throw DomainError("k must be positive");
  if (!(length >= 0.0)) throw DomainError("length must be non-negative");
  return unit_bound(Regime::Critical, 1.0, k * length) / (k * k);
}

double classical_defect(double length, double area, double c) {
  return length * length - 4.0 * kPi * area + c * area * area;
}

double planar_lune_area(double lambda, double length) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (!(length >= 0.0) || length > 2.0 * kPi / lambda * (1.0 + 1e-12)) {
    throw DomainError("length outside [0, 2pi/lambda]");
  }
  return x_minus_sin(lambda * length / 2.0) / (lambda * lambda);
}

LimitsReport regime_limits_check(double k, double length) {
  if (!(k > 0.0)) throw DomainError("k must be positive");
  if (!(length >= 0.0)) throw DomainError("length must be non-negative");
  LimitsReport rep{k, length, {}, true};
  const double crit = reverse_bound(k, k, length).bound;
  for (double eps : {1e-3, 1e-5}) {
    LimitSample s{eps, std::nan(""), 0.0, crit, std::nan(""), 0.0};
    const double up = k * (1.0 + eps);
    if (length <= max_length(up, k)) {
      s.above = reverse_bound(up, k, length).bound;
      s.dev_above = std::abs(s.above - crit);
    }
    s.below = reverse_bound(k * (1.0 - eps), k, length).bound;
    s.dev_below = std::abs(s.below - crit);
    rep.samples.push_back(s);
  }
  const auto& a = rep.samples[0];
  const auto& b = rep.samples[1];
  const bool above_ok = std::isnan(a.dev_above) || (!std::isnan(b.dev_above) && b.dev_above <= a.dev_above);
  rep.converging = above_ok && b.dev_below <= a.dev_below;
  return rep;
}

}  // namespace riso
