#pragma once

// Support-function calculus for convex curves around an interior origin O.
//
// h(theta) is the distance from O to the supporting geodesic orthogonal to
// the ray at angle theta, g = tanh(k h)/k the contact radius of curvature.
// At k = 1, g is the Euclidean support function of the curve's image in the
// Klein model, which is what makes the reconstruction below linear.

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "riso/hyperbolic.hpp"

namespace riso {

struct SupportProfile {
  std::vector<double> theta;  // uniform grid on [0, 2pi)
  std::vector<double> h;
  std::vector<double> g;
  std::vector<double> g1;
  std::vector<double> g2;
  double k = 1.0;
  // Angles in [0, 2pi) where g'' may jump; empty for smooth profiles.
  std::vector<double> breakpoints;

  std::size_t size() const { return theta.size(); }
  double step() const;

  /// Builds a profile from sampled support distances; g' and g'' by
  /// fourth-order periodic central differences.
  static SupportProfile from_support(std::span<const double> h, double k = 1.0);
  /// Builds a profile from contact radius samples with analytic derivatives.
  static SupportProfile from_contact(std::vector<double> g, std::vector<double> g1, std::vector<double> g2,
                                     double k = 1.0, std::vector<double> breakpoints = {});
  /// Circle of radius r centred at the origin.
  static SupportProfile circle(double r, std::size_t n, double k = 1.0);

  /// Throws AdmissibilityError (first offending theta) or DomainError.
  void validate() const;
};

struct CurveMeasurements {
  double length = 0.0;
  double area = 0.0;
};

/// g = tanh(k h) / k.
double contact_radius(double h, double k = 1.0);

/// R = (g'' + g) / (1 - k^2 g'^2 / (1 - k^2 g^2))^{3/2}.
double radius_of_curvature(double g, double g1, double g2, double k = 1.0);

/// Length and enclosed area from the support profile.
CurveMeasurements length_and_area(const SupportProfile& profile);

/// Pointwise integrands at sample i, at unit curvature: (area, length).
std::array<double, 2> functional_integrands(const SupportProfile& profile, std::size_t i);

struct UnitCurvatureData {
  double lambda;
  double length;
  double area;
};

/// Reduces (lambda, L, A) on curvature -k^2 to curvature -1.
UnitCurvatureData rescale(double lambda, double k, double length, double area);
/// Inverse of rescale.
UnitCurvatureData unscale(double lambda, double k, double length, double area);

/// Piecewise control u(theta) with optional jump locations.
struct ControlSignal {
  std::function<double(double)> u;
  std::vector<double> switches;  // sorted, in (0, 2pi)

  static ControlSignal constant(double value);
  /// Piecewise constant: values[i] on [switches[i-1], switches[i]) with
  /// switches[-1] = 0 and switches[n] = 2pi.
  static ControlSignal piecewise(std::vector<double> switches, std::vector<double> values);
};

struct IntegratedProfile {
  SupportProfile profile;
  std::array<double, 2> residual{};  // x(2pi) - x(0)
  bool closed = false;
};

/// Integrates x1' = x2, x2' = u ((1 - x1^2 - x2^2)/(1 - x1^2))^{3/2} - x1 with
/// fixed-step RK4 over [0, 2pi]. Steps are split at control switches.
IntegratedProfile profile_from_control(const ControlSignal& control, double g0, double g1_0,
                                       std::size_t steps = 4096, double closure_tol = 1e-8);

namespace detail {
/// Right-hand side of the state system; no domain checks.
std::array<double, 2> state_rate(double x1, double x2, double u);
}  // namespace detail

/// Point of the curve with outward normal direction theta at sample i
/// (k = 1): Klein coordinates g e + g' e_perp.
HPoint support_point(const SupportProfile& profile, std::size_t i);

/// CSV with header comment, then columns theta,h,g,g1,g2.
void write_profile_csv(std::ostream& out, const SupportProfile& profile);
SupportProfile read_profile_csv(std::istream& in);

}  // namespace riso
