#pragma once

// Pontryagin maximum principle for the support-function formulation:
//
//   x1' = x2,  x2' = u ((1 - x1^2 - x2^2) / (1 - x1^2))^{3/2} - x1,
//   0 <= u <= 1/lambda, minimize area subject to fixed length.
//
// Adjoint equations are p' = -dH/dx and the control maximizes H.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "riso/support.hpp"

namespace riso {

struct ControlState {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Costate {
  double p1 = 0.0;
  double p2 = 0.0;
};

struct Multipliers {
  double mu0 = 1.0;
  double mu1 = 0.0;
};

/// Throws DomainError unless 1 - x1^2 - x2^2 > 0.
void require_admissible(const ControlState& x);

std::array<double, 2> dynamics(const ControlState& x, double u);

/// {area integrand, length integrand}.
std::array<double, 2> integrands(const ControlState& x, double u);

double pontryagin_H(const ControlState& x, double u, const Costate& p, const Multipliers& mu);

/// Coefficient of u in H.
double switching_H1(const ControlState& x, double p2, double mu1);

/// -dH/dx in closed form.
std::array<double, 2> adjoint_rhs(const ControlState& x, double u, const Costate& p, const Multipliers& mu);

/// The adjoint right-hand side as typeset in the source text; kept for comparison only.
std::array<double, 2> adjoint_rhs_printed(const ControlState& x, double u, const Costate& p, const Multipliers& mu);

/// Costate on a singular arc (H1 = 0 and dH1/dt = 0).
double singular_p2(const ControlState& x, double mu1);
double singular_p1(const ControlState& x, double mu0, double mu1);

/// d/dt singular_p1 along the dynamics minus the first adjoint equation,
/// with the costate on the singular arc: (mu1 - mu0 u) / (1 - x1^2)^{3/2}.
double singular_residual(const ControlState& x, double u, const Multipliers& mu);

/// -(d/du) d^2 H1/dt^2 on the singular arc: (1 - x1^2 - x2^2)^{3/2} / (1 - x1^2)^3.
double legendre_clebsch_quantity(const ControlState& x);

/// 1/lambda for H1 > tol, 0 for H1 < -tol, mu1 otherwise.
double synthesize_control(double h1, double mu1, double lambda, double tol = 1e-10);

struct Trajectory {
  std::vector<double> t;
  std::vector<ControlState> x;
  std::vector<Costate> p;
  std::vector<double> u;   // control in effect on [t_i, t_{i+1})
  std::vector<double> h1;
  std::vector<double> h;
  std::vector<double> switches;  // feedback integration only
  Multipliers mu;
};

/// RK4 over [0, 2pi] with a prescribed control; steps split at its switches.
Trajectory integrate_extremal(const ControlState& x0, const Costate& p0, const Multipliers& mu,
                              const ControlSignal& control, std::size_t steps = 4096);

/// RK4 over [0, span] with u = synthesize_control(H1); zeros of H1 are
/// located by bisection inside the step.
Trajectory integrate_feedback(const ControlState& x0, const Costate& p0, const Multipliers& mu, double lambda,
                              double span, std::size_t steps = 4096);

enum class CertificateStatus { Certified, Refuted, NoCertificate };

const char* to_string(CertificateStatus s);

struct ControlWindow {
  double begin = 0.0;
  double end = 0.0;
  double u = 0.0;
  double h1_min = 0.0;
  double h1_max = 0.0;
  bool consistent = true;
};

struct CertificateOptions {
  double periodicity_tol = 1e-6;
  double switch_tol = 1e-6;
  double sign_tol = 1e-8;        // |H1| below this is not sign-checked
  double bang_tol = 1e-6;        // relative tolerance for recognizing u in {0, 1/lambda}
  double align_steps = 2.0;      // zero-crossing alignment in grid steps
};

struct CertificateReport {
  CertificateStatus status = CertificateStatus::NoCertificate;
  double lambda = 0.0;
  bool bang_bang = false;
  std::vector<double> switches;
  std::array<double, 2> state_residual{};
  std::array<double, 2> periodicity_residual{};
  std::vector<double> switch_residuals;   // H1 at each switch
  std::vector<ControlWindow> windows;
  std::vector<double> zero_crossings;
  double max_alignment_steps = 0.0;       // worst switch/crossing mismatch in grid steps
  bool sign_pattern_ok = false;
  bool alignment_ok = false;
  double maximality_violation = 0.0;      // max over samples of H(u) - H(u*)
  double lc_min = 0.0;
  double h_variation = 0.0;
  Multipliers mu;
  Costate p0;
  double nontriviality = 0.0;             // |p(0)| + |mu1|
  std::string message;
  Trajectory trajectory;
};

/// Searches for normal multipliers (mu0 = 1) and a periodic costate making
/// the profile's control satisfy the maximum principle.
CertificateReport pmp_certificate(const SupportProfile& profile, double lambda, const CertificateOptions& opt = {});

std::string certificate_to_json(const CertificateReport& report, int indent = 2);

}  // namespace riso
