#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <json.hpp>

#include "oracles.hpp"
#include "riso/bounds.hpp"
#include "riso/control.hpp"
#include "riso/error.hpp"
#include "riso/shapes.hpp"

using namespace riso;

namespace {

ControlState random_state(std::mt19937_64& rng, double margin = 0.05) {
  const auto s = oracle::random_state(rng, margin);
  return {s[0], s[1]};
}

// Independent transcription of H for finite differences.
double H_ref(double x1, double x2, double u, double p1, double p2, double mu0, double mu1) {
  const double a = 1.0 - x1 * x1, s = a - x2 * x2;
  const double q = std::sqrt(s) / a;
  return p1 * x2 + p2 * (u * std::pow(s / a, 1.5) - x1) + mu1 * u * q - mu0 * (q - 1.0);
}

double H1_ref(double x1, double x2, double p2, double mu1) {
  const double a = 1.0 - x1 * x1, s = a - x2 * x2;
  return mu1 * std::sqrt(s) / a + p2 * std::pow(s / a, 1.5);
}

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

TEST(Dynamics, Examples) {
  const auto eq = dynamics({0.4, 0.0}, 0.4);
  EXPECT_NEAR(eq[0], 0.0, 1e-15);
  EXPECT_NEAR(eq[1], 0.0, 1e-15);
  const auto rot = dynamics({0.3, -0.2}, 0.0);
  EXPECT_EQ(rot[0], -0.2);
  EXPECT_EQ(rot[1], -0.3);
  EXPECT_THROW(dynamics({0.8, 0.7}, 0.1), DomainError);
  EXPECT_THROW(require_admissible({1.0, 0.0}), DomainError);
}

TEST(Integrands, Examples) {
  const auto z = integrands({0.0, 0.0}, 0.37);
  EXPECT_EQ(z[0], 0.0);
  EXPECT_NEAR(z[1], 0.37, 1e-15);
  const double r = 0.9, t = std::tanh(r);
  const auto c = integrands({t, 0.0}, t);
  EXPECT_NEAR(c[0], std::cosh(r) - 1.0, 1e-12);
  EXPECT_NEAR(c[1], std::sinh(r), 1e-12);
}

TEST(Integrands, AgreeWithSupportFunctionals) {
  const Lune lune = lune_for_length(1.3, 3.0);
  const ShapeProfile sp = lune_support_profile(lune, 1024);
  const SupportProfile& p = sp.profile;
  for (std::size_t i = 0; i < p.size(); i += 7) {
    const double u = radius_of_curvature(p.g[i], p.g1[i], p.g2[i]);
    const auto a = integrands({p.g[i], p.g1[i]}, u);
    const auto b = functional_integrands(p, i);
    EXPECT_NEAR(a[0], b[0], 1e-8);
    EXPECT_NEAR(a[1], b[1], 1e-8);
  }
}

TEST(Pontryagin, LinearInControl) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const ControlState x = random_state(rng);
    const Costate p{u(rng), u(rng)};
    const Multipliers mu{1.0, u(rng)};
    const double uu = std::abs(u(rng));
    const double lhs = pontryagin_H(x, uu, p, mu) - pontryagin_H(x, 0.0, p, mu);
    const double rhs = uu * switching_H1(x, p.p2, mu.mu1);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
    EXPECT_NEAR(pontryagin_H(x, uu, p, mu), H_ref(x.x1, x.x2, uu, p.p1, p.p2, mu.mu0, mu.mu1),
                1e-12 * std::max(1.0, std::abs(lhs)));
  }
  EXPECT_EQ(pontryagin_H({0.0, 0.0}, 0.5, {0.0, 0.0}, {1.0, 0.0}), 0.0);
}

TEST(SwitchingFunction, Examples) {
  EXPECT_EQ(switching_H1({0.0, 0.0}, -0.7, 0.7), 0.0);
  EXPECT_GT(switching_H1({0.3, 0.2}, 0.0, 0.5), 0.0);
  std::mt19937_64 rng(52);
  for (int i = 0; i < 1000; ++i) {
    const ControlState x = random_state(rng);
    const double mu1 = 2.0 * (static_cast<double>(i) / 1000.0) - 1.0;
    EXPECT_NEAR(switching_H1(x, singular_p2(x, mu1), mu1), 0.0, 1e-12 * std::max(1.0, std::abs(mu1) / (1.0 - x.x1 * x.x1)));
    EXPECT_NEAR(switching_H1(x, 0.3, mu1), H1_ref(x.x1, x.x2, 0.3, mu1), 1e-13);
  }
}

TEST(Adjoint, EqualsMinusGradientOfH) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-2.0, 2.0), uc(0.0, 1.5);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ControlState x = random_state(rng, 0.02);
    const Costate p{u(rng), u(rng)};
    const Multipliers mu{1.0, u(rng)};
    const double uu = uc(rng);
    const double h = 1e-6 * (1.0 - std::hypot(x.x1, x.x2));
    const double d1 = oracle::central([&](double v) { return H_ref(v, x.x2, uu, p.p1, p.p2, 1.0, mu.mu1); }, x.x1, h);
    const double d2 = oracle::central([&](double v) { return H_ref(x.x1, v, uu, p.p1, p.p2, 1.0, mu.mu1); }, x.x2, h);
    const auto rhs = adjoint_rhs(x, uu, p, mu);
    const double scale = std::max(1.0, std::hypot(d1, d2));
    worst = std::max(worst, std::hypot(rhs[0] + d1, rhs[1] + d2) / scale);
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Adjoint, OriginStateGivesMinusP1) {
  const auto r = adjoint_rhs({0.0, 0.0}, 0.4, {0.8, -0.3}, {1.0, 0.2});
  EXPECT_NEAR(r[1], -0.8, 1e-15);
}

TEST(Adjoint, PrintedFormDisagreesWithGradient) {
  // The typeset adjoint is kept only as a comparison; it is not -dH/dx.
  const ControlState x{0.4, 0.3};
  const Costate p{0.5, -0.7};
  const Multipliers mu{1.0, 0.3};
  const auto good = adjoint_rhs(x, 0.5, p, mu);
  const auto printed = adjoint_rhs_printed(x, 0.5, p, mu);
  EXPECT_GT(std::abs(good[0] - printed[0]) + std::abs(good[1] - printed[1]), 1e-3);
}

TEST(Singular, ClosedFormExamples) {
  EXPECT_EQ(singular_p1({0.4, 0.0}, 1.0, 0.7), 0.0);
  EXPECT_NEAR(singular_p2({0.0, 0.0}, 1.0), -1.0, 1e-15);
}

TEST(Singular, SubstitutionChain) {
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> m(0.05, 1.0);
  for (int i = 0; i < 300; ++i) {
    const ControlState x = random_state(rng, 0.1);
    const Multipliers mu{1.0, m(rng)};
    const double u = mu.mu1;
    const Costate p{singular_p1(x, 1.0, mu.mu1), singular_p2(x, mu.mu1)};
    // H1 = 0 and its time derivative along the coupled flow vanish.
    EXPECT_NEAR(switching_H1(x, p.p2, mu.mu1), 0.0, 1e-12);
    const auto f = dynamics(x, u);
    const auto g = adjoint_rhs(x, u, p, mu);
    auto h1_along = [&](double t) {
      const ControlState y{x.x1 + t * f[0], x.x2 + t * f[1]};
      return H1_ref(y.x1, y.x2, p.p2 + t * g[1], mu.mu1);
    };
    EXPECT_NEAR(oracle::central(h1_along, 0.0, 1e-5), 0.0, 1e-6);
    // Costate formulas are consistent with the adjoint equations.
    auto p2_along = [&](double t) { return singular_p2({x.x1 + t * f[0], x.x2 + t * f[1]}, mu.mu1); };
    auto p1_along = [&](double t) { return singular_p1({x.x1 + t * f[0], x.x2 + t * f[1]}, 1.0, mu.mu1); };
    EXPECT_NEAR(oracle::central(p2_along, 0.0, 1e-5), g[1], 1e-6 * std::max(1.0, std::abs(g[1])));
    EXPECT_NEAR(oracle::central(p1_along, 0.0, 1e-5), g[0], 1e-6 * std::max(1.0, std::abs(g[0])));
    EXPECT_NEAR(singular_residual(x, u, mu), 0.0, 1e-15);
  }
}

TEST(Singular, ResidualClosedForm) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> m(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const ControlState x = random_state(rng, 0.1);
    const Multipliers mu{1.0, m(rng)};
    const double u = m(rng);
    const Costate p{singular_p1(x, 1.0, mu.mu1), singular_p2(x, mu.mu1)};
    const auto f = dynamics(x, u);
    auto p1_along = [&](double t) { return singular_p1({x.x1 + t * f[0], x.x2 + t * f[1]}, 1.0, mu.mu1); };
    const double res = oracle::central(p1_along, 0.0, 1e-5) - adjoint_rhs(x, u, p, mu)[0];
    const double expected = (mu.mu1 - u) / std::pow(1.0 - x.x1 * x.x1, 1.5);
    EXPECT_NEAR(res, expected, 1e-6 * std::max(1.0, std::abs(expected)));
    EXPECT_NEAR(singular_residual(x, u, mu), expected, 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST(LegendreClebsch, ExamplesAndPositivity) {
  EXPECT_EQ(legendre_clebsch_quantity({0.0, 0.0}), 1.0);
  EXPECT_NEAR(legendre_clebsch_quantity({0.6, 0.0}), std::pow(1.0 - 0.36, -1.5), 1e-14);
  std::mt19937_64 rng(56);
  for (int i = 0; i < 100000; ++i) {
    const auto s = oracle::random_state(rng, 1e-6);
    ASSERT_GT(legendre_clebsch_quantity({s[0], s[1]}), 0.0);
  }
}

TEST(LegendreClebsch, NestedFiniteDifferences) {
  // d^2 H1/dt^2 along the coupled state/costate flow with p on the singular
  // manifold, evaluated for two controls and differenced in u.
  std::mt19937_64 rng(57);
  for (int i = 0; i < 20; ++i) {
    const ControlState x = random_state(rng, 0.2);
    const Multipliers mu{1.0, 0.4};
    const Costate p{singular_p1(x, 1.0, mu.mu1), singular_p2(x, mu.mu1)};
    auto second = [&](double u) {
      auto h1 = [&](double t) {
        // RK4 of the coupled system to time t with constant u.
        double y[4] = {x.x1, x.x2, p.p1, p.p2};
        const int n = 8;
        const double dt = t / n;
        auto rhs = [&](const double* z, double* out) {
          const auto f = dynamics({z[0], z[1]}, u);
          const auto g = adjoint_rhs({z[0], z[1]}, u, {z[2], z[3]}, mu);
          out[0] = f[0];
          out[1] = f[1];
          out[2] = g[0];
          out[3] = g[1];
        };
        for (int s = 0; s < n; ++s) {
          double k1[4], k2[4], k3[4], k4[4], tmp[4];
          rhs(y, k1);
          for (int j = 0; j < 4; ++j) tmp[j] = y[j] + 0.5 * dt * k1[j];
          rhs(tmp, k2);
          for (int j = 0; j < 4; ++j) tmp[j] = y[j] + 0.5 * dt * k2[j];
          rhs(tmp, k3);
          for (int j = 0; j < 4; ++j) tmp[j] = y[j] + dt * k3[j];
          rhs(tmp, k4);
          for (int j = 0; j < 4; ++j) y[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        return H1_ref(y[0], y[1], y[3], mu.mu1);
      };
      const double h = 1e-3;
      return (h1(h) - 2.0 * h1(0.0) + h1(-h)) / (h * h);
    };
    const double du = 0.1;
    const double d = -(second(mu.mu1 + du) - second(mu.mu1 - du)) / (2.0 * du);
    const double lc = legendre_clebsch_quantity(x);
    EXPECT_NEAR(d, lc, 1e-4 * std::max(1.0, lc)) << x.x1 << "," << x.x2;
  }
}

TEST(Synthesis, Branches) {
  EXPECT_EQ(synthesize_control(0.5, 0.3, 2.0), 0.5);
  EXPECT_EQ(synthesize_control(-0.5, 0.3, 2.0), 0.0);
  EXPECT_EQ(synthesize_control(0.0, 0.3, 2.0), 0.3);
  EXPECT_EQ(synthesize_control(5e-11, 0.3, 2.0), 0.3);
}

TEST(Feedback, HamiltonianIsConstant) {
  std::mt19937_64 rng(58);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int runs = 0;
  for (int i = 0; i < 20; ++i) {
    const ControlState x0 = random_state(rng, 0.4);
    const Costate p0{u(rng), u(rng)};
    const Multipliers mu{1.0, 0.5 + 0.5 * u(rng)};
    Trajectory tr;
    try {
      tr = integrate_feedback(x0, p0, mu, 1.5, 2.0 * M_PI, 4096);
    } catch (const IntegrationError&) {
      continue;
    }
    ++runs;
    const auto [lo, hi] = std::minmax_element(tr.h.begin(), tr.h.end());
    EXPECT_LT(*hi - *lo, 1e-5) << i;
    for (double v : tr.u) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0 / 1.5 + 1e-15);
    }
  }
  EXPECT_GT(runs, 5);
}

TEST(Certificate, CircleIsCertified) {
  const double lambda = kSqrt2;
  const SupportProfile circle = SupportProfile::circle(std::atanh(1.0 / lambda), 2048);
  const CertificateReport r = pmp_certificate(circle, lambda);
  EXPECT_EQ(r.status, CertificateStatus::Certified) << r.message;
  EXPECT_TRUE(r.switches.empty());
  for (double h : r.trajectory.h1) EXPECT_GE(h, -1e-8);
  EXPECT_GT(r.nontriviality, 0.0);
}

TEST(Certificate, LunesAreCertified) {
  for (double lambda : {0.6, 1.0, 1.2, kSqrt2, 3.0}) {
    const double lmax = max_length(lambda, 1.0);
    const Lune lune = lune_for_length(lambda, std::isfinite(lmax) ? 0.5 * lmax : 3.0);
    const ShapeProfile sp = lune_support_profile(lune);
    const CertificateReport r = pmp_certificate(sp.profile, lambda);
    EXPECT_EQ(r.status, CertificateStatus::Certified) << lambda << ": " << r.message;
    EXPECT_TRUE(r.bang_bang);
    EXPECT_EQ(r.switches.size(), 4u);
    EXPECT_TRUE(r.sign_pattern_ok);
    EXPECT_TRUE(r.alignment_ok);
    EXPECT_LE(r.max_alignment_steps, 2.0);
    EXPECT_LT(std::hypot(r.periodicity_residual[0], r.periodicity_residual[1]), 1e-6);
    EXPECT_LT(r.maximality_violation, 1e-10);
    EXPECT_GT(r.lc_min, 0.0);
    EXPECT_LT(r.h_variation, 1e-5);
    // Windows alternate between full control with H1 > 0 and zero control with H1 < 0.
    for (const ControlWindow& w : r.windows) {
      EXPECT_TRUE(w.consistent);
      if (w.u > 0.0) EXPECT_GE(w.h1_min, -1e-8);
      else EXPECT_LE(w.h1_max, 1e-8);
    }
  }
}

TEST(Certificate, MaximalityBySampling) {
  const Lune lune = lune_for_length(kSqrt2, 3.0);
  const CertificateReport r = pmp_certificate(lune_support_profile(lune).profile, kSqrt2);
  ASSERT_EQ(r.status, CertificateStatus::Certified);
  const Trajectory& tr = r.trajectory;
  for (std::size_t i = 0; i < tr.t.size(); i += 13) {
    const double hstar = pontryagin_H(tr.x[i], tr.u[i], tr.p[i], tr.mu);
    for (int j = 0; j <= 10; ++j) {
      const double u = j / (10.0 * kSqrt2);
      EXPECT_GE(hstar, pontryagin_H(tr.x[i], u, tr.p[i], tr.mu) - 1e-10 * std::max(1.0, std::abs(hstar)));
    }
  }
}

TEST(Certificate, NonExtremalPolygonsAreRefuted) {
  int refuted = 0;
  for (std::uint64_t s = 0; s < 6; ++s) {
    const LambdaPolygon p = random_polygon(kSqrt2, 3 + s % 3, 900 + s);
    const CertificateReport r = pmp_certificate(polygon_support_profile(p).profile, kSqrt2);
    EXPECT_NE(r.status, CertificateStatus::Certified) << s;
    if (r.status == CertificateStatus::Refuted) ++refuted;
  }
  EXPECT_GT(refuted, 0);
}

TEST(Certificate, PerturbedLuneWindowsFailSignPattern) {
  // Lune control with one corner window shifted: the profile still closes
  // numerically only approximately, so the check must not certify it.
  const Lune lune = lune_for_length(kSqrt2, 3.0);
  const ShapeProfile sp = lune_support_profile(lune);
  std::vector<double> sw = sp.switches;
  sw[1] += 0.05;
  sw[2] += 0.05;
  std::vector<double> values;
  const SupportProfile& p = sp.profile;
  for (std::size_t i = 0; i <= sp.switches.size(); ++i) {
    const double a = i == 0 ? 0.0 : sp.switches[i - 1];
    const double b = i == sp.switches.size() ? 2.0 * M_PI : sp.switches[i];
    const std::size_t j = static_cast<std::size_t>(0.5 * (a + b) / p.step());
    values.push_back(radius_of_curvature(p.g[j], p.g1[j], p.g2[j]) > 1e-6 ? 1.0 / kSqrt2 : 0.0);
  }
  const IntegratedProfile out = profile_from_control(ControlSignal::piecewise(sw, values), p.g[0], p.g1[0], 4096, 1.0);
  const CertificateReport r = pmp_certificate(out.profile, kSqrt2);
  EXPECT_NE(r.status, CertificateStatus::Certified) << r.message;
}

TEST(Certificate, JsonReport) {
  const SupportProfile circle = SupportProfile::circle(std::atanh(1.0 / 1.5), 1024);
  const CertificateReport r = pmp_certificate(circle, 1.5);
  const auto doc = nlohmann::json::parse(certificate_to_json(r));
  EXPECT_EQ(doc.at("status").get<std::string>(), "certified");
  EXPECT_TRUE(doc.contains("legendre_clebsch_min"));
  EXPECT_TRUE(doc.contains("switches"));
}
