// riso: reverse isoperimetric experiments on the hyperbolic plane.
//
// Exit codes: 0 success, 1 mathematical violation, 2 usage or domain error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "report.hpp"
#include "riso/bounds.hpp"
#include "riso/control.hpp"
#include "riso/error.hpp"
#include "riso/shapes.hpp"
#include "riso/support.hpp"
#include "riso/sweeps.hpp"

namespace {

using riso::report::num;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Common {
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, const std::vector<std::string>& formats) {
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
  cmd->add_option("--out", c.out, "output directory (default: stdout)");
}

std::vector<double> length_grid(const std::vector<double>& single, double lo, double hi, std::size_t steps) {
  if (!single.empty()) return single;
  if (steps == 0) throw riso::DomainError("--L-steps must be positive");
  if (!(hi >= lo)) throw riso::DomainError("--L-max must not be below --L-min");
  std::vector<double> out;
  for (std::size_t i = 0; i < steps; ++i) {
    out.push_back(steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct BoundArgs {
  double lambda = 1.0;
  double k = 1.0;
  std::vector<double> L;
  double L_min = 0.0, L_max = 1.0;
  std::size_t L_steps = 0;
  Common common;
};

int run_bound(const BoundArgs& a) {
  const auto lengths = length_grid(a.L, a.L_min, a.L_max, a.L_steps == 0 ? 11 : a.L_steps);
  std::vector<riso::BoundResult> rows;
  for (double len : lengths) rows.push_back(riso::reverse_bound(a.lambda, a.k, len));
  std::ostringstream out;
  if (a.common.format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) {
      doc.push_back({{"lambda", a.lambda}, {"k", a.k}, {"L", r.length}, {"regime", riso::to_string(r.regime)},
                     {"bound", r.bound}, {"L_max", std::isfinite(r.max_length) ? nlohmann::json(r.max_length)
                                                                               : nlohmann::json("inf")}});
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "# riso bound v1\nlambda,k,L,regime,bound,L_max\n";
    for (const auto& r : rows) {
      out << num(a.lambda) << ',' << num(a.k) << ',' << num(r.length) << ',' << riso::to_string(r.regime) << ','
          << num(r.bound) << ',' << num(r.max_length) << '\n';
    }
  }
  riso::report::emit(a.common.out, a.common.format == "json" ? "bound.json" : "bound.csv", out.str());
  return kOk;
}

// ---------------------------------------------------------------------------

struct SharpnessArgs {
  std::vector<double> lambdas{0.3, 0.7, 1.0, 1.2, std::numbers::sqrt2, 3.0};
  std::size_t L_steps = 10;
  double tol = 1e-7;
  double perturb = 0.0;
  Common common;
};

int run_sharpness(const SharpnessArgs& a) {
  for (double l : a.lambdas) {
    if (!(l > 0.0)) throw riso::DomainError("--lambda values must be positive");
  }
  const auto cells = riso::sweep::sharpness_cells(a.lambdas, a.L_steps, a.tol, a.perturb);
  std::size_t failures = 0;
  double worst = 0.0;
  for (const auto& c : cells) {
    if (!c.ok) ++failures;
    worst = std::max(worst, c.error);
  }
  std::ostringstream out;
  if (a.common.format == "json") {
    nlohmann::json doc;
    doc["cells"] = nlohmann::json::array();
    for (const auto& c : cells) {
      doc["cells"].push_back({{"lambda", c.lambda}, {"L", c.length}, {"area", c.area}, {"bound", c.bound},
                              {"error", c.error}, {"ok", c.ok}, {"message", c.message}});
    }
    doc["failures"] = failures;
    doc["max_error"] = worst;
    out << doc.dump(2) << '\n';
  } else {
    out << "# riso sharpness v1\nlambda,L,area,bound,error,ok,message\n";
    for (const auto& c : cells) {
      out << num(c.lambda) << ',' << num(c.length) << ',' << num(c.area) << ',' << num(c.bound) << ','
          << num(c.error) << ',' << (c.ok ? 1 : 0) << ',' << c.message << '\n';
    }
  }
  riso::report::emit(a.common.out, a.common.format == "json" ? "sharpness.json" : "sharpness.csv", out.str());
  std::cerr << "sharpness: " << cells.size() << " cells, " << failures << " failures, max |A - bound| = "
            << num(worst) << '\n';
  return failures == 0 ? kOk : kViolation;
}

// ---------------------------------------------------------------------------

struct DominanceArgs {
  double lambda = std::numbers::sqrt2;
  std::size_t count = 1000;
  std::size_t arcs = 8;
  std::uint64_t seed = 1;
  bool hausdorff = false;
  std::size_t bins = 20;
  Common common;
};

int run_dominance(const DominanceArgs& a) {
  if (!(a.lambda > 0.0)) throw riso::DomainError("--lambda must be positive");
  const auto samples = riso::sweep::dominance_samples(a.lambda, a.count, a.arcs, a.seed, a.hausdorff);
  std::ostringstream csv;
  csv << "# riso dominance v1\nindex,arcs,seed,generated,L,A,bound,deficiency,hausdorff_lower,message\n";
  std::vector<double> defs;
  std::vector<const riso::sweep::DominanceSample*> ok;
  std::size_t failures = 0;
  for (const auto& s : samples) {
    csv << s.index << ',' << s.arcs << ',' << s.seed << ',' << (s.generated ? 1 : 0) << ',' << num(s.length) << ','
        << num(s.area) << ',' << num(s.bound) << ',' << num(s.deficiency) << ',' << num(s.hausdorff_lower) << ','
        << s.message << '\n';
    if (s.generated) {
      defs.push_back(s.deficiency);
      ok.push_back(&s);
    } else {
      ++failures;
    }
  }
  std::sort(ok.begin(), ok.end(), [](auto* l, auto* r) {
    return l->deficiency < r->deficiency || (l->deficiency == r->deficiency && l->index < r->index);
  });
  const double min_def = ok.empty() ? std::numeric_limits<double>::quiet_NaN() : ok.front()->deficiency;
  const std::size_t violations =
      static_cast<std::size_t>(std::count_if(defs.begin(), defs.end(), [](double d) { return d < -1e-9; }));

  if (a.common.out.empty()) {
    std::cout << csv.str();
  } else {
    riso::report::emit(a.common.out, "dominance.csv", csv.str());
    std::ostringstream hist;
    hist << "# riso dominance-histogram v1\nlo,hi,count\n";
    for (const auto& b : riso::report::histogram(defs, a.bins)) {
      hist << num(b.lo) << ',' << num(b.hi) << ',' << b.count << '\n';
    }
    riso::report::emit(a.common.out, "histogram.csv", hist.str());
    std::vector<riso::LambdaPolygon> worst;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < std::min<std::size_t>(4, ok.size()); ++i) {
      worst.push_back(riso::random_polygon(a.lambda, ok[i]->arcs, ok[i]->seed));
      labels.push_back("#" + std::to_string(ok[i]->index) + " arcs=" + std::to_string(ok[i]->arcs) +
                       " def=" + num(ok[i]->deficiency));
    }
    std::vector<riso::report::SvgShape> shapes;
    for (std::size_t i = 0; i < worst.size(); ++i) shapes.push_back({&worst[i], labels[i]});
    riso::report::emit(a.common.out, "worst.svg", riso::report::poincare_svg(shapes));
  }
  std::cerr << "dominance: " << defs.size() << " polygons, " << failures << " generation failures, " << violations
            << " violations, min deficiency " << num(min_def);
  if (!ok.empty()) std::cerr << " (arcs=" << ok.front()->arcs << ")";
  std::cerr << '\n';
  return violations == 0 ? kOk : kViolation;
}

// ---------------------------------------------------------------------------

struct PmpArgs {
  std::string shape = "lune";
  double lambda = std::numbers::sqrt2;
  double L = 3.0;
  double radius = -1.0;
  std::size_t arcs = 3;
  std::uint64_t seed = 1;
  std::string profile;
  std::size_t N = 4096;
  double tol = 1e-6;
  std::string expect;
  Common common;
};

int run_pmp(const PmpArgs& a) {
  if (!(a.lambda > 0.0)) throw riso::DomainError("--lambda must be positive");
  riso::SupportProfile prof;
  if (a.shape == "circle") {
    double r = a.radius;
    if (r < 0.0) r = a.lambda > 1.0 ? std::atanh(1.0 / a.lambda) : std::asinh(a.L / (2.0 * std::numbers::pi));
    if (std::tanh(r) > 1.0 / a.lambda * (1.0 + 1e-12)) {
      throw riso::DomainError("circle curvature coth(r) is below lambda");
    }
    prof = riso::SupportProfile::circle(r, a.N);
  } else if (a.shape == "lune") {
    prof = riso::lune_support_profile(riso::lune_for_length(a.lambda, a.L), a.N).profile;
  } else if (a.shape == "polygon") {
    prof = riso::polygon_support_profile(riso::random_polygon(a.lambda, a.arcs, a.seed), a.N).profile;
  } else {
    std::ifstream in(a.profile);
    if (!in) throw riso::DomainError("cannot read profile " + a.profile);
    prof = riso::read_profile_csv(in);
  }
  riso::CertificateOptions opt;
  opt.periodicity_tol = a.tol;
  opt.switch_tol = a.tol;
  const auto rep = riso::pmp_certificate(prof, a.lambda, opt);
  const std::string json = riso::certificate_to_json(rep) + "\n";
  if (a.common.out.empty()) {
    std::cout << json;
  } else {
    riso::report::emit(a.common.out, "certificate.json", json);
    std::ostringstream series;
    series << "# riso pmp-series v1\nt,u,x1,x2,p1,p2,H1,H\n";
    const auto& tr = rep.trajectory;
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      series << num(tr.t[i]) << ',' << num(tr.u[i]) << ',' << num(tr.x[i].x1) << ',' << num(tr.x[i].x2) << ','
             << num(tr.p[i].p1) << ',' << num(tr.p[i].p2) << ',' << num(tr.h1[i]) << ',' << num(tr.h[i]) << '\n';
    }
    riso::report::emit(a.common.out, "series.csv", series.str());
  }
  std::cerr << "pmp: " << riso::to_string(rep.status) << " (" << rep.message << "), " << rep.switches.size()
            << " switches\n";
  if (!a.expect.empty() && a.expect != riso::to_string(rep.status)) return kViolation;
  return kOk;
}

// ---------------------------------------------------------------------------

struct LimitsArgs {
  std::vector<double> ks{1.0};
  std::vector<double> Ls{4.0};
  double lambda = 1.0;
  std::vector<double> euclid_L{0.5, 1.0, 2.0, 3.0};
  Common common;
};

int run_limits(const LimitsArgs& a) {
  std::ostringstream out;
  out << "# riso limits v1\ncheck,k,lambda,L,eps,value,reference,deviation\n";
  bool ok = true;
  for (double k : a.ks) {
    for (double len : a.Ls) {
      const auto rep = riso::regime_limits_check(k, len);
      for (const auto& s : rep.samples) {
        out << "above," << num(k) << ',' << num(k * (1.0 + s.eps)) << ',' << num(len) << ',' << num(s.eps) << ','
            << num(s.above) << ',' << num(s.critical) << ',' << num(s.dev_above) << '\n';
        out << "below," << num(k) << ',' << num(k * (1.0 - s.eps)) << ',' << num(len) << ',' << num(s.eps) << ','
            << num(s.below) << ',' << num(s.critical) << ',' << num(s.dev_below) << '\n';
      }
      ok = ok && rep.converging;
    }
  }
  const std::vector<double> small_k{1e-2, 1e-3};
  for (double len : a.euclid_L) {
    std::vector<double> devs;
    for (double k : small_k) {
      const double v = riso::reverse_bound(a.lambda, k, len).bound;
      const double ref = riso::planar_lune_area(a.lambda, len);
      const double dev = std::abs(v - ref) / ref;
      devs.push_back(dev);
      out << "euclid," << num(k) << ',' << num(a.lambda) << ',' << num(len) << ",," << num(v) << ',' << num(ref)
          << ',' << num(dev) << '\n';
    }
    ok = ok && devs[1] < 1e-5 && devs[1] * 50.0 < devs[0];
  }
  riso::report::emit(a.common.out, "limits.csv", out.str());
  std::cerr << "limits: " << (ok ? "consistent" : "VIOLATION") << '\n';
  return ok ? kOk : kViolation;
}

// ---------------------------------------------------------------------------

struct ShapeArgs {
  std::string shape = "lune";
  double lambda = std::numbers::sqrt2;
  double L = 3.0;
  std::size_t arcs = 3;
  std::uint64_t seed = 1;
  Common common{"json", ""};
};

int run_shape(const ShapeArgs& a) {
  riso::LambdaPolygon poly = a.shape == "lune" ? riso::lune_for_length(a.lambda, a.L).polygon
                                               : riso::random_polygon(a.lambda, a.arcs, a.seed);
  if (a.common.format == "json") {
    riso::report::emit(a.common.out, "shape.json", riso::polygon_to_json(poly) + "\n");
  } else if (a.common.format == "csv") {
    std::ostringstream out;
    riso::write_poincare_polyline(out, poly);
    riso::report::emit(a.common.out, "shape.csv", out.str());
  } else {
    riso::report::emit(a.common.out, "shape.svg",
                       riso::report::poincare_svg({{&poly, a.shape + " lambda=" + num(a.lambda)}}));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverse isoperimetric bounds for lambda-convex curves on the hyperbolic plane"};
  app.set_version_flag("--version", std::string("riso 1.0.0"));
  app.require_subcommand(1);

  BoundArgs bound;
  auto* b = app.add_subcommand("bound", "area lower bound for given lambda, k and length");
  b->add_option("--lambda", bound.lambda, "curvature lower bound lambda")->required();
  b->add_option("--k", bound.k, "ambient curvature is -k^2");
  b->add_option("--L", bound.L, "length (repeatable)");
  b->add_option("--L-min", bound.L_min);
  b->add_option("--L-max", bound.L_max);
  b->add_option("--L-steps", bound.L_steps);
  add_common(b, bound.common, {"csv", "json"});

  SharpnessArgs sharp;
  auto* s = app.add_subcommand("sharpness", "compare lune areas with the bound on a (lambda, L) grid");
  s->add_option("--lambda", sharp.lambdas, "lambda values (repeatable)");
  s->add_option("--L-steps", sharp.L_steps, "lengths per lambda");
  s->add_option("--tol", sharp.tol);
  s->add_option("--perturb", sharp.perturb, "add this to every lune area (negative control)");
  add_common(s, sharp.common, {"csv", "json"});

  DominanceArgs dom;
  auto* d = app.add_subcommand("dominance", "random lambda-polygons against the bound");
  d->add_option("--lambda", dom.lambda);
  d->add_option("--count", dom.count);
  d->add_option("--arcs", dom.arcs, "maximal number of arcs")->check(CLI::Range(2, 64));
  d->add_option("--seed", dom.seed);
  d->add_flag("--hausdorff", dom.hausdorff, "compute the lune Hausdorff lower bound per sample");
  d->add_option("--bins", dom.bins);
  add_common(d, dom.common, {"csv"});

  PmpArgs pmp;
  auto* p = app.add_subcommand("pmp", "maximum-principle certificate for a support profile");
  p->add_option("--shape", pmp.shape)->check(CLI::IsMember({"circle", "lune", "polygon", "profile"}));
  p->add_option("--lambda", pmp.lambda);
  p->add_option("--L", pmp.L, "lune length");
  p->add_option("--radius", pmp.radius, "circle radius");
  p->add_option("--arcs", pmp.arcs)->check(CLI::Range(2, 64));
  p->add_option("--seed", pmp.seed);
  p->add_option("--profile", pmp.profile, "profile CSV for --shape profile");
  p->add_option("--N", pmp.N, "grid size");
  p->add_option("--tol", pmp.tol);
  p->add_option("--expect", pmp.expect, "exit 1 unless the status matches")
      ->check(CLI::IsMember({"certified", "refuted", "no-certificate"}));
  add_common(p, pmp.common, {"json"});
  pmp.common.format = "json";

  LimitsArgs lim;
  auto* l = app.add_subcommand("limits", "continuity across regimes and the Euclidean limit");
  l->add_option("--k", lim.ks);
  l->add_option("--L", lim.Ls);
  l->add_option("--lambda", lim.lambda, "lambda for the Euclidean limit");
  l->add_option("--L-euclid", lim.euclid_L);
  add_common(l, lim.common, {"csv"});

  ShapeArgs shape;
  auto* sh = app.add_subcommand("shape", "export a lune or a random polygon");
  sh->add_option("--shape", shape.shape)->check(CLI::IsMember({"lune", "polygon"}));
  sh->add_option("--lambda", shape.lambda);
  sh->add_option("--L", shape.L);
  sh->add_option("--arcs", shape.arcs)->check(CLI::Range(2, 64));
  sh->add_option("--seed", shape.seed);
  add_common(sh, shape.common, {"json", "csv", "svg"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*b) return run_bound(bound);
    if (*s) return run_sharpness(sharp);
    if (*d) return run_dominance(dom);
    if (*p) return run_pmp(pmp);
    if (*l) return run_limits(lim);
    if (*sh) return run_shape(shape);
  } catch (const riso::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const riso::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
