#include "riso/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "riso/control.hpp"
#include "riso/error.hpp"
#include "riso/shapes.hpp"

namespace riso::sweep {
namespace {

BoundRow bound_cell(double lambda, double k, double length) {
  const double lmax = max_length(lambda, k);
  BoundRow row{lambda, k, length, classify(lambda, k), std::numeric_limits<double>::quiet_NaN(), lmax};
  try {
    row.bound = reverse_bound(lambda, k, length).bound;
  } catch (const DomainError&) {
  }
  return row;
}

struct Cell {
  double lambda;
  double length;
};

std::vector<Cell> sharpness_grid(const std::vector<double>& lambdas, std::size_t m) {
  std::vector<Cell> cells;
  for (double l : lambdas) {
    for (double len : sharpness_lengths(l, m)) cells.push_back({l, len});
  }
  return cells;
}

SharpnessCell sharpness_cell(const Cell& c, double tol, double perturb) {
  SharpnessCell out;
  out.lambda = c.lambda;
  out.length = c.length;
  try {
    const Lune lune = lune_for_length(c.lambda, c.length);
    out.area = lune.area() + perturb;
    out.bound = reverse_bound(c.lambda, 1.0, c.length).bound;
    out.error = std::abs(out.area - out.bound);
    out.ok = out.error < tol;
  } catch (const Error& e) {
    out.message = e.what();
  }
  return out;
}

DominanceSample dominance_cell(double lambda, std::size_t i, std::size_t max_arcs, std::uint64_t seed,
                               bool hausdorff) {
  DominanceSample s;
  s.index = i;
  s.arcs = 2 + i % (max_arcs - 1);
  s.seed = sample_seed(seed, i);
  try {
    const LambdaPolygon poly = random_polygon(lambda, s.arcs, s.seed);
    s.generated = true;
    s.length = poly.length;
    s.area = poly.area;
    s.bound = reverse_bound(lambda, 1.0, std::min(poly.length, max_length(lambda, 1.0))).bound;
    s.deficiency = s.area - s.bound;
    if (hausdorff) s.hausdorff_lower = lune_hausdorff_lower_bound(poly);
  } catch (const Error& e) {
    s.message = e.what();
  }
  return s;
}

double lc_cell(std::uint64_t seed, std::size_t i) {
  std::mt19937_64 rng(sample_seed(seed, i));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = std::sqrt(unit(rng)) * (1.0 - 1e-9);
  const double phi = 2.0 * std::numbers::pi * unit(rng);
  return legendre_clebsch_quantity({r * std::cos(phi), r * std::sin(phi)});
}

void check_arcs(std::size_t max_arcs) {
  if (max_arcs < 2) throw DomainError("max_arcs must be at least 2");
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<double> sharpness_lengths(double lambda, std::size_t m) {
  const double lmax = max_length(lambda, 1.0);
  std::vector<double> out;
  for (std::size_t j = 1; j <= m; ++j) {
    const double f = static_cast<double>(j) / static_cast<double>(m);
    out.push_back(std::isfinite(lmax) ? f * lmax : 1.2 * static_cast<double>(j));
  }
  return out;
}

std::vector<BoundRow> bound_table(const std::vector<double>& lambdas, double k, const std::vector<double>& lengths) {
  const std::size_t nl = lengths.size();
  std::vector<BoundRow> rows(lambdas.size() * nl);
  const long long total = static_cast<long long>(rows.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < total; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    rows[u] = bound_cell(lambdas[u / nl], k, lengths[u % nl]);
  }
  return rows;
}

std::vector<BoundRow> bound_table_serial(const std::vector<double>& lambdas, double k,
                                         const std::vector<double>& lengths) {
  std::vector<BoundRow> rows;
  for (double l : lambdas) {
    for (double len : lengths) rows.push_back(bound_cell(l, k, len));
  }
  return rows;
}

std::vector<SharpnessCell> sharpness_cells(const std::vector<double>& lambdas, std::size_t m, double tol,
                                           double perturb) {
  const auto cells = sharpness_grid(lambdas, m);
  std::vector<SharpnessCell> out(cells.size());
  const long long total = static_cast<long long>(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < total; ++i) {
    out[static_cast<std::size_t>(i)] = sharpness_cell(cells[static_cast<std::size_t>(i)], tol, perturb);
  }
  return out;
}

std::vector<SharpnessCell> sharpness_cells_serial(const std::vector<double>& lambdas, std::size_t m, double tol,
                                                  double perturb) {
  std::vector<SharpnessCell> out;
  for (const Cell& c : sharpness_grid(lambdas, m)) out.push_back(sharpness_cell(c, tol, perturb));
  return out;
}

std::vector<DominanceSample> dominance_samples(double lambda, std::size_t count, std::size_t max_arcs,
                                               std::uint64_t seed, bool hausdorff) {
  check_arcs(max_arcs);
  std::vector<DominanceSample> out(count);
  const long long total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < total; ++i) {
    out[static_cast<std::size_t>(i)] = dominance_cell(lambda, static_cast<std::size_t>(i), max_arcs, seed, hausdorff);
  }
  return out;
}

std::vector<DominanceSample> dominance_samples_serial(double lambda, std::size_t count, std::size_t max_arcs,
                                                      std::uint64_t seed, bool hausdorff) {
  check_arcs(max_arcs);
  std::vector<DominanceSample> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(dominance_cell(lambda, i, max_arcs, seed, hausdorff));
  return out;
}

double lc_minimum(std::size_t count, std::uint64_t seed) {
  double best = std::numeric_limits<double>::infinity();
  const long long total = static_cast<long long>(count);
#pragma omp parallel for reduction(min : best) schedule(static)
  for (long long i = 0; i < total; ++i) best = std::min(best, lc_cell(seed, static_cast<std::size_t>(i)));
  return best;
}

double lc_minimum_serial(std::size_t count, std::uint64_t seed) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) best = std::min(best, lc_cell(seed, i));
  return best;
}

}  // namespace riso::sweep
