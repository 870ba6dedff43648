#pragma once

// Parameter sweeps over independent cells. Every kernel has an OpenMP
// version and a serial twin producing identical output in identical order.

#include <cstdint>
#include <string>
#include <vector>

#include "riso/bounds.hpp"

namespace riso::sweep {

struct BoundRow {
  double lambda;
  double k;
  double length;
  Regime regime;
  double bound;       // NaN when the length is outside the domain
  double max_length;
};

std::vector<BoundRow> bound_table(const std::vector<double>& lambdas, double k, const std::vector<double>& lengths);
std::vector<BoundRow> bound_table_serial(const std::vector<double>& lambdas, double k,
                                         const std::vector<double>& lengths);

/// Default lengths per lambda: j/m of the maximal length when it is finite,
/// 1.2 j otherwise, for j = 1..m.
std::vector<double> sharpness_lengths(double lambda, std::size_t m);

struct SharpnessCell {
  double lambda;
  double length;
  double area = 0.0;
  double bound = 0.0;
  double error = 0.0;
  bool ok = false;
  std::string message;
};

/// Builds the lune of each (lambda, L) cell and compares its area with the
/// bound. `perturb` is added to every lune area (negative control).
std::vector<SharpnessCell> sharpness_cells(const std::vector<double>& lambdas, std::size_t lengths_per_lambda,
                                           double tol = 1e-7, double perturb = 0.0);
std::vector<SharpnessCell> sharpness_cells_serial(const std::vector<double>& lambdas, std::size_t lengths_per_lambda,
                                                  double tol = 1e-7, double perturb = 0.0);

struct DominanceSample {
  std::size_t index;
  std::size_t arcs;
  std::uint64_t seed;
  bool generated = false;
  double length = 0.0;
  double area = 0.0;
  double bound = 0.0;
  double deficiency = 0.0;
  double hausdorff_lower = -1.0;  // < 0 when not computed
  std::string message;
};

/// Seed of sample i, independent of thread scheduling.
std::uint64_t sample_seed(std::uint64_t seed, std::size_t index);

/// Random polygons with 2 + i mod (max_arcs - 1) arcs.
std::vector<DominanceSample> dominance_samples(double lambda, std::size_t count, std::size_t max_arcs,
                                               std::uint64_t seed, bool hausdorff = false);
std::vector<DominanceSample> dominance_samples_serial(double lambda, std::size_t count, std::size_t max_arcs,
                                                      std::uint64_t seed, bool hausdorff = false);

/// Minimum of the Legendre-Clebsch quantity over random admissible states.
double lc_minimum(std::size_t count, std::uint64_t seed);
double lc_minimum_serial(std::size_t count, std::uint64_t seed);

}  // namespace riso::sweep
