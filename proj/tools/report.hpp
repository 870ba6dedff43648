#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "riso/shapes.hpp"

namespace riso::report {

/// %.17g
std::string num(double v);

/// Writes `content` to dir/name, or to stdout when dir is empty.
void emit(const std::filesystem::path& dir, const std::string& name, const std::string& content);

struct HistogramBin {
  double lo;
  double hi;
  std::size_t count;
};

std::vector<HistogramBin> histogram(const std::vector<double>& values, std::size_t bins);

struct SvgShape {
  const LambdaPolygon* polygon;
  std::string label;
};

/// Poincare-disk drawing with the unit circle as frame, one panel per shape.
std::string poincare_svg(const std::vector<SvgShape>& shapes, std::size_t samples_per_arc = 96);

}  // namespace riso::report
