#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "riso/error.hpp"

namespace riso::report {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::filesystem::path& dir, const std::string& name, const std::string& content) {
  if (dir.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / name).string());
  out << content;
}

std::vector<HistogramBin> histogram(const std::vector<double>& values, std::size_t bins) {
  std::vector<HistogramBin> out;
  if (values.empty() || bins == 0) return out;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const double lo = *mn;
  const double width = (*mx > lo) ? (*mx - lo) / static_cast<double>(bins) : 1.0;
  for (std::size_t b = 0; b < bins; ++b) {
    out.push_back({lo + width * static_cast<double>(b), lo + width * static_cast<double>(b + 1), 0});
  }
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    out[std::min(b, bins - 1)].count++;
  }
  return out;
}

std::string poincare_svg(const std::vector<SvgShape>& shapes, std::size_t samples_per_arc) {
  constexpr double panel = 220.0;
  constexpr double radius = 100.0;
  const std::size_t cols = std::max<std::size_t>(1, std::min<std::size_t>(shapes.size(), 4));
  const std::size_t rows = (shapes.size() + cols - 1) / cols;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(panel * static_cast<double>(cols))
      << "\" height=\"" << num(panel * static_cast<double>(std::max<std::size_t>(rows, 1)) + 20.0) << "\">\n";
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const double cx = panel * (static_cast<double>(i % cols) + 0.5);
    const double cy = panel * (static_cast<double>(i / cols) + 0.5);
    svg << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(radius)
        << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    svg << "<polygon fill=\"#cde\" stroke=\"#124\" stroke-width=\"1.2\" points=\"";
    for (const Arc& arc : shapes[i].polygon->arcs) {
      for (std::size_t j = 0; j < samples_per_arc; ++j) {
        const DiskPoint d = to_poincare_disk(arc.at(static_cast<double>(j) / static_cast<double>(samples_per_arc)));
        svg << num(cx + radius * d.u) << ',' << num(cy - radius * d.v) << ' ';
      }
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << num(cx - radius) << "\" y=\"" << num(cy + radius + 16.0)
        << "\" font-family=\"monospace\" font-size=\"10\">" << shapes[i].label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace riso::report
