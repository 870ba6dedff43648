#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "riso/shapes.hpp"

namespace riso {
namespace {

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v[0], v[1], v[2]}); }

}  // namespace

std::string polygon_to_json(const LambdaPolygon& poly, int indent) {
  nlohmann::json doc;
  doc["lambda"] = poly.lambda;
  doc["length"] = poly.length;
  doc["area"] = poly.area;
  doc["area_numeric"] = poly.area_numeric;
  doc["gauss_bonnet_residual"] = poly.gauss_bonnet_residual();
  doc["interior"] = vec_json(poly.interior.coords());
  auto& cycles = doc["cycles"] = nlohmann::json::array();
  for (const Arc& arc : poly.arcs) {
    cycles.push_back({{"kind", to_string(arc.cycle.kind())},
                      {"normal", vec_json(arc.cycle.normal())},
                      {"offset", arc.cycle.offset()},
                      {"arc_length", arc.length},
                      {"source", arc.source}});
  }
  auto& verts = doc["vertices"] = nlohmann::json::array();
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
    verts.push_back({{"coords", vec_json(poly.vertices[i].coords())}, {"exterior_angle", poly.exterior_angles[i]}});
  }
  doc["dropped"] = poly.dropped;
  return doc.dump(indent);
}

void write_poincare_polyline(std::ostream& out, const LambdaPolygon& poly, std::size_t samples_per_arc) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "# riso shape-polyline v1\n";
  buf << "arc,index,u,v\n";
  for (std::size_t a = 0; a < poly.arcs.size(); ++a) {
    for (std::size_t j = 0; j <= samples_per_arc; ++j) {
      const DiskPoint d =
          to_poincare_disk(poly.arcs[a].at(static_cast<double>(j) / static_cast<double>(samples_per_arc)));
      buf << a << ',' << j << ',' << d.u << ',' << d.v << '\n';
    }
  }
  out << buf.str();
}

}  // namespace riso
