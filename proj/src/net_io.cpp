#include "conelab/net_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "conelab/sphere.hpp"

namespace conelab::net {

using nlohmann::json;

std::string to_json(const ConeNet& net) {
  json j;
  j["version"] = 1;
  j["dimension"] = net.dimension();
  j["eta0"] = net.eta0();
  j["vertices"] = json::array();
  for (const auto& v : net.vertices()) {
    json jv;
    jv["id"] = v.id;
    jv["kind"] = v.kind == VertexKind::V0 ? "V0" : "V1";
    jv["coords"] = v.position.coords();
    j["vertices"].push_back(std::move(jv));
  }
  j["arcs"] = json::array();
  for (const auto& a : net.arcs()) {
    json ja;
    ja["id"] = a.id;
    ja["ends"] = {a.ends[0], a.ends[1]};
    j["arcs"].push_back(std::move(ja));
  }
  return j.dump(2);
}

ConeNet from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.contains("version") || j["version"].get<int>() != 1)
    throw std::invalid_argument("cone json: unsupported version");
  const std::size_t n = j.at("dimension").get<std::size_t>();
  const double eta0 = j.at("eta0").get<double>();
  std::vector<Vertex> vs;
  for (const auto& jv : j.at("vertices")) {
    const std::string kind = jv.at("kind").get<std::string>();
    if (kind != "V0" && kind != "V1")
      throw std::invalid_argument("cone json: vertex kind must be V0 or V1");
    vs.push_back({jv.at("id").get<std::string>(),
                  sphere::UnitVector(jv.at("coords").get<std::vector<double>>()),
                  kind == "V0" ? VertexKind::V0 : VertexKind::V1});
  }
  std::vector<Arc> as;
  for (const auto& ja : j.at("arcs")) {
    const auto ends = ja.at("ends").get<std::vector<std::string>>();
    if (ends.size() != 2) throw std::invalid_argument("cone json: arc needs two ends");
    as.push_back({ja.at("id").get<std::string>(), {ends[0], ends[1]}});
  }
  return ConeNet(n, std::move(vs), std::move(as), eta0);
}

std::string load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string to_obj(const ConeNet& net, double radius, int segments_per_arc) {
  if (net.dimension() != 3)
    throw std::invalid_argument("to_obj: OBJ export requires a net in R^3");
  if (radius <= 0.0) throw std::invalid_argument("to_obj: radius must be positive");
  std::ostringstream out;
  out.precision(17);
  out << "o cone\nv 0 0 0\n";
  int base = 2;  // OBJ indices are 1-based; vertex 1 is the origin.
  std::ostringstream faces;
  for (const auto& a : net.arcs()) {
    const auto& p0 = net.vertex(a.ends[0]).position;
    const auto& p1 = net.vertex(a.ends[1]).position;
    for (int s = 0; s <= segments_per_arc; ++s) {
      const double t = double(s) / segments_per_arc;
      const auto q = t == 0.0 ? p0 : (t == 1.0 ? p1 : sphere::geodesic_point(p0, p1, t));
      out << "v " << radius * q[0] << ' ' << radius * q[1] << ' ' << radius * q[2] << '\n';
    }
    for (int s = 0; s < segments_per_arc; ++s)
      faces << "f 1 " << base + s << ' ' << base + s + 1 << '\n';
    base += segments_per_arc + 1;
  }
  out << faces.str();
  return out.str();
}

}  // namespace conelab::net
