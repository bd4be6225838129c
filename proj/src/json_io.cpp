#include "pcf/json_io.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include "pcf/error.hpp"

namespace pcf {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

EdgeLengthMap parse_length_table(const json& j) {
  if (!j.is_object()) throw InputError("length table must be a JSON object");
  EdgeLengthMap out;
  for (const auto& [key, value] : j.items()) {
    const auto comma = key.find(',');
    int a = -1, b = -1;
    const char* first = key.data();
    const char* last = key.data() + key.size();
    if (comma == std::string::npos ||
        std::from_chars(first, first + comma, a).ec != std::errc{} ||
        std::from_chars(first + comma + 1, last, b).ec != std::errc{} || a < 0 || b < 0 || a == b) {
      throw InputError("bad edge key \"" + key + "\"");
    }
    if (!value.is_number()) throw InputError("edge " + key + " has a non-numeric length");
    out[edge_key(a, b)] = value.get<double>();
  }
  return out;
}

json length_table_json(const SurfaceMesh& mesh) {
  json j = json::object();
  for (int e = 0; e < mesh.num_edges(); ++e) {
    auto [a, b] = mesh.edge_vertices(e);
    if (a > b) std::swap(a, b);
    j[std::to_string(a) + "," + std::to_string(b)] = mesh.edge_length(e);
  }
  return j;
}

namespace {

std::vector<int> vertex_list(const json& j, const char* name) {
  if (!j.is_array()) throw InputError(std::string(name) + " must be an array of vertex ids");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InputError(std::string(name) + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

CutPath closed_loop(const json& j, const char* name, PathKind kind) {
  CutPath p{kind, vertex_list(j, name), {}};
  if (p.vertices.size() > 1 && p.vertices.front() == p.vertices.back()) p.vertices.pop_back();
  return p;
}

}  // namespace

LoopOverride parse_loops(const json& j) {
  LoopOverride out;
  if (j.contains("alpha") || j.contains("beta")) {
    if (!j.contains("alpha") || !j.contains("beta")) throw InputError("loops need both alpha and beta");
    out.genus_one = std::make_pair(closed_loop(j["alpha"], "alpha", PathKind::handle),
                                   closed_loop(j["beta"], "beta", PathKind::tunnel));
  }
  if (j.contains("cross")) out.cross = CutPath{PathKind::cross, vertex_list(j["cross"], "cross"), {}};
  if (!out.genus_one && !out.cross) throw InputError("loops file has neither alpha/beta nor cross");
  return out;
}

json loops_json(const std::vector<CutPath>& paths) {
  json j = json::object();
  for (const auto& p : paths) {
    const char* name = p.kind == PathKind::handle ? "alpha" : p.kind == PathKind::tunnel ? "beta" : "cross";
    j[name] = p.vertices;
  }
  return j;
}

json flip_log_json(const std::vector<FlipRecord>& flips) {
  json arr = json::array();
  for (const auto& f : flips) {
    arr.push_back({{"edge", f.edge}, {"removed", {f.a, f.b}}, {"added", {f.c, f.d}}, {"length", f.length}});
  }
  return arr;
}

json report_json(const DistortionReport& r, bool with_timings) {
  json j = {
      {"delta_mean", r.delta_mean},
      {"delta_std", r.delta_std},
      {"mu100_mean", r.mu100_mean},
      {"mu100_std", r.mu100_std},
      {"fold_count", r.fold_count},
      {"energy", r.energy},
      {"n_faces", r.n_faces},
      {"n_vertices", r.n_vertices},
      {"flagged_corners", r.flagged_corners},
      {"flagged_faces", r.flagged_faces},
      {"std_convention", "population"},
  };
  if (with_timings) j["timings"] = r.timings;
  return j;
}

}  // namespace pcf
