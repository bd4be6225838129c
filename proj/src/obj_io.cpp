#include "pcf/obj_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "pcf/cut.hpp"
#include "pcf/error.hpp"

namespace pcf {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) tokens.push_back(s.substr(i, j - i));
    i = j;
  }
  return tokens;
}

double parse_double(std::string_view token, int line) {
  double value = 0.0;
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw InputError("line " + std::to_string(line) + ": bad number '" + std::string(token) + "'");
  }
  return value;
}

int parse_index(std::string_view token, int count, int line) {
  const auto slash = token.find('/');
  token = token.substr(0, slash);
  long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value == 0) {
    throw InputError("line " + std::to_string(line) + ": bad face index '" + std::string(token) +
                     "'");
  }
  // Range is validated once all vertices are known; relative indices resolve now.
  return value > 0 ? static_cast<int>(value - 1) : static_cast<int>(count + value);
}

void append_double(std::string& out, double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", x);
  out.append(buf, len);
}

void append_vertices(std::string& out, const SurfaceMesh& mesh) {
  for (const Vec3& p : mesh.positions()) {
    out += "v ";
    append_double(out, p.x());
    out += ' ';
    append_double(out, p.y());
    out += ' ';
    append_double(out, p.z());
    out += '\n';
  }
}

}  // namespace

SurfaceMesh load_obj(std::istream& in) {
  std::vector<Vec3> positions;
  std::vector<Face> faces;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    const auto tokens = split_ws(s);
    if (tokens[0] == "v") {
      if (tokens.size() < 4) throw InputError("line " + std::to_string(line) + ": short v record");
      positions.emplace_back(parse_double(tokens[1], line), parse_double(tokens[2], line),
                             parse_double(tokens[3], line));
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) throw InputError("line " + std::to_string(line) + ": short f record");
      const int count = static_cast<int>(positions.size());
      std::vector<int> polygon;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        polygon.push_back(parse_index(tokens[i], count, line));
      }
      for (std::size_t i = 1; i + 1 < polygon.size(); ++i) {
        faces.push_back({polygon[0], polygon[i], polygon[i + 1]});
      }
    }
  }
  return SurfaceMesh(std::move(positions), std::move(faces));
}

SurfaceMesh load_obj_string(const std::string& text) {
  std::istringstream in(text);
  return load_obj(in);
}

SurfaceMesh load_obj_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return load_obj(in);
}

std::string write_obj(const SurfaceMesh& mesh) {
  std::string out;
  append_vertices(out, mesh);
  for (const Face& f : mesh.faces()) {
    out += "f " + std::to_string(f[0] + 1) + ' ' + std::to_string(f[1] + 1) + ' ' +
           std::to_string(f[2] + 1) + '\n';
  }
  return out;
}

std::string write_obj_with_uv(const SurfaceMesh& mesh, const UvMesh& uv) {
  if (uv.faces.size() != mesh.faces().size()) {
    throw InputError("uv face count " + std::to_string(uv.faces.size()) +
                     " does not match mesh face count " + std::to_string(mesh.num_faces()));
  }
  const int n_uv = static_cast<int>(uv.uv.size());
  for (const Face& f : uv.faces) {
    for (int c : f) {
      if (c < 0 || c >= n_uv) throw InputError("uv face references a missing texture coordinate");
    }
  }
  std::string out;
  append_vertices(out, mesh);
  for (const Vec2& p : uv.uv) {
    out += "vt ";
    append_double(out, p.x());
    out += ' ';
    append_double(out, p.y());
    out += '\n';
  }
  for (int f = 0; f < mesh.num_faces(); ++f) {
    out += 'f';
    for (int k = 0; k < 3; ++k) {
      out += ' ' + std::to_string(mesh.face(f)[k] + 1) + '/' + std::to_string(uv.faces[f][k] + 1);
    }
    out += '\n';
  }
  return out;
}

std::string write_obj_with_uv(const SurfaceMesh& mesh, const FlatLayout& layout,
                              const CutMesh& cut) {
  if (static_cast<int>(layout.coords.size()) != cut.mesh.num_vertices()) {
    throw InputError("layout has " + std::to_string(layout.coords.size()) +
                     " rows but the cut mesh has " + std::to_string(cut.mesh.num_vertices()) +
                     " vertices");
  }
  if (cut.mesh.num_faces() != mesh.num_faces()) {
    throw InputError("cut mesh does not derive from this mesh");
  }
  for (int f = 0; f < mesh.num_faces(); ++f) {
    for (int k = 0; k < 3; ++k) {
      if (cut.origin[cut.mesh.face(f)[k]] != mesh.face(f)[k]) {
        throw InputError("cut mesh does not derive from this mesh");
      }
    }
  }
  return write_obj_with_uv(mesh, UvMesh{layout.coords, cut.mesh.faces()});
}

}  // namespace pcf
