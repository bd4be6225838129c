#include "pcf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "pcf/error.hpp"

namespace pcf {

namespace {

// Degeneracy threshold relative to the squared longest side.
constexpr double kDegenerateArea = 1e-14;

// Kahan's ordering of Heron's formula; returns 16 * area^2.
double heron16(double a, double b, double c) {
  if (a < b) std::swap(a, b);
  if (a < c) std::swap(a, c);
  if (b < c) std::swap(b, c);
  return (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
}

void check_triangle(double a, double b, double c) {
  const double longest = std::max({a, b, c});
  if (!(a > 0.0 && b > 0.0 && c > 0.0) || !std::isfinite(longest)) {
    throw GeometryError("triangle has a non-positive side length");
  }
  if (!(a < b + c && b < a + c && c < a + b)) {
    throw GeometryError("triangle inequality violated (" + std::to_string(a) + ", " +
                        std::to_string(b) + ", " + std::to_string(c) + ")");
  }
  const double h = heron16(a, b, c);
  if (!(h > 0.0) || std::sqrt(h) / 4.0 <= kDegenerateArea * longest * longest) {
    throw GeometryError("degenerate triangle");
  }
}

}  // namespace

SurfaceMesh::SurfaceMesh(std::vector<Vec3> positions, std::vector<Face> faces)
    : positions_(std::move(positions)), faces_(std::move(faces)) {
  validate_faces();
  glue_by_vertices();
  assign_lengths(nullptr, nullptr);
  finish();
}

SurfaceMesh::SurfaceMesh(std::vector<Vec3> positions, std::vector<Face> faces,
                         const EdgeLengthMap& lengths)
    : positions_(std::move(positions)), faces_(std::move(faces)) {
  validate_faces();
  glue_by_vertices();
  assign_lengths(&lengths, nullptr);
  finish();
}

SurfaceMesh::SurfaceMesh(std::vector<Vec3> positions, std::vector<Face> faces,
                         std::vector<int> twins, std::vector<double> halfedge_lengths)
    : positions_(std::move(positions)), faces_(std::move(faces)) {
  validate_faces();
  glue_explicit(std::move(twins));
  if (halfedge_lengths.empty()) {
    assign_lengths(nullptr, nullptr);
  } else {
    assign_lengths(nullptr, &halfedge_lengths);
  }
  finish();
}

void SurfaceMesh::validate_faces() {
  const int n = num_vertices();
  for (int f = 0; f < num_faces(); ++f) {
    const Face& t = faces_[f];
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= n) {
        throw InputError("face " + std::to_string(f) + " references vertex " +
                         std::to_string(t[k]) + " out of range [0, " + std::to_string(n) + ")");
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw InputError("face " + std::to_string(f) + " repeats a vertex");
    }
  }
}

void SurfaceMesh::glue_by_vertices() {
  const int nf = num_faces();
  twin_.assign(3 * nf, -1);
  edge_of_.assign(3 * nf, -1);
  edge_halfedge_.clear();
  std::unordered_map<std::uint64_t, int> first;
  first.reserve(3 * nf / 2 + 8);
  for (int h = 0; h < 3 * nf; ++h) {
    const int a = tail(h);
    const int b = head(h);
    auto [it, inserted] = first.try_emplace(edge_key(a, b), num_edges());
    if (inserted) {
      edge_of_[h] = it->second;
      edge_halfedge_.push_back(h);
      continue;
    }
    const int e = it->second;
    const int other = edge_halfedge_[e];
    if (twin_[other] >= 0) {
      throw InputError("non-manifold edge (" + std::to_string(a) + ", " + std::to_string(b) +
                       ") has 3 or more incident faces");
    }
    if (tail(other) == a) {
      throw InputError("non-orientable gluing along edge (" + std::to_string(a) + ", " +
                       std::to_string(b) + ")");
    }
    twin_[h] = other;
    twin_[other] = h;
    edge_of_[h] = e;
  }
}

void SurfaceMesh::glue_explicit(std::vector<int> twins) {
  const int nh = num_halfedges();
  if (static_cast<int>(twins.size()) != nh) throw InputError("twin table size does not match the faces");
  for (int h = 0; h < nh; ++h) {
    const int g = twins[h];
    if (g < 0) continue;
    if (g >= nh || g == h || twins[g] != h) throw InputError("twin table is not an involution at halfedge " + std::to_string(h));
    if (tail(g) != head(h) || head(g) != tail(h)) {
      throw InputError("halfedge " + std::to_string(h) + " is glued to a halfedge with other endpoints");
    }
  }
  twin_ = std::move(twins);
  edge_of_.assign(nh, -1);
  edge_halfedge_.clear();
  for (int h = 0; h < nh; ++h) {
    if (twin_[h] >= 0 && twin_[h] < h) {
      edge_of_[h] = edge_of_[twin_[h]];
      continue;
    }
    edge_of_[h] = num_edges();
    edge_halfedge_.push_back(h);
  }
}

void SurfaceMesh::assign_lengths(const EdgeLengthMap* lengths,
                                 const std::vector<double>* halfedge_lengths) {
  intrinsic_ = lengths != nullptr || halfedge_lengths != nullptr;
  if (halfedge_lengths && static_cast<int>(halfedge_lengths->size()) != num_halfedges()) {
    throw InputError("halfedge length table size does not match the faces");
  }
  edge_length_.resize(num_edges());
  for (int e = 0; e < num_edges(); ++e) {
    const int h = edge_halfedge_[e];
    const auto [a, b] = edge_vertices(e);
    if (halfedge_lengths) {
      edge_length_[e] = (*halfedge_lengths)[h];
      if (twin_[h] >= 0 && (*halfedge_lengths)[twin_[h]] != edge_length_[e]) {
        throw InputError("twin halfedges carry different lengths at edge (" + std::to_string(a) +
                         ", " + std::to_string(b) + ")");
      }
    } else if (lengths) {
      auto it = lengths->find(edge_key(a, b));
      if (it == lengths->end()) {
        throw InputError("intrinsic length table has no entry for edge (" + std::to_string(a) +
                         ", " + std::to_string(b) + ")");
      }
      edge_length_[e] = it->second;
    } else {
      edge_length_[e] = (positions_[a] - positions_[b]).norm();
    }
  }
}

void SurfaceMesh::finish() {
  const int n = num_vertices();
  const int nf = num_faces();
  for (int f = 0; f < nf; ++f) {
    const auto l = face_lengths(f);
    try {
      check_triangle(l[0], l[1], l[2]);
    } catch (const GeometryError& err) {
      throw GeometryError("face " + std::to_string(f) + ": " + err.what());
    }
  }

  edge_index_.clear();
  edge_count_.clear();
  parallel_edges_ = false;
  std::vector<std::vector<int>> ring(n), incident(n);
  for (int e = 0; e < num_edges(); ++e) {
    const auto [a, b] = edge_vertices(e);
    edge_index_.try_emplace(edge_key(a, b), e);
    if (++edge_count_[edge_key(a, b)] > 1) parallel_edges_ = true;
    ring[a].push_back(b);
    ring[b].push_back(a);
    incident[a].push_back(e);
    incident[b].push_back(e);
  }
  ring_offset_.assign(n + 1, 0);
  incident_offset_.assign(n + 1, 0);
  ring_.clear();
  incident_.clear();
  for (int v = 0; v < n; ++v) {
    std::sort(ring[v].begin(), ring[v].end());
    ring[v].erase(std::unique(ring[v].begin(), ring[v].end()), ring[v].end());
    ring_.insert(ring_.end(), ring[v].begin(), ring[v].end());
    ring_offset_[v + 1] = static_cast<int>(ring_.size());
    incident_.insert(incident_.end(), incident[v].begin(), incident[v].end());
    incident_offset_[v + 1] = static_cast<int>(incident_.size());
  }

  boundary_vertex_.assign(n, false);
  for (int h = 0; h < 3 * nf; ++h) {
    if (twin_[h] < 0) {
      boundary_vertex_[tail(h)] = true;
      boundary_vertex_[head(h)] = true;
    }
  }
}

std::array<int, 2> SurfaceMesh::edge_vertices(int e) const {
  const int h = edge_halfedge_[e];
  return {tail(h), head(h)};
}

std::optional<int> SurfaceMesh::find_edge(int a, int b) const {
  auto it = edge_index_.find(edge_key(a, b));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

int SurfaceMesh::edge_multiplicity(int a, int b) const {
  auto it = edge_count_.find(edge_key(a, b));
  return it == edge_count_.end() ? 0 : it->second;
}

int SurfaceMesh::other_vertex(int e, int v) const {
  const auto [a, b] = edge_vertices(e);
  return a == v ? b : a;
}

std::span<const int> SurfaceMesh::neighbors(int v) const {
  return {ring_.data() + ring_offset_[v], ring_.data() + ring_offset_[v + 1]};
}

std::span<const int> SurfaceMesh::incident_edges(int v) const {
  return {incident_.data() + incident_offset_[v], incident_.data() + incident_offset_[v + 1]};
}

std::vector<double> SurfaceMesh::halfedge_lengths() const {
  std::vector<double> out(num_halfedges());
  for (int h = 0; h < num_halfedges(); ++h) out[h] = edge_length_[edge_of_[h]];
  return out;
}

std::array<double, 3> SurfaceMesh::face_lengths(int f) const {
  // Halfedge 3f+k is the side opposite corner (k+2) % 3.
  std::array<double, 3> l{};
  for (int k = 0; k < 3; ++k) l[(k + 2) % 3] = edge_length_[edge_of_[3 * f + k]];
  return l;
}

EdgeLengthMap SurfaceMesh::length_map() const {
  if (parallel_edges_) throw InputError("length table is ambiguous on a mesh with parallel edges");
  EdgeLengthMap map;
  map.reserve(num_edges());
  for (int e = 0; e < num_edges(); ++e) {
    const auto [a, b] = edge_vertices(e);
    map.emplace(edge_key(a, b), edge_length_[e]);
  }
  return map;
}

double triangle_area(double a, double b, double c) {
  const double h = heron16(a, b, c);
  return h > 0.0 ? 0.25 * std::sqrt(h) : 0.0;
}

std::array<double, 3> triangle_angles(double a, double b, double c) {
  check_triangle(a, b, c);
  const double four_area = std::sqrt(heron16(a, b, c));
  const double a2 = a * a, b2 = b * b, c2 = c * c;
  // atan2 keeps full precision near 0 and pi, unlike acos.
  return {std::atan2(four_area, b2 + c2 - a2), std::atan2(four_area, a2 + c2 - b2),
          std::atan2(four_area, a2 + b2 - c2)};
}

std::array<double, 3> triangle_cotangents(double a, double b, double c) {
  check_triangle(a, b, c);
  const double four_area = std::sqrt(heron16(a, b, c));
  const double a2 = a * a, b2 = b * b, c2 = c * c;
  return {(b2 + c2 - a2) / four_area, (a2 + c2 - b2) / four_area, (a2 + b2 - c2) / four_area};
}

bool is_connected(const SurfaceMesh& mesh) {
  const int n = mesh.num_vertices();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::queue<int> queue;
  queue.push(0);
  seen[0] = true;
  int count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int w : mesh.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        queue.push(w);
      }
    }
  }
  return count == n;
}

Topology topology(const SurfaceMesh& mesh) {
  if (!is_connected(mesh)) {
    throw TopologyError("mesh is disconnected (or has unreferenced vertices); one component expected");
  }
  Topology t;
  t.euler_characteristic = mesh.num_vertices() - mesh.num_edges() + mesh.num_faces();
  t.boundary_count = static_cast<int>(boundary_loops(mesh).size());
  t.genus = (2 - t.euler_characteristic - t.boundary_count) / 2;
  return t;
}

std::vector<BoundaryLoop> boundary_loops(const SurfaceMesh& mesh) {
  const int n = mesh.num_vertices();
  std::vector<int> out(n, -1);
  for (int h = 0; h < mesh.num_halfedges(); ++h) {
    if (mesh.twin(h) >= 0) continue;
    const int a = mesh.tail(h);
    if (out[a] >= 0) {
      throw InputError("vertex " + std::to_string(a) + " is a non-manifold boundary vertex");
    }
    out[a] = h;
  }

  std::vector<BoundaryLoop> loops;
  std::vector<bool> used(n, false);
  for (int start = 0; start < n; ++start) {
    if (out[start] < 0 || used[start]) continue;
    BoundaryLoop loop;
    int v = start;
    do {
      used[v] = true;
      loop.vertices.push_back(v);
      const int h = out[v];
      loop.length += mesh.edge_length(mesh.edge(h));
      v = mesh.head(h);
      if (out[v] < 0) throw InputError("open boundary chain at vertex " + std::to_string(v));
    } while (v != start);
    loops.push_back(std::move(loop));
  }

  std::stable_sort(loops.begin(), loops.end(), [](const BoundaryLoop& x, const BoundaryLoop& y) {
    return x.length > y.length;
  });
  if (loops.size() > 1) std::rotate(loops.begin(), loops.begin() + 1, loops.end());
  return loops;
}

std::vector<std::array<double, 3>> corner_angles(const SurfaceMesh& mesh) {
  std::vector<std::array<double, 3>> angles(mesh.num_faces());
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const auto l = mesh.face_lengths(f);
    angles[f] = triangle_angles(l[0], l[1], l[2]);
  }
  return angles;
}

}  // namespace pcf
