#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace pcf {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Face = std::array<int, 3>;

/// Key of the undirected edge {a, b}; independent of argument order.
inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

/// Intrinsic edge lengths keyed by edge_key.
using EdgeLengthMap = std::unordered_map<std::uint64_t, double>;

struct Topology {
  int euler_characteristic = 0;
  int genus = 0;
  int boundary_count = 0;
};

struct BoundaryLoop {
  std::vector<int> vertices;
  // Traversal follows the face orientation, so the surface lies to the left.
  bool counterclockwise = true;
  double length = 0.0;
};

/// Oriented, edge-manifold triangle mesh.
///
/// Halfedges are implicit: halfedge h = 3f + k runs from face(f)[k] to
/// face(f)[(k+1) % 3]. Boundary edges have a single halfedge whose twin is -1.
/// The active metric is either the embedding or a per-edge length table.
///
/// Gluing is normally derived from vertex pairs. The explicit-twin
/// constructor also accepts several edges between the same two vertices, as
/// produced by intrinsic edge flips.
class SurfaceMesh {
 public:
  SurfaceMesh() = default;
  SurfaceMesh(std::vector<Vec3> positions, std::vector<Face> faces);
  SurfaceMesh(std::vector<Vec3> positions, std::vector<Face> faces,
              const EdgeLengthMap& lengths);
  /// Explicit gluing: twins[h] is the opposite halfedge or -1. Lengths are
  /// per halfedge (equal on twins); empty means lengths of the embedding.
  SurfaceMesh(std::vector<Vec3> positions, std::vector<Face> faces, std::vector<int> twins,
              std::vector<double> halfedge_lengths);

  int num_vertices() const { return static_cast<int>(positions_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_edges() const { return static_cast<int>(edge_halfedge_.size()); }
  int num_halfedges() const { return 3 * num_faces(); }

  const std::vector<Vec3>& positions() const { return positions_; }
  const Vec3& position(int v) const { return positions_[v]; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_[f]; }

  int tail(int h) const { return faces_[h / 3][h % 3]; }
  int head(int h) const { return faces_[h / 3][(h + 1) % 3]; }
  int next(int h) const { return 3 * (h / 3) + (h + 1) % 3; }
  int prev(int h) const { return 3 * (h / 3) + (h + 2) % 3; }
  int twin(int h) const { return twin_[h]; }
  int edge(int h) const { return edge_of_[h]; }
  int edge_halfedge(int e) const { return edge_halfedge_[e]; }
  std::array<int, 2> edge_vertices(int e) const;
  bool is_boundary_edge(int e) const { return twin_[edge_halfedge_[e]] < 0; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }
  /// Some edge joining a and b; see edge_multiplicity for parallel edges.
  std::optional<int> find_edge(int a, int b) const;
  int edge_multiplicity(int a, int b) const;
  bool has_parallel_edges() const { return parallel_edges_; }
  int other_vertex(int e, int v) const;

  /// Sorted one-ring of v, without repeats.
  std::span<const int> neighbors(int v) const;
  /// Edges incident to v, parallel edges included, in increasing id order.
  std::span<const int> incident_edges(int v) const;

  const std::vector<int>& twins() const { return twin_; }
  /// Active-metric length of every halfedge.
  std::vector<double> halfedge_lengths() const;

  bool intrinsic() const { return intrinsic_; }
  double edge_length(int e) const { return edge_length_[e]; }
  const std::vector<double>& edge_lengths() const { return edge_length_; }
  /// Lengths opposite each corner: entry k is the edge not touching face(f)[k].
  std::array<double, 3> face_lengths(int f) const;
  /// Active-metric lengths as a table, e.g. to seed a derived mesh. Throws
  /// InputError when parallel edges make vertex pairs ambiguous.
  EdgeLengthMap length_map() const;

 private:
  void validate_faces();
  void glue_by_vertices();
  void glue_explicit(std::vector<int> twins);
  void assign_lengths(const EdgeLengthMap* lengths, const std::vector<double>* halfedge_lengths);
  void finish();

  std::vector<Vec3> positions_;
  std::vector<Face> faces_;
  std::vector<int> twin_;
  std::vector<int> edge_of_;
  std::vector<int> edge_halfedge_;
  std::vector<double> edge_length_;
  std::unordered_map<std::uint64_t, int> edge_index_;
  std::unordered_map<std::uint64_t, int> edge_count_;
  std::vector<int> ring_offset_;
  std::vector<int> ring_;
  std::vector<int> incident_offset_;
  std::vector<int> incident_;
  bool parallel_edges_ = false;
  std::vector<bool> boundary_vertex_;
  bool intrinsic_ = false;
};

/// Interior angles of a triangle with side lengths a, b, c; angle k is
/// opposite side k. Throws GeometryError unless the triangle inequality holds
/// strictly.
std::array<double, 3> triangle_angles(double a, double b, double c);

/// Cotangents of the three interior angles, same convention as triangle_angles.
std::array<double, 3> triangle_cotangents(double a, double b, double c);

/// Area from side lengths (numerically stable Heron). Zero for degenerate input.
double triangle_area(double a, double b, double c);

bool is_connected(const SurfaceMesh& mesh);

/// Euler characteristic, genus and boundary count. Throws TopologyError for a
/// disconnected mesh.
Topology topology(const SurfaceMesh& mesh);

/// Inner loops by decreasing length followed by the longest loop.
std::vector<BoundaryLoop> boundary_loops(const SurfaceMesh& mesh);

/// Per-face interior angles (radians) under the active metric.
std::vector<std::array<double, 3>> corner_angles(const SurfaceMesh& mesh);

}  // namespace pcf
