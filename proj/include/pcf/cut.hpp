#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pcf/mesh.hpp"

namespace pcf {

enum class PathKind { handle, tunnel, cross };

/// Vertex sequence along mesh edges. Closed loops (handle, tunnel) do not
/// repeat their base point; the closing edge back()->front() is implied.
struct CutPath {
  PathKind kind = PathKind::cross;
  std::vector<int> vertices;
  /// Optional edge ids: edges[i] joins vertices[i] and vertices[i+1] (the
  /// closing edge last). Needed only where parallel edges make a vertex pair
  /// ambiguous.
  std::vector<int> edges;

  bool closed() const { return kind != PathKind::cross; }
};

enum class SeamKind { alpha, beta, cross };

/// The two copies of one cut path. minus[i] is plus[i] translated by
/// shift[0] * h + shift[1] * t; both include the corner copies at their ends.
struct SeamRecord {
  SeamKind kind = SeamKind::alpha;
  std::vector<int> plus;
  std::vector<int> minus;
  std::array<int, 2> shift{0, 0};
};

enum class CutKind { genus_one, cross };

/// Original vertices grouped by their role in the folded system.
struct VertexPartition {
  std::vector<int> interior;
  std::vector<int> beta_plus;   // genus one: interior of the O -> O_t side
  std::vector<int> alpha_plus;  // genus one: interior of the O -> O_h side
  std::vector<int> outer;       // cross: outer boundary minus O1
  std::vector<int> inner;       // cross: inner boundary minus O2
  std::vector<int> cross_plus;  // cross: interior of the O1 -> O2 side
  std::vector<int> corners;     // {O} or {O1, O2}
};

/// Mesh after surgery along a cut system.
///
/// Every cut vertex stores its original vertex and its lattice shift as
/// coefficients of (h, t): the layout satisfies
/// coords[c] = coords[representative[origin[c]]] + shift[c][0] * h + shift[c][1] * t.
/// Corners are (O, O_h, O_t, O_ht) for a genus-one cut and (O1, O1t, O2, O2t)
/// for a cross cut.
struct CutMesh {
  CutKind kind = CutKind::genus_one;
  SurfaceMesh mesh;
  std::vector<int> origin;
  std::vector<std::array<int, 2>> shift;
  std::vector<int> representative;
  std::vector<SeamRecord> seams;
  std::array<int, 4> corners{-1, -1, -1, -1};
  /// Cut paths in original vertex ids (alpha then beta, or the cross path).
  std::vector<CutPath> paths;
  VertexPartition partition;

  int num_original_vertices() const { return static_cast<int>(representative.size()); }
  /// True for vertices created on a seam (any copy of a cut-path vertex).
  bool on_seam(int c) const;
};

/// Result of splitting a mesh along a set of edges: one new vertex per wedge.
struct SplitMesh {
  SurfaceMesh mesh;
  std::vector<int> origin;
};

/// Duplicates vertices so that no face stays connected across a cut edge.
/// The first wedge of vertex v (by corner id) keeps index v; extra wedges are
/// appended in vertex order. Faces keep their order and the active metric.
SplitMesh split_along(const SurfaceMesh& mesh, const std::vector<bool>& cut_edge);

/// Handle loop by tree-cotree from `root`, then the shortest loop through a
/// vertex of it that crosses it exactly once. Throws TopologyError unless the
/// mesh is a closed genus-one surface.
std::pair<CutPath, CutPath> find_cut_system_genus1(const SurfaceMesh& mesh, int root = 0);

/// Shortest edge path from `outer` to `inner` whose interior avoids every
/// boundary. `source` restricts the start to one outer vertex.
CutPath find_cross_path(const SurfaceMesh& mesh, const BoundaryLoop& outer,
                        const BoundaryLoop& inner, std::optional<int> source = std::nullopt);

/// Same, for a doubly connected mesh: outer is the longest loop.
CutPath find_cross_path(const SurfaceMesh& mesh);

/// Cuts along a genus-one pair (alpha, beta sharing their first vertex) or a
/// single cross path running from the outer to the inner boundary.
CutMesh cut_along(const SurfaceMesh& mesh, std::span<const CutPath> paths);

/// Class of a closed loop of `mesh` as integer coefficients of (h, t),
/// read off the lattice shifts of a genus-one cut of the same mesh.
std::array<int, 2> homology_class(const SurfaceMesh& mesh, const CutMesh& cut, const CutPath& loop);

/// Another automatic cut system, seeded from `attempts` spread-out roots, whose
/// tunnel loop lies in the class of the reference tunnel up to sign. Both cuts
/// then pin the same lattice generator.
std::optional<std::pair<CutPath, CutPath>> find_homologous_cut_system(const SurfaceMesh& mesh,
                                                                      const CutMesh& reference,
                                                                      int attempts = 32);

/// Mesh with all but one inner hole closed by centroid fans. Original
/// vertices and faces keep their indices; fill vertices and faces are appended.
struct FilledMesh {
  SurfaceMesh mesh;
  std::vector<bool> fill_face;
  int original_vertices = 0;
  int original_faces = 0;
};

FilledMesh fill_holes(const SurfaceMesh& mesh, const BoundaryLoop& keep);

/// Drops fill faces and fill vertices, using `positions` for the survivors.
SurfaceMesh remove_fill(const FilledMesh& filled, const std::vector<Vec3>& positions);

}  // namespace pcf
