#pragma once

#include <vector>

#include "pcf/mesh.hpp"

namespace pcf {

/// One edge flip: edge `edge` joining {a, b} now joins {c, d} with the given
/// length. Edge ids are those of the input mesh and stay fixed across flips.
struct FlipRecord {
  int edge = -1;
  int a = 0, b = 0;
  int c = 0, d = 0;
  double length = 0.0;
};

/// Flipped triangulation. Parallel edges between the same two vertices may
/// occur, so the gluing is stored explicitly.
struct IntrinsicMesh {
  std::vector<Vec3> positions;
  std::vector<Face> faces;
  std::vector<int> twins;
  std::vector<double> halfedge_lengths;
  std::vector<FlipRecord> flips;
  /// Non-Delaunay edges that could not be flipped (both sides in one face,
  /// or a flip that would close a self-loop).
  std::vector<int> blocked;

  SurfaceMesh surface() const { return SurfaceMesh(positions, faces, twins, halfedge_lengths); }
};

/// Edge with triangles (shared, a1, b1) and (shared, a2, b2): true iff the
/// two angles opposite the shared side sum to at most pi + 1e-12.
bool is_delaunay_edge(double shared, double a1, double b1, double a2, double b2);

/// Intrinsic Delaunay triangulation by edge flipping. Interior edges are
/// processed from a FIFO queue in edge-id order; boundary edges stay.
IntrinsicMesh make_intrinsic_delaunay(const SurfaceMesh& mesh);

}  // namespace pcf
