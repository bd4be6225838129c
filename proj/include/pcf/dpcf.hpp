#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "pcf/assembly.hpp"
#include "pcf/cut.hpp"
#include "pcf/layout.hpp"
#include "pcf/mesh.hpp"
#include "pcf/obj_io.hpp"

namespace pcf {

struct Genus1Flattening {
  FlatLayout layout;
  CutMesh cut;
};

/// Doubly periodic conformal flattening of a closed genus-one mesh.
///
/// Pins O = (0,0) and t = (1,0), then solves the two systems that share the
/// matrix [L0 s1; s1^T k11] for (f^1, h^1) and (f^2, h^2). `paths` overrides
/// the automatic cut system; `root` seeds the automatic one.
Genus1Flattening flatten_genus1(const SurfaceMesh& mesh,
                                const std::optional<std::pair<CutPath, CutPath>>& paths = std::nullopt,
                                double tol = 1e-10, int root = 0);

/// The solve step alone, for any symmetric cut-mesh matrix (cotangent or
/// uniform weights). Vertex order inside the solve is interior, beta+, alpha+, O.
FlatLayout solve_doubly_periodic(const CutMesh& cut, const SparseSym& cut_lap, double tol = 1e-10);

/// Best relation (h', t') = G M (h, t) with M an integer matrix of determinant
/// +-1 and G a rotation-scaling. Residual is relative to |(h', t')|.
struct LatticeRelation {
  std::array<int, 4> unimodular{1, 0, 0, 1};  // row-major (a, b; c, d)
  Vec2 similarity = Vec2(1.0, 0.0);           // complex factor lambda
  double residual = 0.0;
};

LatticeRelation relate_lattices(const Vec2& h, const Vec2& t, const Vec2& h_other,
                                const Vec2& t_other, int search = 8);

/// Texture coordinates for an arbitrary face list over the original vertices:
/// each face is unwrapped next to its first vertex using lattice translations.
UvMesh unwrap_faces(const FlatLayout& layout, const CutMesh& cut, const std::vector<Face>& faces);

}  // namespace pcf
