#pragma once

#include <span>
#include <vector>

#include "pcf/cut.hpp"
#include "pcf/layout.hpp"
#include "pcf/mesh.hpp"

namespace pcf {

struct StripFlattening {
  FlatLayout layout;
  CutMesh cut;
};

/// Singly periodic flattening of a doubly connected mesh onto a strip of
/// height 1: the outer boundary lands on y = 0, the inner on y = 1, O1 at the
/// origin and t = (t1, 0).
StripFlattening flatten_strip(const SurfaceMesh& mesh, const CutPath& cross, double tol = 1e-10);

/// Same, cutting along the shortest cross path.
StripFlattening flatten_strip(const SurfaceMesh& mesh, double tol = 1e-10);

struct AnnulusResult {
  FlatLayout strip;
  /// One point per original vertex; seam copies collapse onto the plus side.
  std::vector<Vec2> coords;
  double modulus = 0.0;       // t1
  double inner_radius = 0.0;  // exp(-2 pi / t1)
};

/// (x, y) -> exp(-2 pi y / l) (cos(2 pi x / l), sin(2 pi x / l)).
Vec2 strip_to_annulus(const Vec2& p, double period);

AnnulusResult exp_to_annulus(const StripFlattening& strip);

struct Circle {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
};

/// Geometric least-squares circle: minimizes the sum of squared radial residuals.
Circle fit_circle(std::span<const Vec2> points);

struct PolyAnnulusResult {
  std::vector<Vec2> coords;
  /// Boundary loops in processing order; the outer loop is last.
  std::vector<BoundaryLoop> loops;
  /// One circle per loop, same order; the outer one is the unit circle.
  std::vector<Circle> circles;
};

/// Conformal map of a genus-zero mesh with two or more boundaries onto the
/// unit disk with circular holes. Each inner hole is processed in turn (the
/// others filled), then holes are made exactly circular and the interior is
/// relaxed with the input metric's Laplacian.
PolyAnnulusResult flatten_polyannulus(const SurfaceMesh& mesh, double tol = 1e-10);

}  // namespace pcf
