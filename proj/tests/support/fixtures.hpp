#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pcf/cut.hpp"
#include "pcf/mesh.hpp"

namespace fixtures {

using pcf::CutPath;
using pcf::SurfaceMesh;
using pcf::Vec2;

// Torus grids index vertex (i, j) as i + n_i * j.
int grid_index(int i, int j, int ni, int nj);

/// Flat torus C / (a Z + b Z) on an ni x nj grid with intrinsic lengths.
/// Each cell is split along its shorter diagonal.
SurfaceMesh flat_torus(int ni, int nj, const Vec2& a, const Vec2& b);

/// Closed loops through vertex 0: along the i direction (period a) and the
/// j direction (period b) of a torus grid.
CutPath grid_loop_i(int ni, int nj, pcf::PathKind kind);
CutPath grid_loop_j(int ni, int nj, pcf::PathKind kind);

/// Torus of revolution: i runs around the major circle, j around the tube.
SurfaceMesh torus_of_revolution(double major, double minor, int ni, int nj);

/// Same, with vertices displaced radially by a smooth bump field.
SurfaceMesh bumpy_torus(int ni, int nj);

/// Torus of revolution with every vertex moved by a random offset whose
/// coordinates are uniform in [-fraction * minor, fraction * minor].
SurfaceMesh perturbed_torus(double major, double minor, int ni, int nj, double fraction,
                            std::uint64_t seed);

/// Open cylinder, n_around x n_height quads split into triangles.
SurfaceMesh cylinder(double radius, double height, int n_around, int n_height);

/// Polygon circumradius whose n-gon has perimeter exactly 2 pi.
double unit_perimeter_radius(int n);

/// Frustum of a cone between radii r_bottom (z = 0) and r_top (z = height).
SurfaceMesh frustum(double r_bottom, double r_top, double height, int n_around, int n_height);

/// Planar annulus rho <= |z| <= 1 on a polar grid.
SurfaceMesh planar_annulus(double inner, int n_around, int n_radial);

/// Planar annulus with a second, off-centre hole punched out.
SurfaceMesh disk_with_two_holes(int n_around, int n_radial);

/// Tiny meshes.
SurfaceMesh tetrahedron();
SurfaceMesh single_triangle();

}  // namespace fixtures
