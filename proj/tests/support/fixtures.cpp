#include "fixtures.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Geometry>

namespace fixtures {

using pcf::Face;
using pcf::Vec3;

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 torus_point(double major, double minor, double u, double v) {
  return {(major + minor * std::cos(v)) * std::cos(u), (major + minor * std::cos(v)) * std::sin(u),
          minor * std::sin(v)};
}

// Two triangles per cell of a periodic-in-i grid; `wrap_j` closes the j direction.
std::vector<Face> grid_faces(int ni, int nj, bool wrap_j, bool anti_diagonal) {
  std::vector<Face> faces;
  const int rows = wrap_j ? nj : nj - 1;
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < ni; ++i) {
      const int v00 = grid_index(i, j, ni, nj);
      const int v10 = grid_index(i + 1, j, ni, nj);
      const int v11 = grid_index(i + 1, j + 1, ni, nj);
      const int v01 = grid_index(i, j + 1, ni, nj);
      if (anti_diagonal) {
        faces.push_back({v00, v10, v01});
        faces.push_back({v10, v11, v01});
      } else {
        faces.push_back({v00, v10, v11});
        faces.push_back({v00, v11, v01});
      }
    }
  }
  return faces;
}

// Reverses every face if the planar mesh is clockwise overall.
void orient_planar(const std::vector<Vec3>& p, std::vector<Face>& faces) {
  double area = 0.0;
  for (const Face& f : faces) {
    const Vec3 n = (p[f[1]] - p[f[0]]).cross(p[f[2]] - p[f[0]]);
    area += n.z();
  }
  if (area < 0.0) {
    for (Face& f : faces) std::swap(f[1], f[2]);
  }
}

}  // namespace

int grid_index(int i, int j, int ni, int nj) {
  i = ((i % ni) + ni) % ni;
  j = nj > 0 ? j % nj : j;
  return i + ni * j;
}

SurfaceMesh flat_torus(int ni, int nj, const Vec2& a, const Vec2& b) {
  const Vec2 da = a / ni, db = b / nj;
  const bool anti = (db - da).norm() < (da + db).norm();
  std::vector<Vec3> positions;
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) positions.push_back(torus_point(2.0, 1.0, 2 * kPi * i / ni, 2 * kPi * j / nj));
  }
  const std::vector<Face> faces = grid_faces(ni, nj, true, anti);
  pcf::EdgeLengthMap lengths;
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      const int v = grid_index(i, j, ni, nj);
      lengths[pcf::edge_key(v, grid_index(i + 1, j, ni, nj))] = da.norm();
      lengths[pcf::edge_key(v, grid_index(i, j + 1, ni, nj))] = db.norm();
      if (anti) {
        lengths[pcf::edge_key(grid_index(i + 1, j, ni, nj), grid_index(i, j + 1, ni, nj))] = (db - da).norm();
      } else {
        lengths[pcf::edge_key(v, grid_index(i + 1, j + 1, ni, nj))] = (da + db).norm();
      }
    }
  }
  return SurfaceMesh(std::move(positions), faces, lengths);
}

CutPath grid_loop_i(int ni, int nj, pcf::PathKind kind) {
  CutPath p{kind, {}, {}};
  for (int i = 0; i < ni; ++i) p.vertices.push_back(grid_index(i, 0, ni, nj));
  return p;
}

CutPath grid_loop_j(int ni, int nj, pcf::PathKind kind) {
  CutPath p{kind, {}, {}};
  for (int j = 0; j < nj; ++j) p.vertices.push_back(grid_index(0, j, ni, nj));
  return p;
}

SurfaceMesh torus_of_revolution(double major, double minor, int ni, int nj) {
  std::vector<Vec3> positions;
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) positions.push_back(torus_point(major, minor, 2 * kPi * i / ni, 2 * kPi * j / nj));
  }
  return SurfaceMesh(std::move(positions), grid_faces(ni, nj, true, false));
}

SurfaceMesh bumpy_torus(int ni, int nj) {
  std::vector<Vec3> positions;
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      const double u = 2 * kPi * i / ni, v = 2 * kPi * j / nj;
      const double r = 1.0 + 0.15 * std::sin(3 * u) * std::cos(2 * v) + 0.05 * std::cos(5 * u + v);
      positions.push_back(torus_point(2.5, r, u, v));
    }
  }
  return SurfaceMesh(std::move(positions), grid_faces(ni, nj, true, false));
}

SurfaceMesh perturbed_torus(double major, double minor, int ni, int nj, double fraction,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Vec3> positions;
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      const Vec3 p = torus_point(major, minor, 2 * kPi * i / ni, 2 * kPi * j / nj);
      const double dx = unit(rng), dy = unit(rng), dz = unit(rng);
      positions.push_back(p + fraction * minor * Vec3(dx, dy, dz));
    }
  }
  return SurfaceMesh(std::move(positions), grid_faces(ni, nj, true, false));
}

SurfaceMesh cylinder(double radius, double height, int n_around, int n_height) {
  std::vector<Vec3> positions;
  for (int j = 0; j <= n_height; ++j) {
    for (int i = 0; i < n_around; ++i) {
      const double a = 2 * kPi * i / n_around;
      positions.emplace_back(radius * std::cos(a), radius * std::sin(a), height * j / n_height);
    }
  }
  return SurfaceMesh(std::move(positions), grid_faces(n_around, n_height + 1, false, false));
}

double unit_perimeter_radius(int n) { return kPi / (n * std::sin(kPi / n)); }

SurfaceMesh frustum(double r_bottom, double r_top, double height, int n_around, int n_height) {
  std::vector<Vec3> positions;
  for (int j = 0; j <= n_height; ++j) {
    const double s = static_cast<double>(j) / n_height;
    const double r = (1 - s) * r_bottom + s * r_top;
    for (int i = 0; i < n_around; ++i) {
      const double a = 2 * kPi * i / n_around;
      positions.emplace_back(r * std::cos(a), r * std::sin(a), height * s);
    }
  }
  return SurfaceMesh(std::move(positions), grid_faces(n_around, n_height + 1, false, false));
}

SurfaceMesh planar_annulus(double inner, int n_around, int n_radial) {
  std::vector<Vec3> positions;
  for (int j = 0; j <= n_radial; ++j) {
    const double r = std::pow(inner, 1.0 - static_cast<double>(j) / n_radial);
    for (int i = 0; i < n_around; ++i) {
      const double a = 2 * kPi * (i + 0.5 * j) / n_around;
      positions.emplace_back(r * std::cos(a), r * std::sin(a), 0.0);
    }
  }
  std::vector<Face> faces = grid_faces(n_around, n_radial + 1, false, false);
  orient_planar(positions, faces);
  return SurfaceMesh(std::move(positions), std::move(faces));
}

SurfaceMesh disk_with_two_holes(int n_around, int n_radial) {
  const SurfaceMesh base = planar_annulus(0.2, n_around, n_radial);
  const Vec3 centre(0.6, 0.0, 0.0);
  std::vector<Face> kept;
  for (const Face& f : base.faces()) {
    const Vec3 c = (base.position(f[0]) + base.position(f[1]) + base.position(f[2])) / 3.0;
    if ((c - centre).norm() > 0.17) kept.push_back(f);
  }
  std::vector<int> remap(base.num_vertices(), -1);
  std::vector<Vec3> positions;
  for (Face& f : kept) {
    for (int& v : f) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(positions.size());
        positions.push_back(base.position(v));
      }
      v = remap[v];
    }
  }
  SurfaceMesh mesh(std::move(positions), std::move(kept));
  int loop_vertices = 0;
  for (const auto& loop : pcf::boundary_loops(mesh)) loop_vertices += static_cast<int>(loop.vertices.size());
  int boundary_vertices = 0;
  for (int v = 0; v < mesh.num_vertices(); ++v) boundary_vertices += mesh.is_boundary_vertex(v) ? 1 : 0;
  if (loop_vertices != boundary_vertices) throw std::logic_error("two-hole fixture has a pinched boundary");
  return mesh;
}

SurfaceMesh tetrahedron() {
  return SurfaceMesh({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}},
                     {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
}

SurfaceMesh single_triangle() { return SurfaceMesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}); }

}  // namespace fixtures
