#include "pcf/spcf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/QR>

#include "pcf/assembly.hpp"
#include "pcf/error.hpp"

namespace pcf {

namespace {

void require_doubly_connected(const SurfaceMesh& mesh) {
  const Topology topo = topology(mesh);
  if (topo.genus != 0 || topo.boundary_count != 2) {
    throw TopologyError("annulus flattening needs a genus-zero mesh with 2 boundaries (genus " +
                        std::to_string(topo.genus) + ", " + std::to_string(topo.boundary_count) +
                        " boundaries)");
  }
}

// Solves L_{UU} u = -L_{UK} g_K for the free set U with known values g.
Eigen::VectorXd dirichlet_solve(const SparseSym& lap, const std::vector<int>& free,
                                const Eigen::VectorXd& known, double tol) {
  Eigen::VectorXd fixed = known;
  for (int v : free) fixed(v) = 0.0;
  const Eigen::VectorXd coupling = lap.multiply(fixed);
  Eigen::VectorXd rhs(free.size());
  for (std::size_t i = 0; i < free.size(); ++i) rhs(i) = -coupling(free[i]);
  return solve_sym(lap.submatrix(free), rhs, tol);
}

}  // namespace

StripFlattening flatten_strip(const SurfaceMesh& mesh, const CutPath& cross, double tol) {
  require_doubly_connected(mesh);
  StripFlattening out;
  const std::array<CutPath, 1> paths{cross};
  out.cut = cut_along(mesh, paths);
  const PeriodicSystem sys = fold_periodic(cut_laplacian(out.cut), out.cut);
  const auto& part = sys.partition;
  const int n = mesh.num_vertices();
  const int o1 = part.corners[0];
  const int o2 = part.corners[1];

  // x: unknowns U1 = [f_I, B_O, B_I, B_C+, O2] and t1; O1 pinned at 0.
  std::vector<int> u1;
  u1.reserve(n);
  for (const auto* group : {&part.interior, &part.outer, &part.inner, &part.cross_plus}) {
    u1.insert(u1.end(), group->begin(), group->end());
  }
  u1.push_back(o2);
  const int m = static_cast<int>(u1.size());
  const SparseSym l1 = sys.laplacian.submatrix(u1);
  SparseSym system(m + 1);
  const auto& lower = l1.lower();
  for (int k = 0; k < lower.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(lower, k); it; ++it) {
      system.add(it.row(), it.col(), it.value());
    }
  }
  for (int i = 0; i < m; ++i) {
    const double s = sys.coupling(u1[i], 0);
    if (s != 0.0) system.add(m, i, s);
  }
  system.add(m, m, sys.lattice(0, 0));
  system.finalize();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs(m) = 1.0;
  const Eigen::VectorXd x = solve_sym(system, rhs, tol);
  const double t1 = x(m);

  // y: Dirichlet data 0 on B_O and O1, 1 on B_I and O2; free U2 = [f_I, B_C+].
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (int v : part.inner) y(v) = 1.0;
  y(o2) = 1.0;
  std::vector<int> u2 = part.interior;
  u2.insert(u2.end(), part.cross_plus.begin(), part.cross_plus.end());
  if (!u2.empty()) {
    const Eigen::VectorXd free = dirichlet_solve(sys.laplacian, u2, y, tol);
    for (std::size_t i = 0; i < u2.size(); ++i) y(u2[i]) = free(i);
  }

  std::vector<Vec2> f(n, Vec2::Zero());
  for (int i = 0; i < m; ++i) f[u1[i]].x() = x(i);
  for (int v = 0; v < n; ++v) f[v].y() = y(v);
  f[o1].x() = 0.0;

  out.layout.kind = LatticeKind::singly_periodic;
  out.layout.t = Vec2(t1, 0.0);
  out.layout.h = Vec2::Zero();
  out.layout.coords.resize(out.cut.mesh.num_vertices());
  for (int c = 0; c < out.cut.mesh.num_vertices(); ++c) {
    out.layout.coords[c] = f[out.cut.origin[c]] + out.cut.shift[c][1] * out.layout.t;
  }
  return out;
}

StripFlattening flatten_strip(const SurfaceMesh& mesh, double tol) {
  require_doubly_connected(mesh);
  return flatten_strip(mesh, find_cross_path(mesh), tol);
}

Vec2 strip_to_annulus(const Vec2& p, double period) {
  const double k = 2.0 * std::numbers::pi / period;
  const double r = std::exp(-k * p.y());
  return {r * std::cos(k * p.x()), r * std::sin(k * p.x())};
}

AnnulusResult exp_to_annulus(const StripFlattening& strip) {
  const double l = strip.layout.t.x();
  if (!(l > 0.0) || strip.layout.t.y() != 0.0) {
    throw InputError("strip period must be (t1, 0) with t1 > 0");
  }
  AnnulusResult out;
  out.strip = strip.layout;
  out.modulus = l;
  out.inner_radius = std::exp(-2.0 * std::numbers::pi / l);
  const CutMesh& cut = strip.cut;
  out.coords.resize(cut.num_original_vertices());
  for (int v = 0; v < cut.num_original_vertices(); ++v) {
    out.coords[v] = strip_to_annulus(strip.layout.coords[cut.representative[v]], l);
  }
  return out;
}

Circle fit_circle(std::span<const Vec2> points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw GeometryError("circle fit needs at least 3 points");
  // Algebraic (Kasa) fit as the starting point.
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    a(i, 0) = points[i].x();
    a(i, 1) = points[i].y();
    a(i, 2) = 1.0;
    b(i) = points[i].squaredNorm();
  }
  const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(b);
  Circle c;
  c.center = Vec2(0.5 * sol(0), 0.5 * sol(1));
  c.radius = std::sqrt(std::max(0.0, sol(2) + c.center.squaredNorm()));

  // Gauss-Newton on the radial residuals |p - c| - r.
  for (int iter = 0; iter < 50; ++iter) {
    Eigen::MatrixXd jac(n, 3);
    Eigen::VectorXd res(n);
    for (int i = 0; i < n; ++i) {
      const Vec2 d = points[i] - c.center;
      const double dist = d.norm();
      if (dist == 0.0) throw GeometryError("circle fit: point at the center");
      res(i) = dist - c.radius;
      jac(i, 0) = -d.x() / dist;
      jac(i, 1) = -d.y() / dist;
      jac(i, 2) = -1.0;
    }
    const Eigen::Vector3d step = jac.colPivHouseholderQr().solve(-res);
    c.center += step.head<2>();
    c.radius += step(2);
    if (step.norm() <= 1e-15 * std::max(1.0, c.radius)) break;
  }
  if (!(c.radius > 0.0)) throw GeometryError("circle fit collapsed");
  return c;
}

PolyAnnulusResult flatten_polyannulus(const SurfaceMesh& mesh, double tol) {
  const Topology topo = topology(mesh);
  if (topo.genus != 0 || topo.boundary_count < 2) {
    throw TopologyError("poly-annulus flattening needs a genus-zero mesh with at least 2 boundaries");
  }
  PolyAnnulusResult out;
  out.loops = boundary_loops(mesh);
  const auto& outer = out.loops.back();
  const int holes = static_cast<int>(out.loops.size()) - 1;
  for (const auto& loop : out.loops) {
    if (loop.vertices.size() < 3) throw GeometryError("boundary loop with fewer than 3 vertices");
  }

  SurfaceMesh current = mesh;
  for (int l = 0; l < holes; ++l) {
    const FilledMesh filled = fill_holes(current, out.loops[l]);
    const auto filled_loops = boundary_loops(filled.mesh);
    const bool first_is_outer =
        std::find(filled_loops[0].vertices.begin(), filled_loops[0].vertices.end(),
                  outer.vertices.front()) != filled_loops[0].vertices.end();
    const BoundaryLoop& f_outer = first_is_outer ? filled_loops[0] : filled_loops[1];
    const BoundaryLoop& f_inner = first_is_outer ? filled_loops[1] : filled_loops[0];
    const CutPath cross = find_cross_path(filled.mesh, f_outer, f_inner);
    const AnnulusResult annulus = exp_to_annulus(flatten_strip(filled.mesh, cross, tol));
    std::vector<Vec3> planar(annulus.coords.size());
    for (std::size_t v = 0; v < planar.size(); ++v) {
      planar[v] = Vec3(annulus.coords[v].x(), annulus.coords[v].y(), 0.0);
    }
    current = remove_fill(filled, planar);
  }

  out.coords.resize(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) out.coords[v] = current.position(v).head<2>();

  // Make every boundary exactly circular.
  for (int l = 0; l < holes; ++l) {
    std::vector<Vec2> pts;
    for (int v : out.loops[l].vertices) pts.push_back(out.coords[v]);
    const Circle c = fit_circle(pts);
    for (int v : out.loops[l].vertices) {
      const Vec2 d = out.coords[v] - c.center;
      if (d.norm() == 0.0) throw GeometryError("boundary vertex at its circle center");
      out.coords[v] = c.center + c.radius * d / d.norm();
    }
    out.circles.push_back(c);
  }
  for (int v : outer.vertices) out.coords[v] /= out.coords[v].norm();
  out.circles.push_back(Circle{Vec2::Zero(), 1.0});

  // Harmonic interior with all boundaries fixed, input metric.
  const SparseSym lap = cotan_laplacian(mesh);
  std::vector<int> interior;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (!mesh.is_boundary_vertex(v)) interior.push_back(v);
  }
  if (!interior.empty()) {
    for (int dim = 0; dim < 2; ++dim) {
      Eigen::VectorXd known(mesh.num_vertices());
      for (int v = 0; v < mesh.num_vertices(); ++v) known(v) = out.coords[v](dim);
      const Eigen::VectorXd free = dirichlet_solve(lap, interior, known, tol);
      for (std::size_t i = 0; i < interior.size(); ++i) out.coords[interior[i]](dim) = free(i);
    }
  }
  return out;
}

}  // namespace pcf
