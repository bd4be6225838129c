#include "pcf/dpcf.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <tuple>

#include "pcf/error.hpp"

namespace pcf {

namespace {

using Complex = std::complex<double>;

Complex to_complex(const Vec2& v) { return {v.x(), v.y()}; }

}  // namespace

FlatLayout solve_doubly_periodic(const CutMesh& cut, const SparseSym& cut_lap, double tol) {
  if (cut.kind != CutKind::genus_one) throw TopologyError("doubly periodic solve needs a genus-one cut");
  const PeriodicSystem sys = fold_periodic(cut_lap, cut);
  const auto& part = sys.partition;

  // O goes last so that dropping the final row and column removes it.
  std::vector<int> order;
  order.reserve(cut.num_original_vertices());
  order.insert(order.end(), part.interior.begin(), part.interior.end());
  order.insert(order.end(), part.beta_plus.begin(), part.beta_plus.end());
  order.insert(order.end(), part.alpha_plus.begin(), part.alpha_plus.end());
  order.push_back(part.corners.front());
  const int n = static_cast<int>(order.size());
  const std::span<const int> reduced(order.data(), n - 1);

  // [L0 s1; s1^T k11] with the h unknown in the last slot.
  const SparseSym l0 = sys.laplacian.submatrix(reduced);
  SparseSym system(n);
  const auto& lower = l0.lower();
  for (int k = 0; k < lower.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(lower, k); it; ++it) {
      system.add(it.row(), it.col(), it.value());
    }
  }
  Eigen::VectorXd rhs_x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd rhs_y = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n - 1; ++i) {
    const double s1 = sys.coupling(order[i], 0);
    if (s1 != 0.0) system.add(n - 1, i, s1);
    rhs_x(i) = -sys.coupling(order[i], 1);
  }
  system.add(n - 1, n - 1, sys.lattice(0, 0));
  system.finalize();
  rhs_x(n - 1) = -sys.lattice(0, 1);
  rhs_y(n - 1) = 1.0;

  const SymmetricSolver solver(system, tol);
  const Eigen::VectorXd x = solver.solve(rhs_x);
  const Eigen::VectorXd y = solver.solve(rhs_y);

  FlatLayout layout;
  layout.kind = LatticeKind::doubly_periodic;
  layout.t = Vec2(1.0, 0.0);
  layout.h = Vec2(x(n - 1), y(n - 1));
  std::vector<Vec2> f(cut.num_original_vertices(), Vec2::Zero());
  for (int i = 0; i < n - 1; ++i) f[order[i]] = Vec2(x(i), y(i));
  layout.coords.resize(cut.mesh.num_vertices());
  for (int c = 0; c < cut.mesh.num_vertices(); ++c) {
    layout.coords[c] = f[cut.origin[c]] + cut.shift[c][0] * layout.h + cut.shift[c][1] * layout.t;
  }
  return layout;
}

Genus1Flattening flatten_genus1(const SurfaceMesh& mesh,
                                const std::optional<std::pair<CutPath, CutPath>>& paths, double tol,
                                int root) {
  const Topology topo = topology(mesh);
  if (topo.boundary_count != 0 || topo.genus != 1) {
    throw TopologyError("torus flattening needs a closed genus-one mesh (genus " +
                        std::to_string(topo.genus) + ", " + std::to_string(topo.boundary_count) +
                        " boundaries)");
  }
  const auto [alpha, beta] = paths ? *paths : find_cut_system_genus1(mesh, root);
  const std::array<CutPath, 2> system{alpha, beta};
  Genus1Flattening out;
  out.cut = cut_along(mesh, system);
  out.layout = solve_doubly_periodic(out.cut, cut_laplacian(out.cut), tol);
  return out;
}

LatticeRelation relate_lattices(const Vec2& h, const Vec2& t, const Vec2& h_other,
                                const Vec2& t_other, int search) {
  const Complex zh = to_complex(h), zt = to_complex(t);
  const Complex wh = to_complex(h_other), wt = to_complex(t_other);
  const double scale = std::sqrt(std::norm(wh) + std::norm(wt));
  LatticeRelation best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int a = -search; a <= search; ++a) {
    for (int b = -search; b <= search; ++b) {
      for (int c = -search; c <= search; ++c) {
        for (int d = -search; d <= search; ++d) {
          const int det = a * d - b * c;
          if (det != 1 && det != -1) continue;
          const Complex u = double(a) * zh + double(b) * zt;
          const Complex v = double(c) * zh + double(d) * zt;
          // Least-squares complex factor mapping (u, v) onto (wh, wt).
          const Complex lambda = (std::conj(u) * wh + std::conj(v) * wt) / (std::norm(u) + std::norm(v));
          const double r = std::sqrt(std::norm(wh - lambda * u) + std::norm(wt - lambda * v)) / scale;
          if (r < best.residual) {
            best.residual = r;
            best.unimodular = {a, b, c, d};
            best.similarity = Vec2(lambda.real(), lambda.imag());
          }
        }
      }
    }
  }
  return best;
}

UvMesh unwrap_faces(const FlatLayout& layout, const CutMesh& cut, const std::vector<Face>& faces) {
  const bool doubly = layout.kind == LatticeKind::doubly_periodic;
  const int h_range = doubly ? 1 : 0;
  std::map<std::tuple<int, int, int>, int> uv_index;
  UvMesh out;
  auto base = [&](int v) { return layout.coords[cut.representative[v]]; };
  auto lookup = [&](int v, int kh, int kt) {
    auto [it, inserted] = uv_index.try_emplace({v, kh, kt}, static_cast<int>(out.uv.size()));
    if (inserted) out.uv.push_back(base(v) + kh * layout.h + kt * layout.t);
    return it->second;
  };
  for (const Face& f : faces) {
    for (int v : f) {
      if (v < 0 || v >= cut.num_original_vertices()) throw InputError("face vertex out of range");
    }
    Face uv_face{};
    uv_face[0] = lookup(f[0], 0, 0);
    const Vec2 anchor = base(f[0]);
    for (int k = 1; k < 3; ++k) {
      double best = std::numeric_limits<double>::infinity();
      int best_h = 0, best_t = 0;
      for (int kh = -h_range; kh <= h_range; ++kh) {
        for (int kt = -1; kt <= 1; ++kt) {
          const double d = (base(f[k]) + kh * layout.h + kt * layout.t - anchor).norm();
          if (d < best) {
            best = d;
            best_h = kh;
            best_t = kt;
          }
        }
      }
      uv_face[k] = lookup(f[k], best_h, best_t);
    }
    out.faces.push_back(uv_face);
  }
  return out;
}

}  // namespace pcf
