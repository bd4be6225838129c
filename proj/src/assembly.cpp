#include "pcf/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcf/error.hpp"

namespace pcf {

namespace {

constexpr double kPivotFloor = 1e-14;
constexpr double kSeamTolerance = 1e-9;
constexpr int kMaxRefinements = 8;

int lattice_columns(const CutMesh& cut) { return cut.kind == CutKind::genus_one ? 2 : 1; }

// Lattice coefficient of cut vertex c for folded generator column j.
int shift_coefficient(const CutMesh& cut, int c, int j) {
  return cut.kind == CutKind::genus_one ? cut.shift[c][j] : cut.shift[c][1];
}

}  // namespace

void SparseSym::add(int i, int j, double v) {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_) {
    throw InputError("sparse entry (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") out of range");
  }
  if (i < j) std::swap(i, j);
  pending_.emplace_back(i, j, v);
}

void SparseSym::finalize() {
  lower_.resize(dim_, dim_);
  lower_.setFromTriplets(pending_.begin(), pending_.end());
  lower_.makeCompressed();
  pending_.clear();
  pending_.shrink_to_fit();
}

Eigen::SparseMatrix<double> SparseSym::full() const {
  Eigen::SparseMatrix<double> m = lower_.selfadjointView<Eigen::Lower>();
  return m;
}

Eigen::MatrixXd SparseSym::dense() const { return Eigen::MatrixXd(full()); }

double SparseSym::coeff(int i, int j) const {
  if (i < j) std::swap(i, j);
  return lower_.coeff(i, j);
}

Eigen::VectorXd SparseSym::multiply(const Eigen::VectorXd& x) const {
  return lower_.selfadjointView<Eigen::Lower>() * x;
}

double SparseSym::frobenius_norm() const {
  double sum = 0.0;
  for (int k = 0; k < lower_.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(lower_, k); it; ++it) {
      sum += (it.row() == it.col() ? 1.0 : 2.0) * it.value() * it.value();
    }
  }
  return std::sqrt(sum);
}

SparseSym SparseSym::submatrix(std::span<const int> keep) const {
  std::vector<int> position(dim_, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) position[keep[i]] = static_cast<int>(i);
  SparseSym out(static_cast<int>(keep.size()));
  for (int k = 0; k < lower_.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(lower_, k); it; ++it) {
      const int r = position[it.row()];
      const int c = position[it.col()];
      if (r >= 0 && c >= 0) out.add(r, c, it.value());
    }
  }
  out.finalize();
  return out;
}

SparseSym cotan_laplacian(const SurfaceMesh& mesh) {
  SparseSym lap(mesh.num_vertices());
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Face& t = mesh.face(f);
    const auto l = mesh.face_lengths(f);
    const auto cot = triangle_cotangents(l[0], l[1], l[2]);
    for (int k = 0; k < 3; ++k) {
      const int i = t[(k + 1) % 3];
      const int j = t[(k + 2) % 3];
      const double w = 0.5 * cot[k];
      lap.add(i, j, -w);
      lap.add(i, i, w);
      lap.add(j, j, w);
    }
  }
  lap.finalize();
  return lap;
}

SparseSym uniform_laplacian(const SurfaceMesh& mesh) {
  SparseSym lap(mesh.num_vertices());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto [i, j] = mesh.edge_vertices(e);
    lap.add(i, j, -1.0);
    lap.add(i, i, 1.0);
    lap.add(j, j, 1.0);
  }
  lap.finalize();
  return lap;
}

SparseSym cut_laplacian(const CutMesh& cut) { return cotan_laplacian(cut.mesh); }

PeriodicSystem fold_periodic(const SparseSym& cut_lap, const CutMesh& cut) {
  const int nc = cut.mesh.num_vertices();
  if (cut_lap.dim() != nc || static_cast<int>(cut.origin.size()) != nc) {
    throw InputError("cut Laplacian has dimension " + std::to_string(cut_lap.dim()) +
                     " but the cut mesh has " + std::to_string(nc) + " vertices");
  }
  const int n = cut.num_original_vertices();
  const int m = lattice_columns(cut);

  PeriodicSystem sys;
  sys.partition = cut.partition;
  sys.laplacian = SparseSym(n);
  const auto& lower = cut_lap.lower();
  for (int k = 0; k < lower.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(lower, k); it; ++it) {
      sys.laplacian.add(cut.origin[it.row()], cut.origin[it.col()], it.value());
    }
  }
  sys.laplacian.finalize();

  // With a_j the j-th lattice column of P: S(:, j) folds L~ a_j onto the
  // vertices and K(i, j) = a_i^T L~ a_j.
  Eigen::MatrixXd shifts = Eigen::MatrixXd::Zero(nc, m);
  for (int c = 0; c < nc; ++c) {
    for (int j = 0; j < m; ++j) shifts(c, j) = shift_coefficient(cut, c, j);
  }
  sys.coupling = Eigen::MatrixXd::Zero(n, m);
  sys.lattice = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    const Eigen::VectorXd u = cut_lap.multiply(shifts.col(j));
    for (int c = 0; c < nc; ++c) sys.coupling(cut.origin[c], j) += u(c);
    for (int i = 0; i < m; ++i) sys.lattice(i, j) = shifts.col(i).dot(u);
  }
  // Symmetric in exact arithmetic; round-off can differ in the last bit.
  sys.lattice = 0.5 * (sys.lattice + sys.lattice.transpose()).eval();
  return sys;
}

Eigen::MatrixXd identification_matrix(const CutMesh& cut) {
  const int nc = cut.mesh.num_vertices();
  const int n = cut.num_original_vertices();
  const int m = lattice_columns(cut);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(nc, n + m);
  for (int c = 0; c < nc; ++c) {
    p(c, cut.origin[c]) = 1.0;
    for (int j = 0; j < m; ++j) p(c, n + j) = shift_coefficient(cut, c, j);
  }
  return p;
}

SymmetricSolver::SymmetricSolver(const SparseSym& matrix, double tol)
    : matrix_(matrix), tol_(tol), norm_(matrix.frobenius_norm()) {
  ldlt_.compute(matrix.lower());
  double max_diag = 0.0;
  for (int i = 0; i < matrix.dim(); ++i) max_diag = std::max(max_diag, std::abs(matrix.coeff(i, i)));
  if (ldlt_.info() != Eigen::Success) {
    throw SingularMatrixError("LDL^T factorization failed", -1);
  }
  const Eigen::VectorXd d = ldlt_.vectorD();
  const auto& perm = ldlt_.permutationPinv();
  for (int i = 0; i < d.size(); ++i) {
    if (!(std::abs(d(i)) > kPivotFloor * max_diag)) {
      const int pivot = perm.indices()(i);
      throw SingularMatrixError("matrix is numerically singular at pivot " + std::to_string(pivot),
                                pivot);
    }
  }
}

Eigen::VectorXd SymmetricSolver::solve(const Eigen::VectorXd& rhs) const {
  if (rhs.size() != matrix_.dim()) throw InputError("right-hand side has the wrong size");
  Eigen::VectorXd x = ldlt_.solve(rhs);
  const double b_norm = rhs.norm();
  for (int iter = 0;; ++iter) {
    const Eigen::VectorXd r = rhs - matrix_.multiply(x);
    const double bound = tol_ * (norm_ * x.norm() + b_norm);
    if (r.norm() <= bound) return x;
    if (iter == kMaxRefinements || !x.allFinite()) {
      throw NumericalError("solve did not reach the residual bound (" + std::to_string(r.norm()) +
                           " > " + std::to_string(bound) + ")");
    }
    x += ldlt_.solve(r);
  }
}

Eigen::VectorXd solve_sym(const SparseSym& matrix, const Eigen::VectorXd& rhs, double tol) {
  return SymmetricSolver(matrix, tol).solve(rhs);
}

double gauss_area(std::span<const Vec2> polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = polygon[i];
    const Vec2& q = polygon[(i + 1) % n];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * twice;
}

ConformalEnergy conformal_energy(const FlatLayout& layout, const SparseSym& cut_lap,
                                 const CutMesh& cut) {
  const int nc = cut.mesh.num_vertices();
  if (static_cast<int>(layout.coords.size()) != nc || cut_lap.dim() != nc) {
    throw InputError("layout, Laplacian and cut mesh sizes disagree");
  }
  for (int c = 0; c < nc; ++c) {
    const Vec2 expected = layout.coords[cut.representative[cut.origin[c]]] +
                          cut.shift[c][0] * layout.h + cut.shift[c][1] * layout.t;
    if ((layout.coords[c] - expected).norm() > kSeamTolerance) {
      throw InputError("layout is not periodic at cut vertex " + std::to_string(c));
    }
  }
  Eigen::VectorXd x(nc), y(nc);
  for (int c = 0; c < nc; ++c) {
    x(c) = layout.coords[c].x();
    y(c) = layout.coords[c].y();
  }
  ConformalEnergy e;
  e.dirichlet = 0.5 * (x.dot(cut_lap.multiply(x)) + y.dot(cut_lap.multiply(y)));
  e.area = layout.kind == LatticeKind::doubly_periodic
               ? layout.t.x() * layout.h.y() - layout.t.y() * layout.h.x()
               : layout.t.x();
  e.conformal = e.dirichlet - e.area;
  return e;
}

}  // namespace pcf
