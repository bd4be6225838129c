#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "pcf/cut.hpp"
#include "pcf/layout.hpp"
#include "pcf/mesh.hpp"

namespace pcf {

/// Symmetric sparse matrix stored as its lower triangle.
class SparseSym {
 public:
  SparseSym() = default;
  explicit SparseSym(int dim) : dim_(dim) {}

  /// Adds v to the symmetric pair (i, j) = (j, i); finalize() sums duplicates.
  void add(int i, int j, double v);
  void finalize();

  int dim() const { return dim_; }
  const Eigen::SparseMatrix<double>& lower() const { return lower_; }
  Eigen::SparseMatrix<double> full() const;
  Eigen::MatrixXd dense() const;
  double coeff(int i, int j) const;
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  double frobenius_norm() const;
  /// Principal submatrix on `keep` (in that order).
  SparseSym submatrix(std::span<const int> keep) const;

 private:
  int dim_ = 0;
  std::vector<Eigen::Triplet<double>> pending_;
  Eigen::SparseMatrix<double> lower_;
};

/// Folded system L = P^T L~ P split into its vertex block L_D, the coupling
/// columns S (one per lattice generator: h then t, or t alone) and the
/// generator block K.
struct PeriodicSystem {
  SparseSym laplacian;
  Eigen::MatrixXd coupling;
  Eigen::MatrixXd lattice;
  VertexPartition partition;
};

/// Cotangent Laplacian under the active metric: off-diagonals -1/2 (cot + cot)
/// on interior edges and -1/2 cot on boundary edges, diagonal = -row sum.
SparseSym cotan_laplacian(const SurfaceMesh& mesh);

/// Graph Laplacian with unit weights (Tutte embedding).
SparseSym uniform_laplacian(const SurfaceMesh& mesh);

SparseSym cut_laplacian(const CutMesh& cut);

/// Folds a cut-mesh matrix through the seam identification without forming P.
PeriodicSystem fold_periodic(const SparseSym& cut_lap, const CutMesh& cut);

/// The 0/1 identification matrix P with columns (vertices, h, t) for a genus-one
/// cut or (vertices, t) for a cross cut. Dense; meant for small meshes.
Eigen::MatrixXd identification_matrix(const CutMesh& cut);

/// LDL^T factorization with a fixed AMD ordering. Symmetric indefinite
/// matrices are accepted as long as no pivot vanishes.
class SymmetricSolver {
 public:
  explicit SymmetricSolver(const SparseSym& matrix, double tol = 1e-10);

  /// Solves with iterative refinement until
  /// ||Ax - b|| <= tol (||A||_F ||x|| + ||b||); throws NumericalError otherwise.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  SparseSym matrix_;
  double tol_;
  double norm_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
};

Eigen::VectorXd solve_sym(const SparseSym& matrix, const Eigen::VectorXd& rhs, double tol = 1e-10);

/// Signed area of a closed polygon, positive when counterclockwise.
double gauss_area(std::span<const Vec2> polygon);

struct ConformalEnergy {
  double conformal = 0.0;  // E_C = E_D - A
  double dirichlet = 0.0;  // E_D
  double area = 0.0;       // A
};

/// Energy of a layout on the cut mesh. The image area is t1 h2 - t2 h1 for a
/// doubly periodic layout and t1 for a unit-height strip. Throws InputError if
/// the seams are not glued by the layout's translations.
ConformalEnergy conformal_energy(const FlatLayout& layout, const SparseSym& cut_lap,
                                 const CutMesh& cut);

}  // namespace pcf
