#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wg/errors.hpp"

namespace wg {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Compressed sparse rows, full (not half) symmetric storage.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> val;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd diagonal() const;
  double max_abs() const;
  /// max |A_ij - A_ji| over stored entries.
  double symmetry_defect() const;
  Eigen::MatrixXd dense() const;

  static CsrMatrix from_triplets(int n, std::vector<Triplet> triplets);
};

struct SolveReport {
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

/// Raised when CG exhausts max_iter; carries the final report.
struct SolverConvergenceError : Error {
  SolveReport report;
  explicit SolverConvergenceError(SolveReport r)
      : Error("conjugate gradient did not reach the requested tolerance"), report(r) {}
};

/// Jacobi-preconditioned conjugate gradients for SPD systems. Returns when the
/// true residual satisfies ||b - Ax|| <= rel_tol * ||b||. max_iter <= 0 selects
/// the default 20*n. Throws NotSpdError on an indefinite direction and
/// SolverConvergenceError when the budget runs out.
std::pair<Eigen::VectorXd, SolveReport> solve_spd(const CsrMatrix& A, const Eigen::VectorXd& b,
                                                  double rel_tol = 1e-12, int max_iter = -1);

}  // namespace wg
