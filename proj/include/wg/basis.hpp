#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wg/quadrature.hpp"

namespace wg {

/// dim P_k in two variables.
inline int pk_dim(int k) { return (k + 1) * (k + 2) / 2; }

/// Graded-lex exponents of scalar monomial i: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
std::pair<int, int> monomial_exponents(int i);

/// Scaled monomials m_(a,b)(x,y) = ((x-cx)/scale)^a ((y-cy)/scale)^b in
/// graded-lex order. Values/gradients of all monomials up to a given dimension.
struct MonomialScaling {
  Vec2 center;
  double scale = 1.0;

  Eigen::MatrixXd values(const std::vector<Vec2>& pts, int dim) const;
  // gradients carry the 1/scale chain-rule factor
  void gradients(const std::vector<Vec2>& pts, int dim, Eigen::MatrixXd& dx, Eigen::MatrixXd& dy) const;
  double value_at(const Vec2& p, int i) const;
};

/// P_k(D) in scaled monomials about the star center with scale h_D; the mass
/// matrix comes exactly from the moment table.
struct CellBasis {
  int element = -1;
  int k = 0;
  MonomialScaling scaling;
  Eigen::MatrixXd mass;        // dim x dim
  Eigen::LDLT<Eigen::MatrixXd> mass_ldlt;
  double cond = 0.0;           // spectral condition estimate of the mass matrix

  int dim() const { return pk_dim(k); }
  /// LDLT solve with one step of iterative refinement (the mass matrices of
  /// higher-degree monomial bases are ill-conditioned enough for the plain
  /// solve to lose ~cond*eps).
  Eigen::MatrixXd solve_mass(const Eigen::MatrixXd& rhs) const;
};

CellBasis build_cell_basis(int element, int k, const MomentTable& moments);

/// H1-seminorm matrix of the cell basis: integral of grad m_i . grad m_j,
/// exact from moments (needs degree 2k-2).
Eigen::MatrixXd cell_grad_matrix(const CellBasis& basis, const MomentTable& moments);

/// Trace space P_k|_e on one edge: restrictions of the ambient degree-k
/// monomials (in the edge's own scaling), orthonormalized by Gram
/// eigen-factorization with relative rank cutoff 1e-10. On straight edges the
/// dimension is k+1; on genuinely curved edges it can reach dim P_k.
struct EdgeTraceBasis {
  int edge = -1;
  int k = 0;
  MonomialScaling scaling;
  Eigen::MatrixXd coef;  // generators x dim: phi_j = sum_i coef(i,j) m_i
  int dim = 0;

  /// Values of the orthonormal functions at physical points on the curve.
  Eigen::MatrixXd values(const std::vector<Vec2>& pts) const;
};

EdgeTraceBasis build_edge_basis(const ParametricEdge& edge, int edge_index, int k, const EdgeQuadrature& rule);

/// [P_(degree)(D)]^2 spanned by (m_i, 0) and (0, m_i); the vector mass matrix
/// is two decoupled copies of the scalar mass matrix of the same degree.
struct GradientBasis {
  int element = -1;
  int degree = 0;  // k-1 for the scheme
  MonomialScaling scaling;
  Eigen::MatrixXd mass;  // 2n x 2n, block diagonal
  Eigen::LDLT<Eigen::MatrixXd> mass_ldlt;

  int scalar_dim() const { return pk_dim(degree); }
  int dim() const { return 2 * scalar_dim(); }
  Eigen::MatrixXd solve_mass(const Eigen::MatrixXd& rhs) const;
};

GradientBasis build_gradient_basis(int element, int degree, const MomentTable& moments,
                                   const MonomialScaling& scaling);

}  // namespace wg
