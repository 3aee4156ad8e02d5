#pragma once

#include <functional>

#include "wg/basis.hpp"

namespace wg {

/// Everything local to one element that the weak-gradient operator needs about
/// one of its edges.
struct ElementEdge {
  int edge = -1;
  int dir = +1;
  const EdgeTraceBasis* basis = nullptr;
  const EdgeQuadrature* rule = nullptr;
};

/// Matrix G of the discrete weak gradient: maps stacked coefficients
/// (v0 over the cell basis, then v_b over each edge trace basis in loop order)
/// to coefficients of grad_w v over the vector gradient basis. Defined by
/// testing against all q in [P_(k-1)(D)]^2:
///   (grad_w v, q)_D = -(v0, div q)_D + <v_b, q . n>_dD.
struct WeakGradientOperator {
  int element = -1;
  int n_cell = 0;
  std::vector<int> edge_offset;  // column offset of each edge block
  std::vector<int> edge_dim;
  Eigen::MatrixXd G;

  int cols() const { return static_cast<int>(G.cols()); }
  int rows() const { return static_cast<int>(G.rows()); }

  /// grad_w coefficients of a local stacked coefficient vector.
  Eigen::VectorXd apply(const Eigen::VectorXd& local) const { return G * local; }
};

WeakGradientOperator build_weak_gradient(const CellBasis& cell, const GradientBasis& grad,
                                         const MomentTable& moments,
                                         const std::vector<ElementEdge>& edges);

/// L2 projection onto P_k(D): solves M0 c = (f, m_i)_D with the fan rule.
Eigen::VectorXd project_cell(const CellBasis& basis, const InteriorQuadrature& rule,
                             const std::function<double(Vec2)>& f);

/// Exact projection of a polynomial given by coefficients over the element's
/// own scaled monomials (any degree the moment table covers).
Eigen::VectorXd project_cell_poly(const CellBasis& basis, const MomentTable& moments,
                                  const Eigen::VectorXd& poly_coeffs);

/// L2 projection onto the edge trace space; exact with respect to the edge rule
/// the basis was orthonormalized against.
Eigen::VectorXd project_edge(const EdgeTraceBasis& basis, const EdgeQuadrature& rule,
                             const std::function<double(Vec2)>& g);

/// L2 projection onto [P_(degree)(D)]^2 via the fan rule.
Eigen::VectorXd project_gradient(const GradientBasis& basis, const InteriorQuadrature& rule,
                                 const std::function<Vec2(Vec2)>& w);

/// Exact projection of a polynomial vector field with components given over the
/// element's scaled monomials.
Eigen::VectorXd project_gradient_poly(const GradientBasis& basis, const MomentTable& moments,
                                      const Eigen::VectorXd& wx, const Eigen::VectorXd& wy);

/// Debug-style verification: recompute a cell projection with doubled fan order
/// and require agreement. Returns the relative rhs drift.
double project_cell_order_drift(const CellBasis& basis, const CurvedPolygonMesh& mesh, int element,
                                Vec2 star_center, int order, const std::function<double(Vec2)>& f);

}  // namespace wg
