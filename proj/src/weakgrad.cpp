#include "wg/weakgrad.hpp"

namespace wg {

WeakGradientOperator build_weak_gradient(const CellBasis& cell, const GradientBasis& grad,
                                         const MomentTable& moments,
                                         const std::vector<ElementEdge>& edges) {
  WeakGradientOperator op;
  op.element = cell.element;
  op.n_cell = cell.dim();

  int cols = op.n_cell;
  for (const auto& ee : edges) {
    op.edge_offset.push_back(cols);
    op.edge_dim.push_back(ee.basis->dim);
    cols += ee.basis->dim;
  }

  const int ng = grad.scalar_dim();  // q_j = (m_j, 0), j < ng; (0, m_(j-ng)) otherwise
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(2 * ng, cols);
  const double inv_scale = 1.0 / cell.scaling.scale;

  // volume part: -(m_i, div q_j)_D, exact from moments
  for (int j = 0; j < ng; ++j) {
    const auto [aj, bj] = monomial_exponents(j);
    for (int i = 0; i < op.n_cell; ++i) {
      const auto [ai, bi] = monomial_exponents(i);
      if (aj > 0) rhs(j, i) -= aj * inv_scale * moments.at(ai + aj - 1, bi + bj);
      if (bj > 0) rhs(ng + j, i) -= bj * inv_scale * moments.at(ai + aj, bi + bj - 1);
    }
  }

  // boundary part: <phi, q_j . n>_e with n ds = dir * (y', -x') dt
  for (size_t e = 0; e < edges.size(); ++e) {
    const ElementEdge& ee = edges[e];
    const EdgeQuadrature& q = *ee.rule;
    const Eigen::MatrixXd phi = ee.basis->values(q.points);
    const Eigen::MatrixXd mono = cell.scaling.values(q.points, ng);
    for (size_t n = 0; n < q.points.size(); ++n) {
      const double wnx = ee.dir * q.w_param[n] * q.deriv[n].y;
      const double wny = -ee.dir * q.w_param[n] * q.deriv[n].x;
      for (int j = 0; j < ng; ++j) {
        const double mx = mono(n, j) * wnx;
        const double my = mono(n, j) * wny;
        for (int l = 0; l < ee.basis->dim; ++l) {
          rhs(j, op.edge_offset[e] + l) += mx * phi(n, l);
          rhs(ng + j, op.edge_offset[e] + l) += my * phi(n, l);
        }
      }
    }
  }

  op.G = grad.solve_mass(rhs);
  return op;
}

Eigen::VectorXd project_cell(const CellBasis& basis, const InteriorQuadrature& rule,
                             const std::function<double(Vec2)>& f) {
  const int n = basis.dim();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  const Eigen::MatrixXd v = basis.scaling.values(rule.points, n);
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const double wf = rule.weights[q] * f(rule.points[q]);
    for (int i = 0; i < n; ++i) rhs[i] += wf * v(q, i);
  }
  return basis.solve_mass(rhs);
}

Eigen::VectorXd project_cell_poly(const CellBasis& basis, const MomentTable& moments,
                                  const Eigen::VectorXd& poly_coeffs) {
  const int n = basis.dim();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    const auto [ai, bi] = monomial_exponents(i);
    for (int c = 0; c < poly_coeffs.size(); ++c) {
      if (poly_coeffs[c] == 0.0) continue;
      const auto [ac, bc] = monomial_exponents(c);
      rhs[i] += poly_coeffs[c] * moments.at(ai + ac, bi + bc);
    }
  }
  return basis.solve_mass(rhs);
}

Eigen::VectorXd project_edge(const EdgeTraceBasis& basis, const EdgeQuadrature& rule,
                             const std::function<double(Vec2)>& g) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(basis.dim);
  const Eigen::MatrixXd phi = basis.values(rule.points);
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const double wg = rule.weights[q] * g(rule.points[q]);
    for (int i = 0; i < basis.dim; ++i) out[i] += wg * phi(q, i);
  }
  return out;
}

Eigen::VectorXd project_gradient(const GradientBasis& basis, const InteriorQuadrature& rule,
                                 const std::function<Vec2(Vec2)>& w) {
  const int n = basis.scalar_dim();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * n);
  const Eigen::MatrixXd v = basis.scaling.values(rule.points, n);
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const Vec2 wq = w(rule.points[q]);
    for (int i = 0; i < n; ++i) {
      rhs[i] += rule.weights[q] * wq.x * v(q, i);
      rhs[n + i] += rule.weights[q] * wq.y * v(q, i);
    }
  }
  return basis.solve_mass(rhs);
}

Eigen::VectorXd project_gradient_poly(const GradientBasis& basis, const MomentTable& moments,
                                      const Eigen::VectorXd& wx, const Eigen::VectorXd& wy) {
  const int n = basis.scalar_dim();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    const auto [ai, bi] = monomial_exponents(i);
    for (int c = 0; c < wx.size(); ++c)
      if (wx[c] != 0.0) {
        const auto [ac, bc] = monomial_exponents(c);
        rhs[i] += wx[c] * moments.at(ai + ac, bi + bc);
      }
    for (int c = 0; c < wy.size(); ++c)
      if (wy[c] != 0.0) {
        const auto [ac, bc] = monomial_exponents(c);
        rhs[n + i] += wy[c] * moments.at(ai + ac, bi + bc);
      }
  }
  return basis.solve_mass(rhs);
}

double project_cell_order_drift(const CellBasis& basis, const CurvedPolygonMesh& mesh, int element,
                                Vec2 star_center, int order, const std::function<double(Vec2)>& f) {
  const InteriorQuadrature lo = interior_rule(mesh, element, star_center, order);
  const InteriorQuadrature hi = interior_rule(mesh, element, star_center, 2 * order);
  const Eigen::VectorXd a = project_cell(basis, lo, f);
  const Eigen::VectorXd b = project_cell(basis, hi, f);
  return (a - b).norm() / std::max(1.0, b.norm());
}

}  // namespace wg
