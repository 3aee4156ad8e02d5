#include "wg/basis.hpp"

#include <cmath>

namespace wg {

namespace {

Eigen::MatrixXd refined_solve(const Eigen::LDLT<Eigen::MatrixXd>& ldlt, const Eigen::MatrixXd& m,
                              const Eigen::MatrixXd& rhs) {
  Eigen::MatrixXd x = ldlt.solve(rhs);
  x += ldlt.solve(rhs - m * x);
  return x;
}

}  // namespace

Eigen::MatrixXd CellBasis::solve_mass(const Eigen::MatrixXd& rhs) const {
  return refined_solve(mass_ldlt, mass, rhs);
}

Eigen::MatrixXd GradientBasis::solve_mass(const Eigen::MatrixXd& rhs) const {
  return refined_solve(mass_ldlt, mass, rhs);
}

std::pair<int, int> monomial_exponents(int i) {
  int d = 0;
  while ((d + 1) * (d + 2) / 2 <= i) ++d;
  const int b = i - d * (d + 1) / 2;
  return {d - b, b};
}

Eigen::MatrixXd MonomialScaling::values(const std::vector<Vec2>& pts, int dim) const {
  Eigen::MatrixXd v(pts.size(), dim);
  for (size_t p = 0; p < pts.size(); ++p) {
    const double X = (pts[p].x - center.x) / scale;
    const double Y = (pts[p].y - center.y) / scale;
    for (int i = 0; i < dim; ++i) {
      const auto [a, b] = monomial_exponents(i);
      v(p, i) = std::pow(X, a) * std::pow(Y, b);
    }
  }
  return v;
}

void MonomialScaling::gradients(const std::vector<Vec2>& pts, int dim, Eigen::MatrixXd& dx,
                                Eigen::MatrixXd& dy) const {
  dx.resize(pts.size(), dim);
  dy.resize(pts.size(), dim);
  for (size_t p = 0; p < pts.size(); ++p) {
    const double X = (pts[p].x - center.x) / scale;
    const double Y = (pts[p].y - center.y) / scale;
    for (int i = 0; i < dim; ++i) {
      const auto [a, b] = monomial_exponents(i);
      dx(p, i) = a == 0 ? 0.0 : a * std::pow(X, a - 1) * std::pow(Y, b) / scale;
      dy(p, i) = b == 0 ? 0.0 : b * std::pow(X, a) * std::pow(Y, b - 1) / scale;
    }
  }
  return;
}

double MonomialScaling::value_at(const Vec2& p, int i) const {
  const auto [a, b] = monomial_exponents(i);
  return std::pow((p.x - center.x) / scale, a) * std::pow((p.y - center.y) / scale, b);
}

CellBasis build_cell_basis(int element, int k, const MomentTable& moments) {
  CellBasis basis;
  basis.element = element;
  basis.k = k;
  basis.scaling = {moments.center, moments.scale};
  const int n = pk_dim(k);
  basis.mass.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const auto [ai, bi] = monomial_exponents(i);
    for (int j = 0; j <= i; ++j) {
      const auto [aj, bj] = monomial_exponents(j);
      const double m = moments.at(ai + aj, bi + bj);
      basis.mass(i, j) = m;
      basis.mass(j, i) = m;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(basis.mass, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (!(lmin > 1e-13 * lmax))
    throw DegenerateElementError("cell mass matrix numerically singular");
  basis.cond = lmax / lmin;
  basis.mass_ldlt.compute(basis.mass);
  return basis;
}

Eigen::MatrixXd cell_grad_matrix(const CellBasis& basis, const MomentTable& moments) {
  const int n = basis.dim();
  const double inv2 = 1.0 / (basis.scaling.scale * basis.scaling.scale);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto [ai, bi] = monomial_exponents(i);
    for (int j = 0; j <= i; ++j) {
      const auto [aj, bj] = monomial_exponents(j);
      double v = 0.0;
      if (ai > 0 && aj > 0) v += ai * aj * moments.at(ai + aj - 2, bi + bj) * inv2;
      if (bi > 0 && bj > 0) v += bi * bj * moments.at(ai + aj, bi + bj - 2) * inv2;
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

EdgeTraceBasis build_edge_basis(const ParametricEdge& edge, int edge_index, int k,
                                const EdgeQuadrature& rule) {
  const double len = rule.arclength();
  if (!(len > 0.0)) throw DegenerateEdgeError("zero-length edge");

  EdgeTraceBasis basis;
  basis.edge = edge_index;
  basis.k = k;
  // edge-local scaling: center at the curve midpoint, scale = sampled diameter
  basis.scaling.center = edge.point(0.5);
  double diam = 0.0;
  std::vector<Vec2> samples(17);
  for (int i = 0; i < 17; ++i) samples[i] = edge.point(i / 16.0);
  for (int i = 0; i < 17; ++i)
    for (int j = i + 1; j < 17; ++j) diam = std::max(diam, distance(samples[i], samples[j]));
  if (!(diam > 0.0)) throw DegenerateEdgeError("edge has zero sampled diameter");
  basis.scaling.scale = diam;

  const int ngen = pk_dim(k);
  const Eigen::MatrixXd V = basis.scaling.values(rule.points, ngen);
  Eigen::MatrixXd gram(ngen, ngen);
  for (int i = 0; i < ngen; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (size_t q = 0; q < rule.weights.size(); ++q) s += rule.weights[q] * V(q, i) * V(q, j);
      gram(i, j) = s;
      gram(j, i) = s;
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const double lmax = es.eigenvalues().maxCoeff();
  std::vector<int> keep;
  for (int i = 0; i < ngen; ++i)
    if (es.eigenvalues()[i] >= 1e-10 * lmax) keep.push_back(i);
  basis.dim = static_cast<int>(keep.size());
  basis.coef.resize(ngen, basis.dim);
  // descending eigenvalue order, scaled to unit L2(e) norm
  for (int j = 0; j < basis.dim; ++j) {
    const int src = keep[basis.dim - 1 - j];
    basis.coef.col(j) = es.eigenvectors().col(src) / std::sqrt(es.eigenvalues()[src]);
  }
  return basis;
}

Eigen::MatrixXd EdgeTraceBasis::values(const std::vector<Vec2>& pts) const {
  return scaling.values(pts, coef.rows()) * coef;
}

GradientBasis build_gradient_basis(int element, int degree, const MomentTable& moments,
                                   const MonomialScaling& scaling) {
  GradientBasis basis;
  basis.element = element;
  basis.degree = degree;
  basis.scaling = scaling;
  const int n = pk_dim(degree);
  Eigen::MatrixXd scalar(n, n);
  for (int i = 0; i < n; ++i) {
    const auto [ai, bi] = monomial_exponents(i);
    for (int j = 0; j <= i; ++j) {
      const auto [aj, bj] = monomial_exponents(j);
      const double m = moments.at(ai + aj, bi + bj);
      scalar(i, j) = m;
      scalar(j, i) = m;
    }
  }
  basis.mass = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  basis.mass.topLeftCorner(n, n) = scalar;
  basis.mass.bottomRightCorner(n, n) = scalar;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scalar, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 1e-13 * es.eigenvalues().maxCoeff()))
    throw DegenerateElementError("gradient mass matrix numerically singular");
  basis.mass_ldlt.compute(basis.mass);
  return basis;
}

}  // namespace wg
