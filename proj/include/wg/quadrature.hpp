#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "wg/geometry.hpp"

namespace wg {

/// Gauss-Legendre nodes/weights on [0,1], cached per node count.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_rule(int n);

/// Quadrature along one edge. `w_param` are plain Gauss weights in the curve
/// parameter (dt measure); `weights` carry the arclength measure
/// w_param * |gamma'(t)|. `deriv` keeps gamma'(t) so flux integrals
/// integral of v (q . n) ds = integral of v (q . (y', -x')) dt stay polynomial
/// on polynomial curves.
struct EdgeQuadrature {
  std::vector<double> t;
  std::vector<Vec2> points;
  std::vector<Vec2> deriv;
  std::vector<double> w_param;
  std::vector<double> weights;  // arclength measure

  double arclength() const;
};

/// Gauss rule of count ceil((order+1)/2)+2 mapped through the edge
/// parametrization; exact for integrands polynomial of degree `order` in t
/// (times the speed for the arclength weights).
EdgeQuadrature edge_rule(const ParametricEdge& edge, int order);

/// Same with an explicit node count (arc rules want extra headroom).
EdgeQuadrature edge_rule_with_count(const ParametricEdge& edge, int count);

/// Monomial moments over one element: values[(a,b)] = integral over D of
/// ((x-cx)/scale)^a ((y-cy)/scale)^b dA for all a+b <= max_degree, computed by
/// divergence-theorem reduction to edge integrals. Exact for segment and
/// polynomial edges; circular arcs use order doubling to 1e-13 stagnation.
struct MomentTable {
  int element = -1;
  int max_degree = 0;
  Vec2 center;
  double scale = 1.0;
  Eigen::VectorXd values;

  static int index(int a, int b) { return (a + b) * (a + b + 1) / 2 + b; }
  double at(int a, int b) const { return values[index(a, b)]; }
};

MomentTable monomial_moments(const CurvedPolygonMesh& mesh, int element, Vec2 center, double scale,
                             int max_degree);

/// Element area = raw moment (0,0).
double element_area(const CurvedPolygonMesh& mesh, int element);

/// Interior rule: fan of curved triangles with apex at the star center, one per
/// boundary edge, each mapped by the blending map (s,t) -> c + s*(gamma(t)-c)
/// with a tensor Gauss rule of `order` points per direction (t-direction node
/// count scaled by the curve degree). Exact for polynomials of total degree
/// `order` on straight/polynomial edges.
struct InteriorQuadrature {
  std::vector<Vec2> points;
  std::vector<double> weights;

  double total_weight() const;
  double integrate(const std::function<double(Vec2)>& f) const;
};

InteriorQuadrature interior_rule(const CurvedPolygonMesh& mesh, int element, Vec2 star_center, int order);

}  // namespace wg
