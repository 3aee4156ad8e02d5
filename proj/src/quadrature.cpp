#include "wg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace wg {

const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Newton iteration on Legendre P_n over [-1,1], then map to [0,1]
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0, p1, dp;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    p0 = 1.0;
    p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    r.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

double EdgeQuadrature::arclength() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

namespace {

EdgeQuadrature edge_rule_n(const ParametricEdge& edge, int count) {
  const GaussRule& g = gauss_rule(count);
  EdgeQuadrature q;
  q.t = g.nodes;
  q.w_param = g.weights;
  q.points.resize(count);
  q.deriv.resize(count);
  q.weights.resize(count);
  for (int i = 0; i < count; ++i) {
    q.points[i] = edge.point(g.nodes[i]);
    q.deriv[i] = edge.derivative(g.nodes[i]);
    const double speed = q.deriv[i].norm();
    if (!(speed > 0.0)) throw DegenerateParametrizationError("zero speed at quadrature node");
    q.weights[i] = g.weights[i] * speed;
  }
  return q;
}

}  // namespace

EdgeQuadrature edge_rule(const ParametricEdge& edge, int order) {
  if (order < 1) order = 1;
  const int count = (order + 1 + 1) / 2 + 2;  // ceil((order+1)/2) + 2
  return edge_rule_n(edge, count);
}

EdgeQuadrature edge_rule_with_count(const ParametricEdge& edge, int count) {
  return edge_rule_n(edge, std::max(1, count));
}

namespace {

// Contribution of one traversed edge to all moments a+b <= m:
//   dir * integral over t of X(t)^(a+1) Y(t)^b y'(t) dt,  X = (x-cx)/scale.
Eigen::VectorXd moment_edge_contribution(const ParametricEdge& edge, int dir, Vec2 center, double scale,
                                         int m, int count) {
  const EdgeQuadrature q = edge_rule_n(edge, count);
  const int nm = (m + 1) * (m + 2) / 2;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(nm);
  std::vector<double> xp(m + 2), yp(m + 1);
  for (size_t i = 0; i < q.t.size(); ++i) {
    const double X = (q.points[i].x - center.x) / scale;
    const double Y = (q.points[i].y - center.y) / scale;
    xp[0] = 1.0;
    for (int p = 1; p <= m + 1; ++p) xp[p] = xp[p - 1] * X;
    yp[0] = 1.0;
    for (int p = 1; p <= m; ++p) yp[p] = yp[p - 1] * Y;
    const double w = dir * q.w_param[i] * q.deriv[i].y;
    for (int d = 0; d <= m; ++d)
      for (int b = 0; b <= d; ++b) out[MomentTable::index(d - b, b)] += w * xp[d - b + 1] * yp[b];
  }
  return out;
}

}  // namespace

MomentTable monomial_moments(const CurvedPolygonMesh& mesh, int element, Vec2 center, double scale,
                             int max_degree) {
  const ElementRef& el = mesh.elements[element];
  const int m = max_degree;
  const int nm = (m + 1) * (m + 2) / 2;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(nm);

  for (size_t i = 0; i < el.loop.size(); ++i) {
    const ParametricEdge& edge = mesh.edges[el.loop[i]];
    const int dir = el.dirs[i];
    const int p = static_cast<int>(edge.curve_degree());
    // spec order: a+b+1 + deg*(a+b+2) at the worst a+b = m
    const int order = (m + 1) + p * (m + 2);
    int count = (order + 2) / 2 + 2;
    if (edge.kind == EdgeKind::Arc) {
      Eigen::VectorXd prev = moment_edge_contribution(edge, dir, center, scale, m, count);
      bool converged = false;
      for (int doubling = 0; doubling < 8; ++doubling) {
        count *= 2;
        Eigen::VectorXd next = moment_edge_contribution(edge, dir, center, scale, m, count);
        double worst = 0.0;
        for (int j = 0; j < nm; ++j)
          worst = std::max(worst, std::abs(next[j] - prev[j]) / std::max(1.0, std::abs(next[j])));
        prev = next;
        if (worst <= 1e-13) {
          converged = true;
          break;
        }
      }
      if (!converged) throw QuadratureConvergenceError("arc moment quadrature did not stagnate");
      acc += prev;
    } else {
      acc += moment_edge_contribution(edge, dir, center, scale, m, count);
    }
  }

  MomentTable table;
  table.element = element;
  table.max_degree = m;
  table.center = center;
  table.scale = scale;
  table.values.resize(nm);
  // integral of X^a Y^b dA = scale/(a+1) * contour integral of X^(a+1) Y^b n_x ds
  for (int d = 0; d <= m; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      table.values[MomentTable::index(a, b)] = scale / (a + 1.0) * acc[MomentTable::index(a, b)];
    }
  return table;
}

double element_area(const CurvedPolygonMesh& mesh, int element) {
  return monomial_moments(mesh, element, Vec2{0.0, 0.0}, 1.0, 0).at(0, 0);
}

double InteriorQuadrature::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double InteriorQuadrature::integrate(const std::function<double(Vec2)>& f) const {
  double s = 0.0;
  for (size_t i = 0; i < points.size(); ++i) s += weights[i] * f(points[i]);
  return s;
}

InteriorQuadrature interior_rule(const CurvedPolygonMesh& mesh, int element, Vec2 star_center, int order) {
  if (order < 1) order = 1;
  const ElementRef& el = mesh.elements[element];
  InteriorQuadrature q;
  const GaussRule& gs = gauss_rule(order + 1);  // the blending map carries an extra factor s

  for (size_t i = 0; i < el.loop.size(); ++i) {
    const ParametricEdge& edge = mesh.edges[el.loop[i]];
    const int dir = el.dirs[i];
    const int p = static_cast<int>(edge.curve_degree());
    int nt = (order * p + 2 * p) / 2 + 3;
    if (edge.kind == EdgeKind::Arc) nt = std::max(nt, 2 * order + 12);
    const GaussRule& gt = gauss_rule(nt);

    for (int a = 0; a < static_cast<int>(gs.nodes.size()); ++a) {
      const double s = gs.nodes[a];
      for (int b = 0; b < nt; ++b) {
        const double u = gt.nodes[b];
        const double t = dir > 0 ? u : 1.0 - u;
        const Vec2 gp = edge.point(t);
        const Vec2 gd = edge.derivative(t) * static_cast<double>(dir);
        const double jac = s * (gp - star_center).cross(gd);
        if (!(jac > 0.0))
          throw FanDegeneracyError("nonpositive blending-map Jacobian; element too distorted");
        q.points.push_back(star_center + s * (gp - star_center));
        q.weights.push_back(gs.weights[a] * gt.weights[b] * jac);
      }
    }
  }
  return q;
}

}  // namespace wg
