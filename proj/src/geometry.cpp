#include "wg/geometry.hpp"

#include <algorithm>
#include <limits>

#include "wg/quadrature.hpp"

namespace wg {

Vec2 ParametricEdge::point(double t) const {
  switch (kind) {
    case EdgeKind::Segment:
      return p0 + t * (p1 - p0);
    case EdgeKind::Arc: {
      const double a = angle0 + t * (angle1 - angle0);
      return center + radius * Vec2{std::cos(a), std::sin(a)};
    }
    case EdgeKind::Poly: {
      double px = 0.0, py = 0.0, tp = 1.0;
      for (int i = 0; i <= degree; ++i) {
        px += cx[i] * tp;
        py += cy[i] * tp;
        tp *= t;
      }
      return {px, py};
    }
  }
  return {};
}

Vec2 ParametricEdge::derivative(double t) const {
  switch (kind) {
    case EdgeKind::Segment:
      return p1 - p0;
    case EdgeKind::Arc: {
      const double da = angle1 - angle0;
      const double a = angle0 + t * da;
      return radius * da * Vec2{-std::sin(a), std::cos(a)};
    }
    case EdgeKind::Poly: {
      double px = 0.0, py = 0.0, tp = 1.0;
      for (int i = 1; i <= degree; ++i) {
        px += i * cx[i] * tp;
        py += i * cy[i] * tp;
        tp *= t;
      }
      return {px, py};
    }
  }
  return {};
}

ParametricEdge ParametricEdge::segment(int v0, int v1, Vec2 a, Vec2 b, EdgeTag tag) {
  ParametricEdge e;
  e.kind = EdgeKind::Segment;
  e.v0 = v0;
  e.v1 = v1;
  e.p0 = a;
  e.p1 = b;
  e.tag = tag;
  return e;
}

ParametricEdge ParametricEdge::arc(int v0, int v1, Vec2 center, double radius, double angle0, double angle1,
                                   EdgeTag tag) {
  ParametricEdge e;
  e.kind = EdgeKind::Arc;
  e.v0 = v0;
  e.v1 = v1;
  e.center = center;
  e.radius = radius;
  e.angle0 = angle0;
  e.angle1 = angle1;
  e.tag = tag;
  return e;
}

ParametricEdge ParametricEdge::poly(int v0, int v1, const std::vector<double>& cx, const std::vector<double>& cy,
                                    EdgeTag tag) {
  if (cx.empty() || cy.empty() || cx.size() > 5 || cy.size() > 5)
    throw FileFormatError("poly edge needs 1..5 coefficients per component");
  ParametricEdge e;
  e.kind = EdgeKind::Poly;
  e.v0 = v0;
  e.v1 = v1;
  e.degree = static_cast<int>(std::max(cx.size(), cy.size())) - 1;
  for (size_t i = 0; i < cx.size(); ++i) e.cx[i] = cx[i];
  for (size_t i = 0; i < cy.size(); ++i) e.cy[i] = cy[i];
  e.tag = tag;
  return e;
}

Vec2 edge_point(const ParametricEdge& e, double t) {
  if (t < 0.0 || t > 1.0) throw std::domain_error("edge parameter outside [0,1]");
  return e.point(t);
}

Vec2 edge_normal(const ParametricEdge& e, double t, int dir) {
  Vec2 d = e.derivative(t);
  const double s = d.norm();
  if (!(s > 0.0) || !std::isfinite(s))
    throw DegenerateParametrizationError("zero-speed point on edge parametrization");
  if (dir < 0) d = d * -1.0;
  // rotate tangent by -90 degrees: (x, y) -> (y, -x)
  return Vec2{d.y, -d.x} / s;
}

double CurvedPolygonMesh::coordinate_scale() const {
  if (vertices.empty()) return 1.0;
  double xmin = vertices[0].x, xmax = xmin, ymin = vertices[0].y, ymax = ymin;
  for (const auto& v : vertices) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const double diag = std::hypot(xmax - xmin, ymax - ymin);
  return diag > 0.0 ? diag : 1.0;
}

std::vector<Vec2> element_boundary_samples(const CurvedPolygonMesh& mesh, int element, int per_edge) {
  const ElementRef& el = mesh.elements[element];
  std::vector<Vec2> pts;
  pts.reserve(el.loop.size() * per_edge);
  for (size_t i = 0; i < el.loop.size(); ++i) {
    const ParametricEdge& e = mesh.edges[el.loop[i]];
    const int dir = el.dirs[i];
    for (int s = 0; s < per_edge; ++s) {  // endpoint of each edge == start of next
      const double u = static_cast<double>(s) / per_edge;
      const double t = dir > 0 ? u : 1.0 - u;
      pts.push_back(e.point(t));
    }
  }
  return pts;
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
  bool inside = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[j];
    const Vec2& b = poly[i];
    if ((b.y > p.y) != (a.y > p.y)) {
      const double xint = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

double distance_to_polyline(const Vec2& p, const std::vector<Vec2>& poly) {
  double best = std::numeric_limits<double>::infinity();
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[j];
    const Vec2& b = poly[i];
    const Vec2 ab = b - a;
    const double len2 = ab.dot(ab);
    double u = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    best = std::min(best, distance(p, a + u * ab));
  }
  return best;
}

namespace {

struct BBox {
  double xmin, xmax, ymin, ymax;
};

BBox bbox_of(const std::vector<Vec2>& pts) {
  BBox b{pts[0].x, pts[0].x, pts[0].y, pts[0].y};
  for (const auto& p : pts) {
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

// Largest disc centered inside the sampled boundary, over a grid of candidates.
std::pair<Vec2, double> inscribed_disc(const std::vector<Vec2>& poly, const BBox& box) {
  Vec2 best_c;
  double best_r = -1.0;
  const int n = 32;
  const double dx = (box.xmax - box.xmin) / n;
  const double dy = (box.ymax - box.ymin) / n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 c{box.xmin + (i + 0.5) * dx, box.ymin + (j + 0.5) * dy};
      if (!point_in_polygon(c, poly)) continue;
      const double r = distance_to_polyline(c, poly);
      if (r > best_r) {
        best_r = r;
        best_c = c;
      }
    }
  }
  if (best_r <= 0.0) return {best_c, -1.0};
  // one local refinement pass around the best coarse candidate
  const int m = 16;
  const double rx = dx, ry = dy;
  Vec2 c0 = best_c;
  for (int i = -m; i <= m; ++i) {
    for (int j = -m; j <= m; ++j) {
      const Vec2 c{c0.x + i * rx / m, c0.y + j * ry / m};
      if (!point_in_polygon(c, poly)) continue;
      const double r = distance_to_polyline(c, poly);
      if (r > best_r) {
        best_r = r;
        best_c = c;
      }
    }
  }
  return {best_c, best_r};
}

}  // namespace

ElementGeometry element_metrics(const CurvedPolygonMesh& mesh, int element) {
  const std::vector<Vec2> samples = element_boundary_samples(mesh, element, 32);
  if (samples.size() < 3) throw NotStarShapedError("element has too few boundary samples");

  ElementGeometry g;
  double h2 = 0.0;
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j) {
      const Vec2 d = samples[i] - samples[j];
      h2 = std::max(h2, d.dot(d));
    }
  g.h = std::sqrt(h2);

  g.area = element_area(mesh, element);

  const auto [center, radius] = inscribed_disc(samples, bbox_of(samples));
  if (radius <= 0.0) throw NotStarShapedError("no interior candidate admits a positive inscribed radius");
  g.star_center = center;
  g.rho = radius / g.h;
  return g;
}

namespace {

// Proper (transversal) intersection only; collinear and touching pairs do not
// count. The tolerance keeps roundoff on sampled straight edges from
// reporting phantom crossings.
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return (q - p).cross(r - p);
  };
  const double o1 = orient(a, b, c), o2 = orient(a, b, d);
  const double o3 = orient(c, d, a), o4 = orient(c, d, b);
  const double eps_ab = 1e-10 * (b - a).norm() * std::max((c - a).norm(), (d - a).norm());
  const double eps_cd = 1e-10 * (d - c).norm() * std::max((a - c).norm(), (b - c).norm());
  const bool straddle_ab = (o1 > eps_ab && o2 < -eps_ab) || (o1 < -eps_ab && o2 > eps_ab);
  const bool straddle_cd = (o3 > eps_cd && o4 < -eps_cd) || (o3 < -eps_cd && o4 > eps_cd);
  return straddle_ab && straddle_cd;
}

}  // namespace

MeshReport validate_mesh(const CurvedPolygonMesh& mesh) {
  MeshReport rep;
  const double scale = mesh.coordinate_scale();
  const double tol = 1e-12 * scale;
  const int nv = static_cast<int>(mesh.vertices.size());

  const auto add = [&rep](std::string what, int element = -1, int edge = -1) {
    rep.violations.push_back({std::move(what), element, edge});
  };

  // per-edge checks: index sanity, endpoint-vertex agreement, injectivity, speed
  for (int ei = 0; ei < mesh.n_edges(); ++ei) {
    const ParametricEdge& e = mesh.edges[ei];
    if (e.v0 < 0 || e.v0 >= nv || e.v1 < 0 || e.v1 >= nv) {
      add("edge references vertex out of range", -1, ei);
      continue;
    }
    if (distance(e.point(0.0), mesh.vertices[e.v0]) > tol ||
        distance(e.point(1.0), mesh.vertices[e.v1]) > tol)
      add("edge endpoints do not match referenced vertices", -1, ei);

    constexpr int ns = 64;
    std::array<Vec2, ns> s;
    bool degenerate_speed = false;
    for (int i = 0; i < ns; ++i) {
      const double t = static_cast<double>(i) / (ns - 1);
      s[i] = e.point(t);
      if (e.derivative(t).norm() <= 1e-14 * std::max(scale, 1.0)) degenerate_speed = true;
    }
    if (degenerate_speed) add("edge parametrization has a zero-speed sample", -1, ei);
    bool repeated = false;
    for (int i = 0; i < ns && !repeated; ++i)
      for (int j = i + 1; j < ns; ++j) {
        if (i == 0 && j == ns - 1) continue;  // endpoint closure allowed
        if (distance(s[i], s[j]) <= tol) {
          repeated = true;
          break;
        }
      }
    if (repeated) add("edge parametrization is not injective", -1, ei);
  }

  // incidence: every interior/interface edge belongs to two elements with
  // opposite orientation, every boundary edge to exactly one
  std::vector<std::vector<std::pair<int, int>>> edge_refs(mesh.n_edges());  // (element, dir)
  for (int ki = 0; ki < mesh.n_elements(); ++ki) {
    const ElementRef& el = mesh.elements[ki];
    if (el.loop.size() != el.dirs.size() || el.loop.size() < 2) {
      add("element loop/dirs malformed", ki);
      continue;
    }
    for (size_t i = 0; i < el.loop.size(); ++i) {
      if (el.loop[i] < 0 || el.loop[i] >= mesh.n_edges()) {
        add("element references edge out of range", ki);
        continue;
      }
      edge_refs[el.loop[i]].push_back({ki, el.dirs[i]});
    }
  }
  for (int ei = 0; ei < mesh.n_edges(); ++ei) {
    const auto& refs = edge_refs[ei];
    const EdgeTag tag = mesh.edges[ei].tag;
    if (tag == EdgeTag::Boundary) {
      if (refs.size() != 1) add("boundary edge not referenced by exactly one element", -1, ei);
    } else {
      if (refs.size() != 2) {
        add(tag == EdgeTag::Interface ? "interface edge not referenced by exactly two elements"
                                      : "interior edge not referenced by exactly two elements",
            -1, ei);
      } else if (refs[0].second == refs[1].second) {
        add("edge traversed with the same orientation by both elements", -1, ei);
      }
    }
    if (tag == EdgeTag::Interface && refs.size() == 2) {
      const int r0 = mesh.elements[refs[0].first].region;
      const int r1 = mesh.elements[refs[1].first].region;
      if (r0 == r1) add("interface edge does not separate different region labels", -1, ei);
    }
    if (tag == EdgeTag::Interior && refs.size() == 2) {
      const int r0 = mesh.elements[refs[0].first].region;
      const int r1 = mesh.elements[refs[1].first].region;
      if (r0 != r1) add("interior edge separates different regions but is not interface-tagged", -1, ei);
    }
  }

  // per-element checks: loop closure, self-intersection, orientation, metrics
  rep.metrics.assign(mesh.n_elements(), ElementGeometry{});
  rep.min_rho = std::numeric_limits<double>::infinity();
  rep.max_rho = 0.0;
  for (int ki = 0; ki < mesh.n_elements(); ++ki) {
    const ElementRef& el = mesh.elements[ki];
    if (el.loop.size() != el.dirs.size() || el.loop.size() < 2) continue;
    bool indices_ok = true;
    for (int e : el.loop) indices_ok = indices_ok && e >= 0 && e < mesh.n_edges();
    if (!indices_ok) continue;

    bool closed = true;
    for (size_t i = 0; i < el.loop.size(); ++i) {
      const size_t j = (i + 1) % el.loop.size();
      const int end_v = mesh.traversal_end(el.loop[i], el.dirs[i]);
      const int start_v = mesh.traversal_start(el.loop[j], el.dirs[j]);
      if (end_v != start_v) closed = false;
      const Vec2 pe = el.dirs[i] > 0 ? mesh.edges[el.loop[i]].point(1.0) : mesh.edges[el.loop[i]].point(0.0);
      const Vec2 ps = el.dirs[j] > 0 ? mesh.edges[el.loop[j]].point(0.0) : mesh.edges[el.loop[j]].point(1.0);
      if (distance(pe, ps) > tol) closed = false;
    }
    if (!closed) {
      add("element loop is not closed", ki);
      continue;
    }

    const std::vector<Vec2> poly = element_boundary_samples(mesh, ki, 16);
    const size_t n = poly.size();
    bool selfx = false;
    for (size_t i = 0; i < n && !selfx; ++i) {
      for (size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;  // adjacent through closure
        if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) {
          selfx = true;
          break;
        }
      }
    }
    if (selfx) {
      add("element boundary polyline self-intersects", ki);
      continue;
    }

    try {
      ElementGeometry g = element_metrics(mesh, ki);
      if (!(g.area > 0.0)) add("element has nonpositive signed area (loop not counter-clockwise?)", ki);
      if (!(g.rho > 0.0 && g.rho < 1.0)) add("element rho outside (0,1)", ki);
      // sampled containment of the inscribed disc and of D in the h_D disc
      const std::vector<Vec2> fine = element_boundary_samples(mesh, ki, 32);
      const double r_in = g.rho * g.h * (1.0 - 1e-6);
      bool disc_ok = point_in_polygon(g.star_center, fine) && distance_to_polyline(g.star_center, fine) >= r_in;
      if (!disc_ok) add("inscribed disc escapes the element boundary", ki);
      for (const Vec2& p : fine)
        if (distance(p, g.star_center) > g.h * (1.0 + 1e-9)) {
          add("element not contained in the diameter disc about its star center", ki);
          break;
        }
      rep.metrics[ki] = g;
      rep.h = std::max(rep.h, g.h);
      rep.min_rho = std::min(rep.min_rho, g.rho);
      rep.max_rho = std::max(rep.max_rho, g.rho);
    } catch (const Error& err) {
      add(std::string("metrics failed: ") + err.what(), ki);
    }
  }
  if (!std::isfinite(rep.min_rho)) rep.min_rho = 0.0;
  return rep;
}

}  // namespace wg
