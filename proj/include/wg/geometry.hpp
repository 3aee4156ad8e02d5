#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "wg/errors.hpp"

namespace wg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

enum class EdgeKind { Segment, Arc, Poly };
enum class EdgeTag { Interior, Boundary, Interface };

/// One mesh edge: an injective Lipschitz curve on t in [0,1] joining two
/// vertices. Segments, circular arcs, and polynomial curves of degree <= 4
/// are supported.
struct ParametricEdge {
  EdgeKind kind = EdgeKind::Segment;
  EdgeTag tag = EdgeTag::Interior;
  int v0 = -1, v1 = -1;  // endpoint vertex indices

  // segment
  Vec2 p0, p1;
  // arc: gamma(t) = center + radius*(cos, sin)(angle0 + t*(angle1 - angle0))
  Vec2 center;
  double radius = 0.0, angle0 = 0.0, angle1 = 0.0;
  // poly: x(t) = sum cx[i] t^i, y(t) = sum cy[i] t^i, degree <= 4
  std::array<double, 5> cx{}, cy{};
  int degree = 0;

  Vec2 point(double t) const;
  Vec2 derivative(double t) const;  // d gamma / dt
  double curve_degree() const { return kind == EdgeKind::Segment ? 1 : (kind == EdgeKind::Poly ? degree : 4); }

  static ParametricEdge segment(int v0, int v1, Vec2 a, Vec2 b, EdgeTag tag = EdgeTag::Interior);
  static ParametricEdge arc(int v0, int v1, Vec2 center, double radius, double angle0, double angle1,
                            EdgeTag tag = EdgeTag::Interior);
  static ParametricEdge poly(int v0, int v1, const std::vector<double>& cx, const std::vector<double>& cy,
                             EdgeTag tag = EdgeTag::Interior);
};

/// Evaluate an edge at parameter t in [0,1]; t outside the interval is a domain error.
Vec2 edge_point(const ParametricEdge& e, double t);

/// Unit outward normal at parameter t for the element traversing the edge with
/// direction flag dir (+1: along increasing t, -1: reversed). Element loops are
/// counter-clockwise, so the outward normal is the traversal tangent rotated by
/// -90 degrees.
Vec2 edge_normal(const ParametricEdge& e, double t, int dir);

/// One element: a closed CCW loop of edge indices with per-edge direction flags.
struct ElementRef {
  std::vector<int> loop;
  std::vector<int> dirs;  // +1 / -1, same length as loop
  int region = 0;         // 1 or 2 for interface problems, 0 otherwise
};

struct CurvedPolygonMesh {
  std::vector<Vec2> vertices;
  std::vector<ParametricEdge> edges;
  std::vector<ElementRef> elements;

  int n_elements() const { return static_cast<int>(elements.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  // First/last vertex index of edge `e` as traversed with direction `dir`.
  int traversal_start(int e, int dir) const { return dir > 0 ? edges[e].v0 : edges[e].v1; }
  int traversal_end(int e, int dir) const { return dir > 0 ? edges[e].v1 : edges[e].v0; }

  double coordinate_scale() const;  // bounding-box diagonal
};

/// Shape data of one element: star center of B_D, rho_D, diameter, area.
struct ElementGeometry {
  Vec2 star_center;
  double rho = 0.0;   // inscribed-disc radius / h_D, in (0,1)
  double h = 0.0;     // diameter h_D
  double area = 0.0;  // |D|
};

/// Sampled closed boundary polyline of an element, in traversal order.
std::vector<Vec2> element_boundary_samples(const CurvedPolygonMesh& mesh, int element, int per_edge = 32);

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly);
double distance_to_polyline(const Vec2& p, const std::vector<Vec2>& poly);

/// Diameter, area (divergence theorem), and inscribed-disc data of one element.
/// The star center maximizes the radius of a disc inside the sampled boundary
/// over a 32x32 grid of the bounding box, refined once locally.
ElementGeometry element_metrics(const CurvedPolygonMesh& mesh, int element);

struct MeshViolation {
  std::string what;
  int element = -1;  // -1 when the finding is edge- or mesh-level
  int edge = -1;
};

struct MeshReport {
  std::vector<MeshViolation> violations;
  std::vector<ElementGeometry> metrics;  // empty slots for elements that failed
  double h = 0.0;                         // max h_D
  double min_rho = 0.0, max_rho = 0.0;
  bool accepted() const { return violations.empty(); }
};

/// Check every mesh invariant (loop closure, incidence counts, orientation,
/// self-intersection, interface alignment, per-edge regularity, star-shapedness)
/// and collect per-element metrics. Findings go into the report; nothing throws.
MeshReport validate_mesh(const CurvedPolygonMesh& mesh);

}  // namespace wg
