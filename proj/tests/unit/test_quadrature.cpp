#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "meshgen.hpp"
#include "oracles.hpp"
#include "wg/quadrature.hpp"

using namespace wg;
using namespace wg::testsupport;

TEST_CASE("edge_rule: length and linear moment on a segment") {
  const auto seg = ParametricEdge::segment(0, 1, {0, 0}, {1, 0});
  for (int order : {1, 3, 8}) {
    const EdgeQuadrature q = edge_rule(seg, order);
    CHECK(q.arclength() == doctest::Approx(1.0).epsilon(1e-14));
    double xmom = 0.0;
    for (size_t i = 0; i < q.points.size(); ++i) xmom += q.weights[i] * q.points[i].x;
    CHECK(xmom == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("edge_rule: quarter arc length is pi/2") {
  const auto arc = ParametricEdge::arc(0, 1, {0, 0}, 1.0, 0.0, M_PI_2);
  const EdgeQuadrature q = edge_rule(arc, 6);
  CHECK(std::abs(q.arclength() - M_PI_2) < 1e-12);
}

TEST_CASE("edge_rule: weights nonnegative, arclength matches a reference") {
  const auto poly = ParametricEdge::poly(0, 1, {0.0, 1.0}, {0.0, 0.1, -0.1});
  const EdgeQuadrature q = edge_rule(poly, 16);
  for (double w : q.weights) CHECK(w >= 0.0);
  CHECK(q.arclength() == doctest::Approx(arclength_reference(poly)).epsilon(1e-12));
}

TEST_CASE("edge_rule: random-polynomial exactness against the parameter integral") {
  const auto arc = ParametricEdge::arc(0, 1, {0.5, -0.25}, 2.0, 0.3, 1.1);
  uint64_t state = 7;
  for (int order : {3, 5, 9}) {
    const EdgeQuadrature q = edge_rule(arc, order);
    std::vector<double> coef(order + 1);
    for (double& c : coef) c = 2.0 * uniform01(state) - 1.0;
    // quadrature of p(t)*speed against the analytic parameter integral of p
    // times the (constant) arc speed
    double quad = 0.0;
    for (size_t i = 0; i < q.t.size(); ++i) {
      double p = 0.0, tp = 1.0;
      for (double c : coef) {
        p += c * tp;
        tp *= q.t[i];
      }
      quad += q.weights[i] * p;
    }
    double exact = 0.0;
    for (size_t d = 0; d < coef.size(); ++d) exact += coef[d] / (d + 1.0);
    exact *= 2.0 * (1.1 - 0.3);  // speed = radius * |dtheta|
    CHECK(quad == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("monomial_moments: unit square about the origin") {
  const auto mesh = unit_square_mesh();
  const MomentTable t = monomial_moments(mesh, 0, {0, 0}, 1.0, 4);
  CHECK(t.at(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(t.at(1, 0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(t.at(1, 1) == doctest::Approx(0.25).epsilon(1e-13));
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      CHECK(t.at(a, b) == doctest::Approx(square_moment(a, b)).epsilon(1e-13));
}

TEST_CASE("monomial_moments: reference triangle") {
  const auto mesh = triangle_mesh();
  const MomentTable t = monomial_moments(mesh, 0, {0, 0}, 1.0, 3);
  CHECK(t.at(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t.at(1, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      CHECK(t.at(a, b) == doctest::Approx(triangle_moment(a, b)).epsilon(1e-13));
}

TEST_CASE("monomial_moments: unit disc against polar closed forms") {
  const auto mesh = full_disc_mesh();
  const MomentTable t = monomial_moments(mesh, 0, {0, 0}, 1.0, 6);
  CHECK(std::abs(t.at(0, 0) - M_PI) < 1e-10);
  CHECK(std::abs(t.at(2, 0) - M_PI / 4.0) < 1e-10);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b)
      CHECK(t.at(a, b) == doctest::Approx(disc_moment(a, b)).epsilon(1e-10));
}

TEST_CASE("monomial_moments: square symmetry about the centroid") {
  const auto mesh = unit_square_mesh();
  const MomentTable t = monomial_moments(mesh, 0, {0.5, 0.5}, std::sqrt(2.0), 5);
  CHECK(t.at(0, 0) == doctest::Approx(1.0).epsilon(1e-13));  // area is scaling-free
  // odd moments vanish, and the square's x<->y symmetry swaps indices
  CHECK(std::abs(t.at(1, 0)) < 1e-15);
  CHECK(std::abs(t.at(0, 1)) < 1e-15);
  CHECK(std::abs(t.at(3, 1)) < 1e-14);
  CHECK(t.at(2, 0) == doctest::Approx(t.at(0, 2)).epsilon(1e-13));
  CHECK(t.at(4, 0) == doctest::Approx(t.at(0, 4)).epsilon(1e-13));
}

TEST_CASE("moments on the curved-top square match the analytic bump integrals") {
  // top edge y = 1 + c x(1-x) (x runs 1 -> 0 along the loop); area = 1 + c/6
  const double c = 0.3;
  const auto mesh = poly_edge_square(c);
  const MomentTable t = monomial_moments(mesh, 0, {0, 0}, 1.0, 2);
  CHECK(t.at(0, 0) == doctest::Approx(1.0 + c / 6.0).epsilon(1e-13));
  // integral of x: 1/2 + integral x*c*x(1-x) = 1/2 + c(1/3 - 1/4)
  CHECK(t.at(1, 0) == doctest::Approx(0.5 + c * (1.0 / 3.0 - 1.0 / 4.0)).epsilon(1e-13));
  // integral of y: 1/2 + integral over the bump strip of y dy = 1/2 + int (B^2-1)/2, B = 1+cx(1-x)
  const double ybump = 0.5 + (c / 6.0 + c * c / 60.0);
  CHECK(t.at(0, 1) == doctest::Approx(ybump).epsilon(1e-13));
}

TEST_CASE("interior_rule: unit square weights and separable integral") {
  const auto mesh = unit_square_mesh();
  const Vec2 center{0.5, 0.5};
  const InteriorQuadrature q2 = interior_rule(mesh, 0, center, 2);
  CHECK(q2.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
  const InteriorQuadrature q4 = interior_rule(mesh, 0, center, 4);
  const double v = q4.integrate([](Vec2 p) { return p.x * p.x * p.y * p.y; });
  CHECK(v == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  for (double w : q4.weights) CHECK(w > 0.0);
}

TEST_CASE("interior_rule: unit disc, integral of 1-x^2-y^2 = pi/2") {
  const auto mesh = full_disc_mesh();
  const InteriorQuadrature q = interior_rule(mesh, 0, {0, 0}, 8);
  CHECK(q.total_weight() == doctest::Approx(M_PI).epsilon(1e-10));
  const double v = q.integrate([](Vec2 p) { return 1.0 - p.x * p.x - p.y * p.y; });
  CHECK(std::abs(v - M_PI_2) < 1e-8);
}

TEST_CASE("fan rule with an apex outside the element is rejected") {
  const auto mesh = unit_square_mesh();
  CHECK_THROWS_AS(interior_rule(mesh, 0, {5.0, 5.0}, 4), FanDegeneracyError);
}

TEST_CASE("moment/fan cross-check on mixed element shapes") {
  for (const auto& mesh : {distorted_quad_mesh(3), disc_sector_mesh(8), poly_edge_square()}) {
    for (int e = 0; e < mesh.n_elements(); ++e) {
      const ElementGeometry g = element_metrics(mesh, e);
      const int m = 6;  // 2k+2 at k=2
      const MomentTable t = monomial_moments(mesh, e, g.star_center, g.h, m);
      const InteriorQuadrature fan = interior_rule(mesh, e, g.star_center, m + 2);
      for (int a = 0; a <= m; ++a)
        for (int b = 0; a + b <= m; ++b) {
          const double via_fan = fan.integrate([&](Vec2 p) {
            return std::pow((p.x - g.star_center.x) / g.h, a) * std::pow((p.y - g.star_center.y) / g.h, b);
          });
          CHECK(std::abs(via_fan - t.at(a, b)) <= 1e-9 * std::max(1.0, std::abs(t.at(a, b))));
        }
      CHECK(t.at(0, 0) > 0.0);  // CCW orientation
    }
  }
}
