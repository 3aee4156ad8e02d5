#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "meshgen.hpp"
#include "oracles.hpp"
#include "wg/analysis.hpp"

using namespace wg;
using namespace wg::testsupport;

namespace {

ProblemSpec poisson_spec() {
  ProblemSpec s;
  s.kind = ProblemSpec::Kind::Poisson;
  return s;
}

// full coefficient vector of the weak interpolant of an analytic function
Eigen::VectorXd interp(const WeakSpace& s, const std::function<double(Vec2)>& u) {
  return interpolate(s, u);
}

}  // namespace

TEST_CASE("dof counts: one square, two squares, empty mesh") {
  {
    const WeakSpace s = build_weak_space(unit_square_mesh(), 1);
    CHECK(s.dofs.n_total == 11);  // 3 cell + 4 edges x 2
    CHECK(s.dofs.n_free == 3);    // all edge dofs constrained
  }
  {
    const WeakSpace s = build_weak_space(two_squares_mesh(), 1);
    CHECK(s.dofs.n_total == 20);  // 6 cell + 7 edges x 2
    CHECK(s.dofs.n_free == 8);    // 6 cell + shared edge
  }
  {
    const CurvedPolygonMesh empty;
    const DofMap d = build_dof_map(empty, 1, {});
    CHECK(d.n_total == 0);
    CHECK(d.n_free == 0);
  }
}

TEST_CASE("cell dofs are never constrained; boundary edge dofs always are") {
  const WeakSpace s = build_weak_space(distorted_quad_mesh(3), 2);
  for (int e = 0; e < s.mesh.n_elements(); ++e)
    for (int i = 0; i < s.dofs.cell_dim; ++i)
      CHECK_FALSE(s.dofs.constrained[s.dofs.cell_offset[e] + i]);
  for (int e = 0; e < s.mesh.n_edges(); ++e) {
    const bool expect = s.mesh.edges[e].tag == EdgeTag::Boundary;
    for (int j = 0; j < s.dofs.edge_dim[e]; ++j)
      CHECK(static_cast<bool>(s.dofs.constrained[s.dofs.edge_offset[e] + j]) == expect);
  }
  // offsets partition [0, n_total) without gaps
  int covered = 0;
  for (int e = 0; e < s.mesh.n_elements(); ++e) covered += s.dofs.cell_dim;
  for (int e = 0; e < s.mesh.n_edges(); ++e) covered += s.dofs.edge_dim[e];
  CHECK(covered == s.dofs.n_total);
}

TEST_CASE("a_h of the constant weak function vanishes") {
  const WeakSpace s = build_weak_space(distorted_quad_mesh(3), 2);
  const AssembledForms forms = assemble_forms(s, poisson_spec());
  const Eigen::VectorXd ones = interp(s, [](Vec2) { return 1.0; });
  CHECK(std::abs(ones.dot(forms.stiffness.apply(ones))) < 1e-12);
  CHECK(std::abs(ones.dot(forms.stabilization.apply(ones))) < 1e-12);
  CHECK(forms.combined.apply(ones).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("a_h(u,u) = 1 for u = (x, trace x) on the unit square") {
  const WeakSpace s = build_weak_space(unit_square_mesh(), 1);
  const AssembledForms forms = assemble_forms(s, poisson_spec());
  const Eigen::VectorXd u = interp(s, [](Vec2 p) { return p.x; });
  // grad_w u = (1,0) exactly, so a_h(u,u) = |D| = 1 and s_h(u,u) = 0
  CHECK(u.dot(forms.stiffness.apply(u)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(u.dot(forms.stabilization.apply(u))) < 1e-11);
}

TEST_CASE("interface assembly with beta1 = beta2 = 1 reproduces the Poisson matrix") {
  const auto mesh = two_squares_interface(false);
  const WeakSpace s = build_weak_space(mesh, 2);
  ProblemSpec iface;
  iface.kind = ProblemSpec::Kind::Interface;
  iface.beta1 = 1.0;
  iface.beta2 = 1.0;
  const auto a = assemble_stiffness(s, poisson_spec());
  const auto b = assemble_stiffness(s, iface);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].row == b[i].row);
    CHECK(a[i].col == b[i].col);
    CHECK(a[i].value == doctest::Approx(b[i].value).epsilon(1e-14));
  }
}

TEST_CASE("stabilization of a degree-k polynomial weak function vanishes") {
  const auto linear = [](Vec2 p) { return 0.5 * p.x - 0.3 * p.y + 2.0; };
  const auto quadratic = [](Vec2 p) { return p.x * p.y + 0.5 * p.x - 2.0; };
  {
    const WeakSpace sq = build_weak_space(distorted_quad_mesh(3), 1);
    const Eigen::VectorXd v = interp(sq, linear);
    const AssembledForms forms = assemble_forms(sq, poisson_spec());
    CHECK(std::abs(v.dot(forms.stabilization.apply(v))) < 1e-11);
  }
  {
    const WeakSpace sq = build_weak_space(distorted_quad_mesh(3), 2);
    const Eigen::VectorXd v = interp(sq, quadratic);
    const AssembledForms forms = assemble_forms(sq, poisson_spec());
    CHECK(std::abs(v.dot(forms.stabilization.apply(v))) < 1e-11);
  }
  // curved edges within 1e-10 after trace-space projection
  const WeakSpace disc = build_weak_space(disc_sector_mesh(8), 2);
  const Eigen::VectorXd v = interp(disc, quadratic);
  const AssembledForms forms = assemble_forms(disc, poisson_spec());
  CHECK(std::abs(v.dot(forms.stabilization.apply(v))) < 1e-10);
}

TEST_CASE("stabilization of a pure edge bump: s_h(v,v) = |e| / h_D") {
  const WeakSpace s = build_weak_space(unit_square_mesh(), 1);
  const AssembledForms forms = assemble_forms(s, poisson_spec());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(s.dofs.n_total);
  // v_b = 1 on the bottom edge only, v_0 = 0
  const Eigen::VectorXd d =
      project_edge(s.edge_bases[0], s.edge_rules[0], [](Vec2) { return 1.0; });
  for (int j = 0; j < s.dofs.edge_dim[0]; ++j) v[s.dofs.edge_offset[0] + j] = d[j];
  CHECK(v.dot(forms.stabilization.apply(v)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("stabilization is similarity-invariant") {
  // halving the element doubles h_D^{-1} and halves |e|
  CurvedPolygonMesh half = unit_square_mesh();
  for (auto& p : half.vertices) p = 0.5 * p;
  for (auto& e : half.edges) {
    e.p0 = 0.5 * e.p0;
    e.p1 = 0.5 * e.p1;
  }
  for (const auto& mesh : {unit_square_mesh(), half}) {
    const WeakSpace s = build_weak_space(mesh, 1);
    const AssembledForms forms = assemble_forms(s, poisson_spec());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(s.dofs.n_total);
    const Eigen::VectorXd d =
        project_edge(s.edge_bases[0], s.edge_rules[0], [](Vec2) { return 1.0; });
    for (int j = 0; j < s.dofs.edge_dim[0]; ++j) v[s.dofs.edge_offset[0] + j] = d[j];
    CHECK(v.dot(forms.stabilization.apply(v)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("load vector: zero data, unit source, interface line integral") {
  const auto mesh = two_squares_interface(false);
  const WeakSpace s = build_weak_space(mesh, 1);
  ProblemSpec spec;
  spec.kind = ProblemSpec::Kind::Interface;
  SUBCASE("zero f and g give the zero vector") {
    spec.f = [](Vec2) { return 0.0; };
    CHECK(assemble_load(s, spec).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("f = 1: the constant-monomial entry is the element area") {
    spec.f = [](Vec2) { return 1.0; };
    const Eigen::VectorXd load = assemble_load(s, spec);
    CHECK(load[s.dofs.cell_offset[0]] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(load[s.dofs.cell_offset[1]] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("g = 1 on the interface edge of length L loads that edge with norm sqrt(L)") {
    spec.g = [](Vec2) { return 1.0; };
    const Eigen::VectorXd load = assemble_load(s, spec);
    // the edge subvector holds (1, phi_i)_e, the orthonormal coefficients of
    // Q_b 1, whose l2 norm equals ||1||_L2(e) = sqrt(L); here L = 1
    double norm2 = 0.0;
    for (int j = 0; j < s.dofs.edge_dim[6]; ++j) {
      norm2 += load[s.dofs.edge_offset[6] + j] * load[s.dofs.edge_offset[6] + j];
    }
    CHECK(std::sqrt(norm2) == doctest::Approx(1.0).epsilon(1e-12));
    // nothing lands on non-interface edge dofs
    for (int e = 0; e < 6; ++e)
      for (int j = 0; j < s.dofs.edge_dim[e]; ++j)
        CHECK(load[s.dofs.edge_offset[e] + j] == 0.0);
  }
}

TEST_CASE("spec errors: g for Poisson, missing beta region") {
  const WeakSpace s = build_weak_space(unit_square_mesh(), 1);
  ProblemSpec spec;
  spec.kind = ProblemSpec::Kind::Poisson;
  spec.f = [](Vec2) { return 1.0; };
  spec.g = [](Vec2) { return 1.0; };
  CHECK_THROWS_AS(assemble_load(s, spec), SpecError);

  ProblemSpec iface;
  iface.kind = ProblemSpec::Kind::Interface;
  CHECK_THROWS_AS(iface.beta_for_region(0), SpecError);  // label without a beta value
  CHECK(iface.beta_for_region(1) == 1.0);
}

TEST_CASE("apply_dirichlet: homogeneous elimination and system size") {
  const WeakSpace s = build_weak_space(unit_square_mesh(), 1);
  ProblemSpec spec = poisson_spec();
  spec.f = [](Vec2) { return 1.0; };
  const AssembledForms forms = assemble_forms(s, spec);
  const SparseSpdSystem sys = apply_dirichlet(s, forms, spec);
  CHECK(sys.A.n == 3);  // cell dofs only
  for (int i = 0; i < 3; ++i) CHECK(sys.b[i] == forms.load[s.dofs.free_to_full[i]]);
}

TEST_CASE("constant Dirichlet data with f = 0 solves to the constant") {
  const WeakSpace s = build_weak_space(distorted_quad_mesh(2), 1);
  ProblemSpec spec = poisson_spec();
  spec.f = [](Vec2) { return 0.0; };
  spec.dirichlet = [](Vec2) { return 2.5; };
  const AssembledForms forms = assemble_forms(s, spec);
  const SparseSpdSystem sys = apply_dirichlet(s, forms, spec);
  const auto [x, rep] = solve_spd(sys.A, sys.b, 1e-13);
  CHECK(rep.converged);
  const Eigen::VectorXd full = sys.expand(x, s.dofs);
  const Eigen::VectorXd expected = interpolate(s, [](Vec2) { return 2.5; });
  CHECK((full - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("global symmetry before and after elimination") {
  const auto mesh = interface_square_mesh(0);
  const WeakSpace s = build_weak_space(mesh, 2);
  ProblemSpec spec;
  spec.kind = ProblemSpec::Kind::Interface;
  spec.beta1 = 1.0;
  spec.beta2 = 100.0;
  spec.f = [](Vec2) { return 1.0; };
  const AssembledForms forms = assemble_forms(s, spec);
  CHECK(forms.combined.symmetry_defect() <= 1e-12 * forms.combined.max_abs());
  const SparseSpdSystem sys = apply_dirichlet(s, forms, spec);
  CHECK(sys.A.symmetry_defect() <= 1e-12 * sys.A.max_abs());
}

TEST_CASE("coercivity witness: random free vectors have positive energy") {
  const WeakSpace s = build_weak_space(distorted_quad_mesh(3), 2);
  const AssembledForms forms = assemble_forms(s, poisson_spec());
  const SparseSpdSystem sys = apply_dirichlet(s, forms, poisson_spec());
  uint64_t state = 17;
  for (int draw = 0; draw < 100; ++draw) {
    Eigen::VectorXd v(sys.A.n);
    for (int i = 0; i < v.size(); ++i) v[i] = 2.0 * uniform01(state) - 1.0;
    CHECK(v.dot(sys.A.apply(v)) > 0.0);
  }
}

TEST_CASE("CG solution of an assembled system matches the dense oracle") {
  const ManufacturedSolution sol = catalog_solution("sinsin");
  ProblemSpec spec = poisson_spec();
  spec.f = sol.f;
  spec.dirichlet = sol.u;
  const WeakSpace s = build_weak_space(distorted_quad_mesh(3), 2);  // < 500 dofs
  const AssembledForms forms = assemble_forms(s, spec);
  const SparseSpdSystem sys = apply_dirichlet(s, forms, spec);
  REQUIRE(sys.A.n < 500);
  const auto [x, rep] = solve_spd(sys.A, sys.b, 1e-13);
  CHECK(rep.converged);
  const Eigen::VectorXd oracle = dense_spd_solve(sys.A, sys.b);
  CHECK((x - oracle).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, oracle.cwiseAbs().maxCoeff()));
}

TEST_CASE("discrete Poincare ratio stays bounded under refinement") {
  // sample the constant with interpolants of smooth fields vanishing on the
  // boundary (rough random coefficient vectors would see a ratio that decays
  // with h and says nothing about the constant)
  uint64_t state = 4242;
  double ratio[2] = {0.0, 0.0};
  int idx = 0;
  for (int n : {4, 8}) {
    const WeakSpace s = build_weak_space(distorted_quad_mesh(n), 2);
    for (int draw = 0; draw < 20; ++draw) {
      double c[2][2];
      for (auto& row : c)
        for (double& v : row) v = 2.0 * uniform01(state) - 1.0;
      const auto u = [&c](Vec2 p) {
        double acc = 0.0;
        for (int a = 1; a <= 2; ++a)
          for (int b = 1; b <= 2; ++b)
            acc += c[a - 1][b - 1] * std::sin(a * M_PI * p.x) * std::sin(b * M_PI * p.y);
        return acc;
      };
      Eigen::VectorXd full = interpolate(s, u);
      for (int i = 0; i < s.dofs.n_total; ++i)
        if (s.dofs.constrained[i]) full[i] = 0.0;
      double l2sq = 0.0;  // || v_0 ||^2 over cells
      for (int e = 0; e < s.mesh.n_elements(); ++e) {
        const Eigen::VectorXd cc = full.segment(s.dofs.cell_offset[e], s.dofs.cell_dim);
        l2sq += cc.dot(s.cells[e].mass * cc);
      }
      const double semi = weak_seminorm(s, full);
      if (semi > 1e-14) ratio[idx] = std::max(ratio[idx], std::sqrt(l2sq) / semi);
    }
    ++idx;
  }
  CHECK(ratio[1] < 2.0 * ratio[0]);
  CHECK(ratio[0] < 2.0 * ratio[1]);
}
