#include "wg/analysis.hpp"

#include <cmath>
#include <random>

namespace wg {

namespace {

constexpr double kInterfaceRadius = 0.5;

double splitmix_uniform(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace

ManufacturedSolution catalog_solution(const std::string& name, double beta1, double beta2) {
  ManufacturedSolution s;
  s.name = name;
  s.beta = [](Vec2) { return 1.0; };
  if (name == "sinsin") {
    s.u = [](Vec2 p) { return std::sin(M_PI * p.x) * std::sin(M_PI * p.y); };
    s.grad_u = [](Vec2 p) {
      return Vec2{M_PI * std::cos(M_PI * p.x) * std::sin(M_PI * p.y),
                  M_PI * std::sin(M_PI * p.x) * std::cos(M_PI * p.y)};
    };
    s.f = [](Vec2 p) { return 2.0 * M_PI * M_PI * std::sin(M_PI * p.x) * std::sin(M_PI * p.y); };
  } else if (name == "paraboloid") {
    s.u = [](Vec2 p) { return 1.0 - p.x * p.x - p.y * p.y; };
    s.grad_u = [](Vec2 p) { return Vec2{-2.0 * p.x, -2.0 * p.y}; };
    s.f = [](Vec2) { return 4.0; };
  } else if (name == "poly1") {
    s.u = [](Vec2 p) { return 2.0 * p.x + 3.0 * p.y - 1.0; };
    s.grad_u = [](Vec2) { return Vec2{2.0, 3.0}; };
    s.f = [](Vec2) { return 0.0; };
  } else if (name == "poly2") {
    s.u = [](Vec2 p) { return p.x * p.x - 2.0 * p.x * p.y + 3.0 * p.y * p.y + p.x - 1.0; };
    s.grad_u = [](Vec2 p) { return Vec2{2.0 * p.x - 2.0 * p.y + 1.0, -2.0 * p.x + 6.0 * p.y}; };
    s.f = [](Vec2) { return -8.0; };
  } else if (name == "poly3") {
    s.u = [](Vec2 p) {
      return p.x * p.x * p.x + p.x * p.x * p.y - p.y * p.y * p.y + 2.0 * p.x * p.x - p.x * p.y;
    };
    s.grad_u = [](Vec2 p) {
      return Vec2{3.0 * p.x * p.x + 2.0 * p.x * p.y + 4.0 * p.x - p.y,
                  p.x * p.x - 3.0 * p.y * p.y - p.x};
    };
    s.f = [](Vec2 p) { return -(6.0 * p.x + 2.0 * p.y + 4.0 - 6.0 * p.y); };
  } else if (name == "iface_quadratic") {
    // u = x^2 + y^2 on both sides: continuous with a genuine conormal flux
    // jump g = 2 r0 (beta1 - beta2) across r = r0 (n outward to region 1);
    // f = -4 beta per region. Exactly representable at k = 2.
    const double r0 = kInterfaceRadius;
    s.u = [](Vec2 p) { return p.x * p.x + p.y * p.y; };
    s.grad_u = [](Vec2 p) { return Vec2{2.0 * p.x, 2.0 * p.y}; };
    s.beta = [=](Vec2 p) { return p.norm() < r0 ? beta1 : beta2; };
    s.f = [sb = s.beta](Vec2 p) { return -4.0 * sb(p); };
    s.g = [=](Vec2) { return 2.0 * r0 * (beta1 - beta2); };
  } else if (name == "iface_cubic") {
    // u = r^3/beta1 inside r0, r^3/beta2 + r0^3 (1/beta1 - 1/beta2) outside;
    // continuous across r0 with continuous conormal flux (g = 0), and
    // -div(beta grad u) = -9r on both sides.
    const double r0 = kInterfaceRadius;
    const double shift = r0 * r0 * r0 * (1.0 / beta1 - 1.0 / beta2);
    s.u = [=](Vec2 p) {
      const double r = p.norm();
      return r < r0 ? r * r * r / beta1 : r * r * r / beta2 + shift;
    };
    s.grad_u = [=](Vec2 p) {
      const double r = p.norm();
      const double binv = r < r0 ? 1.0 / beta1 : 1.0 / beta2;
      return Vec2{3.0 * r * p.x * binv, 3.0 * r * p.y * binv};
    };
    s.f = [](Vec2 p) { return -9.0 * p.norm(); };
    s.g = nullptr;  // flux jump vanishes for this entry
    s.beta = [=](Vec2 p) { return p.norm() < r0 ? beta1 : beta2; };
  } else {
    throw SpecError("unknown manufactured solution '" + name + "'");
  }
  return s;
}

double fd_consistency(const ManufacturedSolution& sol, Vec2 box_lo, Vec2 box_hi, int count,
                      double rel_tol, unsigned seed) {
  const double diag = (box_hi - box_lo).norm();
  const double step = 1e-4 * diag;
  uint64_t state = seed;
  double worst = 0.0;
  int accepted = 0;
  int tries = 0;
  while (accepted < count && tries < 100 * count) {
    ++tries;
    const Vec2 p{box_lo.x + splitmix_uniform(state) * (box_hi.x - box_lo.x),
                 box_lo.y + splitmix_uniform(state) * (box_hi.y - box_lo.y)};
    const Vec2 px0{p.x - step, p.y}, px1{p.x + step, p.y};
    const Vec2 py0{p.x, p.y - step}, py1{p.x, p.y + step};
    const double b = sol.beta(p);
    if (sol.beta(px0) != b || sol.beta(px1) != b || sol.beta(py0) != b || sol.beta(py1) != b)
      continue;  // stencil straddles the interface
    const double lap =
        (sol.u(px0) + sol.u(px1) + sol.u(py0) + sol.u(py1) - 4.0 * sol.u(p)) / (step * step);
    const double fd = -b * lap;
    const double f = sol.f(p);
    const double mismatch = std::abs(fd - f) / std::max(1.0, std::abs(f));
    worst = std::max(worst, mismatch);
    ++accepted;
  }
  if (accepted < count) throw SpecError("fd_consistency could not place enough stencil points");
  if (worst > rel_tol)
    throw SpecError("manufactured solution fails the finite-difference self check: worst mismatch " +
                    std::to_string(worst));
  return worst;
}

ErrorReport error_norms(const WeakSpace& space, const ManufacturedSolution& sol,
                        const ProblemSpec& spec, const Eigen::VectorXd& full_coeffs) {
  ErrorReport rep;
  rep.h = space.h;
  rep.dofs = space.dofs.n_total;
  const int order = std::max(2 * space.k + 6, 10);
  double a_weak = 0.0, a_int = 0.0, a_l2 = 0.0;

  for (int e = 0; e < space.mesh.n_elements(); ++e) {
    const double beta = spec.beta_for_region(space.mesh.elements[e].region);
    const InteriorQuadrature rule = space.fan_rule(e, order);
    const Eigen::VectorXd local = space.gather_local(e, full_coeffs);
    const Eigen::VectorXd gw = space.operators[e].apply(local);  // grad_w coefficients
    const int ng = space.gradients[e].scalar_dim();
    const int nc = space.dofs.cell_dim;

    const Eigen::MatrixXd vg = space.cells[e].scaling.values(rule.points, ng);
    const Eigen::MatrixXd vc = space.cells[e].scaling.values(rule.points, nc);
    Eigen::MatrixXd dx, dy;
    space.cells[e].scaling.gradients(rule.points, nc, dx, dy);

    for (size_t q = 0; q < rule.points.size(); ++q) {
      const Vec2 p = rule.points[q];
      const double w = rule.weights[q];
      const Vec2 gu = sol.grad_u(p);
      double gwx = 0.0, gwy = 0.0, u0 = 0.0, g0x = 0.0, g0y = 0.0;
      for (int i = 0; i < ng; ++i) {
        gwx += gw[i] * vg(q, i);
        gwy += gw[ng + i] * vg(q, i);
      }
      for (int i = 0; i < nc; ++i) {
        u0 += local[i] * vc(q, i);
        g0x += local[i] * dx(q, i);
        g0y += local[i] * dy(q, i);
      }
      const double du = sol.u(p) - u0;
      a_weak += w * beta * ((gu.x - gwx) * (gu.x - gwx) + (gu.y - gwy) * (gu.y - gwy));
      a_int += w * beta * ((gu.x - g0x) * (gu.x - g0x) + (gu.y - g0y) * (gu.y - g0y));
      a_l2 += w * du * du;
    }
  }
  rep.e_grad_weak = std::sqrt(a_weak);
  rep.e_grad_interior = std::sqrt(a_int);
  rep.e_l2 = std::sqrt(a_l2);
  return rep;
}

double weak_seminorm(const WeakSpace& space, const Eigen::VectorXd& full_coeffs) {
  double acc = 0.0;
  for (int e = 0; e < space.mesh.n_elements(); ++e) {
    const Eigen::VectorXd local = space.gather_local(e, full_coeffs);
    const Eigen::VectorXd gw = space.operators[e].apply(local);
    acc += gw.dot(space.gradients[e].mass * gw);

    const std::vector<ElementEdge> edges = space.element_edges(e);
    const WeakGradientOperator& op = space.operators[e];
    const double hinv = 1.0 / space.geometry[e].h;
    for (size_t le = 0; le < edges.size(); ++le) {
      const EdgeQuadrature& rule = *edges[le].rule;
      const Eigen::MatrixXd v0 = space.cells[e].scaling.values(rule.points, op.n_cell);
      const Eigen::MatrixXd vb = edges[le].basis->values(rule.points);
      for (size_t q = 0; q < rule.points.size(); ++q) {
        double diff = 0.0;
        for (int i = 0; i < op.n_cell; ++i) diff += local[i] * v0(q, i);
        for (int j = 0; j < op.edge_dim[le]; ++j) diff -= local[op.edge_offset[le] + j] * vb(q, j);
        acc += hinv * rule.weights[q] * diff * diff;
      }
    }
  }
  return std::sqrt(acc);
}

double triple_norm(const AssembledForms& forms, const Eigen::VectorXd& full_coeffs) {
  return std::sqrt(full_coeffs.dot(forms.combined.apply(full_coeffs)));
}

Eigen::VectorXd interpolate(const WeakSpace& space, const std::function<double(Vec2)>& u) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dofs.n_total);
  const int order = std::max(2 * space.k + 4, 8);
  for (int e = 0; e < space.mesh.n_elements(); ++e) {
    const Eigen::VectorXd c = project_cell(space.cells[e], space.fan_rule(e, order), u);
    for (int i = 0; i < space.dofs.cell_dim; ++i) out[space.dofs.cell_offset[e] + i] = c[i];
  }
  for (int e = 0; e < space.mesh.n_edges(); ++e) {
    const Eigen::VectorXd c = project_edge(space.edge_bases[e], space.edge_rules[e], u);
    for (int j = 0; j < space.dofs.edge_dim[e]; ++j) out[space.dofs.edge_offset[e] + j] = c[j];
  }
  return out;
}

EocTable observed_orders(const std::vector<ErrorReport>& reports) {
  if (reports.size() < 2) throw SpecError("observed_orders needs at least two reports");
  for (size_t i = 1; i < reports.size(); ++i)
    if (!(reports[i].h < reports[i - 1].h))
      throw SpecError("observed_orders needs strictly decreasing mesh sizes");

  const auto eoc = [](double e0, double e1, double h0, double h1) {
    if (e0 <= 0.0 || e1 <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::log(e0 / e1) / std::log(h0 / h1);
  };
  EocTable t;
  for (size_t i = 1; i < reports.size(); ++i) {
    t.grad_weak.push_back(
        eoc(reports[i - 1].e_grad_weak, reports[i].e_grad_weak, reports[i - 1].h, reports[i].h));
    t.grad_interior.push_back(eoc(reports[i - 1].e_grad_interior, reports[i].e_grad_interior,
                                  reports[i - 1].h, reports[i].h));
    t.l2.push_back(eoc(reports[i - 1].e_l2, reports[i].e_l2, reports[i - 1].h, reports[i].h));
  }
  return t;
}

}  // namespace wg
