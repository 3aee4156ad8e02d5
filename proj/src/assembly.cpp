#include "wg/assembly.hpp"

#include <algorithm>

namespace wg {

double ProblemSpec::beta_for_region(int region) const {
  if (kind == Kind::Poisson) return 1.0;
  if (region == 1) return beta1;
  if (region == 2) return beta2;
  throw SpecError("interface problem: element region label " + std::to_string(region) +
                  " has no beta value");
}

std::vector<ElementEdge> WeakSpace::element_edges(int element) const {
  const ElementRef& el = mesh.elements[element];
  std::vector<ElementEdge> out(el.loop.size());
  for (size_t i = 0; i < el.loop.size(); ++i) {
    out[i].edge = el.loop[i];
    out[i].dir = el.dirs[i];
    out[i].basis = &edge_bases[el.loop[i]];
    out[i].rule = &edge_rules[el.loop[i]];
  }
  return out;
}

std::vector<int> WeakSpace::local_to_global(int element) const {
  const ElementRef& el = mesh.elements[element];
  std::vector<int> map;
  map.reserve(dofs.cell_dim + 4 * (k + 1));
  for (int i = 0; i < dofs.cell_dim; ++i) map.push_back(dofs.cell_offset[element] + i);
  for (int e : el.loop)
    for (int j = 0; j < dofs.edge_dim[e]; ++j) map.push_back(dofs.edge_offset[e] + j);
  return map;
}

Eigen::VectorXd WeakSpace::gather_local(int element, const Eigen::VectorXd& full) const {
  const std::vector<int> map = local_to_global(element);
  Eigen::VectorXd v(map.size());
  for (size_t i = 0; i < map.size(); ++i) v[i] = full[map[i]];
  return v;
}

InteriorQuadrature WeakSpace::fan_rule(int element, int order) const {
  return interior_rule(mesh, element, geometry[element].star_center, order);
}

namespace {

int production_edge_count(const ParametricEdge& edge, int k) {
  const int p = static_cast<int>(edge.curve_degree());
  const int order = 2 * (k + 2) * p + 4;
  int count = (order + 2) / 2 + 2;
  if (edge.kind == EdgeKind::Arc) count = std::max(count, 24 + 2 * k);
  return count;
}

}  // namespace

DofMap build_dof_map(const CurvedPolygonMesh& mesh, int k, const std::vector<EdgeTraceBasis>& edge_bases) {
  DofMap d;
  d.k = k;
  d.cell_dim = pk_dim(k);
  int off = 0;
  d.cell_offset.resize(mesh.n_elements());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    d.cell_offset[e] = off;
    off += d.cell_dim;
  }
  d.edge_offset.resize(mesh.n_edges());
  d.edge_dim.resize(mesh.n_edges());
  for (int e = 0; e < mesh.n_edges(); ++e) {
    d.edge_offset[e] = off;
    d.edge_dim[e] = edge_bases[e].dim;
    off += d.edge_dim[e];
  }
  d.n_total = off;
  d.constrained.assign(d.n_total, 0);
  for (int e = 0; e < mesh.n_edges(); ++e)
    if (mesh.edges[e].tag == EdgeTag::Boundary)
      for (int j = 0; j < d.edge_dim[e]; ++j) d.constrained[d.edge_offset[e] + j] = 1;
  d.full_to_free.assign(d.n_total, -1);
  for (int i = 0; i < d.n_total; ++i)
    if (!d.constrained[i]) {
      d.full_to_free[i] = static_cast<int>(d.free_to_full.size());
      d.free_to_full.push_back(i);
    }
  d.n_free = static_cast<int>(d.free_to_full.size());
  return d;
}

WeakSpace build_weak_space(CurvedPolygonMesh mesh, int k, int grad_degree) {
  if (k < 1) throw SpecError("polynomial degree k must be >= 1");
  WeakSpace s;
  s.mesh = std::move(mesh);
  s.k = k;
  s.grad_degree = grad_degree < 0 ? k - 1 : grad_degree;

  s.edge_rules.reserve(s.mesh.n_edges());
  s.edge_bases.reserve(s.mesh.n_edges());
  for (int e = 0; e < s.mesh.n_edges(); ++e) {
    s.edge_rules.push_back(
        edge_rule_with_count(s.mesh.edges[e], production_edge_count(s.mesh.edges[e], k)));
    s.edge_bases.push_back(build_edge_basis(s.mesh.edges[e], e, k, s.edge_rules.back()));
  }

  const int moment_degree = 2 * k + 2;
  s.geometry.reserve(s.mesh.n_elements());
  s.moments.reserve(s.mesh.n_elements());
  s.cells.reserve(s.mesh.n_elements());
  s.gradients.reserve(s.mesh.n_elements());
  s.operators.reserve(s.mesh.n_elements());
  for (int e = 0; e < s.mesh.n_elements(); ++e) {
    s.geometry.push_back(element_metrics(s.mesh, e));
    s.h = std::max(s.h, s.geometry.back().h);
    s.moments.push_back(
        monomial_moments(s.mesh, e, s.geometry.back().star_center, s.geometry.back().h, moment_degree));
    s.cells.push_back(build_cell_basis(e, k, s.moments.back()));
    s.gradients.push_back(build_gradient_basis(e, s.grad_degree, s.moments.back(), s.cells.back().scaling));
    s.operators.push_back(build_weak_gradient(s.cells.back(), s.gradients.back(), s.moments.back(),
                                              s.element_edges(e)));
  }
  s.dofs = build_dof_map(s.mesh, k, s.edge_bases);
  return s;
}

namespace {

void scatter_symmetric(const Eigen::MatrixXd& local, const std::vector<int>& map,
                       std::vector<Triplet>& out) {
  const int n = static_cast<int>(map.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (local(i, j) != 0.0) out.push_back({map[i], map[j], local(i, j)});
}

}  // namespace

std::vector<Triplet> assemble_stiffness(const WeakSpace& space, const ProblemSpec& spec) {
  std::vector<Triplet> out;
  for (int e = 0; e < space.mesh.n_elements(); ++e) {
    const double beta = spec.beta_for_region(space.mesh.elements[e].region);
    const WeakGradientOperator& op = space.operators[e];
    Eigen::MatrixXd local = beta * (op.G.transpose() * space.gradients[e].mass * op.G);
    local = 0.5 * (local + local.transpose()).eval();
    scatter_symmetric(local, space.local_to_global(e), out);
  }
  return out;
}

std::vector<Triplet> assemble_stabilization(const WeakSpace& space) {
  std::vector<Triplet> out;
  for (int e = 0; e < space.mesh.n_elements(); ++e) {
    const std::vector<ElementEdge> edges = space.element_edges(e);
    const WeakGradientOperator& op = space.operators[e];
    const int ncell = op.n_cell;
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(op.cols(), op.cols());
    const double hinv = 1.0 / space.geometry[e].h;
    for (size_t le = 0; le < edges.size(); ++le) {
      const EdgeQuadrature& rule = *edges[le].rule;
      const Eigen::MatrixXd v0 = space.cells[e].scaling.values(rule.points, ncell);
      const Eigen::MatrixXd vb = edges[le].basis->values(rule.points);
      const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.weights.size());
      const Eigen::MatrixXd a00 = v0.transpose() * w.asDiagonal() * v0;
      const Eigen::MatrixXd a0b = v0.transpose() * w.asDiagonal() * vb;
      const Eigen::MatrixXd abb = vb.transpose() * w.asDiagonal() * vb;
      const int o = op.edge_offset[le];
      const int d = op.edge_dim[le];
      local.topLeftCorner(ncell, ncell) += hinv * a00;
      local.block(0, o, ncell, d) -= hinv * a0b;
      local.block(o, 0, d, ncell) -= hinv * a0b.transpose();
      local.block(o, o, d, d) += hinv * abb;
    }
    local = 0.5 * (local + local.transpose()).eval();
    scatter_symmetric(local, space.local_to_global(e), out);
  }
  return out;
}

Eigen::VectorXd assemble_load(const WeakSpace& space, const ProblemSpec& spec) {
  if (spec.kind == ProblemSpec::Kind::Poisson && spec.g)
    throw SpecError("interface flux jump g supplied for a Poisson problem");

  Eigen::VectorXd load = Eigen::VectorXd::Zero(space.dofs.n_total);
  const int fan_order = std::max(2 * space.k + 4, 8);
  if (spec.f) {
    for (int e = 0; e < space.mesh.n_elements(); ++e) {
      const InteriorQuadrature rule = space.fan_rule(e, fan_order);
      const Eigen::MatrixXd v = space.cells[e].scaling.values(rule.points, space.dofs.cell_dim);
      for (size_t q = 0; q < rule.points.size(); ++q) {
        const double wf = rule.weights[q] * spec.f(rule.points[q]);
        for (int i = 0; i < space.dofs.cell_dim; ++i)
          load[space.dofs.cell_offset[e] + i] += wf * v(q, i);
      }
    }
  }
  if (spec.kind == ProblemSpec::Kind::Interface && spec.g) {
    for (int e = 0; e < space.mesh.n_edges(); ++e) {
      if (space.mesh.edges[e].tag != EdgeTag::Interface) continue;
      const Eigen::VectorXd ge = project_edge(space.edge_bases[e], space.edge_rules[e], spec.g);
      for (int j = 0; j < space.dofs.edge_dim[e]; ++j) load[space.dofs.edge_offset[e] + j] += ge[j];
    }
  }
  return load;
}

AssembledForms assemble_forms(const WeakSpace& space, const ProblemSpec& spec) {
  AssembledForms forms;
  std::vector<Triplet> stiff = assemble_stiffness(space, spec);
  std::vector<Triplet> stab = assemble_stabilization(space);
  std::vector<Triplet> both = stiff;
  both.insert(both.end(), stab.begin(), stab.end());
  forms.stiffness = CsrMatrix::from_triplets(space.dofs.n_total, std::move(stiff));
  forms.stabilization = CsrMatrix::from_triplets(space.dofs.n_total, std::move(stab));
  forms.combined = CsrMatrix::from_triplets(space.dofs.n_total, std::move(both));
  forms.load = assemble_load(space, spec);
  return forms;
}

Eigen::VectorXd SparseSpdSystem::expand(const Eigen::VectorXd& free_values, const DofMap& dofs) const {
  Eigen::VectorXd full = prescribed;
  for (int i = 0; i < dofs.n_free; ++i) full[dofs.free_to_full[i]] = free_values[i];
  return full;
}

SparseSpdSystem apply_dirichlet(const WeakSpace& space, const AssembledForms& forms,
                                const ProblemSpec& spec) {
  const DofMap& d = space.dofs;
  SparseSpdSystem sys;
  sys.prescribed = Eigen::VectorXd::Zero(d.n_total);

  if (spec.dirichlet) {
    for (int e = 0; e < space.mesh.n_edges(); ++e) {
      if (space.mesh.edges[e].tag != EdgeTag::Boundary) continue;
      const Eigen::VectorXd ge = project_edge(space.edge_bases[e], space.edge_rules[e], spec.dirichlet);
      for (int j = 0; j < d.edge_dim[e]; ++j) sys.prescribed[d.edge_offset[e] + j] = ge[j];
    }
  }

  const CsrMatrix& A = forms.combined;
  std::vector<Triplet> reduced;
  sys.b = Eigen::VectorXd::Zero(d.n_free);
  for (int i = 0; i < d.n_total; ++i) {
    const int fi = d.full_to_free[i];
    if (fi < 0) continue;
    double lift = 0.0;
    for (int k2 = A.row_ptr[i]; k2 < A.row_ptr[i + 1]; ++k2) {
      const int j = A.col[k2];
      const int fj = d.full_to_free[j];
      if (fj >= 0)
        reduced.push_back({fi, fj, A.val[k2]});
      else
        lift += A.val[k2] * sys.prescribed[j];
    }
    sys.b[fi] = forms.load[i] - lift;
  }
  sys.A = CsrMatrix::from_triplets(d.n_free, std::move(reduced));
  return sys;
}

}  // namespace wg
