#pragma once

#include <functional>

#include "wg/solver.hpp"
#include "wg/weakgrad.hpp"

namespace wg {

/// Global degree-of-freedom layout: all cell dofs element by element, then all
/// edge trace dofs edge by edge. Cell dofs are never constrained; every dof on
/// a boundary-tagged edge is Dirichlet-constrained.
struct DofMap {
  int k = 0;
  int n_total = 0;
  int n_free = 0;
  int cell_dim = 0;              // pk_dim(k), identical for all elements
  std::vector<int> cell_offset;  // per element
  std::vector<int> edge_offset;  // per edge
  std::vector<int> edge_dim;     // per edge (trace dimension)
  std::vector<char> constrained;
  std::vector<int> full_to_free;  // -1 when constrained
  std::vector<int> free_to_full;
};

struct ProblemSpec {
  enum class Kind { Poisson, Interface };
  Kind kind = Kind::Poisson;
  double beta1 = 1.0;
  double beta2 = 1.0;
  std::function<double(Vec2)> f;          // volumetric source
  std::function<double(Vec2)> g;          // conormal flux jump on the interface, n outward to region 1
  std::function<double(Vec2)> dirichlet;  // boundary data; null means homogeneous

  double beta_for_region(int region) const;
};

/// All per-mesh discrete structure for one polynomial degree k: element
/// geometry, moment tables, bases, per-edge rules and trace bases, weak
/// gradient operators, and the dof map. Owns its copy of the mesh.
struct WeakSpace {
  CurvedPolygonMesh mesh;
  int k = 1;
  int grad_degree = 0;  // defaults to k-1

  std::vector<ElementGeometry> geometry;
  std::vector<MomentTable> moments;
  std::vector<CellBasis> cells;
  std::vector<GradientBasis> gradients;
  std::vector<EdgeQuadrature> edge_rules;
  std::vector<EdgeTraceBasis> edge_bases;
  std::vector<WeakGradientOperator> operators;
  DofMap dofs;
  double h = 0.0;  // max element diameter

  std::vector<ElementEdge> element_edges(int element) const;
  std::vector<int> local_to_global(int element) const;
  Eigen::VectorXd gather_local(int element, const Eigen::VectorXd& full) const;
  InteriorQuadrature fan_rule(int element, int order) const;
};

/// Build the full discrete structure. The weak-gradient test degree defaults to
/// k-1 (the degree the scheme's norm and analysis use) but stays an explicit
/// parameter.
WeakSpace build_weak_space(CurvedPolygonMesh mesh, int k, int grad_degree = -1);

DofMap build_dof_map(const CurvedPolygonMesh& mesh, int k, const std::vector<EdgeTraceBasis>& edge_bases);

/// Element-wise beta (grad_w u, grad_w v) contributions.
std::vector<Triplet> assemble_stiffness(const WeakSpace& space, const ProblemSpec& spec);

/// Element-wise h_D^{-1} <u0-ub, v0-vb>_dD contributions (each interior edge is
/// visited once per adjacent element, with that element's h_D).
std::vector<Triplet> assemble_stabilization(const WeakSpace& space);

/// (f, v0)_Omega over cell dofs, plus <g, vb>_Gamma over interface-edge dofs
/// for interface problems.
Eigen::VectorXd assemble_load(const WeakSpace& space, const ProblemSpec& spec);

/// Full-dof assembled forms (kept both for constraint elimination and for the
/// quadratic-form side of the norm checks).
struct AssembledForms {
  CsrMatrix stiffness;
  CsrMatrix stabilization;
  CsrMatrix combined;  // stiffness + stabilization
  Eigen::VectorXd load;
};

AssembledForms assemble_forms(const WeakSpace& space, const ProblemSpec& spec);

/// Reduced SPD system over free dofs with boundary dofs eliminated; the
/// prescribed vector records Q_b-projected Dirichlet values on constrained dofs.
struct SparseSpdSystem {
  CsrMatrix A;
  Eigen::VectorXd b;
  Eigen::VectorXd prescribed;  // full-size, zero on free dofs

  Eigen::VectorXd expand(const Eigen::VectorXd& free_values, const DofMap& dofs) const;
};

SparseSpdSystem apply_dirichlet(const WeakSpace& space, const AssembledForms& forms,
                                const ProblemSpec& spec);

}  // namespace wg
