#pragma once

#include <string>

#include "wg/assembly.hpp"

namespace wg {

/// A manufactured solution: u, its gradient, the matching source
/// f = -div(beta grad u), the conormal flux jump g on the interface, and the
/// piecewise-constant beta as a function of position.
struct ManufacturedSolution {
  std::string name;
  std::function<double(Vec2)> u;
  std::function<Vec2(Vec2)> grad_u;
  std::function<double(Vec2)> f;
  std::function<double(Vec2)> g;     // null when the jump is zero / not applicable
  std::function<double(Vec2)> beta;  // evaluates to 1 for Poisson entries
};

/// Named catalog entries:
///   "sinsin"      u = sin(pi x) sin(pi y)          (Poisson, unit square)
///   "paraboloid"  u = 1 - x^2 - y^2                (Poisson, unit disc)
///   "poly1/2/3"   fixed polynomials of degree 1/2/3 (Poisson)
///   "iface_cubic" u = r^3/beta_i + const, circular interface at r = 0.5
/// Interface entries take their beta values from the arguments.
ManufacturedSolution catalog_solution(const std::string& name, double beta1 = 1.0, double beta2 = 1.0);

/// Spot check: at `count` sample points inside the bounding box, f must agree
/// with a five-point finite-difference evaluation of -beta * laplace(u) to
/// `rel_tol`, skipping stencils that straddle a beta jump. Returns the worst
/// relative mismatch among accepted points.
double fd_consistency(const ManufacturedSolution& sol, Vec2 box_lo, Vec2 box_hi, int count = 50,
                      double rel_tol = 1e-4, unsigned seed = 20240901);

struct ErrorReport {
  double e_grad_weak = 0.0;      // || grad u - grad_w u_h ||  (beta-weighted for interface)
  double e_grad_interior = 0.0;  // || grad u - grad u_0 ||
  double e_l2 = 0.0;             // || u - u_0 ||_L2
  double h = 0.0;
  int dofs = 0;
};

ErrorReport error_norms(const WeakSpace& space, const ManufacturedSolution& sol,
                        const ProblemSpec& spec, const Eigen::VectorXd& full_coeffs);

/// | v |_{k-1,w}: element-wise weak-gradient energy plus the h^{-1}-scaled
/// boundary mismatch, computed from the per-element operators (not the
/// assembled matrix).
double weak_seminorm(const WeakSpace& space, const Eigen::VectorXd& full_coeffs);

/// |||v||| = sqrt(v^T (A_stiff + A_stab) v) from the assembled full-dof forms.
double triple_norm(const AssembledForms& forms, const Eigen::VectorXd& full_coeffs);

/// The interpolant Q_h u: per-element cell projection and per-edge trace
/// projection of an analytic function.
Eigen::VectorXd interpolate(const WeakSpace& space, const std::function<double(Vec2)>& u);

struct EocTable {
  std::vector<double> grad_weak;
  std::vector<double> grad_interior;
  std::vector<double> l2;
};

/// EOC_i = log(e_i/e_{i+1}) / log(h_i/h_{i+1}) per consecutive pair per norm;
/// NaN marks pairs with a zero error. Throws SpecError unless h strictly
/// decreases and at least two reports are given.
EocTable observed_orders(const std::vector<ErrorReport>& reports);

}  // namespace wg
