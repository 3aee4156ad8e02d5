#include "wg/study.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "wg/mesh_io.hpp"

namespace wg {

void StudyConfig::validate() const {
  if (k < 1) throw SpecError("polynomial degree k must be >= 1 (got " + std::to_string(k) + ")");
  if (meshes.empty()) throw SpecError("mesh list must not be empty");
  if (!(beta1 > 0.0) || !(beta2 > 0.0)) throw SpecError("beta values must be strictly positive");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw SpecError("solver rel_tol must lie in (0,1)");
}

StudyConfig load_study_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError(std::string("config parse error: ") + e.what());
  }
  StudyConfig cfg;
  try {
    const std::string problem = doc.value("problem", "poisson");
    if (problem == "poisson")
      cfg.kind = ProblemSpec::Kind::Poisson;
    else if (problem == "interface")
      cfg.kind = ProblemSpec::Kind::Interface;
    else
      throw FileFormatError("unknown problem kind '" + problem + "'");
    cfg.k = doc.value("k", 1);
    cfg.meshes = doc.at("meshes").get<std::vector<std::string>>();
    cfg.solution = doc.value("solution", "sinsin");
    cfg.beta1 = doc.value("beta1", 1.0);
    cfg.beta2 = doc.value("beta2", 1.0);
    cfg.rel_tol = doc.value("rel_tol", 1e-12);
    cfg.max_iter = doc.value("max_iter", 0);
    cfg.out_csv = doc.value("out_csv", "study.csv");
    cfg.out_table = doc.value("out_table", "");
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError(std::string("config field error: ") + e.what());
  }
  return cfg;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

}  // namespace

void write_csv(const StudyResult& result, std::ostream& out) {
  out << "level,h,dofs,e_grad_weak,e_grad_interior,e_l2,eoc_grad_weak,eoc_grad_interior,eoc_l2\n";
  for (size_t i = 0; i < result.levels.size(); ++i) {
    const ErrorReport& r = result.levels[i];
    out << i << "," << num(r.h) << "," << r.dofs << "," << num(r.e_grad_weak) << ","
        << num(r.e_grad_interior) << "," << num(r.e_l2);
    if (i == 0) {
      out << ",,,";
    } else {
      out << "," << num(result.eoc.grad_weak[i - 1]) << "," << num(result.eoc.grad_interior[i - 1])
          << "," << num(result.eoc.l2[i - 1]);
    }
    out << "\n";
  }
}

void write_table(const StudyResult& result, std::ostream& out) {
  out << "level          h      dofs   e_grad_weak    e_grad_int          e_l2   eoc_w  eoc_i  eoc_2\n";
  for (size_t i = 0; i < result.levels.size(); ++i) {
    const ErrorReport& r = result.levels[i];
    char line[256];
    if (i == 0) {
      std::snprintf(line, sizeof line, "%5zu %10.4e %9d %13.6e %13.6e %13.6e      -      -      -\n", i,
                    r.h, r.dofs, r.e_grad_weak, r.e_grad_interior, r.e_l2);
    } else {
      std::snprintf(line, sizeof line, "%5zu %10.4e %9d %13.6e %13.6e %13.6e %6.3f %6.3f %6.3f\n", i,
                    r.h, r.dofs, r.e_grad_weak, r.e_grad_interior, r.e_l2,
                    result.eoc.grad_weak[i - 1], result.eoc.grad_interior[i - 1], result.eoc.l2[i - 1]);
    }
    out << line;
  }
}

StudyResult run_study(const StudyConfig& config) {
  StudyResult result;
  try {
    config.validate();
  } catch (const Error& e) {
    result.status = StudyStatus::ConfigError;
    result.message = e.what();
    return result;
  }

  ManufacturedSolution sol;
  try {
    sol = catalog_solution(config.solution, config.beta1, config.beta2);
  } catch (const Error& e) {
    result.status = StudyStatus::ConfigError;
    result.message = e.what();
    return result;
  }

  ProblemSpec spec;
  spec.kind = config.kind;
  spec.beta1 = config.beta1;
  spec.beta2 = config.beta2;
  spec.f = sol.f;
  spec.g = config.kind == ProblemSpec::Kind::Interface ? sol.g : nullptr;
  spec.dirichlet = sol.u;

  bool solution_checked = false;
  for (const std::string& path : config.meshes) {
    CurvedPolygonMesh mesh;
    try {
      mesh = read_wgpm_file(path);
    } catch (const Error& e) {
      result.status = StudyStatus::ConfigError;
      result.message = std::string(e.what()) + " [" + path + "]";
      return result;
    }
    if (!solution_checked && !mesh.vertices.empty()) {
      // finite-difference spot check of f against -div(beta grad u), inset
      // into the domain bounding box
      double xlo = mesh.vertices[0].x, xhi = xlo, ylo = mesh.vertices[0].y, yhi = ylo;
      for (const Vec2& v : mesh.vertices) {
        xlo = std::min(xlo, v.x);
        xhi = std::max(xhi, v.x);
        ylo = std::min(ylo, v.y);
        yhi = std::max(yhi, v.y);
      }
      const double mx = 0.1 * (xhi - xlo), my = 0.1 * (yhi - ylo);
      try {
        fd_consistency(sol, {xlo + mx, ylo + my}, {xhi - mx, yhi - my});
      } catch (const Error& e) {
        result.status = StudyStatus::ConfigError;
        result.message = e.what();
        return result;
      }
      solution_checked = true;
    }
    const MeshReport audit = validate_mesh(mesh);
    if (!audit.accepted()) {
      result.status = StudyStatus::MeshInvalid;
      std::ostringstream msg;
      msg << "mesh '" << path << "' rejected:";
      for (const auto& v : audit.violations) msg << " [" << v.what << "]";
      result.message = msg.str();
      return result;
    }
    try {
      const WeakSpace space = build_weak_space(mesh, config.k);
      const AssembledForms forms = assemble_forms(space, spec);
      const SparseSpdSystem sys = apply_dirichlet(space, forms, spec);
      auto [x, report] = solve_spd(sys.A, sys.b, config.rel_tol, config.max_iter);
      result.solves.push_back(report);
      const Eigen::VectorXd full = sys.expand(x, space.dofs);
      result.levels.push_back(error_norms(space, sol, spec, full));
    } catch (const SolverConvergenceError& e) {
      result.status = StudyStatus::SolverFailure;
      result.message = std::string(e.what()) + " [" + path + "]";
      result.solves.push_back(e.report);
      return result;
    } catch (const NotSpdError& e) {
      result.status = StudyStatus::SolverFailure;
      result.message = std::string(e.what()) + " [" + path + "]";
      return result;
    } catch (const Error& e) {
      result.status = StudyStatus::MeshInvalid;
      result.message = std::string(e.what()) + " [" + path + "]";
      return result;
    }
  }
  if (result.levels.size() >= 2) result.eoc = observed_orders(result.levels);

  if (!config.out_csv.empty()) {
    std::ofstream csv(config.out_csv);
    if (!csv) {
      result.status = StudyStatus::ConfigError;
      result.message = "cannot write CSV file '" + config.out_csv + "'";
      return result;
    }
    write_csv(result, csv);
  }
  if (!config.out_table.empty()) {
    std::ofstream tab(config.out_table);
    if (tab) write_table(result, tab);
  }
  return result;
}

int audit_mesh(const std::string& path, std::ostream& out) {
  CurvedPolygonMesh mesh;
  try {
    mesh = read_wgpm_file(path);
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 4;
  }
  const MeshReport rep = validate_mesh(mesh);
  out << "mesh: " << path << "\n";
  out << "elements: " << mesh.n_elements() << "  edges: " << mesh.n_edges()
      << "  vertices: " << mesh.vertices.size() << "\n";
  for (size_t e = 0; e < rep.metrics.size(); ++e) {
    const ElementGeometry& g = rep.metrics[e];
    char line[160];
    std::snprintf(line, sizeof line, "element %4zu: h_D = %.6e  rho_D = %.4f  area = %.6e\n", e, g.h,
                  g.rho, g.area);
    out << line;
  }
  char tail[160];
  std::snprintf(tail, sizeof tail, "h = %.6e  rho in [%.4f, %.4f]\n", rep.h, rep.min_rho, rep.max_rho);
  out << tail;
  if (!rep.accepted()) {
    for (const auto& v : rep.violations) {
      out << "violation: " << v.what;
      if (v.element >= 0) out << " (element " << v.element << ")";
      if (v.edge >= 0) out << " (edge " << v.edge << ")";
      out << "\n";
    }
    out << "REJECTED (" << rep.violations.size() << " violation(s))\n";
    return 2;
  }
  out << "ACCEPTED\n";
  return 0;
}

}  // namespace wg
