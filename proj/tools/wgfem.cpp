// wgfem: convergence-study runner and mesh auditor for the weak Galerkin
// elliptic solver. See README.md for the config and mesh file formats.

#include <iostream>

#include <CLI11.hpp>

#include "wg/study.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Weak Galerkin elliptic solver on curved polygonal meshes"};
  app.require_subcommand(1);

  std::string config_path;
  std::string mesh_path;
  int k_override = -1;
  std::string problem_override, solution_override, out_override;
  double beta1_override = -1.0, beta2_override = -1.0, tol_override = -1.0;

  CLI::App* run = app.add_subcommand("run", "run a convergence study from a config file");
  run->add_option("config", config_path, "study config (JSON)")->required();
  run->add_option("--k", k_override, "polynomial degree override");
  run->add_option("--problem", problem_override, "problem kind override: poisson|interface");
  run->add_option("--solution", solution_override, "manufactured solution override");
  run->add_option("--beta1", beta1_override, "region-1 diffusion override");
  run->add_option("--beta2", beta2_override, "region-2 diffusion override");
  run->add_option("--tol", tol_override, "solver relative tolerance override");
  run->add_option("--out", out_override, "CSV output path override");

  CLI::App* audit = app.add_subcommand("audit", "validate a mesh and print shape metrics");
  audit->add_option("mesh", mesh_path, "WGPM-1 mesh file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 4 : 0;
  }

  if (audit->parsed()) return wg::audit_mesh(mesh_path, std::cout);

  wg::StudyConfig cfg;
  try {
    cfg = wg::load_study_config(config_path);
    if (k_override >= 0) cfg.k = k_override;
    if (!problem_override.empty()) {
      if (problem_override == "poisson")
        cfg.kind = wg::ProblemSpec::Kind::Poisson;
      else if (problem_override == "interface")
        cfg.kind = wg::ProblemSpec::Kind::Interface;
      else
        throw wg::SpecError("unknown problem kind '" + problem_override + "'");
    }
    if (!solution_override.empty()) cfg.solution = solution_override;
    if (beta1_override > 0.0) cfg.beta1 = beta1_override;
    if (beta2_override > 0.0) cfg.beta2 = beta2_override;
    if (tol_override > 0.0) cfg.rel_tol = tol_override;
    if (!out_override.empty()) cfg.out_csv = out_override;
    cfg.validate();
  } catch (const wg::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 4;
  }

  const wg::StudyResult result = wg::run_study(cfg);
  if (result.status != wg::StudyStatus::Ok) {
    std::cerr << "study failed: " << result.message << "\n";
    return static_cast<int>(result.status);
  }
  wg::write_table(result, std::cout);
  std::cout << "csv: " << cfg.out_csv << "\n";
  return 0;
}
