#pragma once

#include <iosfwd>

#include "wg/analysis.hpp"

namespace wg {

/// Configuration of a convergence study, mirroring the config file one-to-one.
struct StudyConfig {
  ProblemSpec::Kind kind = ProblemSpec::Kind::Poisson;
  int k = 1;
  std::vector<std::string> meshes;  // ordered, coarse to fine
  std::string solution = "sinsin";
  double beta1 = 1.0;
  double beta2 = 1.0;
  double rel_tol = 1e-12;
  int max_iter = 0;  // 0 selects the solver default
  std::string out_csv = "study.csv";
  std::string out_table;  // empty: table to stdout only

  void validate() const;  // throws SpecError on k < 1 or an empty mesh list
};

StudyConfig load_study_config(const std::string& path);

enum class StudyStatus : int {
  Ok = 0,
  MeshInvalid = 2,
  SolverFailure = 3,
  ConfigError = 4,
};

struct StudyResult {
  StudyStatus status = StudyStatus::Ok;
  std::string message;
  std::vector<ErrorReport> levels;
  std::vector<SolveReport> solves;
  EocTable eoc;  // empty vectors for single-level studies
};

/// Load each mesh, validate it, assemble, solve, and report error norms and
/// observed orders. Writes the CSV (and optional table file) on success.
StudyResult run_study(const StudyConfig& config);

void write_csv(const StudyResult& result, std::ostream& out);
void write_table(const StudyResult& result, std::ostream& out);

/// Print per-element h_D, rho_D, area and the global h; returns the CLI exit
/// code (0 accepted, 2 violations, 4 unreadable file).
int audit_mesh(const std::string& path, std::ostream& out);

}  // namespace wg
