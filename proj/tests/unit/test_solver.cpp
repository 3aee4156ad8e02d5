#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "meshgen.hpp"
#include "oracles.hpp"
#include "wg/solver.hpp"

using namespace wg;
using namespace wg::testsupport;

namespace {

CsrMatrix diag_matrix(const std::vector<double>& d) {
  std::vector<Triplet> t;
  for (size_t i = 0; i < d.size(); ++i) t.push_back({(int)i, (int)i, d[i]});
  return CsrMatrix::from_triplets(static_cast<int>(d.size()), std::move(t));
}

}  // namespace

TEST_CASE("identity system solves in one iteration") {
  const CsrMatrix A = diag_matrix({1.0, 1.0, 1.0, 1.0});
  Eigen::VectorXd b(4);
  b << 3.0, -1.0, 0.5, 2.0;
  const auto [x, rep] = solve_spd(A, b);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 1);
  CHECK((x - b).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("2x2 hand-solved system") {
  std::vector<Triplet> t = {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}};
  const CsrMatrix A = CsrMatrix::from_triplets(2, std::move(t));
  Eigen::VectorXd b(2);
  b << 3.0, 3.0;
  const auto [x, rep] = solve_spd(A, b);
  CHECK(rep.converged);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Jacobi preconditioning is exact on diagonal systems") {
  const CsrMatrix A = diag_matrix({1.0, 1e6});
  Eigen::VectorXd b(2);
  b << 1.0, 1e6;
  const auto [x, rep] = solve_spd(A, b);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 2);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero right-hand side returns the zero solution") {
  const CsrMatrix A = diag_matrix({2.0, 3.0});
  const auto [x, rep] = solve_spd(A, Eigen::VectorXd::Zero(2));
  CHECK(rep.converged);
  CHECK(rep.iterations == 0);
  CHECK(x.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("indefinite matrix raises NotSpdError") {
  const CsrMatrix A = diag_matrix({1.0, -1.0});
  Eigen::VectorXd b(2);
  b << 1.0, 1.0;
  CHECK_THROWS_AS(solve_spd(A, b), NotSpdError);
}

TEST_CASE("iteration budget exhaustion carries the report") {
  // Laplacian-like chain; one iteration cannot converge
  std::vector<Triplet> t;
  const int n = 50;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  const CsrMatrix A = CsrMatrix::from_triplets(n, std::move(t));
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(n);
  try {
    solve_spd(A, b, 1e-12, 2);
    FAIL("expected SolverConvergenceError");
  } catch (const SolverConvergenceError& e) {
    CHECK(e.report.iterations == 2);
    CHECK(e.report.rel_residual > 1e-12);
    CHECK_FALSE(e.report.converged);
  }
}

TEST_CASE("residual certificate: reported residual matches a recomputation") {
  uint64_t state = 12;
  const int n = 80;
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 4.0 + uniform01(state)});
    if (i > 0) {
      const double off = -uniform01(state);
      t.push_back({i, i - 1, off});
      t.push_back({i - 1, i, off});
    }
  }
  const CsrMatrix A = CsrMatrix::from_triplets(n, std::move(t));
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b[i] = 2.0 * uniform01(state) - 1.0;
  const auto [x, rep] = solve_spd(A, b, 1e-12);
  CHECK(rep.converged);
  const double recomputed = (b - A.apply(x)).norm() / b.norm();
  CHECK(std::abs(recomputed - rep.rel_residual) < 1e-13);
  // dense oracle agreement
  const Eigen::VectorXd oracle = dense_spd_solve(A, b);
  CHECK((x - oracle).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("determinism: identical inputs give identical iterates") {
  uint64_t state = 3;
  const int n = 40;
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 3.0 + uniform01(state)});
    if (i > 0) {
      t.push_back({i, i - 1, -0.5});
      t.push_back({i - 1, i, -0.5});
    }
  }
  const CsrMatrix A = CsrMatrix::from_triplets(n, std::move(t));
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b[i] = uniform01(state);
  const auto [x1, r1] = solve_spd(A, b, 1e-13);
  const auto [x2, r2] = solve_spd(A, b, 1e-13);
  CHECK(r1.iterations == r2.iterations);
  CHECK((x1 - x2).cwiseAbs().maxCoeff() == 0.0);
}
