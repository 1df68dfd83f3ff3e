#pragma once

#include <string>
#include <vector>

#include "sdfem/assembly.hpp"
#include "sdfem/gmres.hpp"
#include "sdfem/mesh.hpp"
#include "sdfem/problem.hpp"
#include "sdfem/report.hpp"

namespace sdfem {

struct SolverConfig {
  double tol = 1e-12;
  int restart = 50;
  int max_iters = 20000;
  Preconditioner precond = Preconditioner::Jacobi;
};

struct QuadConfig {
  int galerkin = 4;
  int rhs = 6;
  int norms = 6;
};

struct RunConfig {
  std::string problem = "sinexp";  // built-in layer benchmark
  std::vector<int> ns = {8, 16, 32, 64, 128, 256};
  std::vector<double> epsilons = {1e-8};
  double c_star = 1.0;
  double rho = 2.5;
  bool postprocess = false;
  SolverConfig solver;
  QuadConfig quad;
  int threads = 1;
};

// Throws ConfigError on bad values. When rates_needed, the N list must be
// strictly doubling; postprocessing additionally requires N % 4 == 0.
void validate_config(const RunConfig& config, bool rates_needed);

// Only "sinexp" is built in.
ProblemSpec make_problem(const std::string& name, double epsilon);

struct CaseArtifacts {
  CaseResult row;
  ShishkinMesh mesh;
  LinearSystem system;
  DiscreteField solution;
  SolveStats stats;
};

// One (N, epsilon) cell: mesh, assemble, solve, error norms. Throws on
// configuration errors; solver non-convergence is recorded in the row.
CaseArtifacts solve_case(const RunConfig& config, int n, double epsilon);

// Full sweep over config.ns x config.epsilons; cells may run in parallel
// (config.threads); rows come back sorted by (epsilon, N). Per-cell
// failures are recorded in the row and do not abort the sweep.
ErrorReport run_convergence(const RunConfig& config);

} // namespace sdfem
