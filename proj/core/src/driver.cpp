#include "sdfem/driver.hpp"

#include <algorithm>
#include <cmath>

#include "sdfem/analysis.hpp"
#include "sdfem/errors.hpp"
#include "sdfem/postprocess.hpp"
#include "parallel.hpp"

namespace sdfem {

void validate_config(const RunConfig& config, bool rates_needed) {
  if (config.ns.empty()) throw ConfigError("config: N list is empty");
  if (config.epsilons.empty()) throw ConfigError("config: epsilon list is empty");
  for (int n : config.ns) {
    if (n < 4 || n % 2 != 0) throw ConfigError("config: N must be even and >= 4");
    if (config.postprocess && n % 4 != 0)
      throw ConfigError("config: postprocessing requires N divisible by 4");
  }
  if (rates_needed)
    for (std::size_t k = 0; k + 1 < config.ns.size(); ++k)
      if (config.ns[k + 1] != 2 * config.ns[k])
        throw ConfigError("config: N list must double at each step for rate columns");
  for (double e : config.epsilons)
    if (!(e > 0.0)) throw ConfigError("config: epsilon must be positive");
  if (!(config.c_star >= 0.0)) throw ConfigError("config: c_star must be nonnegative");
  if (!(config.rho > 0.0)) throw ConfigError("config: rho must be positive");
  if (!(config.solver.tol > 0.0)) throw ConfigError("config: solver tol must be positive");
  if (config.solver.restart < 1) throw ConfigError("config: solver restart must be >= 1");
  if (config.solver.max_iters < 1) throw ConfigError("config: solver max_iters must be >= 1");
  if (config.threads < 1) throw ConfigError("config: threads must be >= 1");
}

ProblemSpec make_problem(const std::string& name, double epsilon) {
  if (name == "sinexp") return make_test_problem(epsilon);
  throw ConfigError("unknown problem \"" + name + "\" (available: sinexp)");
}

namespace {

CaseArtifacts solve_case_impl(const RunConfig& config, int n, double epsilon, int threads) {
  const ProblemSpec problem = make_problem(config.problem, epsilon);

  MeshParams params;
  params.n = n;
  params.epsilon = epsilon;
  params.beta1 = problem.beta1;
  params.beta2 = problem.beta2;
  params.rho = config.rho;
  validate_params(params, config.postprocess);

  CaseArtifacts art;
  art.mesh = build_mesh(params);
  art.row.n = n;
  art.row.epsilon = epsilon;

  AssemblyOptions aopts;
  aopts.quad_galerkin_degree = config.quad.galerkin;
  aopts.quad_rhs_degree = config.quad.rhs;
  aopts.threads = threads;
  art.system = assemble_system(art.mesh, problem, config.c_star, aopts);

  GmresOptions gopts;
  gopts.tol = config.solver.tol;
  gopts.restart = config.solver.restart;
  gopts.max_iters = config.solver.max_iters;
  gopts.precond = config.solver.precond;
  GmresResult solve = gmres(art.system.a, art.system.rhs, gopts);
  art.stats = solve.stats;
  art.solution = field_from_interior(art.mesh, art.system, solve.x);
  art.row.gmres_iters = solve.stats.iterations;
  art.row.residual = solve.stats.residual;
  if (!solve.stats.converged) {
    art.row.ok = false;
    art.row.message = solve.stats.breakdown ? "gmres breakdown" : "gmres did not converge";
    return art;
  }

  const NormMatrices norms = assemble_norm_matrices(art.mesh, problem, config.c_star, aopts);
  const NormWeights weights{problem.mu0, epsilon};
  const DiscreteField interp = nodal_interpolant(art.mesh, problem.exact->u);
  DiscreteField diff;
  diff.values.resize(interp.values.size());
  for (std::size_t k = 0; k < diff.values.size(); ++k)
    diff.values[k] = interp.values[k] - art.solution.values[k];
  const DiscreteNorms dn = discrete_norms(diff, norms, weights);
  art.row.err_interp_energy = dn.energy;
  art.row.err_interp_sd = dn.sd;

  art.row.err_energy = continuous_error_energy_norm(
      art.mesh, *problem.exact, p1_field_evaluator(art.mesh, art.solution), weights,
      config.quad.norms, threads);

  if (config.postprocess) {
    const MacroMesh macro = build_macro_mesh(art.mesh);
    const QuadraticField post = postprocess(art.mesh, macro, art.solution);
    art.row.err_post_energy = continuous_error_energy_norm(
        art.mesh, *problem.exact, quadratic_field_evaluator(art.mesh, macro, post), weights,
        config.quad.norms, threads);
  }
  art.row.ok = true;
  return art;
}

} // namespace

CaseArtifacts solve_case(const RunConfig& config, int n, double epsilon) {
  validate_config(config, /*rates_needed=*/false);
  return solve_case_impl(config, n, epsilon, config.threads);
}

ErrorReport run_convergence(const RunConfig& config) {
  validate_config(config, /*rates_needed=*/true);

  struct Cell {
    int n;
    double epsilon;
  };
  std::vector<Cell> cells;
  for (double e : config.epsilons)
    for (int n : config.ns) cells.push_back({n, e});

  ErrorReport report;
  report.problem = config.problem;
  report.mu0 = make_problem(config.problem, config.epsilons.front()).mu0;
  report.c_star = config.c_star;
  report.rho = config.rho;
  report.tol = config.solver.tol;
  report.rows.resize(cells.size());

  // Whole cells go to workers and each cell runs the same serial code, so
  // the report is identical for every thread count.
  detail::parallel_for(0, static_cast<int>(cells.size()), config.threads, [&](int k) {
    CaseResult& row = report.rows[k];
    try {
      row = solve_case_impl(config, cells[k].n, cells[k].epsilon, 1).row;
    } catch (const std::exception& ex) {
      row.n = cells[k].n;
      row.epsilon = cells[k].epsilon;
      row.ok = false;
      row.message = ex.what();
    }
  });

  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const CaseResult& a, const CaseResult& b) {
                     return a.epsilon != b.epsilon ? a.epsilon < b.epsilon : a.n < b.n;
                   });
  return report;
}

} // namespace sdfem
