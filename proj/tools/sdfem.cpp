// Batch driver for the layer-adapted convection-diffusion solver: single
// solves, convergence sweeps with error tables, and the property
// verification suite. Exit codes: 0 success, 1 solver failure, 2 bad
// configuration, 3 verification failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sdfem/analysis.hpp"
#include "sdfem/csr.hpp"
#include "sdfem/driver.hpp"
#include "sdfem/errors.hpp"
#include "sdfem/verification.hpp"

namespace {

using nlohmann::json;

struct CliState {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::string dump_matrix;
  std::vector<int> ns;
  std::vector<double> epsilons;
  std::optional<double> cstar;
  std::optional<double> tol;
  std::optional<int> threads;
  std::optional<bool> post;

  sdfem::RunConfig run;
  sdfem::VerifyOptions verify;
};

template <typename T>
std::vector<T> as_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

void load_config_file(CliState& s) {
  if (s.config_path.empty()) return;
  std::ifstream in(s.config_path);
  if (!in) throw sdfem::ConfigError("cannot open config file: " + s.config_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw sdfem::ConfigError("config parse error: " + std::string(e.what()));
  }

  sdfem::RunConfig& r = s.run;
  if (j.contains("problem")) r.problem = j["problem"].get<std::string>();
  if (j.contains("N")) r.ns = as_list<int>(j["N"]);
  if (j.contains("epsilon")) r.epsilons = as_list<double>(j["epsilon"]);
  if (j.contains("c_star")) r.c_star = j["c_star"].get<double>();
  if (j.contains("rho")) r.rho = j["rho"].get<double>();
  if (j.contains("postprocess")) r.postprocess = j["postprocess"].get<bool>();
  if (j.contains("threads")) r.threads = j["threads"].get<int>();
  if (j.contains("solver")) {
    const json& sj = j["solver"];
    if (sj.contains("tol")) r.solver.tol = sj["tol"].get<double>();
    if (sj.contains("restart")) r.solver.restart = sj["restart"].get<int>();
    if (sj.contains("max_iters")) r.solver.max_iters = sj["max_iters"].get<int>();
    if (sj.contains("preconditioner")) {
      const std::string p = sj["preconditioner"].get<std::string>();
      if (p == "jacobi")
        r.solver.precond = sdfem::Preconditioner::Jacobi;
      else if (p == "none")
        r.solver.precond = sdfem::Preconditioner::None;
      else
        throw sdfem::ConfigError("unknown preconditioner: " + p);
    }
  }
  if (j.contains("quadrature")) {
    const json& qj = j["quadrature"];
    if (qj.contains("galerkin")) r.quad.galerkin = qj["galerkin"].get<int>();
    if (qj.contains("rhs")) r.quad.rhs = qj["rhs"].get<int>();
    if (qj.contains("norms")) r.quad.norms = qj["norms"].get<int>();
  }
  if (j.contains("output")) {
    const json& oj = j["output"];
    if (oj.contains("path") && s.out_path.empty()) s.out_path = oj["path"].get<std::string>();
    if (oj.contains("format")) s.format = oj["format"].get<std::string>();
  }
  if (j.contains("verify")) {
    const json& vj = j["verify"];
    if (vj.contains("N")) s.verify.ns = as_list<int>(vj["N"]);
    if (vj.contains("epsilon")) s.verify.epsilons = as_list<double>(vj["epsilon"]);
    if (vj.contains("random_fields")) s.verify.random_fields = vj["random_fields"].get<int>();
    if (vj.contains("seed")) s.verify.seed = vj["seed"].get<unsigned>();
  }
}

void apply_overrides(CliState& s) {
  if (!s.ns.empty()) s.run.ns = s.ns;
  if (!s.epsilons.empty()) s.run.epsilons = s.epsilons;
  if (s.cstar) s.run.c_star = *s.cstar;
  if (s.tol) s.run.solver.tol = *s.tol;
  if (s.threads) s.run.threads = *s.threads;
  if (s.post) s.run.postprocess = *s.post;
  s.verify.c_star = s.run.c_star;
  s.verify.tol = s.run.solver.tol;
  if (s.format != "csv" && s.format != "markdown")
    throw sdfem::ConfigError("format must be csv or markdown, got " + s.format);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw sdfem::ConfigError("cannot open output file: " + path);
  return os;
}

int do_solve(CliState& s) {
  if (s.run.ns.size() != 1 || s.run.epsilons.size() != 1)
    throw sdfem::ConfigError("solve needs exactly one N and one epsilon");
  const int n = s.run.ns.front();
  const double eps = s.run.epsilons.front();
  const sdfem::CaseArtifacts art = sdfem::solve_case(s.run, n, eps);

  if (!s.dump_matrix.empty()) {
    std::ofstream ms = open_out(s.dump_matrix);
    sdfem::write_matrix_market(ms, art.system.a);
  }

  const std::string out = s.out_path.empty() ? "solution.csv" : s.out_path;
  {
    std::ofstream os = open_out(out);
    os << "node,x,y,value\n";
    char buf[96];
    for (int id = 0; id < art.mesh.node_count(); ++id) {
      const sdfem::Point p = art.mesh.node(id);
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", id, p.x, p.y,
                    art.solution.values[id]);
      os << buf;
    }
  }

  json stats = {{"problem", s.run.problem},
                {"N", n},
                {"epsilon", eps},
                {"c_star", s.run.c_star},
                {"unknowns", static_cast<int>(art.system.node_of_interior.size())},
                {"iterations", art.stats.iterations},
                {"restarts", art.stats.restarts},
                {"residual", art.stats.residual},
                {"converged", art.stats.converged},
                {"solution_file", out}};
  std::cout << stats.dump(2) << "\n";
  if (!art.stats.converged) {
    std::cerr << "sdfem: solver did not converge (" << art.row.message << ")\n";
    return 1;
  }
  return 0;
}

int do_converge(CliState& s) {
  const auto t0 = std::chrono::steady_clock::now();
  const sdfem::ErrorReport report = sdfem::run_convergence(s.run);
  const auto t1 = std::chrono::steady_clock::now();
  std::cerr << "sdfem: sweep of " << report.rows.size() << " cells finished in "
            << std::chrono::duration<double>(t1 - t0).count() << " s\n";

  if (s.out_path.empty()) {
    if (s.format == "csv")
      sdfem::write_report_csv(std::cout, report);
    else
      sdfem::write_report_markdown(std::cout, report);
  } else {
    std::ofstream os = open_out(s.out_path);
    if (s.format == "csv")
      sdfem::write_report_csv(os, report);
    else
      sdfem::write_report_markdown(os, report);
    std::cerr << "sdfem: wrote " << s.out_path << "\n";
  }

  int failures = 0;
  for (const sdfem::CaseResult& row : report.rows)
    if (!row.ok) {
      ++failures;
      std::cerr << "sdfem: cell N=" << row.n << " eps=" << row.epsilon
                << " failed: " << row.message << "\n";
    }
  return failures == 0 ? 0 : 1;
}

int do_verify(CliState& s) {
  const sdfem::VerificationReport report = sdfem::run_verification(s.verify);
  sdfem::print_verification(std::cout, report);
  return report.all_passed() ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streamline-diffusion FEM on layer-adapted meshes"};
  app.require_subcommand(1);

  CliState s;
  const auto add_common = [&s](CLI::App* cmd) {
    cmd->add_option("--config", s.config_path, "JSON config file");
    cmd->add_option("--N", s.ns, "mesh cells per direction (repeatable)");
    cmd->add_option("--eps", s.epsilons, "perturbation parameter(s)");
    cmd->add_option_function<double>(
        "--cstar", [&s](const double& v) { s.cstar = v; }, "stabilization constant");
    cmd->add_option_function<double>(
        "--tol", [&s](const double& v) { s.tol = v; }, "solver tolerance");
    cmd->add_option_function<int>(
        "--threads", [&s](const int& v) { s.threads = v; }, "worker threads");
    cmd->add_flag_function(
        "--post,!--no-post", [&s](std::int64_t v) { s.post = v > 0; },
        "enable quadratic postprocessing");
    cmd->add_option("--out", s.out_path, "output file (default stdout/solution.csv)");
    cmd->add_option("--format", s.format, "report format: csv or markdown");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one case and dump the nodal solution");
  add_common(solve);
  solve->add_option("--dump-matrix", s.dump_matrix, "write the system matrix (MatrixMarket)");

  CLI::App* converge = app.add_subcommand("converge", "run a convergence sweep");
  add_common(converge);

  CLI::App* verify = app.add_subcommand("verify", "run the property verification suite");
  add_common(verify);

  CLI::App* all = app.add_subcommand("all", "convergence sweep followed by verification");
  add_common(all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    load_config_file(s);
    apply_overrides(s);
    if (solve->parsed()) return do_solve(s);
    if (converge->parsed()) return do_converge(s);
    if (verify->parsed()) return do_verify(s);
    const int rc = do_converge(s);
    const int vc = do_verify(s);
    return rc != 0 ? rc : vc;
  } catch (const sdfem::ConfigError& e) {
    std::cerr << "sdfem: config error: " << e.what() << "\n";
    return 2;
  } catch (const sdfem::SolveError& e) {
    std::cerr << "sdfem: solver error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "sdfem: error: " << e.what() << "\n";
    return 1;
  }
}
