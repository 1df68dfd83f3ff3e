#include <benchmark/benchmark.h>

#include <vector>

#include "sdfem/analysis.hpp"
#include "sdfem/assembly.hpp"
#include "sdfem/gmres.hpp"
#include "sdfem/mesh.hpp"
#include "sdfem/postprocess.hpp"
#include "sdfem/problem.hpp"

namespace {

sdfem::MeshParams layer_params(int n) {
  sdfem::MeshParams p;
  p.n = n;
  p.epsilon = 1e-8;
  p.beta1 = 2.0;
  p.beta2 = 1.0;
  return p;
}

void bm_build_mesh(benchmark::State& state) {
  const sdfem::MeshParams p = layer_params(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    sdfem::ShishkinMesh mesh = sdfem::build_mesh(p);
    benchmark::DoNotOptimize(mesh.xs.data());
  }
}
BENCHMARK(bm_build_mesh)->Arg(64)->Arg(256);

void bm_assemble_system(benchmark::State& state) {
  const sdfem::ShishkinMesh mesh = sdfem::build_mesh(layer_params(static_cast<int>(state.range(0))));
  const sdfem::ProblemSpec problem = sdfem::make_test_problem(1e-8);
  for (auto _ : state) {
    sdfem::LinearSystem system = sdfem::assemble_system(mesh, problem, 1.0);
    benchmark::DoNotOptimize(system.a.vals.data());
  }
}
BENCHMARK(bm_assemble_system)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void bm_spmv(benchmark::State& state) {
  const sdfem::ShishkinMesh mesh = sdfem::build_mesh(layer_params(static_cast<int>(state.range(0))));
  const sdfem::ProblemSpec problem = sdfem::make_test_problem(1e-8);
  const sdfem::LinearSystem system = sdfem::assemble_system(mesh, problem, 1.0);
  std::vector<double> x(static_cast<std::size_t>(system.a.cols), 1.0);
  std::vector<double> y(static_cast<std::size_t>(system.a.rows), 0.0);
  for (auto _ : state) {
    sdfem::spmv(system.a, x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * system.a.nnz());
}
BENCHMARK(bm_spmv)->Arg(128)->Arg(256);

void bm_gmres_solve(benchmark::State& state) {
  const sdfem::ShishkinMesh mesh = sdfem::build_mesh(layer_params(static_cast<int>(state.range(0))));
  const sdfem::ProblemSpec problem = sdfem::make_test_problem(1e-8);
  const sdfem::LinearSystem system = sdfem::assemble_system(mesh, problem, 1.0);
  for (auto _ : state) {
    sdfem::GmresResult result = sdfem::gmres(system.a, system.rhs);
    benchmark::DoNotOptimize(result.x.data());
  }
}
BENCHMARK(bm_gmres_solve)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void bm_error_norm(benchmark::State& state) {
  const sdfem::ShishkinMesh mesh = sdfem::build_mesh(layer_params(static_cast<int>(state.range(0))));
  const sdfem::ProblemSpec problem = sdfem::make_test_problem(1e-8);
  const sdfem::DiscreteField interp = sdfem::nodal_interpolant(mesh, problem.exact->u);
  const sdfem::PiecewiseEvaluator eval = sdfem::p1_field_evaluator(mesh, interp);
  const sdfem::NormWeights weights{problem.mu0, 1e-8};
  for (auto _ : state) {
    double err = sdfem::continuous_error_energy_norm(mesh, *problem.exact, eval, weights);
    benchmark::DoNotOptimize(err);
  }
}
BENCHMARK(bm_error_norm)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void bm_postprocess(benchmark::State& state) {
  const sdfem::ShishkinMesh mesh = sdfem::build_mesh(layer_params(static_cast<int>(state.range(0))));
  const sdfem::MacroMesh macro = sdfem::build_macro_mesh(mesh);
  const sdfem::ProblemSpec problem = sdfem::make_test_problem(1e-8);
  const sdfem::DiscreteField interp = sdfem::nodal_interpolant(mesh, problem.exact->u);
  for (auto _ : state) {
    sdfem::QuadraticField post = sdfem::postprocess(mesh, macro, interp);
    benchmark::DoNotOptimize(post.coeffs.data());
  }
}
BENCHMARK(bm_postprocess)->Arg(64)->Arg(256);

} // namespace

BENCHMARK_MAIN();
