#pragma once

#include <functional>
#include <optional>

namespace sdfem {

using ScalarFn = std::function<double(double, double)>;

struct ExactSolution {
  ScalarFn u, ux, uy;
};

// Convection-diffusion problem -eps*Lap(u) + b.grad(u) + c*u = f on the unit
// square with homogeneous Dirichlet data. beta1/beta2 bound b1/b2 from below,
// mu0 bounds c - div(b)/2; both feed the mesh and the norm weights.
struct ProblemSpec {
  double epsilon = 1.0;
  ScalarFn b1, b2, c, f;
  double mu0 = 1.0;
  double beta1 = 1.0, beta2 = 1.0;
  std::optional<ExactSolution> exact;
};

// Built-in benchmark problem: -eps*Lap(u) + 2u_x + u_y + u = f with exact
// solution u = 2 sin(x)(1 - e^{-2(1-x)/eps}) * y^2 (1 - e^{-(1-y)/eps}),
// which has exponential layers along x=1 and y=1. The manufactured f is
// written in a form where the O(1/eps) terms cancel analytically, so it is
// stable for arbitrarily small eps (layer exponentials underflow to +0,
// which is the correct limit).
ProblemSpec make_test_problem(double epsilon);

struct ExactValues {
  double u, ux, uy;
};

ExactValues eval_exact(const ProblemSpec& problem, double x, double y);

} // namespace sdfem
