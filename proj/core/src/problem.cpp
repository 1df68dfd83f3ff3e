#include "sdfem/problem.hpp"

#include <cmath>

#include "sdfem/errors.hpp"

namespace sdfem {

namespace {

// Solution factors. g carries the layer at x=1, h the layer at y=1.
//   g(x) = 2 sin(x) (1 - Ex),   Ex = e^{-2(1-x)/eps}
//   h(y) = y^2 (1 - Ey),        Ey = e^{-(1-y)/eps}
double factor_g(double x, double eps) {
  return 2.0 * std::sin(x) * (1.0 - std::exp(-2.0 * (1.0 - x) / eps));
}

double factor_g_prime(double x, double eps) {
  const double ex = std::exp(-2.0 * (1.0 - x) / eps);
  return 2.0 * std::cos(x) * (1.0 - ex) - (4.0 / eps) * std::sin(x) * ex;
}

double factor_h(double y, double eps) {
  return y * y * (1.0 - std::exp(-(1.0 - y) / eps));
}

double factor_h_prime(double y, double eps) {
  const double ey = std::exp(-(1.0 - y) / eps);
  return 2.0 * y * (1.0 - ey) - (y * y / eps) * ey;
}

// One-dimensional operator pieces of f = h*(-eps g'' + 2g') + g*(-eps h'' + h') + g*h.
// Expanding -eps g'' + 2g' makes the (8/eps) sin(x) Ex terms cancel; the
// remaining expressions are free of 1/eps and safe for eps -> 0.
double lx_of_g(double x, double eps) {
  const double ex = std::exp(-2.0 * (1.0 - x) / eps);
  return (1.0 - ex) * (2.0 * eps * std::sin(x) + 4.0 * std::cos(x)) + 8.0 * std::cos(x) * ex;
}

double ly_of_h(double y, double eps) {
  const double ey = std::exp(-(1.0 - y) / eps);
  return (1.0 - ey) * (2.0 * y - 2.0 * eps) + 4.0 * y * ey;
}

} // namespace

ProblemSpec make_test_problem(double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("make_test_problem: epsilon must be positive");
  ProblemSpec p;
  p.epsilon = epsilon;
  p.b1 = [](double, double) { return 2.0; };
  p.b2 = [](double, double) { return 1.0; };
  p.c = [](double, double) { return 1.0; };
  p.f = [epsilon](double x, double y) {
    return factor_h(y, epsilon) * lx_of_g(x, epsilon) +
           factor_g(x, epsilon) * ly_of_h(y, epsilon) +
           factor_g(x, epsilon) * factor_h(y, epsilon);
  };
  p.mu0 = 1.0;
  p.beta1 = 2.0;
  p.beta2 = 1.0;
  p.exact = ExactSolution{
      [epsilon](double x, double y) { return factor_g(x, epsilon) * factor_h(y, epsilon); },
      [epsilon](double x, double y) { return factor_g_prime(x, epsilon) * factor_h(y, epsilon); },
      [epsilon](double x, double y) { return factor_g(x, epsilon) * factor_h_prime(y, epsilon); }};
  return p;
}

ExactValues eval_exact(const ProblemSpec& problem, double x, double y) {
  if (!problem.exact)
    throw UnsupportedError("eval_exact: problem has no exact solution attached");
  return {problem.exact->u(x, y), problem.exact->ux(x, y), problem.exact->uy(x, y)};
}

} // namespace sdfem
