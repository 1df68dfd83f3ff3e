#include <doctest.h>

#include <cmath>

#include "sdfem/errors.hpp"
#include "sdfem/problem.hpp"

using namespace sdfem;

namespace {

// Central second differences, adequate away from layer scales.
double fd_laplacian(const ExactSolution& ex, double x, double y, double h) {
  return (ex.u(x + h, y) + ex.u(x - h, y) + ex.u(x, y + h) + ex.u(x, y - h) - 4.0 * ex.u(x, y)) /
         (h * h);
}

} // namespace

TEST_SUITE("problem") {

TEST_CASE("constructor validates epsilon") {
  CHECK_THROWS_AS(make_test_problem(0.0), ConfigError);
  CHECK_THROWS_AS(make_test_problem(-1e-8), ConfigError);
}

TEST_CASE("coefficients and bounds") {
  const ProblemSpec p = make_test_problem(1e-8);
  CHECK(p.epsilon == 1e-8);
  CHECK(p.b1(0.3, 0.7) == 2.0);
  CHECK(p.b2(0.3, 0.7) == 1.0);
  CHECK(p.c(0.3, 0.7) == 1.0);
  CHECK(p.beta1 == 2.0);
  CHECK(p.beta2 == 1.0);
  CHECK(p.mu0 == 1.0);
  CHECK(p.exact.has_value());
}

TEST_CASE("frozen point values away from the layers, eps=1e-8") {
  const ProblemSpec p = make_test_problem(1e-8);
  const ExactValues v = eval_exact(p, 0.5, 0.5);
  // Layer exponentials underflow to 0 at (0.5, 0.5): u = 2 sin(x) y^2.
  CHECK(v.u == doctest::Approx(0.2397127693021015).epsilon(1e-14));
  CHECK(v.ux == doctest::Approx(0.4387912809451864).epsilon(1e-14));
  CHECK(v.uy == doctest::Approx(0.9588510772084060).epsilon(1e-14));
}

TEST_CASE("homogeneous Dirichlet boundary") {
  const ProblemSpec p = make_test_problem(1e-6);
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CHECK(p.exact->u(0.0, t) == 0.0);
    CHECK(p.exact->u(t, 0.0) == 0.0);
    CHECK(p.exact->u(1.0, t) == 0.0);
    CHECK(p.exact->u(t, 1.0) == 0.0);
  }
}

TEST_CASE("gradient matches finite differences of u") {
  const ProblemSpec p = make_test_problem(1e-2);
  const double h = 1e-6;
  for (const auto& [x, y] : {std::pair{0.3, 0.7}, std::pair{0.6, 0.4}, std::pair{0.9, 0.8}}) {
    const ExactValues v = eval_exact(p, x, y);
    const double fx = (p.exact->u(x + h, y) - p.exact->u(x - h, y)) / (2.0 * h);
    const double fy = (p.exact->u(x, y + h) - p.exact->u(x, y - h)) / (2.0 * h);
    CHECK(v.ux == doctest::Approx(fx).epsilon(1e-7));
    CHECK(v.uy == doctest::Approx(fy).epsilon(1e-7));
  }
}

TEST_CASE("f satisfies the PDE at a smooth point") {
  const ProblemSpec p = make_test_problem(1e-2);
  const double x = 0.3, y = 0.7;
  const ExactValues v = eval_exact(p, x, y);
  const double lap = fd_laplacian(*p.exact, x, y, 1e-4);
  const double residual = -p.epsilon * lap + 2.0 * v.ux + v.uy + v.u;
  CHECK(residual == doctest::Approx(p.f(x, y)).epsilon(1e-6));
}

TEST_CASE("f satisfies the PDE inside the layers") {
  const ProblemSpec p = make_test_problem(1e-2);
  // (0.98, 0.9): x-layer is active, exp(-2(1-x)/eps) = exp(-4).
  {
    const double x = 0.98, y = 0.9;
    const ExactValues v = eval_exact(p, x, y);
    const double lap = fd_laplacian(*p.exact, x, y, 1e-5);
    const double residual = -p.epsilon * lap + 2.0 * v.ux + v.uy + v.u;
    CHECK(residual == doctest::Approx(p.f(x, y)).epsilon(1e-3));
  }
  {
    const double x = 0.4, y = 0.99;
    const ExactValues v = eval_exact(p, x, y);
    const double lap = fd_laplacian(*p.exact, x, y, 1e-5);
    const double residual = -p.epsilon * lap + 2.0 * v.ux + v.uy + v.u;
    CHECK(residual == doctest::Approx(p.f(x, y)).epsilon(1e-3));
  }
}

TEST_CASE("stable for extreme epsilon: finite everywhere") {
  const ProblemSpec p = make_test_problem(1e-10);
  for (double x : {0.0, 0.25, 0.5, 0.999999999999, 1.0}) {
    for (double y : {0.0, 0.25, 0.5, 0.999999999999, 1.0}) {
      const ExactValues v = eval_exact(p, x, y);
      CHECK(std::isfinite(v.u));
      CHECK(std::isfinite(v.ux));
      CHECK(std::isfinite(v.uy));
      CHECK(std::isfinite(p.f(x, y)));
    }
  }
  // Maximum of |u| stays O(1).
  CHECK(std::abs(p.exact->u(0.999, 0.999)) < 3.0);
}

TEST_CASE("exact evaluation requires an exact solution") {
  ProblemSpec p = make_test_problem(1e-4);
  p.exact.reset();
  CHECK_THROWS_AS(eval_exact(p, 0.5, 0.5), UnsupportedError);
}

} // TEST_SUITE
