#pragma once

#include <array>
#include <functional>
#include <vector>

#include "sdfem/assembly.hpp"
#include "sdfem/mesh.hpp"
#include "sdfem/problem.hpp"

namespace sdfem {

struct NormWeights {
  double mu0 = 1.0;
  double epsilon = 1.0;
};

DiscreteField nodal_interpolant(const ShishkinMesh& mesh, const ScalarFn& g);

struct DiscreteNorms {
  double energy = 0.0;
  double sd = 0.0;
};

// energy^2 = eps v'Kv + mu0 v'Mv; sd^2 adds the streamline term v'Sv.
DiscreteNorms discrete_norms(const DiscreteField& field, const NormMatrices& matrices,
                             const NormWeights& weights);

// Evaluates a piecewise-polynomial function at a point known to lie in the
// given fine triangle: fills value and the two first partials.
using PiecewiseEvaluator =
    std::function<void(const TriangleRef&, const Point&, double& value, double& dx, double& dy)>;

// Views a nodal field as its piecewise-linear function. The returned
// callable references mesh and field; both must outlive it.
PiecewiseEvaluator p1_field_evaluator(const ShishkinMesh& mesh, const DiscreteField& field);

// sqrt(sum_K int_K eps|grad(u - w)|^2 + mu0 (u - w)^2) by per-triangle
// quadrature. Deterministic for any thread count (ordered reduction).
double continuous_error_energy_norm(const ShishkinMesh& mesh, const ExactSolution& exact,
                                    const PiecewiseEvaluator& w, const NormWeights& weights,
                                    int quad_degree = 6, int threads = 1);

// Energy norm of w itself (error against zero).
double continuous_energy_norm(const ShishkinMesh& mesh, const PiecewiseEvaluator& w,
                              const NormWeights& weights, int quad_degree = 6, int threads = 1);

// rate[k] = log2(e[k]/e[k+1]) for errors listed by doubling N.
std::vector<double> compute_rates(const std::vector<double>& errors);

enum class Direction { X, Y };

// Smooth test function with the derivatives the patch bound needs.
// third(l, m) = d^3 w / dx^l dy^m with l + m = 3.
struct PatchFunction {
  ScalarFn value, dx, dy;
  std::function<double(int, int, double, double)> third;
};

struct PatchReport {
  int i, j;
  double lhs, bound, ratio;
};

// Per-patch check of the interpolant-derivative cancellation: each patch is
// a parallelogram of two fine triangles on which the interpolant's
// x-derivative (or y-derivative) is constant. lhs = |int_Q (w - w^I)_x|,
// bound = meas(Q) * sum_{l+m=2} hx^l hy^m sup|d^{l+1}_x d^m_y w| (direction
// X; symmetric for Y), sup sampled on a 5x5 grid per triangle. Patches
// whose two cells have unequal spacing (across a transition line) are
// skipped.
std::vector<PatchReport> verify_patch_identity(const ShishkinMesh& mesh, const PatchFunction& w,
                                               Direction dir);

// Relative algebraic residual ||rhs - A x|| / ||rhs||; zero exactly when the
// discrete solution satisfies Galerkin orthogonality.
double verify_orthogonality(const LinearSystem& system, const std::vector<double>& x);

struct InterpBoundRow {
  Subdomain subdomain;
  double max_error;     // sup over sample points of |u - u^I|
  double ref_uniform;   // N^-2
  double ref_log;       // N^-2 ln^2 N
};

std::array<InterpBoundRow, 4> interpolation_bound_report(const ShishkinMesh& mesh,
                                                         const ProblemSpec& problem);

} // namespace sdfem
