#pragma once

#include <array>
#include <vector>

#include "sdfem/analysis.hpp"
#include "sdfem/assembly.hpp"
#include "sdfem/mesh.hpp"

namespace sdfem {

// Piecewise-quadratic function on the macromesh in the nodal basis:
// values at the 3 vertices, then at the 3 edge midpoints (edge k runs from
// vertex k to vertex (k+1) mod 3). Globally continuous by construction
// whenever the coefficients come from a single nodal vector.
struct QuadraticField {
  int n = 0;  // fine-mesh cell count per direction
  std::vector<std::array<double, 6>> coeffs;
};

// Quadratic recovery: interpolate the nodal field at the 6 interpolation
// nodes of every macrotriangle. No quadrature involved; all interpolation
// points are fine-mesh nodes.
QuadraticField postprocess(const ShishkinMesh& mesh, const MacroMesh& macro,
                           const DiscreteField& field);

// Same operator applied to a continuous function (interpolates g at the
// interpolation nodes). Equals postprocess(nodal interpolant of g).
QuadraticField postprocess_function(const ShishkinMesh& mesh, const MacroMesh& macro,
                                    const ScalarFn& g);

struct QuadraticEval {
  double value, dx, dy;
};

// Evaluate on a specific macrotriangle (the point is taken in its closure).
QuadraticEval eval_quadratic_on(const ShishkinMesh& mesh, const MacroMesh& macro,
                                const QuadraticField& field, int macro_id, double x, double y);

// Locate the macrotriangle containing (x, y); points on shared edges go to
// the lowest macrotriangle index.
int locate_macro(const ShishkinMesh& mesh, const MacroMesh& macro, double x, double y);

QuadraticEval eval_quadratic(const ShishkinMesh& mesh, const MacroMesh& macro,
                             const QuadraticField& field, double x, double y);

// Adapter for the error-norm quadrature loop.
PiecewiseEvaluator quadratic_field_evaluator(const ShishkinMesh& mesh, const MacroMesh& macro,
                                             const QuadraticField& field);

} // namespace sdfem
