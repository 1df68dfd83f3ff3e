#include "sdfem/postprocess.hpp"

#include <cmath>
#include <stdexcept>

#include "sdfem/errors.hpp"

namespace sdfem {

namespace {

void check_match(const ShishkinMesh& mesh, const MacroMesh& macro) {
  if (macro.n != mesh.n() ||
      static_cast<int>(macro.macro_of_fine.size()) != mesh.triangle_count())
    throw ConfigError("postprocess: macromesh does not belong to this mesh");
}

} // namespace

QuadraticField postprocess(const ShishkinMesh& mesh, const MacroMesh& macro,
                           const DiscreteField& field) {
  check_match(mesh, macro);
  if (static_cast<int>(field.values.size()) != mesh.node_count())
    throw DimensionError("postprocess: field size does not match mesh");
  QuadraticField out;
  out.n = macro.n;
  out.coeffs.resize(macro.tris.size());
  for (std::size_t m = 0; m < macro.tris.size(); ++m) {
    const MacroTriangle& mt = macro.tris[m];
    for (int k = 0; k < 3; ++k) {
      out.coeffs[m][k] = field.values[mt.vertex_nodes[k]];
      out.coeffs[m][3 + k] = field.values[mt.midpoint_nodes[k]];
    }
  }
  return out;
}

QuadraticField postprocess_function(const ShishkinMesh& mesh, const MacroMesh& macro,
                                    const ScalarFn& g) {
  check_match(mesh, macro);
  QuadraticField out;
  out.n = macro.n;
  out.coeffs.resize(macro.tris.size());
  for (std::size_t m = 0; m < macro.tris.size(); ++m) {
    const MacroTriangle& mt = macro.tris[m];
    for (int k = 0; k < 3; ++k) {
      const Point pv = mesh.node(mt.vertex_nodes[k]);
      const Point pm = mesh.node(mt.midpoint_nodes[k]);
      out.coeffs[m][k] = g(pv.x, pv.y);
      out.coeffs[m][3 + k] = g(pm.x, pm.y);
    }
  }
  return out;
}

QuadraticEval eval_quadratic_on(const ShishkinMesh& mesh, const MacroMesh& macro,
                                const QuadraticField& field, int macro_id, double x, double y) {
  check_match(mesh, macro);
  if (macro_id < 0 || macro_id >= macro.count())
    throw std::out_of_range("eval_quadratic_on: macrotriangle index out of range");
  const MacroTriangle& mt = macro.tris[macro_id];
  const std::array<Point, 3> v = {mesh.node(mt.vertex_nodes[0]), mesh.node(mt.vertex_nodes[1]),
                                  mesh.node(mt.vertex_nodes[2])};
  const double det =
      (v[1].x - v[0].x) * (v[2].y - v[0].y) - (v[2].x - v[0].x) * (v[1].y - v[0].y);
  const double l1 =
      ((x - v[0].x) * (v[2].y - v[0].y) - (v[2].x - v[0].x) * (y - v[0].y)) / det;
  const double l2 =
      ((v[1].x - v[0].x) * (y - v[0].y) - (x - v[0].x) * (v[1].y - v[0].y)) / det;
  const std::array<double, 3> lam = {1.0 - l1 - l2, l1, l2};
  const std::array<double, 3> lx = {(v[1].y - v[2].y) / det, (v[2].y - v[0].y) / det,
                                    (v[0].y - v[1].y) / det};
  const std::array<double, 3> ly = {(v[2].x - v[1].x) / det, (v[0].x - v[2].x) / det,
                                    (v[1].x - v[0].x) / det};

  const auto& c = field.coeffs[macro_id];
  // d(value)/d(lambda_k): vertex basis lam(2lam-1), edge basis 4*lam_k*lam_{k+1}.
  std::array<double, 3> dl{};
  QuadraticEval out{0.0, 0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    const int k1 = (k + 1) % 3;
    out.value += c[k] * lam[k] * (2.0 * lam[k] - 1.0) + 4.0 * c[3 + k] * lam[k] * lam[k1];
    dl[k] += c[k] * (4.0 * lam[k] - 1.0) + 4.0 * c[3 + k] * lam[k1];
    dl[k1] += 4.0 * c[3 + k] * lam[k];
  }
  for (int k = 0; k < 3; ++k) {
    out.dx += dl[k] * lx[k];
    out.dy += dl[k] * ly[k];
  }
  return out;
}

int locate_macro(const ShishkinMesh& mesh, const MacroMesh& macro, double x, double y) {
  check_match(mesh, macro);
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
    throw std::out_of_range("locate_macro: point outside the unit square");
  int ci = mesh.locate_cell_x(x);
  int cj = mesh.locate_cell_y(y);
  // On an exact grid hit, prefer the cell to the left/below so shared points
  // resolve to the lowest containing macrotriangle index.
  if (x == mesh.xs[ci] && ci > 0) --ci;
  if (y == mesh.ys[cj] && cj > 0) --cj;
  const double fx = (x - mesh.xs[ci]) / mesh.hx(ci);
  const double fy = (y - mesh.ys[cj]) / mesh.hy(cj);
  const CellHalf half = (fx + fy <= 1.0) ? CellHalf::Lower : CellHalf::Upper;
  return macro.macro_of_fine[mesh.triangle_index({ci, cj, half})];
}

QuadraticEval eval_quadratic(const ShishkinMesh& mesh, const MacroMesh& macro,
                             const QuadraticField& field, double x, double y) {
  return eval_quadratic_on(mesh, macro, field, locate_macro(mesh, macro, x, y), x, y);
}

PiecewiseEvaluator quadratic_field_evaluator(const ShishkinMesh& mesh, const MacroMesh& macro,
                                             const QuadraticField& field) {
  check_match(mesh, macro);
  const ShishkinMesh* mp = &mesh;
  const MacroMesh* cp = &macro;
  const QuadraticField* fp = &field;
  return [mp, cp, fp](const TriangleRef& tri, const Point& p, double& value, double& dx,
                      double& dy) {
    const int m = cp->macro_of_fine[mp->triangle_index(tri)];
    const QuadraticEval e = eval_quadratic_on(*mp, *cp, *fp, m, p.x, p.y);
    value = e.value;
    dx = e.dx;
    dy = e.dy;
  };
}

} // namespace sdfem
