#include "sdfem/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sdfem/errors.hpp"

namespace sdfem {

void validate_params(const MeshParams& params, bool require_macro) {
  if (params.n < 4 || params.n % 2 != 0)
    throw ConfigError("mesh: N must be an even integer >= 4, got " + std::to_string(params.n));
  if (require_macro && params.n % 4 != 0)
    throw ConfigError("mesh: postprocessing requires N divisible by 4, got " +
                      std::to_string(params.n));
  if (!(params.epsilon > 0.0)) throw ConfigError("mesh: epsilon must be positive");
  if (!(params.beta1 > 0.0)) throw ConfigError("mesh: beta1 must be positive");
  if (!(params.beta2 > 0.0)) throw ConfigError("mesh: beta2 must be positive");
  if (!(params.rho > 0.0)) throw ConfigError("mesh: rho must be positive");
}

std::pair<double, double> compute_transition_parameters(const MeshParams& params) {
  validate_params(params);
  const double log_n = std::log(static_cast<double>(params.n));
  const double lx = params.rho * (params.epsilon / params.beta1) * log_n;
  const double ly = params.rho * (params.epsilon / params.beta2) * log_n;
  if (lx >= 0.5)
    std::fprintf(stderr,
                 "sdfem: warning: lambda_x clamped to 1/2 (N=%d, eps=%g); "
                 "mesh is not layer-adapted in x\n",
                 params.n, params.epsilon);
  if (ly >= 0.5)
    std::fprintf(stderr,
                 "sdfem: warning: lambda_y clamped to 1/2 (N=%d, eps=%g); "
                 "mesh is not layer-adapted in y\n",
                 params.n, params.epsilon);
  return {std::min(0.5, lx), std::min(0.5, ly)};
}

namespace {

// Piecewise-uniform coordinates: affine interpolation inside each region so
// that grid[n/2] hits 1-lambda exactly and accumulation drift cannot occur.
std::vector<double> piecewise_uniform_axis(int n, double lambda) {
  const int half = n / 2;
  std::vector<double> grid(n + 1);
  const double split = 1.0 - lambda;
  grid[0] = 0.0;
  for (int i = 1; i < half; ++i)
    grid[i] = split * (static_cast<double>(i) / half);
  grid[half] = split;
  for (int i = half + 1; i < n; ++i)
    grid[i] = split + lambda * (static_cast<double>(i - half) / half);
  grid[n] = 1.0;
  return grid;
}

} // namespace

ShishkinMesh build_mesh(const MeshParams& params) {
  validate_params(params);
  ShishkinMesh mesh;
  mesh.params = params;
  auto [lx, ly] = compute_transition_parameters(params);
  mesh.lambda_x = lx;
  mesh.lambda_y = ly;
  mesh.lambda_x_clamped = (lx == 0.5);
  mesh.lambda_y_clamped = (ly == 0.5);
  mesh.xs = piecewise_uniform_axis(params.n, lx);
  mesh.ys = piecewise_uniform_axis(params.n, ly);
  return mesh;
}

TriangleRef ShishkinMesh::triangle(int t) const {
  const int cell = t / 2;
  return {cell % params.n, cell / params.n,
          (t % 2 == 0) ? CellHalf::Lower : CellHalf::Upper};
}

std::array<int, 3> ShishkinMesh::triangle_nodes(const TriangleRef& tri) const {
  const int i = tri.i, j = tri.j;
  if (tri.half == CellHalf::Lower)
    return {node_id(i, j), node_id(i + 1, j), node_id(i, j + 1)};
  return {node_id(i, j + 1), node_id(i + 1, j), node_id(i + 1, j + 1)};
}

std::array<Point, 3> ShishkinMesh::triangle_vertices(const TriangleRef& tri) const {
  auto ids = triangle_nodes(tri);
  return {node(ids[0]), node(ids[1]), node(ids[2])};
}

namespace {

int locate_cell_axis(double v, double lambda, int n, const std::vector<double>& grid) {
  const int half = n / 2;
  const double split = 1.0 - lambda;
  int idx;
  if (v < split) {
    idx = static_cast<int>(v / split * half);
    if (idx >= half) idx = half - 1;
  } else {
    idx = half + static_cast<int>((v - split) / lambda * half);
    if (idx >= n) idx = n - 1;
  }
  if (idx < 0) idx = 0;
  // Rounding at region edges can be off by one cell; nudge into place.
  while (idx > 0 && v < grid[idx]) --idx;
  while (idx < n - 1 && v >= grid[idx + 1]) ++idx;
  return idx;
}

} // namespace

int ShishkinMesh::locate_cell_x(double x) const {
  return locate_cell_axis(x, lambda_x, params.n, xs);
}

int ShishkinMesh::locate_cell_y(double y) const {
  return locate_cell_axis(y, lambda_y, params.n, ys);
}

Subdomain classify_triangle(const ShishkinMesh& mesh, const TriangleRef& tri) {
  const int n = mesh.n();
  if (tri.i < 0 || tri.i >= n || tri.j < 0 || tri.j >= n)
    throw std::out_of_range("classify_triangle: cell index out of range");
  const bool layer_x = tri.i >= n / 2;
  const bool layer_y = tri.j >= n / 2;
  if (layer_x && layer_y) return Subdomain::LayerXY;
  if (layer_x) return Subdomain::LayerX;
  if (layer_y) return Subdomain::LayerY;
  return Subdomain::Smooth;
}

const char* subdomain_name(Subdomain s) {
  switch (s) {
    case Subdomain::Smooth: return "smooth";
    case Subdomain::LayerX: return "layer-x";
    case Subdomain::LayerY: return "layer-y";
    case Subdomain::LayerXY: return "layer-xy";
  }
  return "?";
}

MacroMesh build_macro_mesh(const ShishkinMesh& mesh) {
  validate_params(mesh.params, /*require_macro=*/true);
  const int n = mesh.n();
  const int blocks = n / 2;

  MacroMesh macro;
  macro.n = n;
  macro.tris.reserve(2 * blocks * blocks);
  macro.macro_of_fine.assign(mesh.triangle_count(), -1);

  for (int bj = 0; bj < blocks; ++bj) {
    for (int bi = 0; bi < blocks; ++bi) {
      const int i = 2 * bi, j = 2 * bj;

      // Lower macrotriangle: below the block diagonal from (x_{i+2}, y_j)
      // to (x_i, y_{j+2}). The diagonal is collinear with the fine-cell
      // diagonals it crosses, so four whole fine triangles lie on each side.
      MacroTriangle lower;
      lower.fine = {TriangleRef{i, j, CellHalf::Lower}, TriangleRef{i, j, CellHalf::Upper},
                    TriangleRef{i + 1, j, CellHalf::Lower}, TriangleRef{i, j + 1, CellHalf::Lower}};
      lower.vertex_nodes = {mesh.node_id(i, j), mesh.node_id(i + 2, j), mesh.node_id(i, j + 2)};
      lower.midpoint_nodes = {mesh.node_id(i + 1, j), mesh.node_id(i + 1, j + 1),
                              mesh.node_id(i, j + 1)};

      MacroTriangle upper;
      upper.fine = {TriangleRef{i + 1, j, CellHalf::Upper}, TriangleRef{i, j + 1, CellHalf::Upper},
                    TriangleRef{i + 1, j + 1, CellHalf::Lower},
                    TriangleRef{i + 1, j + 1, CellHalf::Upper}};
      upper.vertex_nodes = {mesh.node_id(i + 2, j), mesh.node_id(i + 2, j + 2),
                            mesh.node_id(i, j + 2)};
      upper.midpoint_nodes = {mesh.node_id(i + 2, j + 1), mesh.node_id(i + 1, j + 2),
                              mesh.node_id(i + 1, j + 1)};

      lower.subdomain = classify_triangle(mesh, lower.fine[0]);
      upper.subdomain = classify_triangle(mesh, upper.fine[0]);

      for (const MacroTriangle& m : {lower, upper}) {
        const auto id = static_cast<std::int32_t>(macro.tris.size());
        macro.tris.push_back(m);
        for (const TriangleRef& f : m.fine)
          macro.macro_of_fine[mesh.triangle_index(f)] = id;
      }
    }
  }
  return macro;
}

} // namespace sdfem
