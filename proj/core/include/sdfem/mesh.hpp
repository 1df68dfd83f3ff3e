#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace sdfem {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Parameters of the layer-adapted tensor mesh on the unit square.
// N cells per direction; the transition parameters are
//   lambda_x = min(1/2, rho*(epsilon/beta1)*ln N),
//   lambda_y = min(1/2, rho*(epsilon/beta2)*ln N),
// splitting each direction into a coarse part [0, 1-lambda] and a fine
// layer part [1-lambda, 1] with N/2 uniform cells each.
struct MeshParams {
  int n = 8;
  double epsilon = 1e-8;
  double beta1 = 1.0;
  double beta2 = 1.0;
  double rho = 2.5;
};

// Throws ConfigError if n is odd or < 4 or any positivity constraint fails.
// require_macro additionally demands n divisible by 4 (needed by the
// macrotriangle postprocessing mesh).
void validate_params(const MeshParams& params, bool require_macro = false);

// Each rectangular cell is split by the diagonal running from its
// lower-right corner (x_{i+1}, y_j) to its upper-left corner (x_i, y_{j+1}).
// Lower = triangle below-left of that diagonal, vertices
//   (x_i, y_j), (x_{i+1}, y_j), (x_i, y_{j+1});
// Upper = triangle above-right, vertices
//   (x_i, y_{j+1}), (x_{i+1}, y_j), (x_{i+1}, y_{j+1}).
// Both vertex orderings are counterclockwise.
enum class CellHalf : std::uint8_t { Lower = 0, Upper = 1 };

struct TriangleRef {
  int i = 0;
  int j = 0;
  CellHalf half = CellHalf::Lower;
};

enum class Subdomain : std::uint8_t { Smooth = 0, LayerX = 1, LayerY = 2, LayerXY = 3 };

struct ShishkinMesh {
  MeshParams params;
  double lambda_x = 0.0;
  double lambda_y = 0.0;
  bool lambda_x_clamped = false;
  bool lambda_y_clamped = false;
  std::vector<double> xs; // n+1 strictly increasing, xs[0]=0, xs[n]=1
  std::vector<double> ys;

  int n() const { return params.n; }
  int node_count() const { return (params.n + 1) * (params.n + 1); }
  int triangle_count() const { return 2 * params.n * params.n; }

  // Lexicographic node numbering: id = i + j*(n+1).
  int node_id(int i, int j) const { return i + j * (params.n + 1); }
  std::pair<int, int> node_ij(int id) const {
    return {id % (params.n + 1), id / (params.n + 1)};
  }
  Point node(int id) const {
    auto [i, j] = node_ij(id);
    return {xs[i], ys[j]};
  }

  double hx(int i) const { return xs[i + 1] - xs[i]; }
  double hy(int j) const { return ys[j + 1] - ys[j]; }

  // Triangles enumerated as t = 2*(i + j*n) + half.
  TriangleRef triangle(int t) const;
  int triangle_index(const TriangleRef& tri) const {
    return 2 * (tri.i + tri.j * params.n) + static_cast<int>(tri.half);
  }
  std::array<int, 3> triangle_nodes(const TriangleRef& tri) const;
  std::array<Point, 3> triangle_vertices(const TriangleRef& tri) const;
  double triangle_area(const TriangleRef& tri) const {
    return 0.5 * hx(tri.i) * hy(tri.j);
  }

  bool is_boundary_node(int id) const {
    auto [i, j] = node_ij(id);
    return i == 0 || j == 0 || i == params.n || j == params.n;
  }

  // Cell index of the coordinate along one direction, computed from the
  // two-region structure in O(1). Clamps to [0, n-1].
  int locate_cell_x(double x) const;
  int locate_cell_y(double y) const;
};

// (lambda_x, lambda_y) for the given parameters. Warns on stderr when a
// value clamps at 1/2 (the layer-resolving branch no longer applies).
std::pair<double, double> compute_transition_parameters(const MeshParams& params);

ShishkinMesh build_mesh(const MeshParams& params);

// Subdomain of a triangle from its cell indices: both below n/2 -> Smooth,
// i >= n/2 only -> LayerX, j >= n/2 only -> LayerY, both -> LayerXY.
// Throws std::out_of_range for indices outside [0, n).
Subdomain classify_triangle(const ShishkinMesh& mesh, const TriangleRef& tri);

const char* subdomain_name(Subdomain s);

// One coarse triangle of the postprocessing macromesh: four fine triangles
// plus the six fine-mesh nodes carrying its quadratic nodal values
// (3 vertices then 3 edge midpoints, midpoint k between vertices k,k+1).
struct MacroTriangle {
  Subdomain subdomain = Subdomain::Smooth;
  std::array<TriangleRef, 4> fine;
  std::array<int, 3> vertex_nodes;
  std::array<int, 3> midpoint_nodes;
};

struct MacroMesh {
  int n = 0; // fine-mesh N this macromesh was built from
  std::vector<MacroTriangle> tris;
  std::vector<std::int32_t> macro_of_fine; // fine triangle index -> macro index

  int count() const { return static_cast<int>(tris.size()); }
};

// Groups 2x2 cell blocks into two macrotriangles each. Requires n
// divisible by 4 so that block boundaries meet the transition lines.
MacroMesh build_macro_mesh(const ShishkinMesh& mesh);

} // namespace sdfem
