#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "sdfem/analysis.hpp"
#include "sdfem/assembly.hpp"
#include "sdfem/errors.hpp"
#include "sdfem/mesh.hpp"
#include "sdfem/problem.hpp"
#include "sdfem/quadrature.hpp"

using namespace sdfem;

namespace {

MeshParams layer_params(int n, double eps) {
  MeshParams p;
  p.n = n;
  p.epsilon = eps;
  p.beta1 = 2.0;
  p.beta2 = 1.0;
  p.rho = 2.5;
  return p;
}

ScalarFn constant(double v) {
  return [v](double, double) { return v; };
}

// Pure diffusion -eps*Lap(u) = f; isolates the stiffness path.
ProblemSpec diffusion_problem(double eps, double f) {
  ProblemSpec p;
  p.epsilon = eps;
  p.b1 = constant(0.0);
  p.b2 = constant(0.0);
  p.c = constant(0.0);
  p.f = constant(f);
  return p;
}

double quadratic_form(const CsrMatrix& m, const std::vector<double>& v) {
  const std::vector<double> mv = spmv(m, v);
  return dot(v, mv);
}

} // namespace

TEST_SUITE("assembly") {

TEST_CASE("stabilization weight: coarse subdomain only") {
  const ShishkinMesh mesh = build_mesh(layer_params(8, 1e-8));
  CHECK(delta_k(mesh, {1, 1, CellHalf::Lower}, 1.0) == 1.0 / 8.0);
  CHECK(delta_k(mesh, {1, 1, CellHalf::Lower}, 2.5) == 2.5 / 8.0);
  CHECK(delta_k(mesh, {6, 1, CellHalf::Lower}, 1.0) == 0.0);
  CHECK(delta_k(mesh, {1, 6, CellHalf::Upper}, 1.0) == 0.0);
  CHECK(delta_k(mesh, {5, 5, CellHalf::Lower}, 1.0) == 0.0);
}

TEST_CASE("local stiffness on a right triangle") {
  // eps=1, b=c=f=0 on a uniform mesh: the element matrix is the classic
  // P1 stiffness, scale-invariant in 2D.
  const ShishkinMesh mesh = build_mesh(layer_params(4, 1.0));
  const ProblemSpec p = diffusion_problem(1.0, 0.0);
  const QuadratureRule& qg = triangle_rule(4);
  const QuadratureRule& qr = triangle_rule(6);

  const LocalElement lo = local_element(mesh, {0, 0, CellHalf::Lower}, p, 0.0, qg, qr);
  const std::array<double, 9> want_lo = {1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5};
  for (int k = 0; k < 9; ++k) CHECK(lo.mat[k] == doctest::Approx(want_lo[k]).epsilon(1e-14));
  for (int k = 0; k < 3; ++k) CHECK(lo.vec[k] == 0.0);

  const LocalElement up = local_element(mesh, {0, 0, CellHalf::Upper}, p, 0.0, qg, qr);
  const std::array<double, 9> want_up = {0.5, 0.0, -0.5, 0.0, 0.5, -0.5, -0.5, -0.5, 1.0};
  for (int k = 0; k < 9; ++k) CHECK(up.mat[k] == doctest::Approx(want_up[k]).epsilon(1e-14));
}

TEST_CASE("local convection term: row pattern b.grad(trial) times test mass") {
  const ShishkinMesh mesh = build_mesh(layer_params(4, 1.0));
  ProblemSpec p = diffusion_problem(0.0, 0.0);
  p.b1 = constant(1.0);
  const QuadratureRule& q = triangle_rule(4);
  const LocalElement el = local_element(mesh, {0, 0, CellHalf::Lower}, p, 0.0, q, q);
  // grad(lambda)/dx = (-4, 4, 0), int lambda_i = area/3 = 1/96.
  const std::array<double, 3> col = {-4.0 / 96.0, 4.0 / 96.0, 0.0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(el.mat[3 * i + j] == doctest::Approx(col[j]).epsilon(1e-14));
}

TEST_CASE("mass matrix entries sum to the domain area") {
  const ShishkinMesh mesh = build_mesh(layer_params(8, 1e-8));
  const NormMatrices nm = assemble_norm_matrices(mesh, make_test_problem(1e-8), 1.0);
  double sum = 0.0;
  for (double v : nm.mass.vals) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  // Constants lie in the kernel of the stiffness form, so entries cancel.
  // Layer cells carry O(1/h) entries, so measure the cancellation against
  // the total entry mass instead of an absolute unit.
  double ssum = 0.0, sabs = 0.0;
  for (double v : nm.stiffness.vals) {
    ssum += v;
    sabs += std::abs(v);
  }
  CHECK(std::abs(ssum) <= 1e-14 * sabs);
}

TEST_CASE("stiffness energy of the coordinate function is exact") {
  const ShishkinMesh mesh = build_mesh(layer_params(16, 1e-6));
  const NormMatrices nm = assemble_norm_matrices(mesh, make_test_problem(1e-6), 1.0);
  std::vector<double> vx(mesh.node_count());
  for (int id = 0; id < mesh.node_count(); ++id) vx[id] = mesh.node(id).x;
  // The quadratic form sums O(1/h) layer entries that cancel to 1, so the
  // achievable accuracy is a few ulps of the largest entry, not of 1.
  CHECK(quadratic_form(nm.stiffness, vx) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("streamline matrix energy has the closed form for a linear field") {
  const ShishkinMesh mesh = build_mesh(layer_params(8, 1e-8));
  const ProblemSpec p = make_test_problem(1e-8);
  const double c_star = 1.0;
  const NormMatrices nm = assemble_norm_matrices(mesh, p, c_star);
  std::vector<double> v(mesh.node_count());
  for (int id = 0; id < mesh.node_count(); ++id) v[id] = mesh.node(id).x + mesh.node(id).y;
  // b.grad(v) = 3 on the coarse region [0,1-lambda_x]x[0,1-lambda_y].
  const double smooth_area = mesh.xs[4] * mesh.ys[4];
  const double want = (c_star / 8.0) * 9.0 * smooth_area;
  CHECK(quadratic_form(nm.streamline, v) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("norm matrices are symmetric") {
  const ShishkinMesh mesh = build_mesh(layer_params(8, 1e-4));
  const NormMatrices nm = assemble_norm_matrices(mesh, make_test_problem(1e-4), 1.0);
  for (const CsrMatrix* m : {&nm.stiffness, &nm.mass, &nm.streamline}) {
    for (int i = 0; i < m->rows; ++i)
      for (int k = m->row_ptr[i]; k < m->row_ptr[i + 1]; ++k)
        CHECK(m->vals[k] == m->at(m->col_idx[k], i));
  }
}

TEST_CASE("system eliminates boundary unknowns") {
  const ShishkinMesh mesh = build_mesh(layer_params(4, 1e-2));
  const LinearSystem sys = assemble_system(mesh, make_test_problem(1e-2), 1.0);
  CHECK(sys.a.rows == 9);
  CHECK(sys.a.cols == 9);
  CHECK(sys.rhs.size() == 9);
  CHECK(sys.node_of_interior.size() == 9);
  CHECK(sys.interior_of_node.size() == 25);
  for (int id = 0; id < mesh.node_count(); ++id) {
    if (mesh.is_boundary_node(id)) {
      CHECK(sys.interior_of_node[id] == -1);
    } else {
      const int k = sys.interior_of_node[id];
      CHECK(k >= 0);
      CHECK(sys.node_of_interior[k] == id);
    }
  }
}

TEST_CASE("pure mass load vector: f=1 gives cell area per interior node") {
  const ShishkinMesh mesh = build_mesh(layer_params(4, 1.0));
  const LinearSystem sys = assemble_system(mesh, diffusion_problem(1.0, 1.0), 0.0);
  for (double r : sys.rhs) CHECK(r == doctest::Approx(0.0625).epsilon(1e-14));
}

TEST_CASE("pure diffusion system equals the stiffness matrix exactly") {
  const ShishkinMesh mesh = build_mesh(layer_params(8, 1e-4));
  const ProblemSpec p = diffusion_problem(1.0, 1.0);
  const LinearSystem sys = assemble_system(mesh, p, 1.0);
  const NormMatrices nm = assemble_norm_matrices(mesh, p, 1.0);
  for (int row = 0; row < sys.a.rows; ++row) {
    const int node_i = sys.node_of_interior[row];
    for (int k = sys.a.row_ptr[row]; k < sys.a.row_ptr[row + 1]; ++k) {
      const int node_j = sys.node_of_interior[sys.a.col_idx[k]];
      CHECK(sys.a.vals[k] == nm.stiffness.at(node_i, node_j));
    }
  }
}

TEST_CASE("assembly is deterministic across thread counts") {
  const ShishkinMesh mesh = build_mesh(layer_params(16, 1e-4));
  const ProblemSpec p = make_test_problem(1e-4);
  AssemblyOptions o1, o3;
  o1.threads = 1;
  o3.threads = 3;
  const LinearSystem s1 = assemble_system(mesh, p, 1.0, o1);
  const LinearSystem s3 = assemble_system(mesh, p, 1.0, o3);
  CHECK(s1.a.row_ptr == s3.a.row_ptr);
  CHECK(s1.a.col_idx == s3.a.col_idx);
  CHECK(s1.a.vals == s3.a.vals);
  CHECK(s1.rhs == s3.rhs);
}

TEST_CASE("interior/field expansion round trip") {
  const ShishkinMesh mesh = build_mesh(layer_params(4, 1e-2));
  const LinearSystem sys = assemble_system(mesh, make_test_problem(1e-2), 1.0);
  std::vector<double> interior(9);
  for (int k = 0; k < 9; ++k) interior[k] = 1.0 + k;
  const DiscreteField field = field_from_interior(mesh, sys, interior);
  CHECK(field.values.size() == 25);
  for (int id = 0; id < 25; ++id)
    if (mesh.is_boundary_node(id)) CHECK(field.values[id] == 0.0);
  CHECK(interior_from_field(sys, field) == interior);
}

} // TEST_SUITE
