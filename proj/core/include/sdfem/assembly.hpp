#pragma once

#include <array>
#include <vector>

#include "sdfem/csr.hpp"
#include "sdfem/mesh.hpp"
#include "sdfem/problem.hpp"
#include "sdfem/quadrature.hpp"

namespace sdfem {

// Nodal coefficient vector of a piecewise-linear function, over all
// (n+1)^2 mesh nodes. Members of the homogeneous-Dirichlet space carry
// zeros at boundary nodes.
struct DiscreteField {
  std::vector<double> values;
};

// Discrete operator over interior unknowns, A[i][j] = a_sd(phi_j, phi_i),
// with boundary degrees of freedom eliminated.
struct LinearSystem {
  CsrMatrix a;
  std::vector<double> rhs;
  std::vector<int> interior_of_node;  // -1 at boundary nodes
  std::vector<int> node_of_interior;
};

// Streamline stabilization weight: c_star/N on the coarse subdomain, 0 in
// the layer subdomains.
double delta_k(const ShishkinMesh& mesh, const TriangleRef& tri, double c_star);

struct LocalElement {
  std::array<double, 9> mat;  // row-major 3x3, mat[3*i+j] pairs trial j with test i
  std::array<double, 3> vec;
};

// Element matrix eps*grad/grad + (b.grad + c, .) + delta*(b.grad + c, b.grad)
// and load (f, phi + delta*b.grad(phi)). The eps*Laplacian part of the
// stabilization residual vanishes for linear elements and is omitted.
LocalElement local_element(const ShishkinMesh& mesh, const TriangleRef& tri,
                           const ProblemSpec& problem, double c_star,
                           const QuadratureRule& quad_galerkin, const QuadratureRule& quad_rhs);

struct AssemblyOptions {
  int quad_galerkin_degree = 4;
  int quad_rhs_degree = 6;
  int threads = 1;
};

LinearSystem assemble_system(const ShishkinMesh& mesh, const ProblemSpec& problem, double c_star,
                             const AssemblyOptions& opts = {});

// Norm matrices over the full node set: stiffness (grad, grad), mass
// (phi, phi), streamline sum_K delta_K (b.grad, b.grad).
struct NormMatrices {
  CsrMatrix stiffness, mass, streamline;
};

NormMatrices assemble_norm_matrices(const ShishkinMesh& mesh, const ProblemSpec& problem,
                                    double c_star, const AssemblyOptions& opts = {});

// Expand an interior-unknown vector to a full nodal field (zero boundary).
DiscreteField field_from_interior(const ShishkinMesh& mesh, const LinearSystem& system,
                                  const std::vector<double>& interior);
std::vector<double> interior_from_field(const LinearSystem& system, const DiscreteField& field);

} // namespace sdfem
