#include "sdfem/assembly.hpp"

#include <cmath>

#include "sdfem/errors.hpp"
#include "parallel.hpp"

namespace sdfem {

double delta_k(const ShishkinMesh& mesh, const TriangleRef& tri, double c_star) {
  if (classify_triangle(mesh, tri) != Subdomain::Smooth) return 0.0;
  return c_star / mesh.n();
}

namespace {

struct P1Basis {
  double area;
  std::array<double, 3> gx, gy;  // constant gradients of the barycentric functions
};

P1Basis p1_basis(const std::array<Point, 3>& v) {
  const double det = (v[1].x - v[0].x) * (v[2].y - v[0].y) -
                     (v[2].x - v[0].x) * (v[1].y - v[0].y);
  if (det <= 0.0) throw AssemblyError("p1_basis: degenerate or misoriented triangle");
  P1Basis b;
  b.area = 0.5 * det;
  b.gx = {(v[1].y - v[2].y) / det, (v[2].y - v[0].y) / det, (v[0].y - v[1].y) / det};
  b.gy = {(v[2].x - v[1].x) / det, (v[0].x - v[2].x) / det, (v[1].x - v[0].x) / det};
  return b;
}

} // namespace

LocalElement local_element(const ShishkinMesh& mesh, const TriangleRef& tri,
                           const ProblemSpec& problem, double c_star,
                           const QuadratureRule& quad_galerkin, const QuadratureRule& quad_rhs) {
  const auto verts = mesh.triangle_vertices(tri);
  const P1Basis basis = p1_basis(verts);
  const double delta = delta_k(mesh, tri, c_star);
  const double eps = problem.epsilon;

  LocalElement el;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      el.mat[3 * i + j] =
          eps * (basis.gx[j] * basis.gx[i] + basis.gy[j] * basis.gy[i]) * basis.area;
  el.vec = {0.0, 0.0, 0.0};

  for (const QuadPoint& q : quad_galerkin.points) {
    const Point p = barycentric_point(verts, q);
    const double b1 = problem.b1(p.x, p.y);
    const double b2 = problem.b2(p.x, p.y);
    const double c = problem.c(p.x, p.y);
    const std::array<double, 3> lam = {q.l0, q.l1, q.l2};
    const double wq = q.w * basis.area;
    for (int j = 0; j < 3; ++j) {
      const double conv_j = b1 * basis.gx[j] + b2 * basis.gy[j] + c * lam[j];
      for (int i = 0; i < 3; ++i) {
        const double stream_i = b1 * basis.gx[i] + b2 * basis.gy[i];
        el.mat[3 * i + j] += wq * conv_j * (lam[i] + delta * stream_i);
      }
    }
  }

  for (const QuadPoint& q : quad_rhs.points) {
    const Point p = barycentric_point(verts, q);
    const double fq = problem.f(p.x, p.y);
    const double b1 = problem.b1(p.x, p.y);
    const double b2 = problem.b2(p.x, p.y);
    const std::array<double, 3> lam = {q.l0, q.l1, q.l2};
    const double wq = q.w * basis.area;
    for (int i = 0; i < 3; ++i)
      el.vec[i] += wq * fq * (lam[i] + delta * (b1 * basis.gx[i] + b2 * basis.gy[i]));
  }
  return el;
}

LinearSystem assemble_system(const ShishkinMesh& mesh, const ProblemSpec& problem, double c_star,
                             const AssemblyOptions& opts) {
  const int n = mesh.n();
  const int tris = mesh.triangle_count();
  const QuadratureRule& quad_g = triangle_rule(opts.quad_galerkin_degree);
  const QuadratureRule& quad_f = triangle_rule(opts.quad_rhs_degree);

  LinearSystem sys;
  sys.interior_of_node.assign(mesh.node_count(), -1);
  for (int j = 1; j < n; ++j)
    for (int i = 1; i < n; ++i) {
      sys.interior_of_node[mesh.node_id(i, j)] = static_cast<int>(sys.node_of_interior.size());
      sys.node_of_interior.push_back(mesh.node_id(i, j));
    }
  const int unknowns = static_cast<int>(sys.node_of_interior.size());

  // Two passes: element integrals in parallel, then a serial scatter in
  // element order so results are identical for every thread count.
  std::vector<LocalElement> locals(tris);
  detail::parallel_for(0, tris, opts.threads, [&](int t) {
    locals[t] = local_element(mesh, mesh.triangle(t), problem, c_star, quad_g, quad_f);
  });

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(tris) * 9);
  sys.rhs.assign(unknowns, 0.0);
  for (int t = 0; t < tris; ++t) {
    const auto nodes = mesh.triangle_nodes(mesh.triangle(t));
    for (int i = 0; i < 3; ++i) {
      const int row = sys.interior_of_node[nodes[i]];
      if (row < 0) continue;
      sys.rhs[row] += locals[t].vec[i];
      for (int j = 0; j < 3; ++j) {
        const int col = sys.interior_of_node[nodes[j]];
        if (col >= 0) triplets.push_back({row, col, locals[t].mat[3 * i + j]});
      }
    }
  }
  sys.a = csr_from_triplets(unknowns, unknowns, std::move(triplets));
  return sys;
}

NormMatrices assemble_norm_matrices(const ShishkinMesh& mesh, const ProblemSpec& problem,
                                    double c_star, const AssemblyOptions& opts) {
  const int tris = mesh.triangle_count();
  const int nodes_total = mesh.node_count();
  const QuadratureRule& quad = triangle_rule(opts.quad_galerkin_degree);

  struct NormLocal {
    std::array<double, 9> k, m, s;
  };
  std::vector<NormLocal> locals(tris);
  detail::parallel_for(0, tris, opts.threads, [&](int t) {
    const TriangleRef tri = mesh.triangle(t);
    const auto verts = mesh.triangle_vertices(tri);
    const P1Basis basis = p1_basis(verts);
    const double delta = delta_k(mesh, tri, c_star);
    NormLocal& loc = locals[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        loc.k[3 * i + j] =
            (basis.gx[j] * basis.gx[i] + basis.gy[j] * basis.gy[i]) * basis.area;
        loc.m[3 * i + j] = 0.0;
        loc.s[3 * i + j] = 0.0;
      }
    for (const QuadPoint& q : quad.points) {
      const Point p = barycentric_point(verts, q);
      const double b1 = problem.b1(p.x, p.y);
      const double b2 = problem.b2(p.x, p.y);
      const std::array<double, 3> lam = {q.l0, q.l1, q.l2};
      const double wq = q.w * basis.area;
      for (int j = 0; j < 3; ++j) {
        const double stream_j = b1 * basis.gx[j] + b2 * basis.gy[j];
        for (int i = 0; i < 3; ++i) {
          // Multiply the symmetric factor first so the matrices come out
          // bitwise symmetric, not just symmetric to roundoff.
          loc.m[3 * i + j] += wq * (lam[j] * lam[i]);
          loc.s[3 * i + j] +=
              (delta * wq) * (stream_j * (b1 * basis.gx[i] + b2 * basis.gy[i]));
        }
      }
    }
  });

  std::vector<Triplet> tk, tm, ts;
  tk.reserve(static_cast<std::size_t>(tris) * 9);
  tm.reserve(tk.capacity());
  ts.reserve(tk.capacity());
  for (int t = 0; t < tris; ++t) {
    const auto nodes = mesh.triangle_nodes(mesh.triangle(t));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        tk.push_back({nodes[i], nodes[j], locals[t].k[3 * i + j]});
        tm.push_back({nodes[i], nodes[j], locals[t].m[3 * i + j]});
        ts.push_back({nodes[i], nodes[j], locals[t].s[3 * i + j]});
      }
  }
  NormMatrices out;
  out.stiffness = csr_from_triplets(nodes_total, nodes_total, std::move(tk));
  out.mass = csr_from_triplets(nodes_total, nodes_total, std::move(tm));
  out.streamline = csr_from_triplets(nodes_total, nodes_total, std::move(ts));
  return out;
}

DiscreteField field_from_interior(const ShishkinMesh& mesh, const LinearSystem& system,
                                  const std::vector<double>& interior) {
  if (interior.size() != system.node_of_interior.size())
    throw DimensionError("field_from_interior: interior vector length mismatch");
  DiscreteField f;
  f.values.assign(mesh.node_count(), 0.0);
  for (std::size_t k = 0; k < interior.size(); ++k)
    f.values[system.node_of_interior[k]] = interior[k];
  return f;
}

std::vector<double> interior_from_field(const LinearSystem& system, const DiscreteField& field) {
  std::vector<double> x(system.node_of_interior.size());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = field.values[system.node_of_interior[k]];
  return x;
}

} // namespace sdfem
