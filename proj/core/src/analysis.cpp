#include "sdfem/analysis.hpp"

#include <cmath>
#include <string>

#include "sdfem/errors.hpp"
#include "sdfem/quadrature.hpp"
#include "parallel.hpp"

namespace sdfem {

DiscreteField nodal_interpolant(const ShishkinMesh& mesh, const ScalarFn& g) {
  DiscreteField f;
  f.values.resize(mesh.node_count());
  for (int id = 0; id < mesh.node_count(); ++id) {
    const Point p = mesh.node(id);
    f.values[id] = g(p.x, p.y);
  }
  return f;
}

namespace {

double quadratic_form(const CsrMatrix& m, const std::vector<double>& v) {
  double s = 0.0;
  for (int i = 0; i < m.rows; ++i) {
    double row = 0.0;
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) row += m.vals[k] * v[m.col_idx[k]];
    s += v[i] * row;
  }
  return s;
}

struct TriGradients {
  std::array<double, 3> gx, gy;
};

TriGradients p1_gradients(const std::array<Point, 3>& v) {
  const double det = (v[1].x - v[0].x) * (v[2].y - v[0].y) -
                     (v[2].x - v[0].x) * (v[1].y - v[0].y);
  return {{(v[1].y - v[2].y) / det, (v[2].y - v[0].y) / det, (v[0].y - v[1].y) / det},
          {(v[2].x - v[1].x) / det, (v[0].x - v[2].x) / det, (v[1].x - v[0].x) / det}};
}

std::array<double, 3> barycentric_in(const std::array<Point, 3>& v, const Point& p) {
  const double det = (v[1].x - v[0].x) * (v[2].y - v[0].y) -
                     (v[2].x - v[0].x) * (v[1].y - v[0].y);
  const double l1 = ((p.x - v[0].x) * (v[2].y - v[0].y) - (v[2].x - v[0].x) * (p.y - v[0].y)) / det;
  const double l2 = ((v[1].x - v[0].x) * (p.y - v[0].y) - (p.x - v[0].x) * (v[1].y - v[0].y)) / det;
  return {1.0 - l1 - l2, l1, l2};
}

} // namespace

DiscreteNorms discrete_norms(const DiscreteField& field, const NormMatrices& matrices,
                             const NormWeights& weights) {
  if (static_cast<int>(field.values.size()) != matrices.mass.rows)
    throw DimensionError("discrete_norms: field size does not match norm matrices");
  const double kk = quadratic_form(matrices.stiffness, field.values);
  const double mm = quadratic_form(matrices.mass, field.values);
  const double ss = quadratic_form(matrices.streamline, field.values);
  DiscreteNorms out;
  out.energy = std::sqrt(weights.epsilon * kk + weights.mu0 * mm);
  out.sd = std::sqrt(weights.epsilon * kk + weights.mu0 * mm + ss);
  return out;
}

PiecewiseEvaluator p1_field_evaluator(const ShishkinMesh& mesh, const DiscreteField& field) {
  const std::vector<double>* vals = &field.values;
  const ShishkinMesh* m = &mesh;
  return [m, vals](const TriangleRef& tri, const Point& p, double& value, double& dx,
                   double& dy) {
    const auto verts = m->triangle_vertices(tri);
    const auto nodes = m->triangle_nodes(tri);
    const auto lam = barycentric_in(verts, p);
    const TriGradients g = p1_gradients(verts);
    value = dx = dy = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double w = (*vals)[nodes[k]];
      value += w * lam[k];
      dx += w * g.gx[k];
      dy += w * g.gy[k];
    }
  };
}

double continuous_error_energy_norm(const ShishkinMesh& mesh, const ExactSolution& exact,
                                    const PiecewiseEvaluator& w, const NormWeights& weights,
                                    int quad_degree, int threads) {
  const QuadratureRule& rule = triangle_rule(quad_degree);
  const int tris = mesh.triangle_count();
  std::vector<double> partial(tris);
  detail::parallel_for(0, tris, threads, [&](int t) {
    const TriangleRef tri = mesh.triangle(t);
    const auto verts = mesh.triangle_vertices(tri);
    const double area = mesh.triangle_area(tri);
    double acc = 0.0;
    for (const QuadPoint& q : rule.points) {
      const Point p = barycentric_point(verts, q);
      double wv, wx, wy;
      w(tri, p, wv, wx, wy);
      const double du = exact.u(p.x, p.y) - wv;
      const double dux = exact.ux(p.x, p.y) - wx;
      const double duy = exact.uy(p.x, p.y) - wy;
      acc += q.w * (weights.epsilon * (dux * dux + duy * duy) + weights.mu0 * du * du);
    }
    partial[t] = area * acc;
  });
  double sum = 0.0;
  for (int t = 0; t < tris; ++t) sum += partial[t];
  return std::sqrt(sum);
}

double continuous_energy_norm(const ShishkinMesh& mesh, const PiecewiseEvaluator& w,
                              const NormWeights& weights, int quad_degree, int threads) {
  static const ExactSolution zero{[](double, double) { return 0.0; },
                                  [](double, double) { return 0.0; },
                                  [](double, double) { return 0.0; }};
  return continuous_error_energy_norm(mesh, zero, w, weights, quad_degree, threads);
}

std::vector<double> compute_rates(const std::vector<double>& errors) {
  if (errors.size() < 2) throw ConfigError("compute_rates: need at least two errors");
  std::vector<double> rates(errors.size() - 1);
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    if (!(errors[k] > 0.0) || !(errors[k + 1] > 0.0))
      throw UndefinedRateError("compute_rates: non-positive error at position " +
                               std::to_string(k + (errors[k] > 0.0 ? 1 : 0)));
    rates[k] = std::log2(errors[k] / errors[k + 1]);
  }
  return rates;
}

namespace {

// Sup of |f| over a 5x5 parameter grid mapped onto the triangle.
double sampled_sup(const std::array<Point, 3>& v,
                   const std::function<double(double, double)>& f) {
  double sup = 0.0;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      const double s = (a / 4.0) * (1.0 - b / 4.0);
      const double t = b / 4.0;
      const Point p = {v[0].x + s * (v[1].x - v[0].x) + t * (v[2].x - v[0].x),
                       v[0].y + s * (v[1].y - v[0].y) + t * (v[2].y - v[0].y)};
      sup = std::max(sup, std::abs(f(p.x, p.y)));
    }
  return sup;
}

double interp_deriv_integral(const ShishkinMesh& mesh, const TriangleRef& tri,
                             const PatchFunction& w, Direction dir, const QuadratureRule& rule) {
  const auto verts = mesh.triangle_vertices(tri);
  const auto g = p1_gradients(verts);
  double iconst = 0.0;  // the interpolant's derivative, constant on the triangle
  for (int k = 0; k < 3; ++k)
    iconst += w.value(verts[k].x, verts[k].y) * (dir == Direction::X ? g.gx[k] : g.gy[k]);
  const auto& wd = dir == Direction::X ? w.dx : w.dy;
  double acc = 0.0;
  for (const QuadPoint& q : rule.points) {
    const Point p = barycentric_point(verts, q);
    acc += q.w * (wd(p.x, p.y) - iconst);
  }
  return mesh.triangle_area(tri) * acc;
}

} // namespace

std::vector<PatchReport> verify_patch_identity(const ShishkinMesh& mesh, const PatchFunction& w,
                                               Direction dir) {
  const int n = mesh.n();
  const int half = n / 2;
  const QuadratureRule& rule = triangle_rule(6);
  std::vector<PatchReport> reports;

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      TriangleRef first, second;
      if (dir == Direction::X) {
        // Patch pairs the upper triangle below with this cell's lower one;
        // unequal y-spacing across the transition row breaks the pairing.
        if (j == 0 || j == half) continue;
        first = {i, j - 1, CellHalf::Upper};
        second = {i, j, CellHalf::Lower};
      } else {
        if (i == 0 || i == half) continue;
        first = {i - 1, j, CellHalf::Upper};
        second = {i, j, CellHalf::Lower};
      }

      const double lhs = std::abs(interp_deriv_integral(mesh, first, w, dir, rule) +
                                  interp_deriv_integral(mesh, second, w, dir, rule));

      const double hx = mesh.hx(i);
      const double hy = mesh.hy(j);
      const double meas = hx * hy;
      const auto sup3 = [&](int l, int m) {
        const auto fn = [&](double x, double y) { return w.third(l, m, x, y); };
        return std::max(sampled_sup(mesh.triangle_vertices(first), fn),
                        sampled_sup(mesh.triangle_vertices(second), fn));
      };
      double bound;
      if (dir == Direction::X)
        bound = meas * (hx * hx * sup3(3, 0) + hx * hy * sup3(2, 1) + hy * hy * sup3(1, 2));
      else
        bound = meas * (hx * hx * sup3(2, 1) + hx * hy * sup3(1, 2) + hy * hy * sup3(0, 3));

      reports.push_back({i, j, lhs, bound, bound > 0.0 ? lhs / bound : 0.0});
    }
  return reports;
}

double verify_orthogonality(const LinearSystem& system, const std::vector<double>& x) {
  const std::vector<double> ax = spmv(system.a, x);
  double rnorm = 0.0, bnorm = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const double r = system.rhs[i] - ax[i];
    rnorm += r * r;
    bnorm += system.rhs[i] * system.rhs[i];
  }
  if (bnorm == 0.0) return std::sqrt(rnorm);
  return std::sqrt(rnorm / bnorm);
}

std::array<InterpBoundRow, 4> interpolation_bound_report(const ShishkinMesh& mesh,
                                                         const ProblemSpec& problem) {
  if (!problem.exact)
    throw UnsupportedError("interpolation_bound_report: problem has no exact solution");
  const auto& exact = *problem.exact;
  const DiscreteField ui = nodal_interpolant(mesh, exact.u);
  const PiecewiseEvaluator eval = p1_field_evaluator(mesh, ui);

  // Vertices, edge midpoints, centroid: 7 sample points per triangle.
  static const std::array<std::array<double, 3>, 7> samples = {{{1, 0, 0},
                                                                {0, 1, 0},
                                                                {0, 0, 1},
                                                                {0.5, 0.5, 0},
                                                                {0, 0.5, 0.5},
                                                                {0.5, 0, 0.5},
                                                                {1.0 / 3, 1.0 / 3, 1.0 / 3}}};

  std::array<double, 4> sup = {0.0, 0.0, 0.0, 0.0};
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleRef tri = mesh.triangle(t);
    const auto verts = mesh.triangle_vertices(tri);
    const int s = static_cast<int>(classify_triangle(mesh, tri));
    for (const auto& lam : samples) {
      const Point p = {lam[0] * verts[0].x + lam[1] * verts[1].x + lam[2] * verts[2].x,
                       lam[0] * verts[0].y + lam[1] * verts[1].y + lam[2] * verts[2].y};
      double wv, wx, wy;
      eval(tri, p, wv, wx, wy);
      sup[s] = std::max(sup[s], std::abs(exact.u(p.x, p.y) - wv));
    }
  }

  const double n = mesh.n();
  const double logn = std::log(n);
  std::array<InterpBoundRow, 4> rows;
  for (int s = 0; s < 4; ++s)
    rows[s] = {static_cast<Subdomain>(s), sup[s], 1.0 / (n * n), logn * logn / (n * n)};
  return rows;
}

} // namespace sdfem
