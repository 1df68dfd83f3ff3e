#include "sdfem/gmres.hpp"

#include <cmath>

#include "sdfem/errors.hpp"

namespace sdfem {

namespace {

void apply_givens(double& dx, double& dy, double cs, double sn) {
  const double t = cs * dx + sn * dy;
  dy = -sn * dx + cs * dy;
  dx = t;
}

} // namespace

GmresResult gmres(const CsrMatrix& a, const std::vector<double>& b, const GmresOptions& opts) {
  if (a.rows != a.cols) throw DimensionError("gmres: matrix must be square");
  if (static_cast<int>(b.size()) != a.rows) throw DimensionError("gmres: rhs length mismatch");
  if (!(opts.tol > 0.0)) throw ConfigError("gmres: tol must be positive");
  if (opts.restart < 1) throw ConfigError("gmres: restart must be >= 1");
  for (double v : b)
    if (!std::isfinite(v)) throw SolveError("gmres: rhs contains a non-finite value");

  const int n = a.rows;
  const int m = opts.restart;

  GmresResult result;
  result.x.assign(n, 0.0);
  SolveStats& stats = result.stats;

  const double norm_b = norm2(b);
  if (norm_b == 0.0) {
    stats.converged = true;
    return result;
  }

  // Right diagonal preconditioning: iterate on A*D^{-1}, so least-squares
  // residuals match residuals of the original system.
  std::vector<double> dinv(n, 1.0);
  if (opts.precond == Preconditioner::Jacobi) {
    for (int i = 0; i < n; ++i) {
      const double d = a.at(i, i);
      if (std::abs(d) > 1e-300) dinv[i] = 1.0 / d;
    }
  }

  std::vector<std::vector<double>> v(m + 1);
  std::vector<std::vector<double>> hcols(m);  // column j holds h(0..j+1, j)
  std::vector<double> cs(m), sn(m), g(m + 1);
  std::vector<double> w(n), tmp(n), r(n);

  std::vector<double> best_x = result.x;
  double best_res = 1.0;  // relative residual of x = 0

  const auto true_residual = [&](const std::vector<double>& x) {
    spmv(a, x.data(), r.data());
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    return norm2(r) / norm_b;
  };

  double res = true_residual(result.x);
  bool broke_down = false;

  while (stats.iterations < opts.max_iters && res > opts.tol && !broke_down) {
    // r currently holds b - A x from the last true_residual call.
    const double beta = norm2(r);
    if (beta == 0.0) break;
    v[0] = r;
    for (double& vi : v[0]) vi /= beta;
    g.assign(m + 1, 0.0);
    g[0] = beta;

    int k = 0;  // columns completed this cycle
    for (int j = 0; j < m && stats.iterations < opts.max_iters; ++j) {
      ++stats.iterations;
      for (int i = 0; i < n; ++i) tmp[i] = dinv[i] * v[j][i];
      spmv(a, tmp.data(), w.data());

      // Classical Gram-Schmidt with one reorthogonalization pass.
      auto& h = hcols[j];
      h.assign(j + 2, 0.0);
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          double proj = 0.0;
          for (int l = 0; l < n; ++l) proj += w[l] * v[i][l];
          h[i] += proj;
          for (int l = 0; l < n; ++l) w[l] -= proj * v[i][l];
        }
      }
      double hnext = 0.0;
      for (int l = 0; l < n; ++l) hnext += w[l] * w[l];
      hnext = std::sqrt(hnext);
      h[j + 1] = hnext;

      for (int i = 0; i < j; ++i) apply_givens(h[i], h[i + 1], cs[i], sn[i]);
      const double denom = std::hypot(h[j], h[j + 1]);
      if (denom == 0.0) {
        broke_down = true;
        break;
      }
      cs[j] = h[j] / denom;
      sn[j] = h[j + 1] / denom;
      h[j] = denom;
      h[j + 1] = 0.0;
      apply_givens(g[j], g[j + 1], cs[j], sn[j]);
      k = j + 1;

      const double ls_res = std::abs(g[j + 1]) / norm_b;
      if (opts.record_history) stats.ls_residuals.push_back(ls_res);

      if (hnext <= 1e-300) {
        // Invariant subspace reached: the least-squares solution is exact
        // within it. If the residual is still large this is a breakdown.
        broke_down = true;
        break;
      }
      v[j + 1] = w;
      for (double& vi : v[j + 1]) vi /= hnext;
      if (ls_res <= opts.tol) break;
    }

    if (k > 0) {
      // Back-substitute H y = g and update x += D^{-1} V y.
      std::vector<double> y(k);
      for (int i = k - 1; i >= 0; --i) {
        double s = g[i];
        for (int l = i + 1; l < k; ++l) s -= hcols[l][i] * y[l];
        y[i] = s / hcols[i][i];
      }
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int l = 0; l < k; ++l) acc += v[l][i] * y[l];
        result.x[i] += dinv[i] * acc;
      }
    }
    ++stats.restarts;

    res = true_residual(result.x);
    if (res < best_res) {
      best_res = res;
      best_x = result.x;
    }
  }

  stats.restarts = stats.restarts > 0 ? stats.restarts - 1 : 0;
  stats.converged = res <= opts.tol;
  stats.breakdown = broke_down && !stats.converged;
  if (!stats.converged) {
    result.x = best_x;
    res = best_res;
  }
  stats.residual = res;
  for (double xi : result.x)
    if (!std::isfinite(xi)) throw SolveError("gmres: iterate became non-finite");
  return result;
}

} // namespace sdfem
