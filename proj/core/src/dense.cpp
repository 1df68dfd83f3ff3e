#include "sdfem/dense.hpp"

#include <cmath>
#include <string>

#include "sdfem/errors.hpp"

namespace sdfem {

DenseMatrix to_dense(const CsrMatrix& m) {
  if (m.rows != m.cols) throw DimensionError("to_dense: matrix must be square");
  DenseMatrix d(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) d(i, m.col_idx[k]) = m.vals[k];
  return d;
}

std::vector<double> dense_lu_solve(DenseMatrix a, std::vector<double> b) {
  const int n = a.n;
  if (n > 4096) throw DimensionError("dense_lu_solve: n > 4096 (oracle-size limit)");
  if (static_cast<int>(b.size()) != n) throw DimensionError("dense_lu_solve: rhs length mismatch");

  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best < 1e-300)
      throw SingularMatrixError("dense_lu_solve: pivot " + std::to_string(k) + " below 1e-300");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double l = a(i, k) / a(k, k);
      a(i, k) = l;
      for (int j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
      b[i] -= l * b[k];
    }
  }

  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

} // namespace sdfem
