#pragma once

#include <vector>

#include "sdfem/csr.hpp"

namespace sdfem {

// Row-major dense matrix, used only as a small direct-solve oracle.
struct DenseMatrix {
  int n = 0;
  std::vector<double> a;

  explicit DenseMatrix(int n_ = 0) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

DenseMatrix to_dense(const CsrMatrix& m);

// Partial-pivoting LU solve. Limited to n <= 4096 by contract (oracle use).
std::vector<double> dense_lu_solve(DenseMatrix a, std::vector<double> b);

} // namespace sdfem
