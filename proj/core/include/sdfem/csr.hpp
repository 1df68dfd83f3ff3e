#pragma once

#include <iosfwd>
#include <vector>

namespace sdfem {

// Compressed sparse row matrix. Column indices are strictly increasing
// within each row.
struct CsrMatrix {
  int rows = 0, cols = 0;
  std::vector<int> row_ptr;  // size rows+1
  std::vector<int> col_idx;
  std::vector<double> vals;

  int nnz() const { return static_cast<int>(col_idx.size()); }
  // Value at (i, j), 0 if the entry is not stored.
  double at(int i, int j) const;
};

// Build from coordinate triplets; duplicates are summed in their original
// order (stable), so assembly results do not depend on sort internals.
struct Triplet {
  int row, col;
  double val;
};
CsrMatrix csr_from_triplets(int rows, int cols, std::vector<Triplet> triplets);

void spmv(const CsrMatrix& a, const double* x, double* y);
std::vector<double> spmv(const CsrMatrix& a, const std::vector<double>& x);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& v);

// MatrixMarket coordinate format (1-based indices, general real).
void write_matrix_market(std::ostream& os, const CsrMatrix& a);

} // namespace sdfem
