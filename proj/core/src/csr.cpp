#include "sdfem/csr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "sdfem/errors.hpp"

namespace sdfem {

double CsrMatrix::at(int i, int j) const {
  const auto begin = col_idx.begin() + row_ptr[i];
  const auto end = col_idx.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return vals[static_cast<std::size_t>(it - col_idx.begin())];
}

CsrMatrix csr_from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw DimensionError("csr_from_triplets: triplet index out of range");

  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });

  CsrMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(rows + 1, 0);
  m.col_idx.reserve(triplets.size());
  m.vals.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size();) {
    const int r = triplets[k].row, c = triplets[k].col;
    double sum = 0.0;
    for (; k < triplets.size() && triplets[k].row == r && triplets[k].col == c; ++k)
      sum += triplets[k].val;
    m.col_idx.push_back(c);
    m.vals.push_back(sum);
    ++m.row_ptr[r + 1];
  }
  for (int r = 0; r < rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  return m;
}

void spmv(const CsrMatrix& a, const double* x, double* y) {
  for (int i = 0; i < a.rows; ++i) {
    double sum = 0.0;
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) sum += a.vals[k] * x[a.col_idx[k]];
    y[i] = sum;
  }
}

std::vector<double> spmv(const CsrMatrix& a, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != a.cols)
    throw DimensionError("spmv: vector length " + std::to_string(x.size()) +
                         " does not match matrix columns " + std::to_string(a.cols));
  std::vector<double> y(a.rows);
  spmv(a, x.data(), y.data());
  return y;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

void write_matrix_market(std::ostream& os, const CsrMatrix& a) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << a.rows << ' ' << a.cols << ' ' << a.nnz() << '\n';
  char buf[64];
  for (int i = 0; i < a.rows; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i + 1, a.col_idx[k] + 1, a.vals[k]);
      os << buf;
    }
}

} // namespace sdfem
