#include "mlsc/kernels.hpp"

namespace mlsc::kern {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double* y, double alpha, const double* x, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) y[i] += alpha * x[i];
}

void scal_scalar(double* x, double alpha, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) x[i] *= alpha;
}

void csr_row_block_scalar(double* out_row, const std::int32_t* cols,
                          const double* vals, std::size_t cnt, const double* X,
                          std::size_t b) {
  for (std::size_t t = 0; t < cnt; ++t) {
    const double v = vals[t];
    const double* xr = X + static_cast<std::size_t>(cols[t]) * b;
    for (std::size_t j = 0; j < b; ++j) out_row[j] += v * xr[j];
  }
}

}  // namespace

const Table& scalar_table() {
  static const Table t{"scalar", dot_scalar, axpy_scalar, scal_scalar,
                       csr_row_block_scalar};
  return t;
}

}  // namespace mlsc::kern
