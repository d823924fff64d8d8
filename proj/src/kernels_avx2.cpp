#include "mlsc/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace mlsc::kern {
namespace {

// Four independent accumulators; combined once at the end. This changes the
// summation tree relative to the scalar kernel, which is why dot is
// tolerance-checked rather than bit-checked.
double dot_avx2(const double* a, const double* b, std::size_t m) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= m; i += 16) {
    // no FMA: keep mul and add distinct operations everywhere in this file
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                             _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4),
                                             _mm256_loadu_pd(b + i + 4)));
    acc2 = _mm256_add_pd(acc2, _mm256_mul_pd(_mm256_loadu_pd(a + i + 8),
                                             _mm256_loadu_pd(b + i + 8)));
    acc3 = _mm256_add_pd(acc3, _mm256_mul_pd(_mm256_loadu_pd(a + i + 12),
                                             _mm256_loadu_pd(b + i + 12)));
  }
  for (; i + 4 <= m; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                             _mm256_loadu_pd(b + i)));
  }
  acc0 = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc0);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < m; ++i) s += a[i] * b[i];
  return s;
}

void axpy_avx2(double* y, double alpha, const double* x, std::size_t m) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < m; ++i) y[i] += alpha * x[i];
}

void scal_avx2(double* x, double alpha, std::size_t m) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < m; ++i) x[i] *= alpha;
}

// Vectorizes across the b block columns; the accumulation order over the
// row's entries is identical to the scalar kernel for every column, so the
// result is bit-exact.
void csr_row_block_avx2(double* out_row, const std::int32_t* cols,
                        const double* vals, std::size_t cnt, const double* X,
                        std::size_t b) {
  for (std::size_t t = 0; t < cnt; ++t) {
    const __m256d vv = _mm256_set1_pd(vals[t]);
    const double* xr = X + static_cast<std::size_t>(cols[t]) * b;
    std::size_t j = 0;
    for (; j + 4 <= b; j += 4) {
      const __m256d prod = _mm256_mul_pd(vv, _mm256_loadu_pd(xr + j));
      _mm256_storeu_pd(out_row + j,
                       _mm256_add_pd(_mm256_loadu_pd(out_row + j), prod));
    }
    const double v = vals[t];
    for (; j < b; ++j) out_row[j] += v * xr[j];
  }
}

}  // namespace

const Table* avx2_table() {
  static const Table t{"avx2", dot_avx2, axpy_avx2, scal_avx2,
                       csr_row_block_avx2};
  return &t;
}

}  // namespace mlsc::kern

#else

namespace mlsc::kern {
const Table* avx2_table() { return nullptr; }
}  // namespace mlsc::kern

#endif
