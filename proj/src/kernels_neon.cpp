#include "mlsc/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace mlsc::kern {
namespace {

double dot_neon(const double* a, const double* b, std::size_t m) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  acc0 = vaddq_f64(acc0, acc1);
  double s = vgetq_lane_f64(acc0, 0) + vgetq_lane_f64(acc0, 1);
  for (; i < m; ++i) s += a[i] * b[i];
  return s;
}

void axpy_neon(double* y, double alpha, const double* x, std::size_t m) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= m; i += 2) {
    const float64x2_t prod = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < m; ++i) y[i] += alpha * x[i];
}

void scal_neon(double* x, double alpha, std::size_t m) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= m; i += 2) {
    vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
  }
  for (; i < m; ++i) x[i] *= alpha;
}

void csr_row_block_neon(double* out_row, const std::int32_t* cols,
                        const double* vals, std::size_t cnt, const double* X,
                        std::size_t b) {
  for (std::size_t t = 0; t < cnt; ++t) {
    const float64x2_t vv = vdupq_n_f64(vals[t]);
    const double* xr = X + static_cast<std::size_t>(cols[t]) * b;
    std::size_t j = 0;
    for (; j + 2 <= b; j += 2) {
      const float64x2_t prod = vmulq_f64(vv, vld1q_f64(xr + j));
      vst1q_f64(out_row + j, vaddq_f64(vld1q_f64(out_row + j), prod));
    }
    const double v = vals[t];
    for (; j < b; ++j) out_row[j] += v * xr[j];
  }
}

}  // namespace

const Table* neon_table() {
  static const Table t{"neon", dot_neon, axpy_neon, scal_neon,
                       csr_row_block_neon};
  return &t;
}

}  // namespace mlsc::kern

#else

namespace mlsc::kern {
const Table* neon_table() { return nullptr; }
}  // namespace mlsc::kern

#endif
