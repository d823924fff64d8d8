#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mlsc/common.hpp"
#include "mlsc/rng.hpp"
#include "mlsc/sbm.hpp"

namespace testsupport {

// Peak resident set size of this process in bytes (VmHWM), or 0 if the
// proc interface is unavailable.
inline std::int64_t peak_rss_bytes() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream is(line.substr(6));
      std::int64_t kb = 0;
      is >> kb;
      return kb * 1024;
    }
  }
  return 0;
}

inline double frob_diff(const mlsc::Matrix& a, const mlsc::Matrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = a.data[i] - b.data[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline double max_abs_diff(const mlsc::Matrix& a, const mlsc::Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

// || A A^T - B B^T ||_F for two n x K matrices with orthonormal columns,
// via the trace identity 2K - 2 ||A^T B||_F^2.
inline double subspace_distance(const mlsc::Matrix& a, const mlsc::Matrix& b) {
  double cross = 0.0;
  for (std::int64_t i = 0; i < a.cols; ++i)
    for (std::int64_t j = 0; j < b.cols; ++j) {
      double dot = 0.0;
      for (std::int64_t r = 0; r < a.rows; ++r) dot += a(r, i) * b(r, j);
      cross += dot * dot;
    }
  return std::sqrt(std::max(0.0, static_cast<double>(a.cols + b.cols) -
                                     2.0 * cross));
}

inline mlsc::Membership random_membership(std::int64_t n, std::int32_t K,
                                          std::uint64_t seed) {
  mlsc::Rng rng(seed);
  mlsc::Membership m;
  m.K = K;
  m.labels.resize(n);
  for (auto& v : m.labels)
    v = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(K)));
  return m;
}

}  // namespace testsupport
