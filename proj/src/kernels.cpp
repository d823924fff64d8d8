#include "mlsc/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace mlsc::kern {
namespace {

const Table& pick() {
  const char* forced = std::getenv("MLSC_KERNEL_IMPL");
  if (forced) {
    if (std::strcmp(forced, "scalar") == 0) return scalar_table();
    if (std::strcmp(forced, "avx2") == 0 && avx2_table()) return *avx2_table();
    if (std::strcmp(forced, "neon") == 0 && neon_table()) return *neon_table();
    return scalar_table();
  }
#if defined(__x86_64__) || defined(__i386__)
  if (avx2_table() && __builtin_cpu_supports("avx2")) return *avx2_table();
#endif
  if (neon_table()) return *neon_table();
  return scalar_table();
}

}  // namespace

const Table& active() {
  static const Table& t = pick();
  return t;
}

const char* impl_name() { return active().name; }

}  // namespace mlsc::kern
