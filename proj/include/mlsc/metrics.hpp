#pragma once

#include <cstdint>
#include <vector>

#include "mlsc/common.hpp"
#include "mlsc/sbm.hpp"

namespace mlsc {

struct ConfusionTable {
  std::int32_t k1 = 0;
  std::int32_t k2 = 0;
  std::vector<std::int64_t> counts;  // k1 x k2, row-major
  std::int64_t n = 0;

  std::int64_t& at(std::int32_t i, std::int32_t j) {
    return counts[static_cast<std::size_t>(i) * k2 + j];
  }
  std::int64_t at(std::int32_t i, std::int32_t j) const {
    return counts[static_cast<std::size_t>(i) * k2 + j];
  }
};

ConfusionTable confusion(const Membership& a, const Membership& b);

// Fraction of nonzero entries of the 0/1 assignment-matrix difference,
// minimized over all relabelings of the estimate. Each misplaced node flips
// two entries, so the value lives in [0, 2]. Requires matching K; solved as
// a max-weight assignment on the confusion table (exhaustive for K <= 8,
// Hungarian above that).
double misclassification_rate(const Membership& truth,
                              const Membership& estimate);

// Adjusted Rand index; 0 by convention when the expected pair-count index
// equals its maximum (e.g. two single-cluster partitions).
double ari(const Membership& a, const Membership& b);

// Adjusted mutual information, max-normalized:
// (MI - E[MI]) / (max(H(a), H(b)) - E[MI]), with the expectation taken
// exactly under the hypergeometric permutation model. Two zero-entropy
// partitions score 1 by convention.
double ami(const Membership& a, const Membership& b);

namespace detail {
// Max-weight perfect assignment on a square confusion table. The two
// implementations must agree exactly; both are exposed for that cross-check.
std::int64_t max_assignment_brute(const ConfusionTable& table);
std::int64_t max_assignment_hungarian(const ConfusionTable& table);
}  // namespace detail

}  // namespace mlsc
