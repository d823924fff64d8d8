#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mlsc/common.hpp"
#include "mlsc/graph.hpp"

namespace mlsc {

// Community labels for one side of a network. labels[i] in [0, K).
struct Membership {
  std::vector<std::int32_t> labels;
  std::int32_t K = 0;

  std::int64_t n() const { return static_cast<std::int64_t>(labels.size()); }
  void validate() const;
  // Number of nodes per community.
  std::vector<std::int64_t> sizes() const;
};

// Block model: per-layer edge-probability matrices (already scaled by rho)
// plus row membership, and column membership for the directed co-block case.
struct BlockModel {
  std::int64_t n = 0;
  Membership rows;
  std::optional<Membership> cols;  // set only for directed models
  std::vector<Matrix> blocks;      // L matrices, K_row x K_col, entries in [0,1]
  double rho = 0.0;

  bool directed() const { return cols.has_value(); }
  std::int64_t num_layers() const {
    return static_cast<std::int64_t>(blocks.size());
  }
  void validate() const;
};

// Splits n nodes into communities by the given proportions using
// largest-remainder rounding (ties to the earlier community), assigned to
// contiguous index ranges.
Membership contiguous_membership(std::int64_t n,
                                 const std::vector<double>& proportions);

// The four built-in models. All use K = 3 communities with row proportions
// (0.3, 0.4, 0.3); preset 4 is directed with column proportions
// (0.4, 0.3, 0.3). Layers 1..L/2 use the first block matrix, the rest the
// second; L must be even. Block matrices are built from their exact
// eigen-factorizations, not rounded displays.
BlockModel model_preset(int id, std::int64_t n, std::int64_t L, double rho);

// Undirected multi-layer sampler: one Bernoulli event per unordered pair per
// layer, mirrored into a symmetric zero-diagonal layer. Deterministic given
// (model, seed); layers use independent sub-seeds.
MultiLayerNetwork sample_msbm(const BlockModel& model, std::uint64_t seed);

// Directed variant: one Bernoulli event per ordered pair (i != j) per layer.
MultiLayerNetwork sample_mscbm(const BlockModel& model, std::uint64_t seed);

// Population aggregate (1/L) sum_l P_l^2 / n with P_l = Theta B_l Theta^T
// (diagonal included). Dense; guarded at n <= 5000.
Matrix population_pi(const BlockModel& model);

// The exact 3x3 block matrices of a preset (l = 0 for the first half's
// matrix, l = 1 for the second), unscaled by rho. Exposed for tests.
Matrix preset_base_block(int id, int half);

}  // namespace mlsc
