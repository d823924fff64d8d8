#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mlsc/common.hpp"
#include "mlsc/eig.hpp"
#include "mlsc/sbm.hpp"
#include "mlsc/sketch.hpp"

namespace mlsc {

struct ClusterResult {
  Membership labels;
  Matrix centroids;  // K x d
  double inertia = 0.0;
  std::int32_t iterations = 0;
  // Within-cluster cost after each Lloyd iteration of the winning restart;
  // non-increasing by construction.
  std::vector<double> inertia_trace;
};

// Wall-clock (stage, seconds) pairs in execution order.
using Timings = std::vector<std::pair<std::string, double>>;

// Lloyd's algorithm with k-means++ seeding, best of `restarts` runs by final
// inertia. Empty clusters are repaired by reseeding to the point farthest
// from its assigned centroid. Deterministic given seed.
ClusterResult kmeans(const Matrix& rows, std::int32_t K, std::uint64_t seed,
                     std::int32_t restarts = 10, std::int32_t max_iter = 100);

struct PipelineConfig {
  std::int32_t K = 2;
  double p = 1.0;
  std::int32_t q = 0;
  std::uint64_t seed = 0;
  std::int32_t kmeans_restarts = 10;
  std::int32_t kmeans_max_iter = 100;
  TestDist test_distribution = TestDist::Gaussian;
};

struct PipelineOutput {
  ClusterResult clusters;
  Embedding embedding;
  Timings timings;
};

// Full randomized pipeline: sparsify, build the debiased operator, block
// Krylov basis, Rayleigh-Ritz, k-means. Never materializes a dense n x n
// matrix. A degenerate (e.g. empty) network yields an arbitrary valid
// labeling rather than an error.
PipelineOutput rsc_pipeline(const MultiLayerNetwork& net,
                            const PipelineConfig& cfg);

struct ScConfig {
  std::int32_t K = 2;
  std::uint64_t seed = 0;
  std::int32_t kmeans_restarts = 10;
  std::int32_t kmeans_max_iter = 100;
  // Dense path materializes the exact aggregate and uses the full
  // eigendecomposition (guarded at n <= 2000); the matrix-free path runs the
  // exact operator through a high-accuracy Krylov basis (q = ceil(log2 n)+4).
  bool dense_oracle = true;
};

// Exact (non-randomized) spectral clustering baseline on the aggregate
// (1/(Ln)) sum_l (A_l^2 - D_l).
PipelineOutput sc_pipeline(const MultiLayerNetwork& net, const ScConfig& cfg);

struct CoclusterConfig {
  std::int32_t Ky = 2;
  std::int32_t Kz = 2;
  double p = 1.0;
  std::int32_t q = 0;
  std::uint64_t seed = 0;
  std::int32_t kmeans_restarts = 10;
  std::int32_t kmeans_max_iter = 100;
  TestDist test_distribution = TestDist::Gaussian;
};

struct CoclusterOutput {
  ClusterResult row_clusters;
  ClusterResult col_clusters;
  Embedding row_embedding;
  Embedding col_embedding;
  Timings timings;
};

// Directed co-clustering: one shared sparsification pass, then independent
// row (sender) and column (receiver) branches.
CoclusterOutput rsc_coclustering(const MultiLayerNetwork& net,
                                 const CoclusterConfig& cfg);

struct ScCoclusterConfig {
  std::int32_t Ky = 2;
  std::int32_t Kz = 2;
  std::uint64_t seed = 0;
  std::int32_t kmeans_restarts = 10;
  std::int32_t kmeans_max_iter = 100;
  bool dense_oracle = true;
};

// Exact directed baseline on the row/column aggregates.
CoclusterOutput sc_coclustering(const MultiLayerNetwork& net,
                                const ScCoclusterConfig& cfg);

// Default high-accuracy power parameter for the exact matrix-free path.
std::int32_t exact_path_q(std::int64_t n);

}  // namespace mlsc
