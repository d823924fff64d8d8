#include "mlsc/cluster.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "mlsc/rng.hpp"

namespace mlsc {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double sqdist(const double* a, const double* b, std::int64_t d) {
  double s = 0.0;
  for (std::int64_t i = 0; i < d; ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

struct LloydRun {
  std::vector<std::int32_t> assign;
  Matrix centroids;
  double inertia = std::numeric_limits<double>::infinity();
  std::int32_t iterations = 0;
  std::vector<double> trace;
};

LloydRun lloyd_once(const Matrix& rows, std::int32_t K, Rng& rng,
                    std::int32_t max_iter) {
  const std::int64_t n = rows.rows;
  const std::int64_t d = rows.cols;
  LloydRun run;
  run.centroids = Matrix(K, d);

  // k-means++ seeding
  std::vector<double> dist2(n, std::numeric_limits<double>::infinity());
  {
    const std::int64_t first = static_cast<std::int64_t>(rng.below(n));
    std::copy_n(rows.row(first), d, run.centroids.row(0));
    for (std::int32_t c = 1; c < K; ++c) {
      double total = 0.0;
      for (std::int64_t i = 0; i < n; ++i) {
        dist2[i] = std::min(dist2[i], sqdist(rows.row(i),
                                             run.centroids.row(c - 1), d));
        total += dist2[i];
      }
      std::int64_t pick;
      if (total <= 0.0) {
        pick = static_cast<std::int64_t>(rng.below(n));
      } else {
        const double u = rng.uniform() * total;
        double cum = 0.0;
        pick = n - 1;
        for (std::int64_t i = 0; i < n; ++i) {
          cum += dist2[i];
          if (u < cum) {
            pick = i;
            break;
          }
        }
      }
      std::copy_n(rows.row(pick), d, run.centroids.row(c));
    }
  }

  run.assign.assign(n, -1);
  std::vector<std::int32_t> prev(n, -1);
  std::vector<std::int64_t> counts(K);
  for (std::int32_t iter = 0; iter < max_iter; ++iter) {
    // assignment step (ties to the lower cluster index)
    double inertia = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      std::int32_t best = 0;
      double bestd = sqdist(rows.row(i), run.centroids.row(0), d);
      for (std::int32_t c = 1; c < K; ++c) {
        const double dd = sqdist(rows.row(i), run.centroids.row(c), d);
        if (dd < bestd) {
          bestd = dd;
          best = c;
        }
      }
      run.assign[i] = best;
      dist2[i] = bestd;
      inertia += bestd;
    }
    run.inertia = inertia;
    run.trace.push_back(inertia);
    run.iterations = iter + 1;
    if (run.assign == prev) break;
    prev = run.assign;

    // update step
    std::fill(run.centroids.data.begin(), run.centroids.data.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::int64_t i = 0; i < n; ++i) {
      counts[run.assign[i]]++;
      const double* r = rows.row(i);
      double* c = run.centroids.row(run.assign[i]);
      for (std::int64_t j = 0; j < d; ++j) c[j] += r[j];
    }
    for (std::int32_t c = 0; c < K; ++c)
      if (counts[c] > 0)
        for (std::int64_t j = 0; j < d; ++j)
          run.centroids(c, j) /= static_cast<double>(counts[c]);

    // repair empty clusters: move each to the point currently farthest from
    // its own centroid (the repaired point can't be claimed twice)
    for (std::int32_t c = 0; c < K; ++c) {
      if (counts[c] > 0) continue;
      std::int64_t far = 0;
      double fard = -1.0;
      for (std::int64_t i = 0; i < n; ++i)
        if (dist2[i] > fard) {
          fard = dist2[i];
          far = i;
        }
      std::copy_n(rows.row(far), d, run.centroids.row(c));
      dist2[far] = 0.0;
      counts[c] = 1;
    }
  }
  return run;
}

PipelineOutput embed_and_cluster(const LinearOp& op, std::int32_t K,
                                 std::int32_t q, TestDist dist,
                                 std::uint64_t basis_seed,
                                 std::uint64_t kmeans_seed,
                                 std::int32_t restarts, std::int32_t max_iter,
                                 Timings timings) {
  PipelineOutput out;
  auto t = Clock::now();
  const ColMatrix Q = krylov_basis(op, {K, q, basis_seed, dist});
  timings.emplace_back("krylov_basis", seconds_since(t));

  t = Clock::now();
  const std::int64_t n = op.dim();
  if (Q.cols == 0) {
    // zero operator (e.g. empty network): any labeling is as good as any
    out.clusters.labels.labels.assign(n, 0);
    out.clusters.labels.K = K;
    out.clusters.centroids = Matrix(K, 0);
    timings.emplace_back("rayleigh_ritz", seconds_since(t));
    timings.emplace_back("kmeans", 0.0);
    out.timings = std::move(timings);
    return out;
  }
  const std::int32_t k_eff =
      std::min<std::int32_t>(K, static_cast<std::int32_t>(Q.cols));
  out.embedding = rayleigh_ritz(op, Q, k_eff);
  timings.emplace_back("rayleigh_ritz", seconds_since(t));

  t = Clock::now();
  out.clusters = kmeans(out.embedding.vectors, K, kmeans_seed, restarts,
                        max_iter);
  timings.emplace_back("kmeans", seconds_since(t));
  out.timings = std::move(timings);
  return out;
}

}  // namespace

ClusterResult kmeans(const Matrix& rows, std::int32_t K, std::uint64_t seed,
                     std::int32_t restarts, std::int32_t max_iter) {
  const std::int64_t n = rows.rows;
  if (K < 1 || K > n)
    throw validation_error("kmeans needs 1 <= K <= n, got K = " +
                           std::to_string(K) + ", n = " + std::to_string(n));
  if (rows.cols < 1) throw validation_error("kmeans needs d >= 1");
  if (restarts < 1 || max_iter < 1)
    throw validation_error("kmeans needs restarts >= 1 and max_iter >= 1");

  LloydRun best;
  for (std::int32_t r = 0; r < restarts; ++r) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    LloydRun run = lloyd_once(rows, K, rng, max_iter);
    if (run.inertia < best.inertia) best = std::move(run);
  }

  ClusterResult result;
  result.labels.labels = std::move(best.assign);
  result.labels.K = K;
  result.centroids = std::move(best.centroids);
  result.inertia = best.inertia;
  result.iterations = best.iterations;
  result.inertia_trace = std::move(best.trace);
  return result;
}

std::int32_t exact_path_q(std::int64_t n) {
  return static_cast<std::int32_t>(
             std::ceil(std::log2(static_cast<double>(std::max<std::int64_t>(
                 n, 2))))) +
         4;
}

PipelineOutput rsc_pipeline(const MultiLayerNetwork& net,
                            const PipelineConfig& cfg) {
  if (net.directed)
    throw validation_error("rsc_pipeline expects an undirected network");
  Timings timings;
  auto t = Clock::now();
  const MultiLayerNetwork sampled =
      sparsify(net, {cfg.p, mix_seed(cfg.seed, 1)});
  timings.emplace_back("sparsify", seconds_since(t));

  t = Clock::now();
  const DebiasedOperator op(sampled, cfg.p, Variant::Undirected);
  timings.emplace_back("build_operator", seconds_since(t));

  return embed_and_cluster(op, cfg.K, cfg.q, cfg.test_distribution,
                           mix_seed(cfg.seed, 2), mix_seed(cfg.seed, 3),
                           cfg.kmeans_restarts, cfg.kmeans_max_iter,
                           std::move(timings));
}

PipelineOutput sc_pipeline(const MultiLayerNetwork& net, const ScConfig& cfg) {
  if (net.directed)
    throw validation_error("sc_pipeline expects an undirected network");
  Timings timings;
  auto t = Clock::now();
  const DebiasedOperator op(net, 1.0, Variant::ExactUndirected);
  timings.emplace_back("build_operator", seconds_since(t));

  if (cfg.dense_oracle) {
    t = Clock::now();
    const Matrix m = dense_reference(op);
    timings.emplace_back("materialize", seconds_since(t));

    t = Clock::now();
    PipelineOutput out;
    out.embedding = dense_top_eigs(m, cfg.K);
    timings.emplace_back("eig", seconds_since(t));

    t = Clock::now();
    out.clusters = kmeans(out.embedding.vectors, cfg.K, mix_seed(cfg.seed, 3),
                          cfg.kmeans_restarts, cfg.kmeans_max_iter);
    timings.emplace_back("kmeans", seconds_since(t));
    out.timings = std::move(timings);
    return out;
  }
  return embed_and_cluster(op, cfg.K, exact_path_q(net.n), TestDist::Gaussian,
                           mix_seed(cfg.seed, 2), mix_seed(cfg.seed, 3),
                           cfg.kmeans_restarts, cfg.kmeans_max_iter,
                           std::move(timings));
}

CoclusterOutput rsc_coclustering(const MultiLayerNetwork& net,
                                 const CoclusterConfig& cfg) {
  if (!net.directed)
    throw validation_error("rsc_coclustering expects a directed network");
  CoclusterOutput out;
  auto t = Clock::now();
  const MultiLayerNetwork sampled =
      sparsify(net, {cfg.p, mix_seed(cfg.seed, 1)});
  out.timings.emplace_back("sparsify", seconds_since(t));

  t = Clock::now();
  const DebiasedOperator row_op(sampled, cfg.p, Variant::Row);
  const DebiasedOperator col_op(sampled, cfg.p, Variant::Col);
  out.timings.emplace_back("build_operator", seconds_since(t));

  PipelineOutput row = embed_and_cluster(
      row_op, cfg.Ky, cfg.q, cfg.test_distribution, mix_seed(cfg.seed, 2),
      mix_seed(cfg.seed, 3), cfg.kmeans_restarts, cfg.kmeans_max_iter, {});
  PipelineOutput col = embed_and_cluster(
      col_op, cfg.Kz, cfg.q, cfg.test_distribution, mix_seed(cfg.seed, 4),
      mix_seed(cfg.seed, 5), cfg.kmeans_restarts, cfg.kmeans_max_iter, {});
  for (auto& [stage, secs] : row.timings)
    out.timings.emplace_back("row_" + stage, secs);
  for (auto& [stage, secs] : col.timings)
    out.timings.emplace_back("col_" + stage, secs);
  out.row_clusters = std::move(row.clusters);
  out.col_clusters = std::move(col.clusters);
  out.row_embedding = std::move(row.embedding);
  out.col_embedding = std::move(col.embedding);
  return out;
}

CoclusterOutput sc_coclustering(const MultiLayerNetwork& net,
                                const ScCoclusterConfig& cfg) {
  if (!net.directed)
    throw validation_error("sc_coclustering expects a directed network");
  CoclusterOutput out;
  auto run_side = [&](Variant variant, std::int32_t K, std::uint64_t tag_eig,
                      std::uint64_t tag_km) {
    Timings timings;
    auto t = Clock::now();
    const DebiasedOperator op(net, 1.0, variant);
    timings.emplace_back("build_operator", seconds_since(t));
    if (!cfg.dense_oracle)
      return embed_and_cluster(op, K, exact_path_q(net.n), TestDist::Gaussian,
                               mix_seed(cfg.seed, tag_eig),
                               mix_seed(cfg.seed, tag_km),
                               cfg.kmeans_restarts, cfg.kmeans_max_iter,
                               std::move(timings));
    PipelineOutput side;
    t = Clock::now();
    const Matrix m = dense_reference(op);
    timings.emplace_back("materialize", seconds_since(t));
    t = Clock::now();
    side.embedding = dense_top_eigs(m, K);
    timings.emplace_back("eig", seconds_since(t));
    t = Clock::now();
    side.clusters =
        kmeans(side.embedding.vectors, K, mix_seed(cfg.seed, tag_km),
               cfg.kmeans_restarts, cfg.kmeans_max_iter);
    timings.emplace_back("kmeans", seconds_since(t));
    side.timings = std::move(timings);
    return side;
  };
  PipelineOutput row = run_side(Variant::ExactRow, cfg.Ky, 2, 3);
  PipelineOutput col = run_side(Variant::ExactCol, cfg.Kz, 4, 5);
  for (auto& [stage, secs] : row.timings)
    out.timings.emplace_back("row_" + stage, secs);
  for (auto& [stage, secs] : col.timings)
    out.timings.emplace_back("col_" + stage, secs);
  out.row_clusters = std::move(row.clusters);
  out.col_clusters = std::move(col.clusters);
  out.row_embedding = std::move(row.embedding);
  out.col_embedding = std::move(col.embedding);
  return out;
}

}  // namespace mlsc
