#include "mlsc/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mlsc/rng.hpp"

namespace mlsc {
namespace {

// Maximal runs of equal label in index order: (begin, end, label).
struct Run {
  std::int64_t begin, end;
  std::int32_t label;
};

std::vector<Run> label_runs(const Membership& m) {
  std::vector<Run> runs;
  const std::int64_t n = m.n();
  std::int64_t start = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    if (i == n || m.labels[i] != m.labels[start]) {
      runs.push_back({start, i, m.labels[start]});
      start = i;
    }
  }
  return runs;
}

// Appends every j in [lo, hi) kept by an independent Bernoulli(pr) draw,
// using geometric gap sampling so the cost is proportional to the number of
// successes. Distribution-identical to one draw per pair.
template <typename Emit>
void sample_interval(Rng& rng, double pr, std::int64_t lo, std::int64_t hi,
                     Emit&& emit) {
  if (pr <= 0.0 || lo >= hi) return;
  if (pr >= 1.0) {
    for (std::int64_t j = lo; j < hi; ++j) emit(j);
    return;
  }
  const double logq = std::log1p(-pr);
  double j = static_cast<double>(lo) - 1.0;
  for (;;) {
    const double u = rng.uniform();
    if (u <= 0.0) return;
    j += 1.0 + std::floor(std::log(u) / logq);
    if (j >= static_cast<double>(hi)) return;
    emit(static_cast<std::int64_t>(j));
  }
}

MultiLayerNetwork sample_impl(const BlockModel& model, std::uint64_t seed,
                              bool directed) {
  model.validate();
  if (directed != model.directed())
    throw validation_error(directed
                               ? "directed sampler needs a column membership"
                               : "undirected sampler forbids a column membership");
  const std::int64_t n = model.n;
  const Membership& colm = directed ? *model.cols : model.rows;
  const std::vector<Run> runs = label_runs(colm);

  MultiLayerNetwork net;
  net.n = n;
  net.directed = directed;
  net.layers.reserve(model.num_layers());

  for (std::int64_t l = 0; l < model.num_layers(); ++l) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(l)));
    const Matrix& B = model.blocks[l];
    if (!directed) {
      std::vector<std::pair<std::int32_t, std::int32_t>> upper;
      for (std::int64_t i = 0; i < n; ++i) {
        const std::int32_t gi = model.rows.labels[i];
        for (const Run& r : runs) {
          const std::int64_t lo = std::max(r.begin, i + 1);
          if (lo >= r.end) continue;
          sample_interval(rng, B(gi, r.label), lo, r.end, [&](std::int64_t j) {
            upper.emplace_back(static_cast<std::int32_t>(i),
                               static_cast<std::int32_t>(j));
          });
        }
      }
      net.layers.push_back(symmetric_from_upper(n, upper, 1.0));
    } else {
      std::vector<std::int64_t> rowptr(n + 1, 0);
      std::vector<std::int32_t> cols;
      for (std::int64_t i = 0; i < n; ++i) {
        const std::int32_t gi = model.rows.labels[i];
        for (const Run& r : runs) {
          const double pr = B(gi, r.label);
          auto emit = [&](std::int64_t j) {
            cols.push_back(static_cast<std::int32_t>(j));
          };
          // split the run around the diagonal so i itself is never drawn
          if (i >= r.begin && i < r.end) {
            sample_interval(rng, pr, r.begin, i, emit);
            sample_interval(rng, pr, i + 1, r.end, emit);
          } else {
            sample_interval(rng, pr, r.begin, r.end, emit);
          }
        }
        rowptr[i + 1] = static_cast<std::int64_t>(cols.size());
      }
      std::vector<double> vals(cols.size(), 1.0);
      net.layers.push_back(SparseLayer::from_sorted(
          n, std::move(rowptr), std::move(cols), std::move(vals)));
    }
  }
  return net;
}

Matrix make_block(const Matrix& U, const std::vector<double>& d,
                  const Matrix& V) {
  Matrix B(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += U(i, k) * d[k] * V(j, k);
      B(i, j) = s;
    }
  return B;
}

// Column-wise Gram-Schmidt orthonormalization of a 3x3 matrix.
Matrix gs_orthonormalize(Matrix M) {
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < j; ++k) {
      double dot = 0.0;
      for (int i = 0; i < 3; ++i) dot += M(i, j) * M(i, k);
      for (int i = 0; i < 3; ++i) M(i, j) -= dot * M(i, k);
    }
    double nrm = 0.0;
    for (int i = 0; i < 3; ++i) nrm += M(i, j) * M(i, j);
    nrm = std::sqrt(nrm);
    for (int i = 0; i < 3; ++i) M(i, j) /= nrm;
  }
  return M;
}

Matrix preset_u(int id) {
  const double s2 = std::sqrt(2.0) / 2.0;
  Matrix U(3, 3);
  if (id == 2) {
    // Printed to two decimals in the source model; orthonormalized so the
    // intended rank structure (rank of the squared-block sum = 2) is exact.
    const double raw[3][3] = {
        {0.5, 0.84, -0.19}, {0.5, -0.46, -0.73}, {0.71, -0.27, 0.65}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) U(i, j) = raw[i][j];
    return gs_orthonormalize(U);
  }
  const double raw[3][3] = {{0.5, 0.5, -s2}, {0.5, 0.5, s2}, {s2, -s2, 0.0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) U(i, j) = raw[i][j];
  return U;
}

Matrix preset_v4() {
  const double s2 = std::sqrt(2.0) / 2.0;
  Matrix V(3, 3);
  const double raw[3][3] = {{s2, -s2, 0.0}, {0.5, 0.5, -s2}, {0.5, 0.5, s2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) V(i, j) = raw[i][j];
  return V;
}

}  // namespace

void Membership::validate() const {
  if (K < 1) throw validation_error("membership needs K >= 1");
  for (std::int32_t g : labels)
    if (g < 0 || g >= K)
      throw validation_error("label " + std::to_string(g) + " outside [0, " +
                             std::to_string(K) + ")");
}

std::vector<std::int64_t> Membership::sizes() const {
  std::vector<std::int64_t> s(K, 0);
  for (std::int32_t g : labels) s[g]++;
  return s;
}

void BlockModel::validate() const {
  if (num_layers() < 1) throw validation_error("need L >= 1");
  rows.validate();
  if (rows.n() != n) throw validation_error("row membership length != n");
  const std::int64_t kr = rows.K;
  const std::int64_t kc = cols ? cols->K : kr;
  if (cols) {
    cols->validate();
    if (cols->n() != n) throw validation_error("column membership length != n");
  }
  for (const Matrix& B : blocks) {
    if (B.rows != kr || B.cols != kc)
      throw validation_error("block matrix shape mismatch");
    for (double v : B.data)
      if (!(v >= 0.0 && v <= 1.0))
        throw validation_error("edge probability " + std::to_string(v) +
                               " outside [0,1]");
  }
}

Membership contiguous_membership(std::int64_t n,
                                 const std::vector<double>& proportions) {
  const std::int32_t K = static_cast<std::int32_t>(proportions.size());
  std::vector<std::int64_t> sizes(K);
  std::vector<std::pair<double, std::int32_t>> rem(K);
  std::int64_t assigned = 0;
  for (std::int32_t c = 0; c < K; ++c) {
    const double exact = proportions[c] * static_cast<double>(n);
    sizes[c] = static_cast<std::int64_t>(std::floor(exact));
    assigned += sizes[c];
    rem[c] = {-(exact - std::floor(exact)), c};  // descending remainder
  }
  std::stable_sort(rem.begin(), rem.end());
  for (std::int64_t r = 0; r < n - assigned; ++r) sizes[rem[r % K].second]++;

  Membership m;
  m.K = K;
  m.labels.reserve(n);
  for (std::int32_t c = 0; c < K; ++c)
    m.labels.insert(m.labels.end(), sizes[c], c);
  return m;
}

Matrix preset_base_block(int id, int half) {
  const Matrix U = preset_u(id);
  switch (id) {
    case 1:
      return make_block(U, half == 0 ? std::vector<double>{1.5, 0.2, 0.4}
                                     : std::vector<double>{1.5, 0.2, -0.4},
                        U);
    case 2:
      return make_block(U, half == 0 ? std::vector<double>{1.5, 0.4, 0.0}
                                     : std::vector<double>{1.5, -0.4, 0.0},
                        U);
    case 3:
      return make_block(U, half == 0 ? std::vector<double>{1.5, 0.2, 0.4}
                                     : std::vector<double>{1.0, 0.4, 0.2},
                        U);
    case 4:
      return make_block(U, half == 0 ? std::vector<double>{1.5, 0.2, 0.4}
                                     : std::vector<double>{1.5, 0.2, -0.4},
                        preset_v4());
    default:
      throw validation_error("model id must be 1..4");
  }
}

BlockModel model_preset(int id, std::int64_t n, std::int64_t L, double rho) {
  if (id < 1 || id > 4) throw validation_error("model id must be 1..4");
  if (L < 2 || L % 2 != 0) throw validation_error("presets need even L >= 2");
  if (n < 1) throw validation_error("need n >= 1");
  if (rho < 0.0) throw validation_error("need rho >= 0");

  BlockModel model;
  model.n = n;
  model.rho = rho;
  model.rows = contiguous_membership(n, {0.3, 0.4, 0.3});
  if (id == 4) model.cols = contiguous_membership(n, {0.4, 0.3, 0.3});

  Matrix scaled[2];
  for (int half = 0; half < 2; ++half) {
    scaled[half] = preset_base_block(id, half);
    for (double& v : scaled[half].data) v *= rho;
  }
  model.blocks.reserve(L);
  for (std::int64_t l = 0; l < L; ++l)
    model.blocks.push_back(scaled[l < L / 2 ? 0 : 1]);
  model.validate();
  return model;
}

MultiLayerNetwork sample_msbm(const BlockModel& model, std::uint64_t seed) {
  return sample_impl(model, seed, false);
}

MultiLayerNetwork sample_mscbm(const BlockModel& model, std::uint64_t seed) {
  return sample_impl(model, seed, true);
}

Matrix population_pi(const BlockModel& model) {
  model.validate();
  if (model.directed())
    throw validation_error("population matrix is defined for undirected models");
  if (model.n > 5000)
    throw capacity_error("population matrix guard: n <= 5000, got " +
                         std::to_string(model.n));
  const std::int64_t n = model.n;
  const std::int32_t K = model.rows.K;
  const std::vector<std::int64_t> sizes = model.rows.sizes();
  const std::int64_t L = model.num_layers();

  // (P_l^2)[i,j] depends only on the labels: sum_c n_c B[g_i,c] B[c,g_j].
  Matrix S(K, K);
  for (const Matrix& B : model.blocks)
    for (std::int32_t a = 0; a < K; ++a)
      for (std::int32_t b = 0; b < K; ++b) {
        double s = 0.0;
        for (std::int32_t c = 0; c < K; ++c)
          s += static_cast<double>(sizes[c]) * B(a, c) * B(c, b);
        S(a, b) += s;
      }
  const double scale = 1.0 / (static_cast<double>(L) * static_cast<double>(n));
  Matrix pi(n, n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      pi(i, j) = scale * S(model.rows.labels[i], model.rows.labels[j]);
  return pi;
}

}  // namespace mlsc
