#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mlsc/eig.hpp"
#include "mlsc/sbm.hpp"
#include "support.hpp"

using namespace mlsc;

namespace {

BlockModel uniform_model(std::int64_t n, std::int64_t L, double prob) {
  BlockModel m;
  m.n = n;
  m.rows.K = 1;
  m.rows.labels.assign(n, 0);
  m.rho = 1.0;
  Matrix b(1, 1);
  b(0, 0) = prob;
  m.blocks.assign(L, b);
  return m;
}

bool has_diagonal(const SparseLayer& layer) {
  for (std::int64_t i = 0; i < layer.n; ++i)
    if (layer.at(i, i) != 0.0) return true;
  return false;
}

}  // namespace

TEST_CASE("contiguous_membership uses largest-remainder rounding") {
  const auto m = contiguous_membership(10, {0.3, 0.4, 0.3});
  CHECK(m.sizes() == std::vector<std::int64_t>{3, 4, 3});
  CHECK(m.labels == std::vector<std::int32_t>{0, 0, 0, 1, 1, 1, 1, 2, 2, 2});

  // ties on the fractional part go to the earlier community
  CHECK(contiguous_membership(7, {0.5, 0.5}).sizes() ==
        std::vector<std::int64_t>{4, 3});

  for (std::int64_t n : {1, 2, 13, 997}) {
    const auto mm = contiguous_membership(n, {0.3, 0.4, 0.3});
    std::int64_t total = 0;
    for (auto s : mm.sizes()) total += s;
    CHECK(total == n);
    for (std::size_t i = 1; i < mm.labels.size(); ++i)
      CHECK(mm.labels[i] >= mm.labels[i - 1]);
  }
}

TEST_CASE("preset block matrices match their factorizations") {
  // Frozen from the stated eigen-factorizations, computed independently.
  const Matrix b1 = preset_base_block(1, 0);
  CHECK(b1(0, 0) == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(b1(0, 1) == doctest::Approx(0.225).epsilon(1e-14));
  CHECK(b1(0, 2) == doctest::Approx(0.45961940777125584).epsilon(1e-14));
  CHECK(b1(1, 2) == doctest::Approx(0.45961940777125584).epsilon(1e-14));
  CHECK(b1(2, 2) == doctest::Approx(0.85).epsilon(1e-14));

  const Matrix b2 = preset_base_block(1, 1);
  CHECK(b2(0, 0) == doctest::Approx(0.225).epsilon(1e-14));
  CHECK(b2(0, 1) == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(b2(1, 1) == doctest::Approx(0.225).epsilon(1e-14));
  CHECK(b2(2, 2) == doctest::Approx(0.85).epsilon(1e-14));

  const Matrix m3 = preset_base_block(3, 1);
  CHECK(m3(0, 0) == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(m3(0, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(m3(0, 2) == doctest::Approx(0.21213203435596426).epsilon(1e-14));
  CHECK(m3(2, 2) == doctest::Approx(0.7).epsilon(1e-14));
  // first half of model 3 reuses the first model's matrix
  CHECK(testsupport::max_abs_diff(preset_base_block(3, 0), b1) == 0.0);

  const Matrix m4 = preset_base_block(4, 0);
  CHECK(m4(2, 0) == doctest::Approx(0.85).epsilon(1e-14));
  CHECK(m4(0, 1) == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(m4(1, 2) == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(m4(0, 0) == doctest::Approx(0.45961940777125584).epsilon(1e-14));

  // regression pin for the orthonormalized second model
  CHECK(preset_base_block(2, 0)(0, 0) ==
        doctest::Approx(0.659106568546339).epsilon(1e-12));

  // symmetry of the undirected presets
  for (int id : {1, 2, 3})
    for (int half : {0, 1}) {
      const Matrix b = preset_base_block(id, half);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(b(i, j) == doctest::Approx(b(j, i)).epsilon(1e-15));
    }
}

TEST_CASE("second preset's squared-block sum has rank 2") {
  const BlockModel model = model_preset(2, 30, 4, 0.3);
  Matrix s(3, 3);
  for (const Matrix& b : model.blocks)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s(i, j) += b(i, k) * b(k, j);
  const Embedding eig = dense_top_eigs(s, 3);
  CHECK(eig.values[0] > 0.0);
  CHECK(eig.values[1] > 1e-6);
  CHECK(std::abs(eig.values[2]) <= 1e-12 * eig.values[0]);
}

TEST_CASE("model_preset structure and validation") {
  const BlockModel m1 = model_preset(1, 10, 4, 0.1);
  CHECK(m1.rows.sizes() == std::vector<std::int64_t>{3, 4, 3});
  CHECK_FALSE(m1.directed());
  CHECK(m1.num_layers() == 4);
  // rho scaling applied, halves split evenly
  CHECK(m1.blocks[0](0, 0) == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(m1.blocks[1](0, 0) == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(m1.blocks[2](0, 0) == doctest::Approx(0.0225).epsilon(1e-14));
  CHECK(m1.blocks[3](0, 0) == doctest::Approx(0.0225).epsilon(1e-14));

  const BlockModel m4 = model_preset(4, 10, 2, 0.1);
  REQUIRE(m4.directed());
  CHECK(m4.cols->sizes() == std::vector<std::int64_t>{4, 3, 3});

  CHECK_THROWS_AS(model_preset(1, 10, 3, 0.1), validation_error);
  CHECK_THROWS_AS(model_preset(1, 10, 0, 0.1), validation_error);
  CHECK_THROWS_AS(model_preset(0, 10, 4, 0.1), validation_error);
  CHECK_THROWS_AS(model_preset(5, 10, 4, 0.1), validation_error);
  CHECK_THROWS_AS(model_preset(1, 0, 4, 0.1), validation_error);
  CHECK_THROWS_AS(model_preset(1, 10, 4, -0.1), validation_error);
}

TEST_CASE("sample_msbm basic contracts") {
  const BlockModel model = model_preset(1, 80, 4, 0.0);
  const auto net = sample_msbm(model, 9);
  for (const auto& layer : net.layers) CHECK(layer.nnz() == 0);

  const auto complete = sample_msbm(uniform_model(30, 2, 1.0), 5);
  for (const auto& layer : complete.layers) {
    CHECK(layer.nnz() == 30 * 29);
    CHECK_FALSE(has_diagonal(layer));
  }
}

TEST_CASE("sample_msbm symmetry, zero diagonal, determinism") {
  const BlockModel model = model_preset(1, 120, 4, 0.15);
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 31337ull}) {
    const auto net = sample_msbm(model, seed);
    CHECK_FALSE(net.directed);
    for (const auto& layer : net.layers) {
      CHECK(layer.is_symmetric());
      CHECK_FALSE(has_diagonal(layer));
    }
  }
  const auto a = sample_msbm(model, 77);
  const auto b = sample_msbm(model, 77);
  for (std::int64_t l = 0; l < a.num_layers(); ++l) {
    CHECK(a.layers[l].rowptr == b.layers[l].rowptr);
    CHECK(a.layers[l].col == b.layers[l].col);
    CHECK(a.layers[l].val == b.layers[l].val);
  }
  const auto c = sample_msbm(model, 78);
  bool all_same = true;
  for (std::int64_t l = 0; l < a.num_layers(); ++l)
    all_same = all_same && a.layers[l].col == c.layers[l].col;
  CHECK_FALSE(all_same);
}

TEST_CASE("sample_msbm within-block frequency matches the model") {
  // Block (2,2) of the first-half matrix has probability rho * 0.85.
  const std::int64_t n = 1000, L = 20;
  const double rho = 0.1;
  const BlockModel model = model_preset(1, n, L, rho);
  const auto net = sample_msbm(model, 4242);
  const auto sizes = model.rows.sizes();
  const std::int64_t start = sizes[0] + sizes[1];
  std::int64_t edges = 0;
  for (std::int64_t l = 0; l < L / 2; ++l)
    for (std::int64_t i = start; i < n; ++i) {
      const auto& layer = net.layers[l];
      for (std::int64_t t = layer.rowptr[i]; t < layer.rowptr[i + 1]; ++t)
        if (layer.col[t] > i && layer.col[t] >= start) ++edges;
    }
  const double pairs =
      0.5 * static_cast<double>(sizes[2]) * (sizes[2] - 1) * (L / 2);
  CHECK(std::abs(edges / pairs - rho * 0.85) <= 0.01);
}

TEST_CASE("edge frequency concentrates over many layers") {
  // One fixed pair observed across R independent layers with constant block
  // probability; frequency within 3 sigma.
  const std::int64_t R = 2000;
  const double prob = 0.3;
  const auto net = sample_msbm(uniform_model(20, R, prob), 99);
  const double tol = 3.0 * std::sqrt(prob * (1.0 - prob) / R);
  const std::vector<std::pair<std::int64_t, std::int64_t>> spots = {
      {3, 11}, {0, 1}, {17, 19}};
  for (auto [i, j] : spots) {
    std::int64_t hits = 0;
    for (const auto& layer : net.layers)
      if (layer.at(i, j) != 0.0) ++hits;
    CHECK(std::abs(static_cast<double>(hits) / R - prob) <= tol);
  }
}

TEST_CASE("sample_mscbm directed contracts") {
  const BlockModel zero = model_preset(4, 50, 4, 0.0);
  const auto empty = sample_mscbm(zero, 3);
  CHECK(empty.directed);
  for (const auto& layer : empty.layers) CHECK(layer.nnz() == 0);

  BlockModel ones = uniform_model(25, 2, 1.0);
  ones.cols = ones.rows;
  const auto full = sample_mscbm(ones, 3);
  for (const auto& layer : full.layers) {
    CHECK(layer.nnz() == 25 * 24);
    CHECK_FALSE(has_diagonal(layer));
  }

  // determinism
  const BlockModel model = model_preset(4, 90, 4, 0.2);
  const auto a = sample_mscbm(model, 11);
  const auto b = sample_mscbm(model, 11);
  for (std::int64_t l = 0; l < a.num_layers(); ++l)
    CHECK(a.layers[l].col == b.layers[l].col);
}

TEST_CASE("sample_mscbm cross-block frequency matches the model") {
  // Row-block 2 to column-block 0 of the first-half matrix: rho * 0.85.
  const std::int64_t n = 600, L = 10;
  const double rho = 0.1;
  const BlockModel model = model_preset(4, n, L, rho);
  const auto net = sample_mscbm(model, 777);
  const auto rsizes = model.rows.sizes();
  const auto csizes = model.cols->sizes();
  const std::int64_t rstart = rsizes[0] + rsizes[1];
  std::int64_t edges = 0;
  for (std::int64_t l = 0; l < L / 2; ++l)
    for (std::int64_t i = rstart; i < n; ++i) {
      const auto& layer = net.layers[l];
      for (std::int64_t t = layer.rowptr[i]; t < layer.rowptr[i + 1]; ++t)
        if (layer.col[t] < csizes[0]) ++edges;
    }
  // the row block (nodes 420..) and column block (nodes 0..239) are
  // disjoint, so the diagonal exclusion never bites and every ordered pair
  // is admissible
  const double pairs =
      static_cast<double>(rsizes[2]) * csizes[0] * (L / 2);
  CHECK(std::abs(edges / pairs - rho * 0.85) <= 0.01);
}

TEST_CASE("sampling validates probabilities") {
  BlockModel bad = uniform_model(10, 2, 1.2);
  CHECK_THROWS_AS(sample_msbm(bad, 1), validation_error);
  bad.blocks[0](0, 0) = -0.1;
  bad.blocks[1](0, 0) = 0.5;
  CHECK_THROWS_AS(sample_msbm(bad, 1), validation_error);
}

TEST_CASE("population_pi closed forms") {
  const double b = 0.4;
  const auto pi = population_pi(uniform_model(12, 1, b));
  for (double v : pi.data) CHECK(v == doctest::Approx(b * b).epsilon(1e-14));

  const auto zero = population_pi(model_preset(1, 40, 4, 0.0));
  for (double v : zero.data) CHECK(v == 0.0);
}

TEST_CASE("population_pi of the first preset has rank exactly 3") {
  const auto pi = population_pi(model_preset(1, 100, 4, 0.2));
  const Embedding eig = dense_top_eigs(pi, 4);
  CHECK(eig.values[2] > 0.0);
  CHECK(std::abs(eig.values[3]) <= 1e-10 * eig.values[0]);
}

TEST_CASE("population_pi is positive semidefinite with rank <= K") {
  const std::int64_t n = 60;
  const auto pi = population_pi(model_preset(3, n, 4, 0.3));
  const Embedding all = dense_top_eigs(pi, static_cast<std::int32_t>(n));
  const double top = all.values[0];
  CHECK(all.values.back() >= -1e-10 * top);
  for (std::size_t k = 3; k < all.values.size(); ++k)
    CHECK(std::abs(all.values[k]) <= 1e-10 * top);
}

TEST_CASE("population_pi guards") {
  BlockModel big = uniform_model(5001, 1, 0.1);
  CHECK_THROWS_AS(population_pi(big), capacity_error);
  const BlockModel directed = model_preset(4, 30, 2, 0.1);
  CHECK_THROWS_AS(population_pi(directed), validation_error);
}
