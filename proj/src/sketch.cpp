#include "mlsc/sketch.hpp"

#include <algorithm>
#include <string>

#include "mlsc/kernels.hpp"
#include "mlsc/rng.hpp"

namespace mlsc {
namespace {

void require_binary(const MultiLayerNetwork& net, const char* what) {
  for (const SparseLayer& layer : net.layers)
    for (double v : layer.val)
      if (v != 1.0)
        throw validation_error(std::string(what) +
                               " requires raw 0/1 adjacency values");
}

// out += A X  (CSR rows times row-major block)
void add_ax(const SparseLayer& A, const Matrix& X, Matrix& out) {
  const auto& k = kern::active();
  const std::size_t b = static_cast<std::size_t>(X.cols);
  for (std::int64_t i = 0; i < A.n; ++i) {
    const std::int64_t t0 = A.rowptr[i];
    k.csr_row_block(out.row(i), A.col.data() + t0, A.val.data() + t0,
                    static_cast<std::size_t>(A.rowptr[i + 1] - t0), X.data.data(),
                    b);
  }
}

// out += A^T X
void add_atx(const SparseLayer& A, const Matrix& X, Matrix& out) {
  const auto& k = kern::active();
  const std::size_t b = static_cast<std::size_t>(X.cols);
  for (std::int64_t i = 0; i < A.n; ++i)
    for (std::int64_t t = A.rowptr[i]; t < A.rowptr[i + 1]; ++t)
      k.axpy(out.row(A.col[t]), A.val[t], X.row(i), b);
}

}  // namespace

MultiLayerNetwork sparsify(const MultiLayerNetwork& net,
                           const SamplingConfig& cfg) {
  if (!(cfg.p > 0.0 && cfg.p <= 1.0))
    throw validation_error("sampling probability must be in (0, 1], got " +
                           std::to_string(cfg.p));
  require_binary(net, "sparsify");
  const double w = 1.0 / cfg.p;

  MultiLayerNetwork out;
  out.n = net.n;
  out.directed = net.directed;
  out.layers.reserve(net.layers.size());

  for (std::int64_t l = 0; l < net.num_layers(); ++l) {
    const SparseLayer& A = net.layers[l];
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(l)));
    if (!net.directed) {
      // one draw per unordered pair, visited at its upper-triangle entry
      std::vector<std::pair<std::int32_t, std::int32_t>> upper;
      for (std::int64_t i = 0; i < A.n; ++i)
        for (std::int64_t t = A.rowptr[i]; t < A.rowptr[i + 1]; ++t)
          if (A.col[t] > i && rng.uniform() < cfg.p)
            upper.emplace_back(static_cast<std::int32_t>(i), A.col[t]);
      out.layers.push_back(symmetric_from_upper(A.n, upper, w));
    } else {
      std::vector<std::int64_t> rowptr(A.n + 1, 0);
      std::vector<std::int32_t> cols;
      for (std::int64_t i = 0; i < A.n; ++i) {
        for (std::int64_t t = A.rowptr[i]; t < A.rowptr[i + 1]; ++t)
          if (rng.uniform() < cfg.p) cols.push_back(A.col[t]);
        rowptr[i + 1] = static_cast<std::int64_t>(cols.size());
      }
      std::vector<double> vals(cols.size(), w);
      out.layers.push_back(SparseLayer::from_sorted(
          A.n, std::move(rowptr), std::move(cols), std::move(vals)));
    }
  }
  return out;
}

void DenseOp::apply_block(const Matrix& X, Matrix& out) const {
  if (X.rows != m_.rows)
    throw validation_error("operator/block dimension mismatch");
  out = Matrix(X.rows, X.cols);
  const auto& k = kern::active();
  for (std::int64_t i = 0; i < m_.rows; ++i)
    for (std::int64_t j = 0; j < m_.cols; ++j)
      k.axpy(out.row(i), m_(i, j), X.row(j), static_cast<std::size_t>(X.cols));
}

DebiasedOperator::DebiasedOperator(const MultiLayerNetwork& net, double p,
                                   Variant variant)
    : net_(&net), p_(p), variant_(variant), n_(net.n) {
  if (net.num_layers() < 1) throw validation_error("need L >= 1");
  const bool exact = variant == Variant::ExactUndirected ||
                     variant == Variant::ExactRow || variant == Variant::ExactCol;
  const bool wants_directed = variant == Variant::Row || variant == Variant::Col ||
                              variant == Variant::ExactRow ||
                              variant == Variant::ExactCol;
  if (wants_directed != net.directed)
    throw validation_error(wants_directed
                               ? "row/col variants require a directed network"
                               : "undirected variant requires an undirected network");
  if (exact) {
    if (p != 1.0)
      throw validation_error("exact variants require p = 1");
    require_binary(net, "exact operator");
  }
  if (!(p > 0.0 && p <= 1.0))
    throw validation_error("p must be in (0, 1]");

  const DegreeMode mode = (variant == Variant::Col || variant == Variant::ExactCol)
                              ? DegreeMode::Col
                              : DegreeMode::Row;
  degsum_.assign(n_, 0.0);
  degs_.reserve(net.layers.size());
  for (const SparseLayer& layer : net.layers) {
    degs_.push_back(degrees(layer, mode));
    for (std::int64_t i = 0; i < n_; ++i) degsum_[i] += degs_.back()[i];
  }
}

void DebiasedOperator::apply_block(const Matrix& X, Matrix& out) const {
  if (X.rows != n_)
    throw validation_error("operator expects " + std::to_string(n_) +
                           " rows, got " + std::to_string(X.rows));
  const std::int64_t b = X.cols;
  const std::int64_t L = net_->num_layers();
  out = Matrix(n_, b);
  Matrix tmp(n_, b);
  const bool col_variant =
      variant_ == Variant::Col || variant_ == Variant::ExactCol;
  const bool row_variant =
      variant_ == Variant::Row || variant_ == Variant::ExactRow;

  for (const SparseLayer& A : net_->layers) {
    std::fill(tmp.data.begin(), tmp.data.end(), 0.0);
    if (row_variant) {
      add_atx(A, X, tmp);
      add_ax(A, tmp, out);
    } else if (col_variant) {
      add_ax(A, X, tmp);
      add_atx(A, tmp, out);
    } else {
      add_ax(A, X, tmp);
      add_ax(A, tmp, out);
    }
  }

  const auto& k = kern::active();
  const double scale = 1.0 / (static_cast<double>(L) * static_cast<double>(n_));
  const double dscale = scale / (p_ * p_);
  k.scal(out.data.data(), scale, out.data.size());
  for (std::int64_t i = 0; i < n_; ++i)
    k.axpy(out.row(i), -degsum_[i] * dscale, X.row(i),
           static_cast<std::size_t>(b));
}

Matrix dense_reference(const LinearOp& op) {
  const std::int64_t n = op.dim();
  if (n > 2000)
    throw capacity_error("dense reference guard: n <= 2000, got " +
                         std::to_string(n));
  Matrix dense(n, n);
  const std::int64_t bs = 128;
  for (std::int64_t c0 = 0; c0 < n; c0 += bs) {
    const std::int64_t b = std::min(bs, n - c0);
    Matrix eye(n, b);
    for (std::int64_t j = 0; j < b; ++j) eye(c0 + j, j) = 1.0;
    const Matrix block = op.apply(eye);
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < b; ++j) dense(i, c0 + j) = block(i, j);
  }
  return dense;
}

}  // namespace mlsc
