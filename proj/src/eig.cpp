#include "mlsc/eig.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <ostream>

#include "mlsc/kernels.hpp"
#include "mlsc/rng.hpp"

namespace mlsc {
namespace {

double frobenius(const Matrix& m) {
  const auto& k = kern::active();
  return std::sqrt(k.dot(m.data.data(), m.data.data(), m.data.size()));
}

Matrix to_row_major(const ColMatrix& q) {
  Matrix out(q.rows, q.cols);
  for (std::int64_t j = 0; j < q.cols; ++j) {
    const double* c = q.col(j);
    for (std::int64_t i = 0; i < q.rows; ++i) out(i, j) = c[i];
  }
  return out;
}

// Top-K eigenpairs (algebraic, descending) of a small symmetric matrix.
void small_symmetric_top_k(const Matrix& C, std::int32_t K,
                           std::vector<double>& values, Matrix& vectors) {
  const std::int64_t m = C.rows;
  Eigen::MatrixXd em(m, m);
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = 0; j < m; ++j) em(i, j) = 0.5 * (C(i, j) + C(j, i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(em);
  values.resize(K);
  vectors = Matrix(m, K);
  for (std::int32_t k = 0; k < K; ++k) {
    const std::int64_t src = m - 1 - k;  // Eigen sorts ascending
    values[k] = solver.eigenvalues()(src);
    for (std::int64_t i = 0; i < m; ++i)
      vectors(i, k) = solver.eigenvectors()(i, src);
  }
}

}  // namespace

Matrix draw_test_matrix(std::int64_t n, std::int64_t K, TestDist dist,
                        std::uint64_t seed) {
  if (K < 1 || K > n)
    throw validation_error("test matrix needs 1 <= K <= n");
  Rng rng(seed);
  Matrix m(n, K);
  if (dist == TestDist::Gaussian) {
    for (double& v : m.data) v = rng.gaussian();
  } else {
    for (double& v : m.data) v = rng.rademacher();
  }
  return m;
}

ColMatrix krylov_basis_from(const LinearOp& op, const Matrix& test_matrix,
                            std::int32_t q) {
  const std::int64_t n = op.dim();
  const std::int64_t K = test_matrix.cols;
  if (test_matrix.rows != n)
    throw validation_error("test matrix rows != operator dimension");
  if (q < 0) throw validation_error("need q >= 0");
  if ((static_cast<std::int64_t>(q) + 1) * K > n)
    throw validation_error("(q+1)K exceeds n");

  const auto& kr = kern::active();
  ColMatrix Q(n, 0);
  Q.data.reserve(static_cast<std::size_t>(n) * (q + 1) * K);
  Matrix prev_block;  // row-major, feeds the next Op^2 application

  std::vector<double> v(n);
  for (std::int32_t t = 0; t <= q; ++t) {
    Matrix raw = (t == 0) ? op.apply(test_matrix)
                          : op.apply(op.apply(prev_block));
    const double drop_tol = 1e-10 * frobenius(raw);
    const std::int64_t kept_before = Q.cols;
    for (std::int64_t c = 0; c < raw.cols; ++c) {
      for (std::int64_t i = 0; i < n; ++i) v[i] = raw(i, c);
      // two-pass Gram-Schmidt against everything accepted so far
      for (int pass = 0; pass < 2; ++pass)
        for (std::int64_t j = 0; j < Q.cols; ++j) {
          const double* qj = Q.col(j);
          const double proj = kr.dot(qj, v.data(), n);
          kr.axpy(v.data(), -proj, qj, n);
        }
      const double nv = std::sqrt(kr.dot(v.data(), v.data(), n));
      if (nv <= drop_tol) continue;
      Q.data.insert(Q.data.end(), v.begin(), v.end());
      Q.cols++;
      kr.scal(Q.col(Q.cols - 1), 1.0 / nv, n);
    }
    const std::int64_t kept = Q.cols - kept_before;
    if (kept == 0) break;
    prev_block = Matrix(n, kept);
    for (std::int64_t j = 0; j < kept; ++j) {
      const double* c = Q.col(kept_before + j);
      for (std::int64_t i = 0; i < n; ++i) prev_block(i, j) = c[i];
    }
  }
  return Q;
}

ColMatrix krylov_basis(const LinearOp& op, const KrylovConfig& cfg) {
  const Matrix omega =
      draw_test_matrix(op.dim(), cfg.K, cfg.dist, cfg.seed);
  return krylov_basis_from(op, omega, cfg.q);
}

Embedding rayleigh_ritz(const LinearOp& op, const ColMatrix& Q,
                        std::int32_t K) {
  const std::int64_t n = op.dim();
  const std::int64_t m = Q.cols;
  if (Q.rows != n) throw validation_error("basis rows != operator dimension");
  if (m < K)
    throw rank_deficiency_error(
        "basis has " + std::to_string(m) + " columns < K = " +
        std::to_string(K) + "; q or K too aggressive for this operator");

  const auto& kr = kern::active();
  const Matrix qrow = to_row_major(Q);
  const Matrix opq = op.apply(qrow);  // n x m row-major
  Matrix C(m, m);
  for (std::int64_t i = 0; i < n; ++i) {
    const double* r = opq.row(i);
    for (std::int64_t a = 0; a < m; ++a)
      kr.axpy(C.row(a), Q.col(a)[i], r, static_cast<std::size_t>(m));
  }

  std::vector<double> values;
  Matrix uk;
  small_symmetric_top_k(C, K, values, uk);

  Embedding emb;
  emb.values = std::move(values);
  emb.vectors = Matrix(n, K);
  for (std::int64_t j = 0; j < m; ++j) {
    const double* qj = Q.col(j);
    for (std::int64_t i = 0; i < n; ++i)
      kr.axpy(emb.vectors.row(i), qj[i], uk.row(j),
              static_cast<std::size_t>(K));
  }
  return emb;
}

Embedding dense_top_eigs(const Matrix& m, std::int32_t K) {
  const std::int64_t n = m.rows;
  if (m.cols != n) throw validation_error("matrix must be square");
  if (n > 2000)
    throw capacity_error("dense eigensolver guard: n <= 2000, got " +
                         std::to_string(n));
  if (K < 1 || K > n) throw validation_error("need 1 <= K <= n");
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-8)
        throw validation_error("matrix asymmetric beyond 1e-8 at (" +
                               std::to_string(i) + ", " + std::to_string(j) +
                               ")");
  std::vector<double> values;
  Matrix vectors;
  small_symmetric_top_k(m, K, values, vectors);
  return Embedding{std::move(vectors), std::move(values)};
}

std::int32_t select_k_by_eigengap(const std::vector<double>& values,
                                  std::int32_t max_k) {
  if (values.size() < 2)
    throw validation_error("eigengap selection needs at least 2 values");
  if (max_k < 2) throw validation_error("need max_k >= 2");
  const std::int64_t hi =
      std::min<std::int64_t>(max_k - 1,
                             static_cast<std::int64_t>(values.size()) - 1);
  std::int32_t best_k = 1;
  double best_ratio = -1.0;
  for (std::int64_t k = 1; k <= hi; ++k) {
    const double ratio =
        std::abs(values[k - 1]) / (std::abs(values[k]) + 1e-12);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_k = static_cast<std::int32_t>(k);
    }
  }
  return best_k;
}

void write_embedding(std::ostream& out, const Embedding& emb) {
  out.precision(17);
  for (std::size_t k = 0; k < emb.values.size(); ++k)
    out << (k ? " " : "") << emb.values[k];
  out << '\n';
  for (std::int64_t i = 0; i < emb.vectors.rows; ++i) {
    for (std::int64_t j = 0; j < emb.vectors.cols; ++j)
      out << (j ? " " : "") << emb.vectors(i, j);
    out << '\n';
  }
}

}  // namespace mlsc
