#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mlsc/common.hpp"
#include "mlsc/sketch.hpp"

namespace mlsc {

enum class TestDist { Gaussian, Rademacher };

struct KrylovConfig {
  std::int32_t K = 1;       // target rank
  std::int32_t q = 0;       // power parameter; basis has up to (q+1)K columns
  std::uint64_t seed = 0;
  TestDist dist = TestDist::Gaussian;
};

// n x K eigenvector estimate with Ritz values in descending order.
struct Embedding {
  Matrix vectors;              // n x K, orthonormal columns, row-major
  std::vector<double> values;  // descending
};

// i.i.d. test matrix, filled row by row. Deterministic given seed.
Matrix draw_test_matrix(std::int64_t n, std::int64_t K, TestDist dist,
                        std::uint64_t seed);

// Orthonormal basis of the block Krylov subspace span{Op X, Op^3 X, ...,
// Op^(2q+1) X}. Blocks are orthonormalized incrementally (two-pass
// Gram-Schmidt against the accumulated basis; each next raw block is
// Op^2 times the previous orthonormalized block, which spans the same
// subspace in exact arithmetic). Columns whose residual norm falls below
// 1e-10 times the raw block's Frobenius norm are dropped, so the result may
// have fewer than (q+1)K columns.
ColMatrix krylov_basis_from(const LinearOp& op, const Matrix& test_matrix,
                            std::int32_t q);

// Same, drawing the test matrix from cfg.
ColMatrix krylov_basis(const LinearOp& op, const KrylovConfig& cfg);

// Compresses the operator onto span(Q): solves the small symmetrized
// C = Q^T (Op Q), takes its top-K eigenpairs by algebraic value, and lifts
// them back. Requires Q to have at least K columns.
Embedding rayleigh_ritz(const LinearOp& op, const ColMatrix& Q, std::int32_t K);

// Full symmetric eigendecomposition oracle; top K by algebraic value.
// Guarded at n <= 2000; rejects inputs asymmetric beyond 1e-8.
Embedding dense_top_eigs(const Matrix& m, std::int32_t K);

// Scree heuristic: the k in [1, max_k) maximizing |values[k-1]| /
// (|values[k]| + 1e-12); ties to the first index. Advisory only.
std::int32_t select_k_by_eigengap(const std::vector<double>& values,
                                  std::int32_t max_k);

// Text form: one header line of Ritz values, then n rows of K coordinates.
void write_embedding(std::ostream& out, const Embedding& emb);

}  // namespace mlsc
