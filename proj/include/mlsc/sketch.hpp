#pragma once

#include <cstdint>
#include <vector>

#include "mlsc/common.hpp"
#include "mlsc/graph.hpp"

namespace mlsc {

struct SamplingConfig {
  double p = 1.0;  // retention probability in (0, 1]
  std::uint64_t seed = 0;
};

// Keeps each edge independently with probability p and rescales retained
// edges to 1/p. Undirected networks draw once per unordered pair and mirror;
// directed networks draw per ordered pair. Only existing edges are visited.
MultiLayerNetwork sparsify(const MultiLayerNetwork& net,
                           const SamplingConfig& cfg);

// Abstract symmetric matrix-free operator on R^n; the unit of application is
// an n x b row-major block.
struct LinearOp {
  virtual ~LinearOp() = default;
  virtual std::int64_t dim() const = 0;
  // out = Op * X; out is overwritten.
  virtual void apply_block(const Matrix& X, Matrix& out) const = 0;
  Matrix apply(const Matrix& X) const {
    Matrix out(X.rows, X.cols);
    apply_block(X, out);
    return out;
  }
};

// Dense matrix wrapped as a LinearOp; test/oracle plumbing.
struct DenseOp final : LinearOp {
  explicit DenseOp(Matrix m) : m_(std::move(m)) {}
  std::int64_t dim() const override { return m_.rows; }
  void apply_block(const Matrix& X, Matrix& out) const override;

 private:
  Matrix m_;
};

enum class Variant {
  Undirected,       // (1/L) sum_l [ A_l(A_l X)/n - diag(d_l) X/(n p^2) ]
  Row,              // A_l A_l^T with out-degrees (directed)
  Col,              // A_l^T A_l with in-degrees (directed)
  ExactUndirected,  // p = 1, unsampled input: (1/(Ln)) sum_l (A_l^2 - D_l)
  ExactRow,
  ExactCol,
};

// The debias-corrected aggregate of squared (sampled) adjacencies as a
// matrix-free symmetric operator. Holds a reference to the network; no dense
// matrix is ever formed. Degree vectors (retained-edge counts) are cached at
// construction.
class DebiasedOperator final : public LinearOp {
 public:
  DebiasedOperator(const MultiLayerNetwork& net, double p, Variant variant);

  std::int64_t dim() const override { return n_; }
  void apply_block(const Matrix& X, Matrix& out) const override;

  double p() const { return p_; }
  Variant variant() const { return variant_; }
  const std::vector<std::vector<double>>& degree_vectors() const {
    return degs_;
  }

 private:
  const MultiLayerNetwork* net_;
  std::vector<std::vector<double>> degs_;  // per-layer retained-edge counts
  std::vector<double> degsum_;             // sum over layers
  double p_;
  Variant variant_;
  std::int64_t n_;
};

inline DebiasedOperator build_operator(const MultiLayerNetwork& net, double p,
                                       Variant variant) {
  return DebiasedOperator(net, p, variant);
}

// Materializes the operator by applying it to identity column blocks.
// Test oracle; guarded at n <= 2000.
Matrix dense_reference(const LinearOp& op);

}  // namespace mlsc
