#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "mlsc/common.hpp"

namespace mlsc {

// One layer's sparse adjacency in CSR form. Values are reals: raw adjacency
// stores 1.0, sampled layers store 1/p. Invariants: indices in [0, n), no
// diagonal entries, no duplicate (row, col) pairs, columns ascending within
// each row. Immutable after construction.
struct SparseLayer {
  std::int64_t n = 0;
  std::vector<std::int64_t> rowptr;  // size n+1
  std::vector<std::int32_t> col;
  std::vector<double> val;

  std::int64_t nnz() const { return static_cast<std::int64_t>(col.size()); }

  // Builds from unordered (row, col, value) triplets; duplicates of the same
  // (row, col) are collapsed keeping the first occurrence.
  static SparseLayer from_triplets(
      std::int64_t n,
      std::vector<std::tuple<std::int32_t, std::int32_t, double>> entries);

  // Trusted fast path for generators that emit rows in order with ascending
  // columns; performs a cheap O(nnz) validation.
  static SparseLayer from_sorted(std::int64_t n,
                                 std::vector<std::int64_t> rowptr,
                                 std::vector<std::int32_t> col,
                                 std::vector<double> val);

  // Value at (i, j), or 0.0 when absent (binary search within the row).
  double at(std::int64_t i, std::int64_t j) const;

  bool is_symmetric() const;
};

struct MultiLayerNetwork {
  std::int64_t n = 0;
  bool directed = false;
  std::vector<SparseLayer> layers;

  std::int64_t num_layers() const {
    return static_cast<std::int64_t>(layers.size());
  }
};

enum class DegreeMode { Row, Col };

// y = A x (or A^T x). Each output element is accumulated as an exact
// floating-point sum in column-index order.
std::vector<double> spmv(const SparseLayer& layer, const std::vector<double>& x,
                         bool transpose);

// Per-row (out-degree) or per-column (in-degree) nonzero counts. Counts are
// unweighted: a sampled layer's degree is its number of retained edges.
std::vector<double> degrees(const SparseLayer& layer, DegreeMode mode);

// Reads `layer i j [value]` lines (whitespace-separated, layer 1-based in
// [1, L], nodes 0-based in [0, n), '#' comment lines and blank lines
// skipped). Undirected inputs are symmetrized; duplicate lines deduplicated.
MultiLayerNetwork load_edge_list(std::istream& in, std::int64_t n,
                                 std::int64_t L, bool directed);

// Canonical serialization: layers in order, rows ascending, columns
// ascending; undirected networks emit each edge once with i < j. The value
// column is written only when with_values is set.
void save_edge_list(std::ostream& out, const MultiLayerNetwork& net,
                    bool with_values);

// Shared helper for undirected generators: turns an upper-triangle edge list
// (i < j, emitted with i ascending and j ascending within each i) into a
// symmetric CSR layer with every entry equal to `value`.
SparseLayer symmetric_from_upper(
    std::int64_t n, const std::vector<std::pair<std::int32_t, std::int32_t>>& upper,
    double value);

}  // namespace mlsc
