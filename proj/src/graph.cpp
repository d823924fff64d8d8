#include "mlsc/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

namespace mlsc {
namespace {

void check_entry(std::int64_t n, std::int64_t i, std::int64_t j) {
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw validation_error("edge index out of range [0, " + std::to_string(n) +
                           "): (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
  if (i == j)
    throw validation_error("self-loop at node " + std::to_string(i));
}

}  // namespace

SparseLayer SparseLayer::from_triplets(
    std::int64_t n,
    std::vector<std::tuple<std::int32_t, std::int32_t, double>> entries) {
  for (const auto& [i, j, v] : entries) {
    check_entry(n, i, j);
    if (v < 0.0) throw validation_error("negative edge value");
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) {
                     return std::tie(std::get<0>(a), std::get<1>(a)) <
                            std::tie(std::get<0>(b), std::get<1>(b));
                   });
  entries.erase(std::unique(entries.begin(), entries.end(),
                            [](const auto& a, const auto& b) {
                              return std::get<0>(a) == std::get<0>(b) &&
                                     std::get<1>(a) == std::get<1>(b);
                            }),
                entries.end());

  SparseLayer layer;
  layer.n = n;
  layer.rowptr.assign(n + 1, 0);
  layer.col.reserve(entries.size());
  layer.val.reserve(entries.size());
  for (const auto& [i, j, v] : entries) layer.rowptr[i + 1]++;
  for (std::int64_t r = 0; r < n; ++r) layer.rowptr[r + 1] += layer.rowptr[r];
  for (const auto& [i, j, v] : entries) {
    layer.col.push_back(j);
    layer.val.push_back(v);
  }
  return layer;
}

SparseLayer SparseLayer::from_sorted(std::int64_t n,
                                     std::vector<std::int64_t> rowptr,
                                     std::vector<std::int32_t> col,
                                     std::vector<double> val) {
  SparseLayer layer;
  layer.n = n;
  layer.rowptr = std::move(rowptr);
  layer.col = std::move(col);
  layer.val = std::move(val);
  if (layer.rowptr.size() != static_cast<std::size_t>(n) + 1 ||
      layer.rowptr.front() != 0 ||
      layer.rowptr.back() != layer.nnz() ||
      layer.col.size() != layer.val.size())
    throw validation_error("inconsistent CSR arrays");
  for (std::int64_t i = 0; i < n; ++i) {
    if (layer.rowptr[i] > layer.rowptr[i + 1])
      throw validation_error("CSR row pointers not monotone");
    for (std::int64_t t = layer.rowptr[i]; t < layer.rowptr[i + 1]; ++t) {
      check_entry(n, i, layer.col[t]);
      if (t > layer.rowptr[i] && layer.col[t - 1] >= layer.col[t])
        throw validation_error("CSR columns not strictly ascending in row " +
                               std::to_string(i));
    }
  }
  return layer;
}

double SparseLayer::at(std::int64_t i, std::int64_t j) const {
  const auto* begin = col.data() + rowptr[i];
  const auto* end = col.data() + rowptr[i + 1];
  const auto* it = std::lower_bound(begin, end, static_cast<std::int32_t>(j));
  if (it == end || *it != j) return 0.0;
  return val[rowptr[i] + (it - begin)];
}

bool SparseLayer::is_symmetric() const {
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t t = rowptr[i]; t < rowptr[i + 1]; ++t)
      if (at(col[t], i) != val[t]) return false;
  return true;
}

std::vector<double> spmv(const SparseLayer& layer, const std::vector<double>& x,
                         bool transpose) {
  if (static_cast<std::int64_t>(x.size()) != layer.n)
    throw validation_error("spmv: vector length " + std::to_string(x.size()) +
                           " != n " + std::to_string(layer.n));
  std::vector<double> y(layer.n, 0.0);
  if (!transpose) {
    for (std::int64_t i = 0; i < layer.n; ++i) {
      double s = 0.0;
      for (std::int64_t t = layer.rowptr[i]; t < layer.rowptr[i + 1]; ++t)
        s += layer.val[t] * x[layer.col[t]];
      y[i] = s;
    }
  } else {
    for (std::int64_t i = 0; i < layer.n; ++i)
      for (std::int64_t t = layer.rowptr[i]; t < layer.rowptr[i + 1]; ++t)
        y[layer.col[t]] += layer.val[t] * x[i];
  }
  return y;
}

std::vector<double> degrees(const SparseLayer& layer, DegreeMode mode) {
  std::vector<double> d(layer.n, 0.0);
  if (mode == DegreeMode::Row) {
    for (std::int64_t i = 0; i < layer.n; ++i)
      d[i] = static_cast<double>(layer.rowptr[i + 1] - layer.rowptr[i]);
  } else {
    for (std::int64_t t = 0; t < layer.nnz(); ++t) d[layer.col[t]] += 1.0;
  }
  return d;
}

MultiLayerNetwork load_edge_list(std::istream& in, std::int64_t n,
                                 std::int64_t L, bool directed) {
  if (n < 1 || L < 1) throw validation_error("need n >= 1 and L >= 1");
  std::vector<std::vector<std::tuple<std::int32_t, std::int32_t, double>>>
      triplets(L);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::int64_t layer, i, j;
    if (!(ls >> layer >> i >> j))
      throw parse_error(lineno, "expected `layer i j [value]`, got: " + line);
    double value = 1.0;
    std::string extra;
    if (ls >> extra) {
      std::size_t used = 0;
      try {
        value = std::stod(extra, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != extra.size())
        throw parse_error(lineno, "bad value field: " + extra);
      std::string trailing;
      if (ls >> trailing)
        throw parse_error(lineno, "unexpected trailing field: " + trailing);
    }
    if (layer < 1 || layer > L)
      throw validation_error("line " + std::to_string(lineno) + ": layer " +
                             std::to_string(layer) + " outside [1, " +
                             std::to_string(L) + "]");
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw validation_error("line " + std::to_string(lineno) +
                             ": node index outside [0, " + std::to_string(n) +
                             ")");
    if (i == j)
      throw validation_error("line " + std::to_string(lineno) + ": self-loop");
    if (value < 0.0)
      throw validation_error("line " + std::to_string(lineno) +
                             ": negative value");
    auto& t = triplets[layer - 1];
    t.emplace_back(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j),
                   value);
    if (!directed)
      t.emplace_back(static_cast<std::int32_t>(j), static_cast<std::int32_t>(i),
                     value);
  }

  MultiLayerNetwork net;
  net.n = n;
  net.directed = directed;
  net.layers.reserve(L);
  for (auto& t : triplets)
    net.layers.push_back(SparseLayer::from_triplets(n, std::move(t)));
  return net;
}

void save_edge_list(std::ostream& out, const MultiLayerNetwork& net,
                    bool with_values) {
  for (std::int64_t l = 0; l < net.num_layers(); ++l) {
    const SparseLayer& layer = net.layers[l];
    for (std::int64_t i = 0; i < layer.n; ++i) {
      for (std::int64_t t = layer.rowptr[i]; t < layer.rowptr[i + 1]; ++t) {
        if (!net.directed && layer.col[t] < i) continue;
        out << (l + 1) << '\t' << i << '\t' << layer.col[t];
        if (with_values) out << '\t' << layer.val[t];
        out << '\n';
      }
    }
  }
}

SparseLayer symmetric_from_upper(
    std::int64_t n,
    const std::vector<std::pair<std::int32_t, std::int32_t>>& upper,
    double value) {
  std::vector<std::int64_t> rowptr(n + 1, 0);
  for (const auto& [i, j] : upper) {
    rowptr[i + 1]++;
    rowptr[j + 1]++;
  }
  for (std::int64_t r = 0; r < n; ++r) rowptr[r + 1] += rowptr[r];
  std::vector<std::int64_t> cursor(rowptr.begin(), rowptr.end() - 1);
  std::vector<std::int32_t> col(rowptr[n]);
  std::vector<double> val(rowptr[n], value);
  // Visiting pairs with ascending i, and ascending j within i, fills every
  // row's mirrored partners (all < row) before its own (all > row), so each
  // row's columns come out ascending.
  for (const auto& [i, j] : upper) {
    col[cursor[i]++] = j;
    col[cursor[j]++] = i;
  }
  return SparseLayer::from_sorted(n, std::move(rowptr), std::move(col),
                                  std::move(val));
}

}  // namespace mlsc
