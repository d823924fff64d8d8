#include "mlsc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace mlsc {
namespace {

void check_membership(const Membership& m, const char* which) {
  if (m.K < 1)
    throw validation_error(std::string(which) + " membership has K < 1");
  for (std::size_t i = 0; i < m.labels.size(); ++i)
    if (m.labels[i] < 0 || m.labels[i] >= m.K)
      throw validation_error(std::string(which) + " label out of range at " +
                             std::to_string(i));
}

double lchoose2(std::int64_t m) {
  return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
}

}  // namespace

ConfusionTable confusion(const Membership& a, const Membership& b) {
  if (a.labels.size() != b.labels.size())
    throw validation_error("memberships differ in length: " +
                           std::to_string(a.labels.size()) + " vs " +
                           std::to_string(b.labels.size()));
  check_membership(a, "first");
  check_membership(b, "second");
  ConfusionTable t;
  t.k1 = a.K;
  t.k2 = b.K;
  t.n = static_cast<std::int64_t>(a.labels.size());
  t.counts.assign(static_cast<std::size_t>(t.k1) * t.k2, 0);
  for (std::size_t i = 0; i < a.labels.size(); ++i)
    t.at(a.labels[i], b.labels[i])++;
  return t;
}

namespace detail {

std::int64_t max_assignment_brute(const ConfusionTable& table) {
  const std::int32_t K = table.k1;
  std::vector<std::int32_t> perm(K);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  do {
    std::int64_t w = 0;
    for (std::int32_t i = 0; i < K; ++i) w += table.at(i, perm[i]);
    best = std::max(best, w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::int64_t max_assignment_hungarian(const ConfusionTable& table) {
  // Potential-based shortest augmenting paths on negated weights.
  const std::int32_t K = table.k1;
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(K + 1, 0), v(K + 1, 0), minv(K + 1);
  std::vector<std::int32_t> match(K + 1, 0), way(K + 1, 0);
  for (std::int32_t i = 1; i <= K; ++i) {
    match[0] = i;
    std::int32_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::vector<char> used(K + 1, 0);
    do {
      used[j0] = 1;
      const std::int32_t i0 = match[j0];
      std::int32_t j1 = -1;
      std::int64_t delta = kInf;
      for (std::int32_t j = 1; j <= K; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = -table.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::int32_t j = 0; j <= K; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::int32_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::int64_t total = 0;
  for (std::int32_t j = 1; j <= K; ++j)
    total += table.at(match[j] - 1, j - 1);
  return total;
}

}  // namespace detail

double misclassification_rate(const Membership& truth,
                              const Membership& estimate) {
  if (truth.K != estimate.K)
    throw validation_error("misclassification rate needs matching K, got " +
                           std::to_string(truth.K) + " vs " +
                           std::to_string(estimate.K));
  const ConfusionTable table = confusion(truth, estimate);
  const std::int64_t agree = table.k1 <= 8
                                 ? detail::max_assignment_brute(table)
                                 : detail::max_assignment_hungarian(table);
  return 2.0 * static_cast<double>(table.n - agree) /
         static_cast<double>(table.n);
}

double ari(const Membership& a, const Membership& b) {
  const ConfusionTable t = confusion(a, b);
  std::vector<std::int64_t> row(t.k1, 0), col(t.k2, 0);
  double index = 0.0;
  for (std::int32_t i = 0; i < t.k1; ++i)
    for (std::int32_t j = 0; j < t.k2; ++j) {
      row[i] += t.at(i, j);
      col[j] += t.at(i, j);
      index += lchoose2(t.at(i, j));
    }
  double sum_row = 0.0, sum_col = 0.0;
  for (std::int64_t m : row) sum_row += lchoose2(m);
  for (std::int64_t m : col) sum_col += lchoose2(m);
  const double pairs = lchoose2(t.n);
  // (index - E) / (max - E) with E = sum_row sum_col / pairs, cleared of the
  // inner division so small tables come out exact.
  const double num = 2.0 * (index * pairs - sum_row * sum_col);
  const double den = (sum_row + sum_col) * pairs - 2.0 * sum_row * sum_col;
  if (den == 0.0) return 0.0;
  return num / den;
}

double ami(const Membership& a, const Membership& b) {
  const ConfusionTable t = confusion(a, b);
  const double n = static_cast<double>(t.n);
  std::vector<std::int64_t> row(t.k1, 0), col(t.k2, 0);
  for (std::int32_t i = 0; i < t.k1; ++i)
    for (std::int32_t j = 0; j < t.k2; ++j) {
      row[i] += t.at(i, j);
      col[j] += t.at(i, j);
    }

  auto entropy = [n](const std::vector<std::int64_t>& sizes) {
    double h = 0.0;
    for (std::int64_t m : sizes)
      if (m > 0) {
        const double q = static_cast<double>(m) / n;
        h -= q * std::log(q);
      }
    return h;
  };
  const double ha = entropy(row);
  const double hb = entropy(col);
  if (ha == 0.0 && hb == 0.0) return 1.0;

  double mi = 0.0;
  for (std::int32_t i = 0; i < t.k1; ++i)
    for (std::int32_t j = 0; j < t.k2; ++j) {
      const std::int64_t nij = t.at(i, j);
      if (nij > 0)
        mi += (nij / n) * std::log(n * nij /
                                   (static_cast<double>(row[i]) * col[j]));
    }

  // Exact E[MI] under the hypergeometric permutation model; log-factorials
  // keep the terms finite for large n.
  auto lfact = [](std::int64_t m) {
    return std::lgamma(static_cast<double>(m) + 1.0);
  };
  double emi = 0.0;
  for (std::int32_t i = 0; i < t.k1; ++i) {
    const std::int64_t ai = row[i];
    if (ai == 0) continue;
    for (std::int32_t j = 0; j < t.k2; ++j) {
      const std::int64_t bj = col[j];
      if (bj == 0) continue;
      const std::int64_t lo = std::max<std::int64_t>(1, ai + bj - t.n);
      const std::int64_t hi = std::min(ai, bj);
      for (std::int64_t nij = lo; nij <= hi; ++nij) {
        const double term =
            (nij / n) * std::log(n * nij / (static_cast<double>(ai) * bj));
        const double lprob = lfact(ai) + lfact(bj) + lfact(t.n - ai) +
                             lfact(t.n - bj) - lfact(t.n) - lfact(nij) -
                             lfact(ai - nij) - lfact(bj - nij) -
                             lfact(t.n - ai - bj + nij);
        emi += term * std::exp(lprob);
      }
    }
  }

  double denom = std::max(ha, hb) - emi;
  constexpr double kEps = 2.220446049250313e-16;
  if (denom >= 0.0)
    denom = std::max(denom, kEps);
  else
    denom = std::min(denom, -kEps);
  return (mi - emi) / denom;
}

}  // namespace mlsc
