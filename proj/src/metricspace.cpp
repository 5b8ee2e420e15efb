#include "lipcore/metricspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lipcore/geom2d.hpp"

namespace lipcore {

PseudometricSpace::PseudometricSpace(std::vector<std::string> labels, std::vector<std::vector<double>> d)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (d.size() != n) throw MalformedInput("distance matrix has " + std::to_string(d.size()) + " rows for " + std::to_string(n) + " labels");
  d_.reserve(n * n);
  for (const auto& row : d) {
    if (row.size() != n) throw MalformedInput("distance matrix is not square");
    for (double v : row) {
      if (std::isnan(v) || v < 0.0) throw MalformedInput("distance entries must be nonnegative");
      d_.push_back(v);
    }
  }
}

PseudometricSpace::PseudometricSpace(std::vector<std::vector<double>> d) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d.size(); ++i) labels.push_back("p" + std::to_string(i));
  *this = PseudometricSpace(std::move(labels), std::move(d));
}

std::vector<std::vector<double>> PseudometricSpace::matrix() const {
  const std::size_t n = size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (*this)(i, j);
  return m;
}

std::optional<std::size_t> PseudometricSpace::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

PseudometricSpace PseudometricSpace::restrict_to(std::span<const std::size_t> idx) const {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> d(idx.size(), std::vector<double>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a) {
    labels.push_back(labels_[idx[a]]);
    for (std::size_t b = 0; b < idx.size(); ++b) d[a][b] = (*this)(idx[a], idx[b]);
  }
  return {std::move(labels), std::move(d)};
}

Validation validate(const PseudometricSpace& s) {
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i)
    if (s(i, i) != 0.0) return {false, "diagonal", {i}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (s(i, j) != s(j, i)) return {false, "symmetry", {i, j}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double via = s(i, k) + s(k, j);
        if (s(i, j) > via + 1e-12 * std::max(1.0, via)) return {false, "triangle", {i, k, j}};
      }
  return {};
}

PseudometricSpace scale(const PseudometricSpace& space, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw MalformedInput("scale factor must be positive and finite");
  auto m = space.matrix();
  for (auto& row : m)
    for (auto& v : row) v *= lambda;
  return {space.labels(), std::move(m)};
}

PseudometricSpace metric_closure(const PseudometricSpace& weights) {
  auto m = weights.matrix();
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = std::min(m[i][j], m[j][i]);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = std::min(m[i][j], m[i][k] + m[k][j]);
  return {weights.labels(), std::move(m)};
}

PseudometricSpace tree_metric(const WeightedTree& tree) {
  const std::size_t n = tree.labels.size();
  if (n == 0) throw MalformedInput("tree has no nodes");
  if (tree.edges.size() != n - 1) throw MalformedInput("a tree on n nodes needs n-1 edges");
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : tree.edges) {
    if (e.u >= n || e.v >= n || e.u == e.v) throw MalformedInput("bad tree edge");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw MalformedInput("tree edge weights must be positive");
    adj[e.u].push_back({e.v, e.weight});
    adj[e.v].push_back({e.u, e.weight});
  }
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInfinity));
  for (std::size_t src = 0; src < n; ++src) {
    std::vector<std::size_t> stack{src};
    d[src][src] = 0.0;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (auto [v, w] : adj[u])
        if (d[src][v] == kInfinity) {
          d[src][v] = d[src][u] + w;
          stack.push_back(v);
        }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (d[src][v] == kInfinity) throw MalformedInput("tree is disconnected");
  }
  // path sums accumulate in a different order from each end
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[j][i] = d[i][j];
  return {tree.labels, std::move(d)};
}

void for_each_subset_up_to(std::size_t n, std::size_t k, const std::function<bool(std::span<const std::size_t>)>& fn) {
  k = std::min(k, n);
  std::vector<std::size_t> idx;
  for (std::size_t size = 1; size <= k; ++size) {
    idx.resize(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (!fn(idx)) return;
      // Advance to the next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t q = pos; q < size; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
}

std::vector<std::vector<std::size_t>> subsets_up_to(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for_each_subset_up_to(n, k, [&](std::span<const std::size_t> s) {
    out.emplace_back(s.begin(), s.end());
    return true;
  });
  return out;
}

}  // namespace lipcore
