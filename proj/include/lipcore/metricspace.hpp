#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lipcore {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Finite pseudometric space: distances in [0, +inf], zeros allowed off the
/// diagonal. The constructor only checks shape and sign; the metric axioms
/// are checked by validate().
class PseudometricSpace {
 public:
  PseudometricSpace() = default;
  /// Throws MalformedInput on a non-square matrix, a label count mismatch,
  /// NaN or negative entries.
  PseudometricSpace(std::vector<std::string> labels, std::vector<std::vector<double>> d);
  /// Labels default to "p0", "p1", ...
  explicit PseudometricSpace(std::vector<std::vector<double>> d);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * labels_.size() + j]; }
  std::vector<std::vector<double>> matrix() const;
  /// Index of a label; std::nullopt if absent.
  std::optional<std::size_t> index_of(const std::string& label) const;
  /// Restriction to the given point indices, in order.
  PseudometricSpace restrict_to(std::span<const std::size_t> idx) const;

  friend bool operator==(const PseudometricSpace&, const PseudometricSpace&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> d_;
};

struct Validation {
  bool ok = true;
  /// "diagonal", "symmetry" or "triangle" for the first violated axiom.
  std::string axiom;
  /// Violating indices. For the triangle axiom (i, k, j) means
  /// d(i,j) > d(i,k) + d(k,j).
  std::vector<std::size_t> witness;
};

Validation validate(const PseudometricSpace& space);

/// Multiplies every distance by lambda (> 0, finite); +inf stays +inf.
PseudometricSpace scale(const PseudometricSpace& space, double lambda);

/// Shortest-path closure of a nonnegative symmetric weight matrix. The
/// result satisfies the triangle inequality and is pointwise <= the input.
PseudometricSpace metric_closure(const PseudometricSpace& weights);

struct WeightedTree {
  struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    double weight = 0.0;
  };
  std::vector<std::string> labels;
  std::vector<Edge> edges;
};

/// Path-length metric of a tree with positive edge weights. Throws
/// MalformedInput when the graph is disconnected, has a cycle, or has a
/// nonpositive weight.
PseudometricSpace tree_metric(const WeightedTree& tree);

/// Calls fn on every index subset of {0..n-1} with 1..k elements, each
/// exactly once, in increasing size then lexicographic order. Enumeration
/// stops early if fn returns false.
void for_each_subset_up_to(std::size_t n, std::size_t k, const std::function<bool(std::span<const std::size_t>)>& fn);
std::vector<std::vector<std::size_t>> subsets_up_to(std::size_t n, std::size_t k);

}  // namespace lipcore
