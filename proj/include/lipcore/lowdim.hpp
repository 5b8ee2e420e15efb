#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lipcore/metricspace.hpp"
#include "lipcore/refine.hpp"

namespace lipcore {

/// Closed bounded interval [lo, hi] of the real line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  /// Throws MalformedInput unless lo <= hi (both finite).
  Interval(double lo, double hi);
  friend bool operator==(const Interval&, const Interval&) = default;
};

using MaybeInterval = std::optional<Interval>;

/// Rounding allowance of the closed-form checks (relative above 1).
inline constexpr double kIntervalEps = 1e-12;

double interval_hausdorff(const Interval& a, const Interval& b);
/// Common part of the family, std::nullopt if empty. Requires a nonempty family.
MaybeInterval intersect_intervals(std::span<const Interval> family);
/// [lo - r, hi + r].
Interval inflate(const Interval& k, double r);

/// x -> [max_z (lo_z - lambda rho(x,z)), min_z (hi_z + lambda rho(x,z))],
/// Empty when the bounds cross. rho = +inf terms are skipped.
std::vector<MaybeInterval> interval_refinement(std::span<const Interval> f, const PseudometricSpace& rho,
                                               double lambda1);

struct IntervalCoreCheck {
  bool ok = true;
  double max_ratio = 0.0;
};

/// Pairwise d_H(F1(x), F1(y)) <= gamma rho(x,y), up to kIntervalEps.
IntervalCoreCheck interval_core_check(std::span<const Interval> f1, const PseudometricSpace& rho, double gamma);

/// Intervals as horizontal segments on the x-axis of l-infinity.
SetValuedMap embed_on_axis(std::span<const Interval> f, const PseudometricSpace& rho);

/// A map whose values are all points or segments, with the constants that
/// apply to that class.
struct SegmentMap {
  SetValuedMap map;
  std::vector<double> lambdas;
  double gamma = 0.0;
};

/// Accepts maps with dim <= 1 values: lambdas (1, 3), gamma 10 for the
/// Euclidean norm and 15 otherwise. Throws MalformedInput naming the first
/// point whose value is two dimensional.
SegmentMap segment_instance_adapter(SetValuedMap f);

}  // namespace lipcore
