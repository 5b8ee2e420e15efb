#include "lipcore/lowdim.hpp"

#include <algorithm>
#include <cmath>

namespace lipcore {

Interval::Interval(double l, double h) : lo(l), hi(h) {
  if (!std::isfinite(l) || !std::isfinite(h) || l > h) throw MalformedInput("interval needs finite lo <= hi");
}

double interval_hausdorff(const Interval& a, const Interval& b) {
  return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

MaybeInterval intersect_intervals(std::span<const Interval> family) {
  if (family.empty()) throw MalformedInput("intersection of an empty family");
  double lo = family[0].lo, hi = family[0].hi;
  for (const auto& k : family) {
    lo = std::max(lo, k.lo);
    hi = std::min(hi, k.hi);
  }
  if (lo > hi) return std::nullopt;
  return Interval(lo, hi);
}

Interval inflate(const Interval& k, double r) { return {k.lo - r, k.hi + r}; }

std::vector<MaybeInterval> interval_refinement(std::span<const Interval> f, const PseudometricSpace& rho,
                                               double lambda1) {
  if (f.size() != rho.size()) throw MalformedInput("one interval per point is required");
  std::vector<MaybeInterval> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    double lo = -kInfinity, hi = kInfinity;
    for (std::size_t z = 0; z < f.size(); ++z) {
      const double d = rho(x, z);
      if (std::isinf(d)) continue;
      lo = std::max(lo, f[z].lo - lambda1 * d);
      hi = std::min(hi, f[z].hi + lambda1 * d);
    }
    if (lo <= hi) out[x] = Interval(lo, hi);
  }
  return out;
}

IntervalCoreCheck interval_core_check(std::span<const Interval> f1, const PseudometricSpace& rho, double gamma) {
  if (f1.size() != rho.size()) throw MalformedInput("one interval per point is required");
  IntervalCoreCheck out;
  for (std::size_t x = 0; x < f1.size(); ++x)
    for (std::size_t y = x + 1; y < f1.size(); ++y) {
      const double d = rho(x, y);
      if (std::isinf(d)) continue;
      const double h = interval_hausdorff(f1[x], f1[y]);
      const double ratio = d == 0.0 ? (h == 0.0 ? 0.0 : kInfinity) : h / d;
      out.max_ratio = std::max(out.max_ratio, ratio);
      if (h > gamma * d + kIntervalEps * std::max(1.0, gamma * d)) out.ok = false;
    }
  return out;
}

SetValuedMap embed_on_axis(std::span<const Interval> f, const PseudometricSpace& rho) {
  std::vector<ConvexBody> bodies;
  for (const auto& k : f) bodies.push_back(ConvexBody::segment({k.lo, 0.0}, {k.hi, 0.0}));
  return make_map(rho, PolygonalNorm::linf(), std::move(bodies));
}

SegmentMap segment_instance_adapter(SetValuedMap f) {
  for (std::size_t x = 0; x < f.size(); ++x)
    if (f.bodies[x] && f.bodies[x]->dim() > 1)
      throw MalformedInput("value at point " + f.space->labels()[x] + " is not a point or a segment");
  const double gamma = f.norm->kind() == "euclidean" ? 10.0 : 15.0;
  return {std::move(f), {1.0, 3.0}, gamma};
}

}  // namespace lipcore
