#include "lipcore/refine.hpp"

#include <algorithm>
#include <cmath>

namespace lipcore {

bool SetValuedMap::all_nonempty() const { return !first_empty().has_value(); }

std::optional<std::size_t> SetValuedMap::first_empty() const {
  for (std::size_t i = 0; i < bodies.size(); ++i)
    if (!bodies[i]) return i;
  return std::nullopt;
}

SetValuedMap make_map(PseudometricSpace space, PolygonalNorm norm, std::vector<ConvexBody> bodies) {
  if (bodies.size() != space.size()) throw MalformedInput("one body per point is required");
  SetValuedMap f;
  f.space = std::make_shared<const PseudometricSpace>(std::move(space));
  f.norm = std::make_shared<const PolygonalNorm>(std::move(norm));
  f.bodies.assign(bodies.begin(), bodies.end());
  return f;
}

void RefinementSchedule::check(bool for_core) const {
  for (double l : lambdas)
    if (!(l >= 1.0) || !std::isfinite(l)) throw MalformedInput("every lambda must be finite and >= 1");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw MalformedInput("gamma must be positive");
  if (for_core) {
    if (lambdas.size() < 2) throw MalformedInput("a core certificate needs lambda_1 and lambda_2");
    if (lambdas[1] < 3.0 * lambdas[0] * (1.0 - 1e-12)) throw MalformedInput("a core certificate needs lambda_2 >= 3 lambda_1");
  }
}

SetValuedMap balanced_refinement(const SetValuedMap& f, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw MalformedInput("refinement parameter must be finite and >= 0");
  const auto& rho = *f.space;
  const auto& norm = *f.norm;
  const std::size_t n = f.size();
  SetValuedMap out{f.space, f.norm, std::vector<MaybeBody>(n)};

  std::vector<ConvexBody> terms;
  for (std::size_t x = 0; x < n; ++x) {
    terms.clear();
    bool empty = false;
    for (std::size_t z = 0; z < n && !empty; ++z) {
      const double d = rho(x, z);
      if (std::isinf(d)) continue;
      if (!f.bodies[z]) {
        empty = true;
        break;
      }
      terms.push_back(minkowski_add_ball(*f.bodies[z], lambda * d, norm));
    }
    if (!empty) out.bodies[x] = intersect(terms);
  }
  return out;
}

std::vector<SetValuedMap> iterate(const SetValuedMap& f, const RefinementSchedule& schedule, std::size_t k) {
  if (k > schedule.lambdas.size()) throw MalformedInput("schedule has fewer lambdas than requested iterations");
  std::vector<SetValuedMap> chain{f};
  for (std::size_t i = 0; i < k; ++i) chain.push_back(balanced_refinement(chain.back(), schedule.lambdas[i]));
  return chain;
}

namespace {

OrbitSet inflate(OrbitSet inner, double radius, const PolygonalNorm& norm) {
  if (inner.whole_plane || !inner.body) return inner;
  if (std::isinf(radius)) return {true, std::nullopt};
  inner.body = minkowski_add_ball(*inner.body, radius, norm);
  return inner;
}

}  // namespace

OrbitSet orbit_set(const SetValuedMap& f, const PseudometricSpace& delta, double L, std::size_t x, std::size_t u,
                   std::size_t u1, std::size_t u2) {
  const auto& norm = *f.norm;
  std::vector<ConvexBody> parts;
  for (std::size_t v : {u1, u2}) {
    if (std::isinf(delta(v, u))) continue;
    if (!f.bodies[v]) return {false, std::nullopt};
    parts.push_back(minkowski_add_ball(*f.bodies[v], delta(v, u), norm));
  }
  if (parts.empty()) return {true, std::nullopt};
  return inflate({false, intersect(parts)}, L * delta(u, x), norm);
}

OrbitSet segment_orbit_set(const SetValuedMap& f, const PseudometricSpace& delta, double L, std::size_t x,
                           std::size_t u, std::size_t u1) {
  const auto& norm = *f.norm;
  if (!f.bodies[u]) return {false, std::nullopt};
  std::vector<ConvexBody> parts{*f.bodies[u]};
  if (!std::isinf(delta(u1, u))) {
    if (!f.bodies[u1]) return {false, std::nullopt};
    parts.push_back(minkowski_add_ball(*f.bodies[u1], delta(u1, u), norm));
  }
  return inflate({false, intersect(parts)}, L * delta(u, x), norm);
}

StabilizationResult stabilization_check(const SetValuedMap& f2, double gamma) {
  StabilizationResult res;
  res.refined = balanced_refinement(f2, gamma);
  res.stable = true;
  for (std::size_t x = 0; x < f2.size(); ++x) {
    const auto& before = f2.bodies[x];
    const auto& after = res.refined.bodies[x];
    double gap = kInfinity;
    bool same = false;
    if (before && after) {
      gap = hausdorff(*before, *after, *f2.norm);
      same = same_body(*before, *after, kCheckEps);
    }
    if (gap > res.defect) res.defect = gap;
    if (!same && res.stable) {
      res.stable = false;
      res.witness = x;
    }
  }
  return res;
}

}  // namespace lipcore
