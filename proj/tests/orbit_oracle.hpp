#pragma once

#include <vector>

#include "lipcore/gen.hpp"
#include "lipcore/refine.hpp"

namespace lipcore::testing {

// Intersection of the orbit sets over every (u, u1, u2), or the whole plane.
inline OrbitSet intersect_orbits(const std::vector<OrbitSet>& orbits) {
  std::vector<ConvexBody> parts;
  for (const auto& o : orbits) {
    if (o.whole_plane) continue;
    if (!o.body) return {false, std::nullopt};
    parts.push_back(*o.body);
  }
  if (parts.empty()) return {true, std::nullopt};
  return {false, intersect(parts)};
}

/// Second refinement at x rebuilt from the three-index orbit sets.
inline OrbitSet orbit_refinement(const Instance& inst, std::size_t x) {
  const auto delta = scale(*inst.map.space, inst.lambdas[0]);
  const double L = inst.lambdas[1] / inst.lambdas[0];
  const std::size_t n = inst.map.size();
  std::vector<OrbitSet> orbits;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t u1 = 0; u1 < n; ++u1)
      for (std::size_t u2 = u1; u2 < n; ++u2) orbits.push_back(orbit_set(inst.map, delta, L, x, u, u1, u2));
  return intersect_orbits(orbits);
}

}  // namespace lipcore::testing
