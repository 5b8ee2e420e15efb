#include "lipcore/select.hpp"

#include <algorithm>
#include <cmath>

namespace lipcore {

double lipschitz_seminorm(std::span<const Point2> f, const PseudometricSpace& space, const PolygonalNorm& norm) {
  if (f.size() != space.size()) throw MalformedInput("selection size does not match the space");
  double best = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const double rho = space(i, j);
      if (std::isinf(rho)) continue;
      const double g = norm.gauge(f[i] - f[j]);
      if (rho == 0.0) {
        const double scale = std::max({1.0, std::abs(f[i].x), std::abs(f[i].y)});
        if (g > kGeomEps * scale) return kInfinity;
        continue;
      }
      best = std::max(best, g / rho);
    }
  return best;
}

Selection steiner_selection(const SetValuedMap& f2) {
  Selection sel;
  sel.values.reserve(f2.size());
  for (std::size_t x = 0; x < f2.size(); ++x) {
    if (!f2.bodies[x]) throw CertificationFailed(x, f2.space->labels()[x]);
    sel.values.push_back(steiner_point(*f2.bodies[x]));
  }
  sel.seminorm = lipschitz_seminorm(sel.values, *f2.space, *f2.norm);
  return sel;
}

}  // namespace lipcore
