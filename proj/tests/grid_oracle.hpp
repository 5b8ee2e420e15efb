#pragma once

// Brute-force selection search over a square lattice, used to cross-check
// the LP-based feasibility test on small instances.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "lipcore/geom2d.hpp"
#include "lipcore/gen.hpp"
#include "lipcore/metricspace.hpp"

namespace lipcore::testing {

struct GridVerdict {
  /// Some lattice assignment satisfies every constraint exactly.
  bool strict = false;
  /// Some lattice assignment satisfies the constraints loosened by the
  /// rounding error of the lattice; any real selection rounds to one.
  bool relaxed = false;
};

inline GridVerdict grid_feasible(std::span<const ConvexBody> bodies, const PseudometricSpace& rho, double bound,
                                 const PolygonalNorm& norm, double h) {
  const std::size_t k = bodies.size();
  const double member_slack = h / std::sqrt(2.0) + 1e-12;
  double inradius = kInfinity;
  for (const auto& f : norm.unit_ball().halfplanes()) inradius = std::min(inradius, f.offset);
  const double pair_slack = std::sqrt(2.0) * h / inradius + 1e-12;

  auto search = [&](bool relaxed) {
    std::vector<std::vector<Point2>> cand(k);
    for (std::size_t i = 0; i < k; ++i) {
      double x0 = kInfinity, x1 = -kInfinity, y0 = kInfinity, y1 = -kInfinity;
      for (const auto& v : bodies[i].vertices()) {
        x0 = std::min(x0, v.x);
        x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y);
        y1 = std::max(y1, v.y);
      }
      for (long a = static_cast<long>(std::floor(x0 / h)) - 1; a <= static_cast<long>(std::ceil(x1 / h)) + 1; ++a)
        for (long b = static_cast<long>(std::floor(y0 / h)) - 1; b <= static_cast<long>(std::ceil(y1 / h)) + 1; ++b) {
          const Point2 p{a * h, b * h};
          const double d = euclidean_distance(p, bodies[i]);
          if (d <= (relaxed ? member_slack : 1e-12)) cand[i].push_back(p);
        }
      if (cand[i].empty()) return false;
    }
    auto compatible = [&](std::size_t i, std::size_t j, Point2 p, Point2 q) {
      if (std::isinf(rho(i, j))) return true;
      return norm.gauge(p - q) <= bound * rho(i, j) + (relaxed ? pair_slack : 1e-12);
    };
    // Drop candidates with no partner in some other body until nothing changes.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          if (i == j) continue;
          const auto before = cand[i].size();
          std::erase_if(cand[i], [&](Point2 p) {
            return std::none_of(cand[j].begin(), cand[j].end(), [&](Point2 q) { return compatible(i, j, p, q); });
          });
          if (cand[i].empty()) return false;
          changed = changed || cand[i].size() != before;
        }
    }
    std::vector<Point2> pick(k);
    std::function<bool(std::size_t)> place = [&](std::size_t i) {
      if (i == k) return true;
      for (const auto& p : cand[i]) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) ok = compatible(i, j, p, pick[j]);
        if (!ok) continue;
        pick[i] = p;
        if (place(i + 1)) return true;
      }
      return false;
    };
    return place(0);
  };

  GridVerdict v;
  v.relaxed = search(true);
  v.strict = v.relaxed && search(false);
  return v;
}

struct SmallInstance {
  std::vector<ConvexBody> bodies;
  PseudometricSpace rho;
  PolygonalNorm norm = PolygonalNorm::linf();
};

/// Four small polygons in [0, 1.4]^2 with a repaired random metric; about
/// half of these are feasible at bound 1.
inline SmallInstance small_instance(std::mt19937_64& rng, int index) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SmallInstance out;
  const NormKind kinds[] = {NormKind::kLinf, NormKind::kL1, NormKind::kHexagon, NormKind::kEuclidean};
  out.norm = make_norm(kinds[index % 4], 16, rng);
  for (int i = 0; i < 4; ++i)
    out.bodies.push_back(random_polygon_around({0.15 + 1.1 * u(rng), 0.15 + 1.1 * u(rng)}, 0.08 + 0.07 * u(rng), 6, rng));
  std::vector<std::vector<double>> w(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) w[i][j] = w[j][i] = 0.3 + 1.2 * u(rng);
  out.rho = metric_closure(PseudometricSpace(w));
  return out;
}

}  // namespace lipcore::testing
