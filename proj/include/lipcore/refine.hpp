#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lipcore/geom2d.hpp"
#include "lipcore/metricspace.hpp"

namespace lipcore {

/// Assignment point -> convex body (or Empty) over a fixed space and norm.
struct SetValuedMap {
  std::shared_ptr<const PseudometricSpace> space;
  std::shared_ptr<const PolygonalNorm> norm;
  std::vector<MaybeBody> bodies;

  std::size_t size() const { return bodies.size(); }
  bool all_nonempty() const;
  /// First point whose value is Empty.
  std::optional<std::size_t> first_empty() const;
};

/// Throws MalformedInput if the body count does not match the space.
SetValuedMap make_map(PseudometricSpace space, PolygonalNorm norm, std::vector<ConvexBody> bodies);

struct RefinementSchedule {
  std::vector<double> lambdas;
  double gamma = 0.0;

  /// lambda_2 / lambda_1.
  double ratio() const { return lambdas.at(1) / lambdas.at(0); }
  /// Throws MalformedInput unless every lambda is >= 1 and finite and gamma
  /// is positive; with `for_core` also requires two lambdas with
  /// lambda_2 >= 3 lambda_1.
  void check(bool for_core) const;
};

/// x -> intersection over z of [F(z) + lambda rho(x,z) B_X]. Terms with
/// rho = +inf are skipped. Empty values are sticky.
SetValuedMap balanced_refinement(const SetValuedMap& f, double lambda);

/// [F^[0], F^[1], ..., F^[k]] for the first k lambdas of the schedule.
std::vector<SetValuedMap> iterate(const SetValuedMap& f, const RefinementSchedule& schedule, std::size_t k);

/// A refinement-diagram orbit; `whole_plane` when every constraint has
/// infinite weight.
struct OrbitSet {
  bool whole_plane = false;
  MaybeBody body;
};

/// [(F(u1) + d(u1,u) B) cap (F(u2) + d(u2,u) B)] + L d(u,x) B.
OrbitSet orbit_set(const SetValuedMap& f, const PseudometricSpace& delta, double L, std::size_t x, std::size_t u,
                   std::size_t u1, std::size_t u2);
/// Segment variant: [(F(u1) + d(u1,u) B) cap F(u)] + L d(u,x) B.
OrbitSet segment_orbit_set(const SetValuedMap& f, const PseudometricSpace& delta, double L, std::size_t x,
                           std::size_t u, std::size_t u1);

struct StabilizationResult {
  bool stable = false;
  /// max_x d_H(F^[3](x), F^[2](x)); +inf if some refined value is Empty.
  double defect = 0.0;
  std::optional<std::size_t> witness;
  SetValuedMap refined;
};

/// Refines once more with lambda = gamma and compares with the input.
StabilizationResult stabilization_check(const SetValuedMap& f2, double gamma);

}  // namespace lipcore
