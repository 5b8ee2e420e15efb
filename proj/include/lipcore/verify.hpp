#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipcore/geom2d.hpp"
#include "lipcore/metricspace.hpp"
#include "lipcore/refine.hpp"

namespace lipcore {

// ------------------------------------------------------------ hypothesis

struct FeasibilityResult {
  bool feasible = false;
  /// The LP failed twice; the result is treated as infeasible.
  bool indeterminate = false;
  /// One point per subset member when feasible.
  std::vector<Point2> witness;
  /// Optimal uniform constraint violation (<= kCheckEps when feasible).
  double violation = 0.0;
};

/// Is there f with f(x_i) in bodies[i] and gauge(f(x_i) - f(x_j)) <= bound * delta(i,j)?
/// Solved as one phase-one LP over 2|S| coordinates.
FeasibilityResult subset_feasible(std::span<const ConvexBody> bodies, const PseudometricSpace& delta, double bound,
                                  const PolygonalNorm& norm);

struct HypothesisResult {
  bool ok = true;
  bool indeterminate = false;
  /// A smallest failing subset found (point indices).
  std::vector<std::size_t> failing_subset;
  std::size_t subsets_checked = 0;
};

/// Every subset of at most `max_subset` points has a selection with
/// seminorm <= bound (checked at bound + kCheckEps). Empty values fail
/// immediately at their singleton.
HypothesisResult check_hypothesis(const SetValuedMap& f, std::size_t max_subset, double bound);

// ---------------------------------------------------------------- cores

struct CoreCertificate {
  double gamma = 0.0;
  /// Extra allowance on gamma (used for polygonal stand-ins of the
  /// Euclidean norm).
  double gamma_allowance = 0.0;
  bool nonempty = false;
  bool subset_containment = false;
  /// max of d_H(G(x),G(y)) / rho(x,y) over pairs with 0 < rho < inf
  /// (+inf if a rho = 0 pair has distinct bodies).
  double max_ratio = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  /// Failing point for emptiness or containment.
  std::optional<std::size_t> witness_point;

  bool valid() const { return nonempty && subset_containment && max_ratio <= gamma + gamma_allowance + kCheckEps; }
};

CoreCertificate certify_core(const SetValuedMap& f, const SetValuedMap& g, double gamma, double gamma_allowance = 0.0);

// ------------------------------------------------- convex-geometry checks

double theta_general(double L);
double theta_euclidean(double L);
double phi_bound(double beta);
double psi_euclidean(double beta);
/// 1/cos(pi/n) for a Euclidean n-gon norm, 1 otherwise.
double polygonal_distortion(const PolygonalNorm& norm);
/// Modulus of squareness of the regular n-gon norm: the corners tilt the
/// worst chord by pi/n, giving 1/cos(asin(beta) + pi/n).
double psi_polygonal(double beta, int ngon);

struct InclusionCheck {
  bool precondition = false;
  bool holds = false;
  double theta = 0.0;
  /// Max gauge distance from a vertex of the right-hand side to the
  /// left-hand side; > 0 means the inclusion is violated by that much.
  double margin = 0.0;
};

/// [C cap B(a, L r)] + theta s B  contains  (C + s B) cap B(a, L r + s),
/// under C cap B(a, r) nonempty. With euclidean_theta the Euclidean theta
/// 1 + 2 psi(1/L) is used, with psi_polygonal in place of psi for an n-gon.
InclusionCheck check_neighborhood_theorem(const ConvexBody& c, Point2 a, double r, double s, double L,
                                          const PolygonalNorm& norm, bool euclidean_theta);

/// Depth by which the inclusion above fails in l-infinity with L = 2 when C
/// is a (truncated) halfplane that misses B(a, r) and meets B(a, 2r) only at
/// a corner. s = 1, r = r_over_s.
double counterexample_cpr(double r_over_s);
/// The same halfplane moved to touch B(a, r); the theorem applies.
InclusionCheck counterexample_cpr_repaired(double r_over_s);

/// Three-set inclusion with (C1 cap C2) + L r B; requires C1 cap C2 cap (C + r B) nonempty.
InclusionCheck check_pf3(const ConvexBody& c, const ConvexBody& c1, const ConvexBody& c2, double r, double L,
                         double eps, const PolygonalNorm& norm, bool euclidean_theta);
/// Segment variant: C1 has dim <= 1 and the C2-term on the right is dropped.
InclusionCheck check_c123(const ConvexBody& c, const ConvexBody& c1, const ConvexBody& c2, double r, double L,
                          double eps, const PolygonalNorm& norm, bool euclidean_theta);

/// Sampled sup of ||x - z(x,y)|| / (||x|| - 1) over ||y|| <= beta < 1 < ||x||.
double modulus_of_squareness(const PolygonalNorm& norm, double beta, std::size_t samples, std::uint64_t seed = 1);

}  // namespace lipcore
