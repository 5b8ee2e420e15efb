#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lipcore/lowdim.hpp"
#include "lipcore/refine.hpp"
#include "lipcore/verify.hpp"

namespace lipcore {

enum class MetricKind { kRandomValid, kTree, kEuclideanSubmetric };
enum class NormKind { kLinf, kL1, kEuclidean, kHexagon };
enum class BodyKind { kPolygon, kSegment, kInterval };

struct GeneratorConfig {
  std::size_t n = 10;
  MetricKind metric = MetricKind::kTree;
  NormKind norm = NormKind::kLinf;
  int ngon = 64;
  /// Vertices per random polygon, at most.
  int max_vertices = 8;
  /// Body radius range, in units of the mean finite distance.
  double inflation_min = 0.3;
  double inflation_max = 3.0;
  std::uint64_t seed = 1;
};

struct Instance {
  std::string preset;
  std::uint64_t seed = 0;
  SetValuedMap map;
  /// Planted selection (empty if none).
  std::vector<Point2> planted;
  std::vector<double> lambdas;
  double gamma = 0.0;
};

struct IntervalInstance {
  std::uint64_t seed = 0;
  PseudometricSpace space;
  std::vector<Interval> sets;
  std::vector<double> planted;
};

PolygonalNorm random_hexagon_norm(std::mt19937_64& rng);
/// Random polygon of roughly the given radius that contains g.
ConvexBody random_polygon_around(Point2 g, double radius, int max_vertices, std::mt19937_64& rng);
/// Random convex combination of the body's vertices.
Point2 random_point_in(const ConvexBody& k, std::mt19937_64& rng);
PolygonalNorm make_norm(NormKind kind, int ngon, std::mt19937_64& rng);
PseudometricSpace random_metric(MetricKind kind, std::size_t n, std::mt19937_64& rng);

/// A 1-Lipschitz map into the plane for the given norm, built by clamping
/// random anchors coordinatewise and rescaling if needed.
std::vector<Point2> planted_selection(const PseudometricSpace& rho, const PolygonalNorm& norm, double spread,
                                      std::mt19937_64& rng);

/// Random polygons around a planted 1-Lipschitz selection.
Instance hidden_selection_instance(const GeneratorConfig& cfg);
/// Points and segments through a planted 1-Lipschitz selection.
Instance segment_instance(const GeneratorConfig& cfg);

struct AdversarialInstance {
  Instance instance;
  HypothesisResult verdict;
};
/// Random bodies with no planted selection, with the four-point verdict at bound 1.
AdversarialInstance adversarial_instance(const GeneratorConfig& cfg);

IntervalInstance interval_instance(const GeneratorConfig& cfg);

// --------------------------------------------------------------- presets

struct Preset {
  std::string name;
  NormKind norm = NormKind::kLinf;
  BodyKind bodies = BodyKind::kPolygon;
  /// Metric kinds, cycled by seed.
  std::vector<MetricKind> metrics;
  std::vector<double> lambdas;
  double gamma = 0.0;
};

std::span<const Preset> presets();
/// Throws MalformedInput for an unknown name.
const Preset& find_preset(std::string_view name);
GeneratorConfig preset_config(const Preset& p, std::size_t n, std::uint64_t seed);
/// Polygon or segment instance for the preset (not intervals).
Instance generate(const Preset& p, std::size_t n, std::uint64_t seed);

/// Allowance on gamma when the norm is a polygonal stand-in for the
/// Euclidean one: gamma (1/cos(pi/n) - 1).
double certificate_allowance(const PolygonalNorm& norm, double gamma);

}  // namespace lipcore
