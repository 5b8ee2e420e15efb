#include "lipcore/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lipcore/select.hpp"

namespace lipcore {

namespace {

double mean_distance(const PseudometricSpace& rho) {
  double sum = 0.0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < rho.size(); ++i)
    for (std::size_t j = i + 1; j < rho.size(); ++j)
      if (std::isfinite(rho(i, j))) {
        sum += rho(i, j);
        ++cnt;
      }
  return cnt ? std::max(sum / static_cast<double>(cnt), 1e-3) : 1.0;
}

Point2 unit_vector(double t) { return {std::cos(t), std::sin(t)}; }

// Clamped 1-Lipschitz extension of random anchors, one coordinate at a time.
std::vector<double> planted_scalar(const PseudometricSpace& rho, double spread, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> anchor(-spread, spread);
  std::vector<double> g(rho.size());
  for (std::size_t k = 0; k < rho.size(); ++k) {
    double lo = -kInfinity, hi = kInfinity;
    for (std::size_t j = 0; j < k; ++j) {
      // shrink slightly so rounding never pushes g past 1-Lipschitz
      const double d = rho(k, j) * (1.0 - 1e-9);
      if (std::isinf(d)) continue;
      lo = std::max(lo, g[j] - d);
      hi = std::min(hi, g[j] + d);
    }
    g[k] = std::clamp(anchor(rng), lo, std::max(lo, hi));
  }
  return g;
}

SetValuedMap finish_map(PseudometricSpace rho, PolygonalNorm norm, std::vector<ConvexBody> bodies) {
  return make_map(std::move(rho), std::move(norm), std::move(bodies));
}

}  // namespace

ConvexBody random_polygon_around(Point2 g, double radius, int max_vertices, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0), ang(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> count(3, std::max(3, max_vertices));
  const Point2 center = g + (0.7 * radius * std::sqrt(u(rng))) * unit_vector(ang(rng));
  const double a = 0.2 + 0.8 * u(rng), b = 0.2 + 0.8 * u(rng);
  const Point2 e1 = unit_vector(ang(rng)), e2{-e1.y, e1.x};
  std::vector<Point2> pts;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    const double t = ang(rng), jitter = 0.6 + 0.4 * u(rng);
    pts.push_back(center + (radius * jitter * a * std::cos(t)) * e1 + (radius * jitter * b * std::sin(t)) * e2);
  }
  auto body = ConvexBody::hull(pts);
  if (!contains_point(body, g)) {
    pts.push_back(g);
    body = ConvexBody::hull(pts);
  }
  return body;
}

Point2 random_point_in(const ConvexBody& k, std::mt19937_64& rng) {
  std::exponential_distribution<double> w(1.0);
  Point2 p;
  double total = 0.0;
  for (const auto& v : k.vertices()) {
    const double t = w(rng);
    p = p + t * v;
    total += t;
  }
  return (1.0 / total) * p;
}

PolygonalNorm random_hexagon_norm(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, std::numbers::pi), rad(0.5, 1.5);
  for (;;) {
    std::vector<Point2> pts;
    for (int i = 0; i < 3; ++i) {
      const Point2 p = rad(rng) * unit_vector(ang(rng));
      pts.push_back(p);
      pts.push_back(-p);
    }
    try {
      auto norm = PolygonalNorm::polygon(pts);
      // Reject nearly flat balls; they make every distance computation stiff.
      if (norm.unit_ball().size() == 6 && norm.unit_ball().area() > 0.5) return norm;
    } catch (const MalformedInput&) {
    }
  }
}

PolygonalNorm make_norm(NormKind kind, int ngon, std::mt19937_64& rng) {
  switch (kind) {
    case NormKind::kLinf: return PolygonalNorm::linf();
    case NormKind::kL1: return PolygonalNorm::l1();
    case NormKind::kEuclidean: return PolygonalNorm::euclidean(ngon);
    case NormKind::kHexagon: return random_hexagon_norm(rng);
  }
  return PolygonalNorm::linf();
}

PseudometricSpace random_metric(MetricKind kind, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (kind) {
    case MetricKind::kTree: {
      WeightedTree tree;
      for (std::size_t i = 0; i < n; ++i) tree.labels.push_back("p" + std::to_string(i));
      for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        tree.edges.push_back({parent(rng), i, 0.5 + 1.5 * u(rng)});
      }
      return tree_metric(tree);
    }
    case MetricKind::kRandomValid: {
      std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = 0.5 + 4.5 * u(rng);
      return metric_closure(PseudometricSpace(std::move(w)));
    }
    case MetricKind::kEuclideanSubmetric: {
      const double side = 2.0 * std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
      std::vector<Point2> pts;
      for (std::size_t i = 0; i < n; ++i) pts.push_back({side * u(rng), side * u(rng)});
      std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = length(pts[i] - pts[j]);
      return PseudometricSpace(std::move(d));
    }
  }
  return PseudometricSpace();
}

std::vector<Point2> planted_selection(const PseudometricSpace& rho, const PolygonalNorm& norm, double spread,
                                      std::mt19937_64& rng) {
  const auto gx = planted_scalar(rho, spread, rng);
  const auto gy = planted_scalar(rho, spread, rng);
  std::vector<Point2> g;
  for (std::size_t i = 0; i < gx.size(); ++i) g.push_back({gx[i], gy[i]});
  // Coordinatewise clamping gives l-infinity seminorm <= 1; other norms
  // need a rescale.
  const double s = lipschitz_seminorm(g, rho, norm);
  if (s > 1.0)
    for (auto& p : g) p = (1.0 / s) * p;
  return g;
}

Instance hidden_selection_instance(const GeneratorConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto norm = make_norm(cfg.norm, cfg.ngon, rng);
  auto rho = random_metric(cfg.metric, cfg.n, rng);
  const double unit = mean_distance(rho);
  Instance inst;
  inst.seed = cfg.seed;
  inst.planted = planted_selection(rho, norm, unit, rng);
  std::uniform_real_distribution<double> radius(cfg.inflation_min * unit, cfg.inflation_max * unit);
  std::vector<ConvexBody> bodies;
  for (const auto& g : inst.planted) bodies.push_back(random_polygon_around(g, radius(rng), cfg.max_vertices, rng));
  inst.map = finish_map(std::move(rho), std::move(norm), std::move(bodies));
  return inst;
}

Instance segment_instance(const GeneratorConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto norm = make_norm(cfg.norm, cfg.ngon, rng);
  auto rho = random_metric(cfg.metric, cfg.n, rng);
  const double unit = mean_distance(rho);
  Instance inst;
  inst.seed = cfg.seed;
  inst.planted = planted_selection(rho, norm, unit, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0), ang(0.0, 2.0 * std::numbers::pi);
  std::vector<ConvexBody> bodies;
  for (const auto& g : inst.planted) {
    if (u(rng) < 0.1) {
      bodies.emplace_back(g);
      continue;
    }
    const double r = cfg.inflation_min * unit + (cfg.inflation_max - cfg.inflation_min) * unit * u(rng);
    const Point2 d = unit_vector(ang(rng));
    bodies.push_back(ConvexBody::segment(g - (r * u(rng)) * d, g + (r * u(rng)) * d));
  }
  inst.map = finish_map(std::move(rho), std::move(norm), std::move(bodies));
  return inst;
}

AdversarialInstance adversarial_instance(const GeneratorConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto norm = make_norm(cfg.norm, cfg.ngon, rng);
  auto rho = random_metric(cfg.metric, cfg.n, rng);
  const double unit = mean_distance(rho);
  std::uniform_real_distribution<double> c(-unit, unit);
  std::uniform_real_distribution<double> radius(0.5 * cfg.inflation_min * unit, 0.5 * cfg.inflation_max * unit);
  std::vector<ConvexBody> bodies;
  for (std::size_t i = 0; i < cfg.n; ++i)
    bodies.push_back(random_polygon_around(Point2{c(rng), c(rng)}, radius(rng), cfg.max_vertices, rng));
  AdversarialInstance out;
  out.instance.seed = cfg.seed;
  out.instance.map = finish_map(std::move(rho), std::move(norm), std::move(bodies));
  out.verdict = check_hypothesis(out.instance.map, 4, 1.0);
  return out;
}

IntervalInstance interval_instance(const GeneratorConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  IntervalInstance inst;
  inst.seed = cfg.seed;
  inst.space = random_metric(cfg.metric, cfg.n, rng);
  const double unit = mean_distance(inst.space);
  inst.planted = planted_scalar(inst.space, unit, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double g : inst.planted) {
    const double r = cfg.inflation_max * unit;
    if (u(rng) < 0.1)
      inst.sets.emplace_back(g, g);
    else
      inst.sets.emplace_back(g - r * u(rng), g + r * u(rng));
  }
  return inst;
}

// --------------------------------------------------------------- presets

std::span<const Preset> presets() {
  using enum MetricKind;
  static const std::vector<Preset> table = {
      {"linf", NormKind::kLinf, BodyKind::kPolygon, {kTree, kRandomValid}, {1.0, 3.0}, 15.0},
      {"general2d", NormKind::kHexagon, BodyKind::kPolygon, {kTree, kRandomValid}, {4.0 / 3.0, 4.0}, 100.0},
      {"euclid", NormKind::kEuclidean, BodyKind::kPolygon, {kTree, kRandomValid},
       {4.0 / std::numbers::pi, 12.0 / std::numbers::pi}, 38.0},
      {"euclid-submetric", NormKind::kEuclidean, BodyKind::kPolygon, {kEuclideanSubmetric}, {1.0, 3.0}, 25.0},
      {"segments", NormKind::kHexagon, BodyKind::kSegment, {kTree, kRandomValid}, {1.0, 3.0}, 15.0},
      {"segments-euclid", NormKind::kEuclidean, BodyKind::kSegment, {kTree, kRandomValid}, {1.0, 3.0}, 10.0},
      {"intervals", NormKind::kLinf, BodyKind::kInterval, {kTree, kRandomValid}, {1.0}, 1.0},
  };
  return table;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw MalformedInput("unknown preset: " + std::string(name));
}

GeneratorConfig preset_config(const Preset& p, std::size_t n, std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.norm = p.norm;
  cfg.metric = p.metrics[seed % p.metrics.size()];
  return cfg;
}

Instance generate(const Preset& p, std::size_t n, std::uint64_t seed) {
  if (p.bodies == BodyKind::kInterval) throw MalformedInput("interval presets use interval_instance");
  const auto cfg = preset_config(p, n, seed);
  Instance inst = p.bodies == BodyKind::kSegment ? segment_instance(cfg) : hidden_selection_instance(cfg);
  inst.preset = p.name;
  inst.lambdas = p.lambdas;
  inst.gamma = p.gamma;
  return inst;
}

double certificate_allowance(const PolygonalNorm& norm, double gamma) {
  return gamma * (polygonal_distortion(norm) - 1.0);
}

}  // namespace lipcore
