#include "lipcore/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lipcore/gen.hpp"
#include "lipcore/lowdim.hpp"
#include "lipcore/verify.hpp"

namespace lipcore {

namespace {

constexpr double kL[] = {2.0, 3.0, 5.0};

struct Family {
  std::string name;
  NormKind kind;
  bool euclidean_theta;
};

const std::vector<Family>& families() {
  static const std::vector<Family> f = {
      {"linf", NormKind::kLinf, false},          {"l1", NormKind::kL1, false},
      {"hexagon", NormKind::kHexagon, false},    {"euclid64", NormKind::kEuclidean, false},
      {"euclid64-euclidean-theta", NormKind::kEuclidean, true},
  };
  return f;
}

SuiteResult named(std::string name) {
  SuiteResult r;
  r.name = std::move(name);
  return r;
}

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

Point2 random_point(std::mt19937_64& rng, double half) { return {uniform(rng, -half, half), uniform(rng, -half, half)}; }

// Polygon (sometimes a segment or a point) containing p.
ConvexBody body_through(Point2 p, std::mt19937_64& rng) {
  const double pick = uniform(rng, 0.0, 1.0);
  if (pick < 0.05) return ConvexBody(p);
  if (pick < 0.2) {
    const double t = uniform(rng, 0.0, 6.3);
    const Point2 d{std::cos(t), std::sin(t)};
    return ConvexBody::segment(p - uniform(rng, 0.0, 2.0) * d, p + uniform(rng, 0.0, 2.0) * d);
  }
  return random_polygon_around(p, uniform(rng, 0.3, 2.5), 8, rng);
}

void record(SuiteResult& res, const InclusionCheck& c) {
  ++res.trials;
  if (!c.precondition) {
    ++res.vacuous;
    return;
  }
  res.worst_margin = std::max(res.worst_margin, c.margin);
  if (c.holds) ++res.passed;
}

void record_equal(SuiteResult& res, const ConvexBody& a, const ConvexBody& b, const PolygonalNorm& norm) {
  ++res.trials;
  const double gap = hausdorff(a, b, norm);
  res.worst_margin = std::max(res.worst_margin, gap);
  if (same_body(a, b, kCheckEps)) ++res.passed;
}

}  // namespace

std::vector<SuiteResult> neighborhood_suite(std::size_t trials, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  for (const auto& fam : families()) {
    std::mt19937_64 rng(seed);
    SuiteResult res = named("ns-" + fam.name);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto norm = make_norm(fam.kind, 64, rng);
      const ConvexBody c = body_through(random_point(rng, 3.0), rng);
      const Point2 a = random_point(rng, 4.0);
      const double r = gauge_distance(a, c, norm) + uniform(rng, 1e-3, 2.0);
      const double s = uniform(rng, 0.01, 3.0);
      record(res, check_neighborhood_theorem(c, a, r, s, kL[t % 3], norm, fam.euclidean_theta));
    }
    out.push_back(res);
  }
  return out;
}

SuiteResult counterexample_suite() {
  SuiteResult res = named("cpr-counterexample");
  double previous = -kInfinity;
  for (double q : {10.0, 30.0, 100.0}) {
    ++res.trials;
    const double depth = counterexample_cpr(q);
    const auto repaired = counterexample_cpr_repaired(q);
    if (depth > 0.0 && depth > previous && repaired.precondition && repaired.holds) ++res.passed;
    previous = depth;
    res.worst_margin = std::max(res.worst_margin, repaired.margin);
    res.note += "depth(" + std::to_string(static_cast<int>(q)) + ")=" + std::to_string(depth) + " ";
  }
  return res;
}

namespace {

std::vector<SuiteResult> three_set_suite(const std::string& prefix, bool segment_c1, std::size_t trials,
                                         std::uint64_t seed) {
  std::vector<SuiteResult> out;
  for (const auto& fam : families()) {
    std::mt19937_64 rng(seed);
    SuiteResult res = named(prefix + "-" + fam.name);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto norm = make_norm(fam.kind, 64, rng);
      const Point2 p = random_point(rng, 2.0);
      ConvexBody c1 = body_through(p, rng);
      if (segment_c1) {
        const double ang = uniform(rng, 0.0, 6.3);
        const Point2 d{std::cos(ang), std::sin(ang)};
        c1 = uniform(rng, 0.0, 1.0) < 0.1 ? ConvexBody(p)
                                           : ConvexBody::segment(p - uniform(rng, 0.0, 2.5) * d, p + uniform(rng, 0.0, 2.5) * d);
      }
      const ConvexBody c2 = body_through(p, rng);
      const ConvexBody c = body_through(p + random_point(rng, 3.0), rng);
      const double r = gauge_distance(p, c, norm) + uniform(rng, 1e-3, 1.0);
      const double eps = uniform(rng, 0.01, 2.0);
      const double L = kL[t % 3];
      record(res, segment_c1 ? check_c123(c, c1, c2, r, L, eps, norm, fam.euclidean_theta)
                             : check_pf3(c, c1, c2, r, L, eps, norm, fam.euclidean_theta));
    }
    out.push_back(res);
  }
  return out;
}

}  // namespace

std::vector<SuiteResult> pf3_suite(std::size_t trials, std::uint64_t seed) {
  return three_set_suite("pf3", false, trials, seed);
}

std::vector<SuiteResult> c123_suite(std::size_t trials, std::uint64_t seed) {
  return three_set_suite("c123", true, trials, seed);
}

std::vector<SuiteResult> squareness_suite(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<std::string, PolygonalNorm>> norms = {
      {"linf", PolygonalNorm::linf()},
      {"l1", PolygonalNorm::l1()},
      {"hexagon", random_hexagon_norm(rng)},
      {"euclid64", PolygonalNorm::euclidean(64)},
  };
  std::vector<SuiteResult> out;
  for (const auto& [name, norm] : norms) {
    SuiteResult phi = named("squareness-phi-" + name);
    SuiteResult ngon = named("squareness-ngon-" + name);
    for (int b = 1; b <= 9; ++b) {
      const double beta = b / 10.0;
      const double xi = modulus_of_squareness(norm, beta, samples, seed + b);
      ++phi.trials;
      phi.worst_margin = std::max(phi.worst_margin, xi - phi_bound(beta));
      if (xi <= phi_bound(beta) * (1.0 + 1e-9)) ++phi.passed;
      if (norm.kind() == "euclidean") {
        const double cap = psi_polygonal(beta, norm.ngon());
        ++ngon.trials;
        ngon.worst_margin = std::max(ngon.worst_margin, xi - cap);
        if (xi <= cap * (1.0 + 1e-9) && xi >= 0.98 * psi_euclidean(beta)) ++ngon.passed;
      }
    }
    out.push_back(phi);
    if (ngon.trials) out.push_back(ngon);
  }
  return out;
}

std::vector<SuiteResult> helly_suite(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult pairwise = named("helly-pairwise-neighborhood");
  SuiteResult anchored = named("helly-segment-anchored-neighborhood");
  SuiteResult segment = named("helly-segment");
  SuiteResult interval_a = named("helly-intervals");
  SuiteResult interval_b = named("helly-interval-neighborhood");
  SuiteResult rect = named("helly-rectangular-hull");
  const NormKind kinds[] = {NormKind::kLinf, NormKind::kHexagon, NormKind::kEuclidean};

  for (std::size_t t = 0; t < trials; ++t) {
    const auto norm = make_norm(kinds[t % 3], 64, rng);
    const double r = uniform(rng, 0.01, 1.5);
    const Point2 p = random_point(rng, 2.0);
    const std::size_t k = 3 + t % 4;

    // (cap K) + rB = cap over pairs of (K cap K') + rB.
    {
      std::vector<ConvexBody> fam;
      for (std::size_t i = 0; i < k; ++i) fam.push_back(body_through(p, rng));
      const auto cap = intersect(fam);
      std::vector<ConvexBody> pieces;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) pieces.push_back(minkowski_add_ball(*intersect(fam[i], fam[j]), r, norm));
      record_equal(pairwise, minkowski_add_ball(*cap, r, norm), *intersect(pieces), norm);

      // With a segment K0 in the family the pairs can all be taken with K0.
      const double ang = uniform(rng, 0.0, 6.3);
      const Point2 d{std::cos(ang), std::sin(ang)};
      const auto k0 = ConvexBody::segment(p - uniform(rng, 0.0, 2.0) * d, p + uniform(rng, 0.0, 2.0) * d);
      fam.push_back(k0);
      std::vector<ConvexBody> with_k0;
      for (const auto& body : fam) with_k0.push_back(minkowski_add_ball(*intersect(body, k0), r, norm));
      record_equal(anchored, minkowski_add_ball(*intersect(fam), r, norm), *intersect(with_k0), norm);
    }

    // Segment Helly: K0 meeting every pair of members forces a common point.
    {
      const auto k0 = ConvexBody::segment({-2.0, 0.0}, {2.0, 0.0});
      std::vector<ConvexBody> fam;
      for (std::size_t i = 0; i < k; ++i) {
        // A chord of K0 plus a few points off the axis.
        const double a = uniform(rng, -2.0, 0.5);
        std::vector<Point2> pts{{a, 0.0}, {std::min(2.0, a + uniform(rng, 0.0, 2.5)), 0.0}};
        for (int j = 0; j < 3; ++j) pts.push_back(random_point(rng, 2.0));
        fam.push_back(ConvexBody::hull(pts));
      }
      bool pairs_meet = true;
      for (std::size_t i = 0; i < k && pairs_meet; ++i)
        for (std::size_t j = i; j < k && pairs_meet; ++j) {
          const ConvexBody triple[] = {k0, fam[i], fam[j]};
          pairs_meet = intersect(triple).has_value();
        }
      ++segment.trials;
      if (!pairs_meet) {
        ++segment.vacuous;
      } else {
        fam.push_back(k0);
        if (intersect(fam)) ++segment.passed;
      }
    }

    // Intervals: pairwise intersecting implies a common point, and
    // inflation commutes with intersection.
    {
      std::vector<Interval> iv;
      const double c = uniform(rng, -1.0, 1.0);
      for (std::size_t i = 0; i < k; ++i) {
        const double lo = c - uniform(rng, -0.3, 2.0), hi = c + uniform(rng, -0.3, 2.0);
        iv.emplace_back(std::min(lo, hi), std::max(lo, hi));
      }
      bool pairwise_meet = true;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
          const Interval two[] = {iv[i], iv[j]};
          if (!intersect_intervals(two)) pairwise_meet = false;
        }
      ++interval_a.trials;
      const auto common = intersect_intervals(iv);
      if (!pairwise_meet)
        ++interval_a.vacuous;
      else if (common)
        ++interval_a.passed;

      ++interval_b.trials;
      if (!common) {
        ++interval_b.vacuous;
      } else {
        std::vector<Interval> inflated;
        for (const auto& x : iv) inflated.push_back(inflate(x, r));
        const auto rhs = intersect_intervals(inflated);
        const auto lhs = inflate(*common, r);
        const double gap = rhs ? interval_hausdorff(lhs, *rhs) : kInfinity;
        interval_b.worst_margin = std::max(interval_b.worst_margin, gap);
        if (gap <= 1e-12 * std::max(1.0, std::abs(lhs.lo) + std::abs(lhs.hi))) ++interval_b.passed;
      }
    }

    // (K1 cap K2) + Q = (K1 + Q) cap (K2 + Q) cap rect_hull((K1 cap K2) + Q), Q a square.
    {
      const auto linf = PolygonalNorm::linf();
      const auto k1 = body_through(p, rng), k2 = body_through(p, rng);
      const auto lhs = minkowski_add_ball(*intersect(k1, k2), r, linf);
      const ConvexBody parts[] = {minkowski_add_ball(k1, r, linf), minkowski_add_ball(k2, r, linf), rectangular_hull(lhs)};
      record_equal(rect, lhs, *intersect(parts), linf);
    }
  }
  return {pairwise, anchored, segment, interval_a, interval_b, rect};
}

std::vector<std::string> suite_names() { return {"ns", "cpr", "pf3", "c123", "squareness", "helly", "all"}; }

std::vector<SuiteResult> run_suite(const std::string& name, std::size_t trials, std::uint64_t seed) {
  if (name == "ns") return neighborhood_suite(trials, seed);
  if (name == "cpr") return {counterexample_suite()};
  if (name == "pf3") return pf3_suite(trials, seed);
  if (name == "c123") return c123_suite(trials, seed);
  if (name == "squareness") return squareness_suite(std::max<std::size_t>(trials, 1000), seed);
  if (name == "helly") return helly_suite(trials, seed);
  if (name == "all") {
    std::vector<SuiteResult> all;
    for (const auto& n : suite_names()) {
      if (n == "all") continue;
      auto part = run_suite(n, trials, seed);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw MalformedInput("unknown suite: " + name);
}

}  // namespace lipcore
