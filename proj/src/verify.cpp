#include "lipcore/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lipcore/lp.hpp"

namespace lipcore {

// ------------------------------------------------------------ hypothesis

namespace {

struct LpAttempt {
  bool solved = false;
  double violation = 0.0;
  std::vector<Point2> f;
};

// Builds and solves the min-violation LP with all bodies shifted by -origin.
LpAttempt solve_selection_lp(std::span<const ConvexBody> bodies, const PseudometricSpace& delta, double bound,
                             const std::vector<Halfplane>& facets, Point2 origin) {
  const std::size_t k = bodies.size();
  std::vector<std::vector<Halfplane>> member(k);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < k; ++i) {
    member[i] = bodies[i].translated(-origin).halfplanes();
    rows += member[i].size();
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (std::isfinite(delta(i, j))) rows += facets.size();

  lp::Matrix a(rows, 2 * k);
  std::vector<double> b(rows), w(rows, 1.0);
  std::size_t r = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& h : member[i]) {
      a(r, 2 * i) = h.normal.x;
      a(r, 2 * i + 1) = h.normal.y;
      b[r++] = h.offset;
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!std::isfinite(delta(i, j))) continue;
      for (const auto& h : facets) {
        a(r, 2 * i) = h.normal.x;
        a(r, 2 * i + 1) = h.normal.y;
        a(r, 2 * j) = -h.normal.x;
        a(r, 2 * j + 1) = -h.normal.y;
        b[r++] = bound * delta(i, j) * h.offset;
      }
    }

  const auto res = lp::min_violation(a, b, w);
  LpAttempt out;
  if (res.status != lp::Status::kOptimal) return out;
  out.violation = res.x[2 * k];
  for (std::size_t i = 0; i < k; ++i) out.f.push_back(Point2{res.x[2 * i], res.x[2 * i + 1]});

  // Recompute the violation from the witness; a mismatch means the tableau
  // drifted numerically.
  double worst = -kInfinity;
  for (std::size_t row = 0; row < rows; ++row) {
    double lhs = 0.0;
    for (std::size_t c = 0; c < 2 * k; ++c) lhs += a(row, c) * res.x[c];
    worst = std::max(worst, lhs - b[row]);
  }
  double scale = 1.0;
  for (const auto& p : out.f) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  if (std::abs(std::max(worst, -1.0) - out.violation) > 1e-6 * scale) return out;
  for (auto& p : out.f) p = p + origin;
  out.solved = true;
  return out;
}

}  // namespace

FeasibilityResult subset_feasible(std::span<const ConvexBody> bodies, const PseudometricSpace& delta, double bound,
                                  const PolygonalNorm& norm) {
  if (delta.size() != bodies.size()) throw MalformedInput("subset_feasible: one body per point is required");
  FeasibilityResult out;
  if (bodies.empty()) {
    out.feasible = true;
    return out;
  }
  if (bodies.size() == 1) {
    out.feasible = true;
    out.witness = {bodies[0].vertices()[0]};
    return out;
  }

  Point2 centroid;
  double scale = 1.0;
  std::size_t count = 0;
  for (const auto& body : bodies)
    for (const auto& v : body.vertices()) {
      centroid = centroid + v;
      ++count;
    }
  centroid = (1.0 / static_cast<double>(count)) * centroid;
  for (const auto& body : bodies) scale = std::max(scale, body.translated(-centroid).scale());

  const auto facets = norm.unit_ball().halfplanes();
  auto attempt = solve_selection_lp(bodies, delta, bound, facets, centroid);
  if (!attempt.solved)
    attempt = solve_selection_lp(bodies, delta, bound, facets, centroid + Point2{0.137 * scale, -0.291 * scale});
  if (!attempt.solved) {
    out.indeterminate = true;
    return out;
  }
  out.violation = attempt.violation;
  out.feasible = attempt.violation <= kCheckEps * scale;
  if (out.feasible) out.witness = std::move(attempt.f);
  return out;
}

namespace {

FeasibilityResult feasible_on(const SetValuedMap& f, std::span<const std::size_t> idx, double bound) {
  std::vector<ConvexBody> sub;
  for (auto i : idx) sub.push_back(*f.bodies[i]);
  return subset_feasible(sub, f.space->restrict_to(idx), bound, *f.norm);
}

}  // namespace

HypothesisResult check_hypothesis(const SetValuedMap& f, std::size_t max_subset, double bound) {
  HypothesisResult out;
  if (auto e = f.first_empty()) {
    out.ok = false;
    out.failing_subset = {*e};
    out.subsets_checked = 1;
    return out;
  }
  const std::size_t n = f.size();
  const std::size_t m = std::min(max_subset, n);
  if (m <= 1) return out;
  const double b = bound + kCheckEps;

  // Feasibility passes to subsets, so testing the subsets of size exactly m
  // decides the whole hypothesis. A failure is then shrunk to a smallest
  // failing subset for reporting.
  std::vector<std::size_t> failing;
  for_each_subset_up_to(n, m, [&](std::span<const std::size_t> idx) {
    if (idx.size() < m) return true;
    ++out.subsets_checked;
    const auto r = feasible_on(f, idx, b);
    if (r.feasible) return true;
    out.ok = false;
    out.indeterminate = r.indeterminate;
    failing.assign(idx.begin(), idx.end());
    return false;
  });
  if (out.ok) return out;

  out.failing_subset = failing;
  if (out.indeterminate) return out;
  for_each_subset_up_to(failing.size(), failing.size() - 1, [&](std::span<const std::size_t> local) {
    if (local.size() < 2) return true;
    std::vector<std::size_t> idx;
    for (auto i : local) idx.push_back(failing[i]);
    ++out.subsets_checked;
    if (feasible_on(f, idx, b).feasible) return true;
    out.failing_subset = idx;
    return false;
  });
  return out;
}

// ---------------------------------------------------------------- cores

CoreCertificate certify_core(const SetValuedMap& f, const SetValuedMap& g, double gamma, double gamma_allowance) {
  if (f.size() != g.size()) throw MalformedInput("certify_core: maps have different sizes");
  CoreCertificate c;
  c.gamma = gamma;
  c.gamma_allowance = gamma_allowance;
  if (auto e = g.first_empty()) {
    c.witness_point = *e;
    c.max_ratio = kInfinity;
    return c;
  }
  c.nonempty = true;
  c.subset_containment = true;
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (!f.bodies[x] || !contains(*f.bodies[x], *g.bodies[x], kCheckEps)) {
      c.subset_containment = false;
      c.witness_point = x;
      break;
    }
  }

  const auto& rho = *g.space;
  const auto& norm = *g.norm;
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = x + 1; y < g.size(); ++y) {
      const double d = rho(x, y);
      if (std::isinf(d)) continue;
      const double h = hausdorff(*g.bodies[x], *g.bodies[y], norm);
      double ratio;
      if (d == 0.0)
        ratio = h <= kCheckEps ? 0.0 : kInfinity;
      else
        ratio = h / d;
      if (!c.worst_pair || ratio > c.max_ratio) {
        c.max_ratio = ratio;
        c.worst_pair = std::pair{x, y};
      }
    }
  return c;
}

// ------------------------------------------------- convex-geometry checks

double theta_general(double L) { return (3.0 * L + 1.0) / (L - 1.0); }
double theta_euclidean(double L) { return 1.0 + 2.0 * L / std::sqrt(L * L - 1.0); }
double phi_bound(double beta) { return (1.0 + beta) / (1.0 - beta); }
double psi_euclidean(double beta) { return 1.0 / std::sqrt(1.0 - beta * beta); }

double polygonal_distortion(const PolygonalNorm& norm) {
  if (norm.kind() != "euclidean") return 1.0;
  return 1.0 / std::cos(std::numbers::pi / norm.ngon());
}

double psi_polygonal(double beta, int ngon) {
  const double t = std::asin(beta) + std::numbers::pi / ngon;
  if (t >= std::numbers::pi / 2) return kInfinity;
  return 1.0 / std::cos(t);
}

namespace {

double pick_theta(double L, const PolygonalNorm& norm, bool euclidean_theta) {
  if (!(L > 1.0)) throw MalformedInput("L must exceed 1");
  if (!euclidean_theta) return theta_general(L);
  if (norm.kind() == "euclidean") return 1.0 + 2.0 * psi_polygonal(1.0 / L, norm.ngon());
  return theta_euclidean(L);
}

// Compares rhs against lhs; an empty rhs is trivially contained.
void finish(InclusionCheck& out, const MaybeBody& lhs, const MaybeBody& rhs, const PolygonalNorm& norm) {
  if (!rhs) {
    out.holds = true;
    out.margin = 0.0;
    return;
  }
  if (!lhs) {
    out.holds = false;
    out.margin = kInfinity;
    return;
  }
  out.margin = directed_hausdorff(*rhs, *lhs, norm);
  out.holds = out.margin <= kCheckEps * std::max(lhs->scale(), rhs->scale());
}

}  // namespace

InclusionCheck check_neighborhood_theorem(const ConvexBody& c, Point2 a, double r, double s, double L,
                                          const PolygonalNorm& norm, bool euclidean_theta) {
  InclusionCheck out;
  out.theta = pick_theta(L, norm, euclidean_theta);
  out.precondition = intersect(c, norm.ball(a, r)).has_value();
  auto core = intersect(c, norm.ball(a, L * r));
  MaybeBody lhs;
  if (core) lhs = minkowski_add_ball(*core, out.theta * s, norm);
  const MaybeBody rhs = intersect(minkowski_add_ball(c, s, norm), norm.ball(a, L * r + s));
  finish(out, lhs, rhs, norm);
  return out;
}

namespace {

// {k x + y >= level} inside a large box around the origin.
ConvexBody truncated_halfplane(double k, double level, double extent) {
  const Halfplane h{Point2{-k, -1.0} * (1.0 / std::hypot(k, 1.0)), -level / std::hypot(k, 1.0)};
  return *clip(ConvexBody::box(-extent, -extent, extent, extent), std::span<const Halfplane>(&h, 1));
}

}  // namespace

double counterexample_cpr(double r_over_s) {
  // s = 1, a = 0. The boundary line passes through the corner (2r, 2r) of
  // B(0, 2r) with slope -k, so C meets B(0, 2r) in that corner only while
  // C + sB still reaches the opposite corner (-2r - s, 2r + s).
  const double s = 1.0, r = r_over_s;
  const double k = s / (4.0 * r);
  const auto norm = PolygonalNorm::linf();
  const auto c = truncated_halfplane(k, 2.0 * r * (1.0 + k), 10.0 * (2.0 * r + s));
  return check_neighborhood_theorem(c, Point2{}, r, s, 2.0, norm, false).margin;
}

InclusionCheck counterexample_cpr_repaired(double r_over_s) {
  const double s = 1.0, r = r_over_s;
  const double k = s / (4.0 * r);
  const auto norm = PolygonalNorm::linf();
  // Same slope, now through the corner (r, r) of B(0, r).
  const auto c = truncated_halfplane(k, r * (1.0 + k), 10.0 * (2.0 * r + s));
  return check_neighborhood_theorem(c, Point2{}, r, s, 2.0, norm, false);
}

namespace {

InclusionCheck three_set_check(const ConvexBody& c, const ConvexBody& c1, const ConvexBody& c2, double r, double L,
                               double eps, const PolygonalNorm& norm, bool euclidean_theta, bool with_c2_term) {
  InclusionCheck out;
  out.theta = pick_theta(L, norm, euclidean_theta);
  const auto c12 = intersect(c1, c2);
  if (!c12) return out;
  const auto cr = minkowski_add_ball(c, r, norm);
  out.precondition = intersect(*c12, cr).has_value();

  MaybeBody lhs;
  if (auto core = intersect(minkowski_add_ball(*c12, L * r, norm), c)) lhs = minkowski_add_ball(*core, out.theta * eps, norm);

  std::vector<ConvexBody> terms{minkowski_add_ball(*c12, L * r + eps, norm)};
  bool empty = false;
  auto add_term = [&](const ConvexBody& ci) {
    if (auto t = intersect(minkowski_add_ball(ci, r, norm), c))
      terms.push_back(minkowski_add_ball(*t, eps, norm));
    else
      empty = true;
  };
  add_term(c1);
  if (with_c2_term) add_term(c2);
  const MaybeBody rhs = empty ? MaybeBody{} : intersect(terms);
  finish(out, lhs, rhs, norm);
  return out;
}

}  // namespace

InclusionCheck check_pf3(const ConvexBody& c, const ConvexBody& c1, const ConvexBody& c2, double r, double L,
                         double eps, const PolygonalNorm& norm, bool euclidean_theta) {
  return three_set_check(c, c1, c2, r, L, eps, norm, euclidean_theta, true);
}

InclusionCheck check_c123(const ConvexBody& c, const ConvexBody& c1, const ConvexBody& c2, double r, double L,
                          double eps, const PolygonalNorm& norm, bool euclidean_theta) {
  if (c1.dim() > 1) throw MalformedInput("check_c123: C1 must be a point or a segment");
  return three_set_check(c, c1, c2, r, L, eps, norm, euclidean_theta, false);
}

double modulus_of_squareness(const PolygonalNorm& norm, double beta, std::size_t samples, std::uint64_t seed) {
  if (!(beta >= 0.0 && beta < 1.0)) throw MalformedInput("beta must lie in [0, 1)");
  const auto facets = norm.unit_ball().halfplanes();
  const auto& corners = norm.unit_ball().vertices();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi), unit(0.0, 1.0), expo(1.0, 7.0);
  std::uniform_int_distribution<std::size_t> corner(0, corners.size() - 1);

  // Boundary point of the unit ball in a random direction, sometimes a corner.
  auto boundary = [&]() {
    if (unit(rng) < 0.25) return corners[corner(rng)];
    const double t = angle(rng);
    const Point2 u{std::cos(t), std::sin(t)};
    return (1.0 / norm.gauge(u)) * u;
  };

  double best = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double eta = std::pow(10.0, -expo(rng));
    const Point2 x = (1.0 + eta) * boundary();
    double ry = beta;
    if (unit(rng) < 0.2) ry *= std::sqrt(unit(rng));
    const Point2 y = ry * boundary();

    // z = first exit of the ray y + t (x - y) from the unit ball.
    const Point2 d = x - y;
    double t = kInfinity;
    for (const auto& h : facets) {
      const double nd = dot(h.normal, d);
      if (nd > 0.0) t = std::min(t, (h.offset - dot(h.normal, y)) / nd);
    }
    const Point2 z = y + t * d;
    const double excess = norm.gauge(x) - 1.0;
    if (excess <= 0.0) continue;
    best = std::max(best, norm.gauge(x - z) / excess);
  }
  return best;
}

}  // namespace lipcore
