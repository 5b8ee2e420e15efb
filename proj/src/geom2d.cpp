#include "lipcore/geom2d.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

#include "lipcore/lp.hpp"

namespace lipcore {
namespace {

double coord_scale(std::span<const Point2> pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return s;
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return length(p - a);
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return length(p - (a + t * d));
}

// Drops consecutive near-duplicates (cyclically).
void dedupe_cycle(std::vector<Point2>& loop, double eps) {
  std::vector<Point2> out;
  out.reserve(loop.size());
  for (const auto& p : loop)
    if (out.empty() || length(p - out.back()) > eps) out.push_back(p);
  while (out.size() > 1 && length(out.front() - out.back()) <= eps) out.pop_back();
  loop = std::move(out);
}

Point2 outward_normal(Point2 from, Point2 to) {
  const Point2 d = to - from;
  const double len = length(d);
  return {d.y / len, -d.x / len};
}

}  // namespace

// ---------------------------------------------------------------- ConvexBody

ConvexBody::ConvexBody(Point2 p) : verts_{p} {}

ConvexBody ConvexBody::hull(std::span<const Point2> points) {
  if (points.empty()) throw MalformedInput("convex hull of an empty point set");
  for (const auto& p : points)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw MalformedInput("non-finite vertex coordinate");

  const double eps = kGeomEps * coord_scale(points);
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });

  ConvexBody body;
  if (length(pts.back() - pts.front()) <= eps &&
      std::all_of(pts.begin(), pts.end(), [&](Point2 p) { return length(p - pts.front()) <= eps; })) {
    body.verts_ = {pts.front()};
    return body;
  }

  // Andrew's monotone chain, popping near-collinear turns.
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  auto turn_ok = [&](Point2 o, Point2 a, Point2 b) { return cross(o, a, b) > eps * length(b - o); };
  for (const auto& p : pts) {
    while (k >= 2 && !turn_ok(h[k - 2], h[k - 1], p)) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && !turn_ok(h[k - 2], h[k - 1], pts[i])) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  dedupe_cycle(h, eps);

  if (h.size() >= 3) {
    // Demote slivers whose width is below tolerance to their diameter segment.
    std::size_t bi = 0, bj = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j)
        if (double d = length(h[i] - h[j]); d > best) best = d, bi = i, bj = j;
    double width = 0.0;
    for (const auto& p : h) width = std::max(width, std::abs(cross(h[bi], h[bj], p)) / best);
    if (width <= eps) h = {h[bi], h[bj]};
  }
  if (h.size() == 1 || (h.size() == 2 && length(h[0] - h[1]) <= eps)) {
    body.verts_ = {h[0]};
    return body;
  }
  body.verts_ = std::move(h);
  return body;
}

ConvexBody ConvexBody::segment(Point2 a, Point2 b) {
  const Point2 pts[] = {a, b};
  return hull(pts);
}

ConvexBody ConvexBody::box(double x0, double y0, double x1, double y1) {
  const Point2 pts[] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
  return hull(pts);
}

double ConvexBody::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < verts_.size(); ++i) a += cross(verts_[i], verts_[(i + 1) % verts_.size()]);
  return 0.5 * a;
}

double ConvexBody::scale() const { return coord_scale(verts_); }

double ConvexBody::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < verts_.size(); ++i)
    for (std::size_t j = i + 1; j < verts_.size(); ++j) d = std::max(d, length(verts_[i] - verts_[j]));
  return d;
}

ConvexBody ConvexBody::translated(Point2 v) const {
  ConvexBody out = *this;
  for (auto& p : out.verts_) p = p + v;
  return out;
}

ConvexBody ConvexBody::scaled(double s) const {
  if (s == 0.0) return ConvexBody(Point2{});
  if (s < 0.0) {
    std::vector<Point2> pts;
    for (const auto& p : verts_) pts.push_back(s * p);
    return hull(pts);
  }
  ConvexBody out = *this;
  for (auto& p : out.verts_) p = s * p;
  return out;
}

std::vector<Halfplane> ConvexBody::halfplanes() const {
  std::vector<Halfplane> hp;
  if (dim() == 0) {
    const Point2 p = verts_[0];
    hp = {{{1, 0}, p.x}, {{-1, 0}, -p.x}, {{0, 1}, p.y}, {{0, -1}, -p.y}};
  } else if (dim() == 1) {
    const Point2 a = verts_[0], b = verts_[1];
    const Point2 n = outward_normal(a, b);
    const Point2 d = (1.0 / length(b - a)) * (b - a);
    hp = {{n, dot(n, a)}, {-n, -dot(n, a)}, {d, dot(d, b)}, {-d, -dot(d, a)}};
  } else {
    hp.reserve(verts_.size());
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      const Point2 a = verts_[i], b = verts_[(i + 1) % verts_.size()];
      const Point2 n = outward_normal(a, b);
      hp.push_back({n, dot(n, a)});
    }
  }
  return hp;
}

std::vector<Point2> ConvexBody::edge_normals() const {
  std::vector<Point2> out;
  if (dim() == 0) return out;
  for (std::size_t i = 0; i < verts_.size(); ++i) out.push_back(outward_normal(verts_[i], verts_[(i + 1) % verts_.size()]));
  return out;
}

// ------------------------------------------------------------- PolygonalNorm

PolygonalNorm::PolygonalNorm(ConvexBody ball, std::string kind, int ngon)
    : ball_(std::move(ball)), facets_(ball_.halfplanes()), kind_(std::move(kind)), ngon_(ngon) {
  if (ball_.dim() != 2) throw MalformedInput("unit ball must be two dimensional");
  const double eps = kGeomEps * ball_.scale();
  for (const auto& f : facets_)
    if (f.offset <= eps) throw MalformedInput("unit ball must contain the origin in its interior");
  symmetric_ = contains(ball_, ball_.scaled(-1.0), 1e-9);
  if (!symmetric_) throw MalformedInput("unit ball must be centrally symmetric");
}

PolygonalNorm PolygonalNorm::linf() { return {ConvexBody::box(-1, -1, 1, 1), "linf", 0}; }

PolygonalNorm PolygonalNorm::l1() {
  const Point2 pts[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {ConvexBody::hull(pts), "l1", 0};
}

PolygonalNorm PolygonalNorm::euclidean(int ngon) {
  if (ngon < 4 || ngon % 2 != 0) throw MalformedInput("euclidean ngon must be even and >= 4");
  std::vector<Point2> pts;
  for (int k = 0; k < ngon; ++k) {
    const double t = 2.0 * std::numbers::pi * k / ngon;
    pts.push_back({std::cos(t), std::sin(t)});
  }
  return {ConvexBody::hull(pts), "euclidean", ngon};
}

PolygonalNorm PolygonalNorm::polygon(std::span<const Point2> vertices) {
  return {ConvexBody::hull(vertices), "polygon", 0};
}

double PolygonalNorm::gauge(Point2 v) const {
  double g = 0.0;
  for (const auto& f : facets_) g = std::max(g, dot(f.normal, v) / f.offset);
  return g;
}

double PolygonalNorm::support(Point2 u) const { return lipcore::support(ball_, u); }

ConvexBody PolygonalNorm::ball(Point2 center, double r) const {
  if (r == 0.0) return ConvexBody(center);
  return ball_.scaled(r).translated(center);
}

// ------------------------------------------------------------------ sums

double support(const ConvexBody& k, Point2 u) {
  double s = -std::numeric_limits<double>::infinity();
  for (const auto& v : k.vertices()) s = std::max(s, dot(v, u));
  return s;
}

ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b) {
  if (a.size() == 1) return b.translated(a.vertices()[0]);
  if (b.size() == 1) return a.translated(b.vertices()[0]);

  auto rotate_lowest = [](std::vector<Point2> p) {
    auto it = std::min_element(p.begin(), p.end(), [](Point2 u, Point2 v) { return u.y < v.y || (u.y == v.y && u.x < v.x); });
    std::rotate(p.begin(), it, p.end());
    p.push_back(p[0]);
    p.push_back(p[1]);
    return p;
  };
  const auto p = rotate_lowest(a.vertices());
  const auto q = rotate_lowest(b.vertices());
  std::vector<Point2> out;
  out.reserve(p.size() + q.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() - 2 || j < q.size() - 2) {
    out.push_back(p[i] + q[j]);
    const double c = cross(p[i + 1] - p[i], q[j + 1] - q[j]);
    if (c >= 0 && i < p.size() - 2) ++i;
    if (c <= 0 && j < q.size() - 2) ++j;
  }
  return ConvexBody::hull(out);
}

ConvexBody minkowski_add_ball(const ConvexBody& k, double r, const PolygonalNorm& norm) {
  if (r == 0.0) return k;
  return minkowski_sum(k, norm.unit_ball().scaled(r));
}

// ---------------------------------------------------------- intersections

namespace {

MaybeBody feasibility_point(std::span<const Halfplane> hps, double eps) {
  lp::Matrix a(hps.size(), 2);
  std::vector<double> b(hps.size()), w(hps.size(), 1.0);
  for (std::size_t i = 0; i < hps.size(); ++i) {
    a(i, 0) = hps[i].normal.x;
    a(i, 1) = hps[i].normal.y;
    b[i] = hps[i].offset;
  }
  const auto res = lp::min_violation(a, b, w);
  if (res.status == lp::Status::kOptimal && res.x[2] <= eps) return ConvexBody(Point2{res.x[0], res.x[1]});
  return std::nullopt;
}

}  // namespace

MaybeBody clip(const ConvexBody& body, std::span<const Halfplane> halfplanes) {
  std::vector<Point2> loop = body.vertices();
  double scale = body.scale();
  for (const auto& h : halfplanes) scale = std::max(scale, std::abs(h.offset));
  const double eps = kGeomEps * scale;

  std::vector<Point2> next;
  for (const auto& h : halfplanes) {
    next.clear();
    if (loop.size() == 1) {
      if (h.eval(loop[0]) <= eps) next.push_back(loop[0]);
    } else {
      for (std::size_t i = 0; i < loop.size(); ++i) {
        const Point2 cur = loop[i], nxt = loop[(i + 1) % loop.size()];
        const double dc = h.eval(cur), dn = h.eval(nxt);
        const bool cin = dc <= eps, nin = dn <= eps;
        if (cin) next.push_back(cur);
        if (cin && !nin && dc < 0.0) next.push_back(cur + (dc / (dc - dn)) * (nxt - cur));
        if (!cin && nin && dn < 0.0) next.push_back(cur + (dc / (dc - dn)) * (nxt - cur));
      }
      dedupe_cycle(next, eps);
    }
    loop.swap(next);
    if (loop.empty()) break;
  }
  if (!loop.empty()) return ConvexBody::hull(loop);

  std::vector<Halfplane> pooled = body.halfplanes();
  pooled.insert(pooled.end(), halfplanes.begin(), halfplanes.end());
  return feasibility_point(pooled, eps);
}

MaybeBody intersect(std::span<const ConvexBody> bodies) {
  if (bodies.empty()) throw MalformedInput("intersection of an empty family");
  if (bodies.size() == 1) return bodies[0];
  std::vector<std::size_t> order(bodies.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diam(bodies.size());
  for (std::size_t i = 0; i < bodies.size(); ++i) diam[i] = bodies[i].diameter();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return diam[a] < diam[b]; });

  std::vector<Halfplane> hps;
  for (std::size_t k = 1; k < order.size(); ++k) {
    auto h = bodies[order[k]].halfplanes();
    hps.insert(hps.end(), h.begin(), h.end());
  }
  return clip(bodies[order[0]], hps);
}

MaybeBody intersect(const ConvexBody& a, const ConvexBody& b) {
  const ConvexBody pair[] = {a, b};
  return intersect(pair);
}

// -------------------------------------------------------------- containment

double euclidean_distance(Point2 p, const ConvexBody& k) {
  const auto& v = k.vertices();
  if (k.dim() == 0) return length(p - v[0]);
  if (k.dim() == 1) return segment_distance(p, v[0], v[1]);
  bool inside = true;
  for (std::size_t i = 0; i < v.size() && inside; ++i)
    if (cross(v[i], v[(i + 1) % v.size()], p) < 0.0) inside = false;
  if (inside) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) d = std::min(d, segment_distance(p, v[i], v[(i + 1) % v.size()]));
  return d;
}

bool contains_point(const ConvexBody& outer, Point2 p, double slack) {
  const double tol = kGeomEps * std::max({outer.scale(), std::abs(p.x), std::abs(p.y)}) + slack;
  return euclidean_distance(p, outer) <= tol;
}

bool contains(const ConvexBody& outer, const ConvexBody& inner, double slack) {
  const double tol = kGeomEps * std::max(outer.scale(), inner.scale()) + slack;
  return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                     [&](Point2 p) { return euclidean_distance(p, outer) <= tol; });
}

bool same_body(const ConvexBody& a, const ConvexBody& b, double slack) {
  return contains(a, b, slack) && contains(b, a, slack);
}

// ---------------------------------------------------------------- distances

double directed_hausdorff(const ConvexBody& from, const ConvexBody& to, const PolygonalNorm& norm) {
  // A is inside B + r B_X iff h_A <= h_B + r h_ball; the ratio is extremal on
  // the common refinement of the normal fans, i.e. at edge normals.
  double r = 0.0;
  auto scan = [&](const std::vector<Point2>& dirs) {
    for (const auto& u : dirs) r = std::max(r, (support(from, u) - support(to, u)) / norm.support(u));
  };
  scan(from.edge_normals());
  scan(to.edge_normals());
  scan(norm.unit_ball().edge_normals());
  return r;
}

double gauge_distance(Point2 p, const ConvexBody& k, const PolygonalNorm& norm) {
  return directed_hausdorff(ConvexBody(p), k, norm);
}

double hausdorff(const ConvexBody& a, const ConvexBody& b, const PolygonalNorm& norm) {
  double r = 0.0;
  auto scan = [&](const std::vector<Point2>& dirs) {
    for (const auto& u : dirs) r = std::max(r, std::abs(support(a, u) - support(b, u)) / norm.support(u));
  };
  scan(a.edge_normals());
  scan(b.edge_normals());
  scan(norm.unit_ball().edge_normals());
  return r;
}

// ------------------------------------------------------------ Steiner point

Point2 steiner_point(const ConvexBody& k) {
  const auto& v = k.vertices();
  if (v.size() == 1) return v[0];
  const std::size_t n = v.size();
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 nrm = outward_normal(v[i], v[(i + 1) % n]);
    phi[i] = std::atan2(nrm.y, nrm.x);
  }
  // Vertex i supports directions in the arc from the normal of edge i-1 to
  // the normal of edge i; there h_K(u) = <v_i, u>.
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = phi[(i + n - 1) % n];
    double b = phi[i];
    while (b < a) b += 2.0 * std::numbers::pi;
    const double half = 0.5 * (b - a);
    const double s2 = 0.25 * (std::sin(2 * b) - std::sin(2 * a));
    const double cs = -0.25 * (std::cos(2 * b) - std::cos(2 * a));
    const double icc = half + s2, iss = half - s2;
    sx += v[i].x * icc + v[i].y * cs;
    sy += v[i].x * cs + v[i].y * iss;
  }
  return {sx / std::numbers::pi, sy / std::numbers::pi};
}

ConvexBody rectangular_hull(const ConvexBody& s) {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  for (const auto& p : s.vertices()) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return ConvexBody::box(x0, y0, x1, y1);
}

}  // namespace lipcore
