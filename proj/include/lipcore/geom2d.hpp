#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipcore {

/// Tolerance for geometric predicates and vertex deduplication.
inline constexpr double kGeomEps = 1e-9;
/// Looser tolerance used when comparing bodies in theorem checks.
inline constexpr double kCheckEps = 1e-7;

/// Thrown for structurally invalid input (bad matrices, bad norms, bad files).
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double length(Point2 a) { return std::hypot(a.x, a.y); }
inline double cross(Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); }

/// Closed halfplane {p : normal . p <= offset}, with |normal| = 1.
struct Halfplane {
  Point2 normal;
  double offset = 0.0;

  double eval(Point2 p) const { return dot(normal, p) - offset; }
};

/// A nonempty compact convex subset of the plane, stored as its CCW vertex
/// cycle. Points and segments are first-class: dim() is 0, 1 or 2.
class ConvexBody {
 public:
  /// Single point.
  explicit ConvexBody(Point2 p);
  /// Convex hull of the given points (at least one).
  static ConvexBody hull(std::span<const Point2> points);
  static ConvexBody segment(Point2 a, Point2 b);
  /// Axis-aligned box [x0,x1] x [y0,y1].
  static ConvexBody box(double x0, double y0, double x1, double y1);

  const std::vector<Point2>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }
  int dim() const { return verts_.size() >= 3 ? 2 : static_cast<int>(verts_.size()) - 1; }

  double area() const;
  /// Largest absolute coordinate, at least 1; used to scale tolerances.
  double scale() const;
  /// Euclidean diameter.
  double diameter() const;
  ConvexBody translated(Point2 v) const;
  ConvexBody scaled(double s) const;

  /// Outward halfplanes describing the body. Degenerate bodies get paired
  /// opposite halfplanes for their supporting line plus end caps.
  std::vector<Halfplane> halfplanes() const;
  /// Outward unit normals of all edges (for a segment: both sides; for a point: none).
  std::vector<Point2> edge_normals() const;

 private:
  ConvexBody() = default;
  std::vector<Point2> verts_;
};

using MaybeBody = std::optional<ConvexBody>;

/// Unit ball of a two dimensional normed space given by a centrally
/// symmetric convex polygon.
class PolygonalNorm {
 public:
  static PolygonalNorm linf();
  static PolygonalNorm l1();
  /// Regular n-gon inscribed in the unit circle.
  static PolygonalNorm euclidean(int ngon = 64);
  /// Arbitrary symmetric polygon; throws MalformedInput if the ball is not
  /// two dimensional, does not contain the origin in its interior, or is
  /// not centrally symmetric.
  static PolygonalNorm polygon(std::span<const Point2> vertices);

  const ConvexBody& unit_ball() const { return ball_; }
  const std::string& kind() const { return kind_; }
  /// Number of sides for the "euclidean" kind, otherwise 0.
  int ngon() const { return ngon_; }
  bool symmetric() const { return symmetric_; }

  double gauge(Point2 v) const;
  /// Support function of the unit ball.
  double support(Point2 u) const;
  /// Ball of radius r around center.
  ConvexBody ball(Point2 center, double r) const;

 private:
  PolygonalNorm(ConvexBody ball, std::string kind, int ngon);
  ConvexBody ball_;
  std::vector<Halfplane> facets_;
  std::string kind_;
  int ngon_ = 0;
  bool symmetric_ = true;
};

double support(const ConvexBody& k, Point2 u);

ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b);
/// K + r * B_X.
ConvexBody minkowski_add_ball(const ConvexBody& k, double r, const PolygonalNorm& norm);

/// Intersection of a nonempty list of bodies; std::nullopt when the pooled
/// halfplane system is infeasible at tolerance kGeomEps.
MaybeBody intersect(std::span<const ConvexBody> bodies);
MaybeBody intersect(const ConvexBody& a, const ConvexBody& b);
MaybeBody clip(const ConvexBody& body, std::span<const Halfplane> halfplanes);

/// Euclidean distance from p to the body (0 inside).
double euclidean_distance(Point2 p, const ConvexBody& k);
/// True iff every vertex of inner is within kGeomEps*scale + slack of outer.
bool contains(const ConvexBody& outer, const ConvexBody& inner, double slack = 0.0);
bool contains_point(const ConvexBody& outer, Point2 p, double slack = 0.0);
/// Mutual containment.
bool same_body(const ConvexBody& a, const ConvexBody& b, double slack = 0.0);

/// Distance from p to k measured by the norm's gauge.
double gauge_distance(Point2 p, const ConvexBody& k, const PolygonalNorm& norm);
/// Max over points of `from` of their gauge distance to `to`.
double directed_hausdorff(const ConvexBody& from, const ConvexBody& to, const PolygonalNorm& norm);
double hausdorff(const ConvexBody& a, const ConvexBody& b, const PolygonalNorm& norm);

/// Classical planar Steiner point (1/pi) \int h_K(u) u d(theta).
Point2 steiner_point(const ConvexBody& k);

/// Smallest axis-parallel rectangle containing the body.
ConvexBody rectangular_hull(const ConvexBody& s);

}  // namespace lipcore
