#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lipcore/gen.hpp"
#include "lipcore/refine.hpp"
#include "orbit_oracle.hpp"

using namespace lipcore;
using lipcore::testing::intersect_orbits;

namespace {

SetValuedMap two_point(ConvexBody fx, ConvexBody fy, double rho, PolygonalNorm norm = PolygonalNorm::linf()) {
  return make_map(PseudometricSpace({"x", "y"}, {{0, rho}, {rho, 0}}), norm, {fx, fy});
}

ConvexBody body(std::initializer_list<Point2> pts) {
  std::vector<Point2> v(pts);
  return ConvexBody::hull(v);
}

}  // namespace

TEST_CASE("refinement examples") {
  SUBCASE("singleton space") {
    const auto f = make_map(PseudometricSpace(std::vector<std::vector<double>>{{0.0}}), PolygonalNorm::linf(), {ConvexBody::box(0, 0, 1, 2)});
    const auto r = balanced_refinement(f, 3.0);
    CHECK(same_body(*r.bodies[0], *f.bodies[0]));
  }
  SUBCASE("one-step intersection") {
    const auto f = two_point(ConvexBody(Point2{0, 0}), ConvexBody::box(0, 0, 4, 4), 1.0);
    const auto r = balanced_refinement(f, 1.0);
    CHECK(same_body(*r.bodies[0], ConvexBody(Point2{0, 0})));
    CHECK(same_body(*r.bodies[1], ConvexBody::box(0, 0, 1, 1)));
  }
  SUBCASE("far singletons") {
    const auto f = two_point(ConvexBody(Point2{0, 0}), ConvexBody(Point2{5, 0}), 1.0);
    const auto r = balanced_refinement(f, 1.0);
    CHECK_FALSE(r.bodies[0].has_value());
    CHECK_FALSE(r.bodies[1].has_value());
    // Empty is sticky
    const auto rr = balanced_refinement(r, 100.0);
    CHECK_FALSE(rr.bodies[0].has_value());
  }
  SUBCASE("infinite distances are skipped") {
    const auto f = two_point(ConvexBody(Point2{0, 0}), ConvexBody(Point2{5, 0}), kInfinity);
    const auto r = balanced_refinement(f, 1.0);
    CHECK(same_body(*r.bodies[0], *f.bodies[0]));
    CHECK(same_body(*r.bodies[1], *f.bodies[1]));
  }
  SUBCASE("zero distance forces equality") {
    const auto f = two_point(ConvexBody::box(0, 0, 2, 2), ConvexBody::box(1, 1, 3, 3), 0.0);
    const auto r = balanced_refinement(f, 5.0);
    CHECK(same_body(*r.bodies[0], ConvexBody::box(1, 1, 2, 2)));
    CHECK(same_body(*r.bodies[1], ConvexBody::box(1, 1, 2, 2)));
  }
}

TEST_CASE("iterate and schedules") {
  const auto f = two_point(ConvexBody(Point2{0, 0}), ConvexBody::box(0, 0, 4, 4), 1.0);
  const RefinementSchedule sched{{1.0, 3.0}, 15.0};
  const auto chain0 = iterate(f, sched, 0);
  REQUIRE(chain0.size() == 1);
  CHECK(same_body(*chain0[0].bodies[1], *f.bodies[1]));
  const auto chain = iterate(f, sched, 2);
  CHECK(chain.size() == 3);
  CHECK_THROWS_AS(iterate(f, sched, 3), MalformedInput);

  CHECK_NOTHROW(sched.check(true));
  CHECK_THROWS_AS((RefinementSchedule{{1.0, 2.0}, 15.0}.check(true)), MalformedInput);
  CHECK_THROWS_AS((RefinementSchedule{{0.5, 3.0}, 15.0}.check(false)), MalformedInput);
  CHECK_THROWS_AS((RefinementSchedule{{1.0}, 15.0}.check(true)), MalformedInput);
  CHECK(RefinementSchedule{{4.0 / 3.0, 4.0}, 100.0}.ratio() == doctest::Approx(3.0));
}

TEST_CASE("monotone chains and planted selections survive") {
  for (const char* name : {"linf", "general2d", "euclid", "segments"}) {
    const auto& p = find_preset(name);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      const auto inst = generate(p, 4 + seed % 9, seed);
      const auto chain = iterate(inst.map, RefinementSchedule{inst.lambdas, inst.gamma}, 2);
      for (std::size_t k = 0; k + 1 < chain.size(); ++k)
        for (std::size_t x = 0; x < inst.map.size(); ++x) {
          REQUIRE(chain[k + 1].bodies[x].has_value());
          CHECK(contains(*chain[k].bodies[x], *chain[k + 1].bodies[x]));
          CHECK(contains_point(*chain[k + 1].bodies[x], inst.planted[x], kCheckEps));
        }
    }
  }
}

TEST_CASE("orbit set collapses") {
  const auto inst = generate(find_preset("linf"), 5, 3);
  const auto delta = scale(*inst.map.space, 1.0);
  for (std::size_t x = 0; x < 5; ++x) {
    const auto t = orbit_set(inst.map, delta, 3.0, x, x, x, x);
    REQUIRE(t.body.has_value());
    CHECK(same_body(*t.body, *inst.map.bodies[x]));
    const auto s = segment_orbit_set(inst.map, delta, 3.0, x, x, x);
    REQUIRE(s.body.has_value());
    CHECK(same_body(*s.body, *inst.map.bodies[x]));
  }
  const auto far = two_point(ConvexBody(Point2{0, 0}), ConvexBody(Point2{5, 0}), kInfinity);
  CHECK(orbit_set(far, *far.space, 3.0, 0, 1, 0, 0).whole_plane);
}

TEST_CASE("second refinement equals the intersection of orbit sets") {
  int checked = 0;
  for (const char* name : {"linf", "general2d", "euclid-submetric"}) {
    const auto& p = find_preset(name);
    for (std::uint64_t seed = 1; seed <= 17; ++seed) {
      const auto inst = generate(p, 3 + seed % 6, seed);
      const auto chain = iterate(inst.map, RefinementSchedule{inst.lambdas, inst.gamma}, 2);
      for (std::size_t x = 0; x < inst.map.size(); ++x) {
        const auto t = testing::orbit_refinement(inst, x);
        REQUIRE(t.body.has_value());
        CHECK(same_body(*t.body, *chain[2].bodies[x], kCheckEps));
      }
      ++checked;
    }
  }
  CHECK(checked == 51);
}

TEST_CASE("segment second refinement equals the intersection of two-index orbits") {
  for (const char* name : {"segments", "segments-euclid"}) {
    const auto& p = find_preset(name);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      const auto inst = generate(p, 3 + seed % 6, seed);
      const auto chain = iterate(inst.map, RefinementSchedule{inst.lambdas, inst.gamma}, 2);
      const auto delta = scale(*inst.map.space, inst.lambdas[0]);
      const double L = inst.lambdas[1] / inst.lambdas[0];
      const std::size_t n = inst.map.size();
      for (std::size_t x = 0; x < n; ++x) {
        std::vector<OrbitSet> orbits;
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t u1 = 0; u1 < n; ++u1) orbits.push_back(segment_orbit_set(inst.map, delta, L, x, u, u1));
        const auto t = intersect_orbits(orbits);
        REQUIRE(t.body.has_value());
        CHECK(same_body(*t.body, *chain[2].bodies[x], kCheckEps));
      }
    }
  }
}

TEST_CASE("stabilization") {
  SUBCASE("constant map") {
    const auto k = body({{0, 0}, {2, 1}, {1, 3}});
    const auto f = make_map(PseudometricSpace({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}), PolygonalNorm::l1(), {k, k, k});
    const auto s = stabilization_check(f, 15.0);
    CHECK(s.stable);
    CHECK(s.defect == 0.0);
  }
  SUBCASE("planted violation") {
    // d_H(F2(x), F2(y)) = 3 with rho = 1 and gamma = 1: refining trims the
    // segment at y to [0,1], so the defect is 3 - gamma rho = 2.
    const auto f2 = two_point(ConvexBody(Point2{0, 0}), ConvexBody::segment({0, 0}, {3, 0}), 1.0);
    const auto s = stabilization_check(f2, 1.0);
    CHECK_FALSE(s.stable);
    CHECK(s.witness == 1u);
    CHECK(s.defect == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("certified instances stabilize and stay stable") {
    for (const char* name : {"linf", "general2d", "segments"}) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto inst = generate(find_preset(name), 6 + seed, seed);
        const auto chain = iterate(inst.map, RefinementSchedule{inst.lambdas, inst.gamma}, 2);
        const auto s = stabilization_check(chain[2], inst.gamma);
        CHECK(s.stable);
        CHECK(s.defect <= 1e-6);
        const auto again = stabilization_check(s.refined, inst.gamma);
        CHECK(again.stable);
      }
    }
  }
}

TEST_CASE("refinement commutes with translation") {
  const auto inst = generate(find_preset("general2d"), 9, 21);
  const Point2 v{3.25, -1.5};
  std::vector<ConvexBody> moved;
  for (const auto& b : inst.map.bodies) moved.push_back(b->translated(v));
  const auto g = make_map(*inst.map.space, *inst.map.norm, moved);
  const auto a = balanced_refinement(inst.map, 4.0 / 3.0);
  const auto b = balanced_refinement(g, 4.0 / 3.0);
  for (std::size_t x = 0; x < inst.map.size(); ++x) CHECK(same_body(a.bodies[x]->translated(v), *b.bodies[x], 1e-9));
}
