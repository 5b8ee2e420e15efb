#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lipcore/gen.hpp"
#include "lipcore/select.hpp"

using namespace lipcore;

TEST_CASE("seminorm examples") {
  const PseudometricSpace two({{0, 2}, {2, 0}});
  const auto linf = PolygonalNorm::linf();
  const Point2 constant[] = {{1, 1}, {1, 1}};
  CHECK(lipschitz_seminorm(constant, two, linf) == 0.0);
  const Point2 f[] = {{0, 0}, {2, 0}};
  CHECK(lipschitz_seminorm(f, two, linf) == 1.0);
  const PseudometricSpace zero({{0, 0}, {0, 0}});
  CHECK(std::isinf(lipschitz_seminorm(f, zero, linf)));
  CHECK(lipschitz_seminorm(constant, zero, linf) == 0.0);
  const PseudometricSpace inf({{0, kInfinity}, {kInfinity, 0}});
  CHECK(lipschitz_seminorm(f, inf, linf) == 0.0);
}

TEST_CASE("steiner selection examples") {
  const PseudometricSpace three({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  const auto sq = ConvexBody::box(-1, -1, 1, 1);
  const auto constant = steiner_selection(make_map(three, PolygonalNorm::linf(), {sq, sq, sq}));
  for (auto p : constant.values) {
    CHECK(p.x == doctest::Approx(0.0).scale(1.0));
    CHECK(p.y == doctest::Approx(0.0).scale(1.0));
  }
  CHECK(constant.seminorm == doctest::Approx(0.0).scale(1.0));

  const std::vector<Point2> g = {{0, 0}, {0.5, 0.25}, {1, -1}};
  std::vector<ConvexBody> pts;
  for (auto p : g) pts.emplace_back(p);
  const auto sel = steiner_selection(make_map(three, PolygonalNorm::linf(), pts));
  CHECK(sel.values == g);

  SetValuedMap holey = make_map(three, PolygonalNorm::linf(), {sq, sq, sq});
  holey.bodies[1].reset();
  try {
    steiner_selection(holey);
    FAIL("expected CertificationFailed");
  } catch (const CertificationFailed& e) {
    CHECK(e.point() == 1u);
  }
}

TEST_CASE("selection lies in every iterate and its seminorm is consistent") {
  for (const char* name : {"linf", "general2d", "euclid", "segments-euclid"}) {
    const auto& p = find_preset(name);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto inst = generate(p, 5 + 3 * seed, seed);
      const auto chain = iterate(inst.map, RefinementSchedule{inst.lambdas, inst.gamma}, 2);
      const auto sel = steiner_selection(chain[2]);
      for (std::size_t x = 0; x < inst.map.size(); ++x)
        for (const auto& level : chain) CHECK(contains_point(*level.bodies[x], sel.values[x], kCheckEps));
      const auto& rho = *inst.map.space;
      for (std::size_t x = 0; x < inst.map.size(); ++x)
        for (std::size_t y = 0; y < inst.map.size(); ++y)
          CHECK(inst.map.norm->gauge(sel.values[x] - sel.values[y]) <= sel.seminorm * rho(x, y) + kCheckEps);
      CHECK(sel.seminorm <= 10.0 * inst.gamma);
    }
  }
}

TEST_CASE("selection is translation equivariant") {
  const auto inst = generate(find_preset("linf"), 12, 4);
  const auto f2 = iterate(inst.map, RefinementSchedule{inst.lambdas, inst.gamma}, 2)[2];
  const Point2 v{-2.5, 7.0};
  SetValuedMap moved = f2;
  for (auto& b : moved.bodies) b = b->translated(v);
  const auto a = steiner_selection(f2);
  const auto b = steiner_selection(moved);
  for (std::size_t x = 0; x < a.values.size(); ++x) {
    CHECK(b.values[x].x == doctest::Approx(a.values[x].x + v.x).epsilon(1e-12));
    CHECK(b.values[x].y == doctest::Approx(a.values[x].y + v.y).epsilon(1e-12));
  }
  CHECK(b.seminorm == doctest::Approx(a.seminorm).epsilon(1e-9));
}
