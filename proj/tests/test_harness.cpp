#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lipcore/io.hpp"
#include "lipcore/report.hpp"

using namespace lipcore;

namespace {

InstanceFile roundtrip(const InstanceFile& f) { return instance_from_json(Json::parse(to_json(f).dump())); }

Json minimal() {
  return Json::parse(R"({
    "norm": {"kind": "linf"},
    "metric": {"labels": ["a", "b"], "matrix": [[0, 1], [1, 0]]},
    "sets": {"a": [[0, 0]], "b": [[0, 0], [1, 0], [0, 1]]}
  })");
}

}  // namespace

TEST_CASE("instance files round-trip exactly") {
  int count = 0;
  for (const auto& p : presets()) {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      const auto f = p.bodies == BodyKind::kInterval ? to_file(interval_instance(preset_config(p, 1 + seed % 12, seed)), p.name)
                                                     : to_file(generate(p, 1 + seed % 12, seed));
      const auto text = to_json(f).dump();
      const auto back = roundtrip(f);
      CHECK(back == f);
      CHECK(to_json(back).dump() == text);
      ++count;
    }
  }
  CHECK(count >= 100);

  // Empty values and infinite distances survive as well
  InstanceFile g = instance_from_json(minimal());
  g.bodies[0].reset();
  g.space = PseudometricSpace(g.space.labels(), {{0, kInfinity}, {kInfinity, 0}});
  CHECK(roundtrip(g) == g);
  CHECK(to_json(g)["metric"]["matrix"][0][1] == "inf");
}

TEST_CASE("identical seeds serialize identically") {
  for (const auto& p : presets()) {
    if (p.bodies == BodyKind::kInterval) continue;
    CHECK(to_json(to_file(generate(p, 9, 42))).dump() == to_json(to_file(generate(p, 9, 42))).dump());
  }
}

TEST_CASE("norm specs") {
  CHECK(norm_from_json(Json::parse(R"({"kind":"l1"})")).kind() == "l1");
  CHECK(norm_from_json(Json::parse(R"({"kind":"euclidean","ngon":32})")).ngon() == 32);
  const auto hex = norm_from_json(Json::parse(R"({"kind":"polygon","vertices":[[1,0],[0.5,1],[-0.5,1],[-1,0],[-0.5,-1],[0.5,-1]]})"));
  CHECK(hex.unit_ball().size() == 6);
  CHECK_THROWS_AS(norm_from_json(Json::parse(R"({"kind":"l3"})")), MalformedInput);
  CHECK_THROWS_AS(norm_from_json(Json::parse(R"({"kind":"polygon","vertices":[[1,0],[0,1],[-1,0]]})")), MalformedInput);
}

TEST_CASE("malformed instances are rejected") {
  CHECK_NOTHROW(instance_from_json(minimal()));
  auto missing = minimal();
  missing.erase("sets");
  CHECK_THROWS_AS(instance_from_json(missing), MalformedInput);

  auto label = minimal();
  label["sets"].erase("b");
  label["sets"]["c"] = Json::parse("[[0,0]]");
  CHECK_THROWS_AS(instance_from_json(label), MalformedInput);

  auto asym = minimal();
  asym["metric"]["matrix"][0][1] = 2;
  CHECK_THROWS_AS(instance_from_json(asym), MalformedInput);
  CHECK_NOTHROW(instance_from_json(asym, true));

  auto neg = minimal();
  neg["metric"]["matrix"][0][1] = -1;
  neg["metric"]["matrix"][1][0] = -1;
  CHECK_THROWS_AS(instance_from_json(neg, true), MalformedInput);

  auto bad_point = minimal();
  bad_point["sets"]["a"] = Json::parse("[[0]]");
  CHECK_THROWS_AS(instance_from_json(bad_point), MalformedInput);

  auto bad_interval = minimal();
  bad_interval["values"] = "intervals";
  bad_interval["sets"] = Json::parse(R"({"a": [2, 1], "b": [0, 1]})");
  CHECK_THROWS_AS(instance_from_json(bad_interval), MalformedInput);
}

TEST_CASE("pipeline reports") {
  const auto pass = run_pipeline(to_file(generate(find_preset("linf"), 12, 3)));
  CHECK(pass.status == "PASS");
  CHECK(pass.nonempty == std::vector<bool>{true, true, true});
  CHECK(pass.max_ratio <= pass.gamma);
  CHECK(*pass.stabilization_defect <= kStabilizationTolerance);

  // far singletons: the core is empty, so the row fails
  auto far = instance_from_json(minimal());
  far.bodies[1] = ConvexBody(Point2{5, 0});
  const auto fail = run_pipeline(far, {{1.0, 3.0}, 15.0, true});
  CHECK(fail.status == "FAIL");
  CHECK(fail.hypothesis == false);
  CHECK_FALSE(fail.nonempty.back());

  // no constants anywhere
  const auto err = run_pipeline(instance_from_json(minimal()));
  CHECK(err.status == "ERROR");

  const auto iv = run_pipeline(to_file(interval_instance(preset_config(find_preset("intervals"), 10, 2)), "intervals"));
  CHECK(iv.status == "PASS");
  CHECK(iv.max_ratio <= 1.0 + kIntervalEps);

  for (const auto& r : {pass, fail, err, iv}) {
    const auto back = report_from_json(Json::parse(to_json(r).dump()));
    CHECK(to_json(back) == to_json(r));
  }
}

TEST_CASE("batch runs") {
  CHECK(batch_run(batch_from_json(Json::object()), 2).empty());
  CHECK(batch_run(batch_from_json(Json::parse(R"({"runs": []})")), 2).empty());

  const auto ten = batch_run(batch_from_json(Json::parse(R"({"runs": [{"preset": "linf", "n": 10, "seed_range": [1, 10]}]})")), 4);
  REQUIRE(ten.size() == 10);
  for (std::size_t i = 0; i < ten.size(); ++i) {
    CHECK(ten[i].status == "PASS");
    CHECK(ten[i].gamma == 15.0);
    CHECK(ten[i].seed == i + 1);
    CHECK(ten[i].max_ratio <= ten[i].gamma);
  }

  const auto mixed_cfg = batch_from_json(Json::parse(R"({"runs": [
      {"preset": "general2d", "n": 6, "seeds": [4, 5]},
      {"preset": "segments", "n": 7, "seeds": [1, 2, 3]},
      {"preset": "intervals", "n": 8, "seeds": [9]}]})"));
  const auto one = batch_run(mixed_cfg, 1);
  const auto many = batch_run(mixed_cfg, 3);
  REQUIRE(one.size() == 6);
  REQUIRE(many.size() == 6);
  const char* names[] = {"general2d", "general2d", "segments", "segments", "segments", "intervals"};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(one[i].preset == names[i]);
    auto a = to_json(one[i]), b = to_json(many[i]);
    a.erase("wall_ms");
    b.erase("wall_ms");
    CHECK(a == b);
  }

  const auto csv = reports_to_csv(one);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK(csv.rfind("preset,seed,n,", 0) == 0);

  CHECK_THROWS_AS(batch_from_json(Json::parse(R"({"runs": [{"preset": "nope"}]})")), MalformedInput);
  CHECK_THROWS_AS(batch_from_json(Json::parse(R"({"runs": [{"preset": "linf", "seed_range": [1]}]})")), MalformedInput);
}
