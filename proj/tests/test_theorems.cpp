#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lipcore/theorems.hpp"
#include "lipcore/verify.hpp"

using namespace lipcore;

namespace {

void require_all(const std::vector<SuiteResult>& results) {
  REQUIRE_FALSE(results.empty());
  for (const auto& r : results) {
    INFO(r.name, ": ", r.passed, " passed, ", r.vacuous, " vacuous of ", r.trials, " ", r.note);
    CHECK(r.ok());
  }
}

}  // namespace

TEST_CASE("constants") {
  CHECK(phi_bound(0.5) == doctest::Approx(3.0));
  CHECK(psi_euclidean(0.6) == doctest::Approx(1.25));
  CHECK(psi_polygonal(0.6, 1 << 20) == doctest::Approx(1.25).epsilon(1e-5));
  CHECK(psi_polygonal(0.6, 64) > psi_euclidean(0.6));
  CHECK(theta_general(3.0) > theta_euclidean(3.0));
}

TEST_CASE("counterexample depth grows with r/s and the repair holds") {
  for (double q : {10.0, 30.0, 100.0}) {
    CHECK(counterexample_cpr(q) == doctest::Approx(4.0 * q - 6.0).epsilon(1e-9));
    CHECK(counterexample_cpr_repaired(q).holds);
  }
  CHECK(counterexample_suite().ok());
}

TEST_CASE("property suites at small trial counts") {
  require_all(run_suite("ns", 60, 3));
  require_all(run_suite("pf3", 60, 3));
  require_all(run_suite("c123", 60, 3));
  require_all(run_suite("helly", 60, 3));
}

TEST_CASE("squareness stays under the bounds that apply") {
  for (const auto& r : squareness_suite(2000, 4)) {
    INFO(r.name, " ", r.note);
    CHECK(r.ok());
  }
  const auto linf = PolygonalNorm::linf();
  CHECK(modulus_of_squareness(linf, 0.5, 2000) <= phi_bound(0.5) + kCheckEps);
  CHECK(modulus_of_squareness(linf, 0.5, 2000) > 0.9 * phi_bound(0.5));
  const auto ngon = PolygonalNorm::euclidean(64);
  CHECK(modulus_of_squareness(ngon, 0.5, 2000) <= psi_polygonal(0.5, 64) + kCheckEps);
}

TEST_CASE("unknown suites are rejected") {
  CHECK_THROWS_AS(run_suite("nope", 10, 1), MalformedInput);
  CHECK(suite_names().back() == "all");
}
