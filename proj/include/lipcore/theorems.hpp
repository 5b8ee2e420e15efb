#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lipcore {

/// Outcome of one randomized property sweep.
struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t passed = 0;
  /// Trials whose hypothesis did not hold (vacuous, not counted as passes).
  std::size_t vacuous = 0;
  /// Largest violation margin seen (<= tolerance on success).
  double worst_margin = 0.0;
  std::string note;

  bool ok() const { return trials > 0 && passed + vacuous == trials && passed > 0; }
};

/// Neighborhood-of-intersection inclusion per norm family (l-inf, l1,
/// random hexagons, 64-gon with both thetas).
std::vector<SuiteResult> neighborhood_suite(std::size_t trials, std::uint64_t seed);
/// Failure of the inclusion without its precondition, and its repair.
SuiteResult counterexample_suite();
std::vector<SuiteResult> pf3_suite(std::size_t trials, std::uint64_t seed);
std::vector<SuiteResult> c123_suite(std::size_t trials, std::uint64_t seed);
/// Sampled modulus of squareness at beta = 0.1..0.9 against (1+b)/(1-b)
/// for every norm, and against the n-gon bound for the 64-gon.
std::vector<SuiteResult> squareness_suite(std::size_t samples, std::uint64_t seed);
/// Helly-type identities: pairwise neighborhoods, segment-anchored
/// neighborhoods, segment Helly, interval Helly, and the l-infinity
/// rectangular-hull identity.
std::vector<SuiteResult> helly_suite(std::size_t trials, std::uint64_t seed);

/// Suite names accepted by run_suite: ns, cpr, pf3, c123, squareness, helly, all.
std::vector<std::string> suite_names();
/// Throws MalformedInput for an unknown name.
std::vector<SuiteResult> run_suite(const std::string& name, std::size_t trials, std::uint64_t seed);

}  // namespace lipcore
