#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipcore/io.hpp"

namespace lipcore {

/// Stabilization defect allowed for a PASS row.
inline constexpr double kStabilizationTolerance = 1e-6;
/// Selection seminorm allowed for a PASS row, in units of gamma.
inline constexpr double kSelectionCeiling = 10.0;

/// Outcome of the full pipeline on one instance.
struct InstanceReport {
  std::string preset;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  /// Four-point verdict at bound 1; unset when not requested.
  std::optional<bool> hypothesis;
  /// Nonemptiness of F^[0], F^[1], ... (only F^[1] for intervals).
  std::vector<bool> nonempty;
  double gamma = 0.0;
  double gamma_allowance = 0.0;
  bool certificate_valid = false;
  double max_ratio = 0.0;
  std::optional<double> stabilization_defect;
  std::optional<double> selection_seminorm;
  /// Largest Euclidean distance from a selection value to its set, over
  /// max(1, set scale).
  std::optional<double> selection_offset;
  double wall_ms = 0.0;
  /// "PASS", "FAIL" or "ERROR".
  std::string status;
  std::string error;
  bool indeterminate = false;
};

struct PipelineOptions {
  /// Overrides of the instance's own constants.
  std::vector<double> lambdas;
  std::optional<double> gamma;
  bool check_hypothesis = false;
};

/// Refine twice (once for intervals), certify, check stabilization and
/// take a selection. Never throws; errors become ERROR rows.
InstanceReport run_pipeline(const InstanceFile& inst, const PipelineOptions& opts = {});

Json to_json(const InstanceReport& r);
InstanceReport report_from_json(const Json& j);

/// Header plus one line per report.
std::string reports_to_csv(std::span<const InstanceReport> reports);

struct BatchRun {
  std::string preset;
  std::size_t n = 10;
  std::vector<std::uint64_t> seeds;
};

struct BatchConfig {
  std::vector<BatchRun> runs;
  PipelineOptions options;
};

/// {"runs": [{"preset": "linf", "n": 20, "seeds": [1, 2]} |
///           {"preset": ..., "n": ..., "seed_range": [first, last]}],
///  "check_hypothesis": false}
BatchConfig batch_from_json(const Json& j);

/// Threads from LIPCORE_THREADS, else the hardware concurrency.
unsigned batch_threads();

/// One report per (run, seed) in config order. Instances run concurrently
/// on `threads` workers; failures are recorded and the batch continues.
std::vector<InstanceReport> batch_run(const BatchConfig& config, unsigned threads);

}  // namespace lipcore
