#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lipcore/gen.hpp"
#include "lipcore/lowdim.hpp"
#include "lipcore/refine.hpp"

namespace lipcore {

using Json = nlohmann::ordered_json;

/// Everything an instance file can hold. Exactly one of `bodies` and
/// `intervals` is used; entries may be Empty (refine output).
struct InstanceFile {
  std::string preset;
  std::optional<std::uint64_t> seed;
  PolygonalNorm norm = PolygonalNorm::linf();
  PseudometricSpace space;
  bool interval_valued = false;
  std::vector<MaybeBody> bodies;
  std::vector<MaybeInterval> intervals;
  std::vector<double> lambdas;
  std::optional<double> gamma;
  std::vector<Point2> planted;
  std::vector<double> planted_scalar;

  std::size_t size() const { return space.size(); }
  /// Throws MalformedInput for interval files or Empty values.
  SetValuedMap map() const;
  /// Throws MalformedInput for body files or Empty values.
  std::vector<Interval> interval_values() const;
};

bool operator==(const InstanceFile& a, const InstanceFile& b);

InstanceFile to_file(const Instance& inst);
InstanceFile to_file(const IntervalInstance& inst, const std::string& preset);
InstanceFile to_file(const SetValuedMap& f);

Json norm_to_json(const PolygonalNorm& norm);
/// {"kind":"linf"|"l1"} | {"kind":"euclidean","ngon":n} | {"kind":"polygon","vertices":[[x,y],...]}
PolygonalNorm norm_from_json(const Json& j);

Json to_json(const InstanceFile& f);
/// Throws MalformedInput on any structural problem. Unless
/// `allow_invalid_metric`, also rejects matrices that fail validate().
InstanceFile instance_from_json(const Json& j, bool allow_invalid_metric = false);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace lipcore
