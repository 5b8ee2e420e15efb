#include "lipcore/io.hpp"

#include <cmath>
#include <fstream>

namespace lipcore {

namespace {

Json point_json(Point2 p) { return Json::array({p.x, p.y}); }

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw MalformedInput(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw MalformedInput(what + " must be finite");
  return v;
}

Point2 point_from(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw MalformedInput(what + " must be a pair [x, y]");
  return {number(j[0], what), number(j[1], what)};
}

const Json& field(const Json& j, const char* key) {
  if (!j.contains(key)) throw MalformedInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

bool same_body_exact(const MaybeBody& a, const MaybeBody& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || a->vertices() == b->vertices();
}

}  // namespace

SetValuedMap InstanceFile::map() const {
  if (interval_valued) throw MalformedInput("instance holds intervals, not planar sets");
  std::vector<ConvexBody> out;
  for (std::size_t x = 0; x < bodies.size(); ++x) {
    if (!bodies[x]) throw MalformedInput("value at point " + space.labels()[x] + " is empty");
    out.push_back(*bodies[x]);
  }
  return make_map(space, norm, std::move(out));
}

std::vector<Interval> InstanceFile::interval_values() const {
  if (!interval_valued) throw MalformedInput("instance holds planar sets, not intervals");
  std::vector<Interval> out;
  for (std::size_t x = 0; x < intervals.size(); ++x) {
    if (!intervals[x]) throw MalformedInput("value at point " + space.labels()[x] + " is empty");
    out.push_back(*intervals[x]);
  }
  return out;
}

bool operator==(const InstanceFile& a, const InstanceFile& b) {
  if (a.preset != b.preset || a.seed != b.seed || !(a.space == b.space)) return false;
  if (a.norm.kind() != b.norm.kind() || a.norm.ngon() != b.norm.ngon() ||
      a.norm.unit_ball().vertices() != b.norm.unit_ball().vertices())
    return false;
  if (a.interval_valued != b.interval_valued || a.intervals != b.intervals) return false;
  if (a.bodies.size() != b.bodies.size()) return false;
  for (std::size_t i = 0; i < a.bodies.size(); ++i)
    if (!same_body_exact(a.bodies[i], b.bodies[i])) return false;
  return a.lambdas == b.lambdas && a.gamma == b.gamma && a.planted == b.planted && a.planted_scalar == b.planted_scalar;
}

InstanceFile to_file(const Instance& inst) {
  InstanceFile f = to_file(inst.map);
  f.preset = inst.preset;
  f.seed = inst.seed;
  f.lambdas = inst.lambdas;
  if (inst.gamma > 0.0) f.gamma = inst.gamma;
  f.planted = inst.planted;
  return f;
}

InstanceFile to_file(const IntervalInstance& inst, const std::string& preset) {
  InstanceFile f;
  f.preset = preset;
  f.seed = inst.seed;
  f.space = inst.space;
  f.interval_valued = true;
  f.intervals.assign(inst.sets.begin(), inst.sets.end());
  f.lambdas = {1.0};
  f.gamma = 1.0;
  f.planted_scalar = inst.planted;
  return f;
}

InstanceFile to_file(const SetValuedMap& m) {
  InstanceFile f;
  f.space = *m.space;
  f.norm = *m.norm;
  f.bodies = m.bodies;
  return f;
}

Json norm_to_json(const PolygonalNorm& norm) {
  Json j;
  j["kind"] = norm.kind();
  if (norm.kind() == "euclidean") j["ngon"] = norm.ngon();
  if (norm.kind() == "polygon") {
    j["vertices"] = Json::array();
    for (const auto& v : norm.unit_ball().vertices()) j["vertices"].push_back(point_json(v));
  }
  return j;
}

PolygonalNorm norm_from_json(const Json& j) {
  if (!j.is_object()) throw MalformedInput("norm must be an object");
  const auto& kind = field(j, "kind");
  if (!kind.is_string()) throw MalformedInput("norm kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "linf") return PolygonalNorm::linf();
  if (k == "l1") return PolygonalNorm::l1();
  if (k == "euclidean") {
    const int n = j.contains("ngon") ? static_cast<int>(number(j["ngon"], "ngon")) : 64;
    return PolygonalNorm::euclidean(n);
  }
  if (k == "polygon") {
    const auto& vs = field(j, "vertices");
    if (!vs.is_array()) throw MalformedInput("norm vertices must be an array");
    std::vector<Point2> pts;
    for (const auto& v : vs) pts.push_back(point_from(v, "norm vertex"));
    return PolygonalNorm::polygon(pts);
  }
  throw MalformedInput("unknown norm kind: " + k);
}

Json to_json(const InstanceFile& f) {
  Json j;
  if (!f.preset.empty()) j["preset"] = f.preset;
  if (f.seed) j["seed"] = *f.seed;
  j["values"] = f.interval_valued ? "intervals" : "sets";
  j["norm"] = norm_to_json(f.norm);
  Json matrix = Json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (std::isinf(f.space(i, k)))
        row.push_back("inf");
      else
        row.push_back(f.space(i, k));
    }
    matrix.push_back(std::move(row));
  }
  j["metric"] = {{"labels", f.space.labels()}, {"matrix", std::move(matrix)}};
  Json sets = Json::object();
  for (std::size_t x = 0; x < f.size(); ++x) {
    const auto& label = f.space.labels()[x];
    if (f.interval_valued) {
      const auto& k = f.intervals[x];
      sets[label] = k ? Json::array({k->lo, k->hi}) : Json(nullptr);
    } else if (const auto& b = f.bodies[x]) {
      Json vs = Json::array();
      for (const auto& v : b->vertices()) vs.push_back(point_json(v));
      sets[label] = std::move(vs);
    } else {
      sets[label] = nullptr;
    }
  }
  j["sets"] = std::move(sets);
  if (!f.lambdas.empty()) j["lambdas"] = f.lambdas;
  if (f.gamma) j["gamma"] = *f.gamma;
  if (!f.planted.empty() || !f.planted_scalar.empty()) {
    Json g = Json::object();
    for (std::size_t x = 0; x < f.size(); ++x) {
      const auto& label = f.space.labels()[x];
      if (f.interval_valued)
        g[label] = f.planted_scalar.at(x);
      else
        g[label] = point_json(f.planted.at(x));
    }
    j["planted"] = std::move(g);
  }
  return j;
}

InstanceFile instance_from_json(const Json& j, bool allow_invalid_metric) {
  if (!j.is_object()) throw MalformedInput("instance must be a JSON object");
  InstanceFile f;
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) throw MalformedInput("preset must be a string");
    f.preset = j["preset"].get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw MalformedInput("seed must be a non-negative integer");
    f.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("values")) {
    const auto& v = j["values"];
    if (v == "intervals")
      f.interval_valued = true;
    else if (v != "sets")
      throw MalformedInput("values must be \"sets\" or \"intervals\"");
  }
  if (j.contains("norm")) f.norm = norm_from_json(j["norm"]);

  const auto& metric = field(j, "metric");
  if (!metric.is_object()) throw MalformedInput("metric must be an object");
  const auto& labels_j = field(metric, "labels");
  const auto& matrix_j = field(metric, "matrix");
  if (!labels_j.is_array() || !matrix_j.is_array()) throw MalformedInput("metric labels and matrix must be arrays");
  std::vector<std::string> labels;
  for (const auto& l : labels_j) {
    if (!l.is_string()) throw MalformedInput("metric labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  std::vector<std::vector<double>> d;
  for (const auto& row : matrix_j) {
    if (!row.is_array()) throw MalformedInput("metric rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) {
      if (v.is_string() && v.get<std::string>() == "inf")
        r.push_back(kInfinity);
      else
        r.push_back(number(v, "distance"));
    }
    d.push_back(std::move(r));
  }
  f.space = PseudometricSpace(labels, std::move(d));
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t k = i + 1; k < labels.size(); ++k)
      if (labels[i] == labels[k]) throw MalformedInput("duplicate label " + labels[i]);
  if (!allow_invalid_metric) {
    const auto v = validate(f.space);
    if (!v.ok) throw MalformedInput("metric violates the " + v.axiom + " axiom");
  }

  const auto& sets = field(j, "sets");
  if (!sets.is_object()) throw MalformedInput("sets must be an object keyed by label");
  if (sets.size() != labels.size()) throw MalformedInput("sets and metric labels differ");
  for (const auto& label : labels) {
    if (!sets.contains(label)) throw MalformedInput("no set for point " + label);
    const auto& s = sets[label];
    if (f.interval_valued) {
      if (s.is_null()) {
        f.intervals.emplace_back();
        continue;
      }
      if (!s.is_array() || s.size() != 2) throw MalformedInput("interval at " + label + " must be [lo, hi]");
      f.intervals.emplace_back(Interval(number(s[0], "interval end"), number(s[1], "interval end")));
    } else {
      if (s.is_null()) {
        f.bodies.emplace_back();
        continue;
      }
      if (!s.is_array() || s.empty()) throw MalformedInput("set at " + label + " must be a nonempty vertex list");
      std::vector<Point2> pts;
      for (const auto& p : s) pts.push_back(point_from(p, "vertex of " + label));
      f.bodies.push_back(ConvexBody::hull(pts));
    }
  }

  if (j.contains("lambdas")) {
    if (!j["lambdas"].is_array()) throw MalformedInput("lambdas must be an array");
    for (const auto& l : j["lambdas"]) f.lambdas.push_back(number(l, "lambda"));
  }
  if (j.contains("gamma")) f.gamma = number(j["gamma"], "gamma");
  if (j.contains("planted")) {
    const auto& g = j["planted"];
    if (!g.is_object()) throw MalformedInput("planted must be an object keyed by label");
    for (const auto& label : labels) {
      if (!g.contains(label)) throw MalformedInput("no planted value for point " + label);
      if (f.interval_valued)
        f.planted_scalar.push_back(number(g[label], "planted value"));
      else
        f.planted.push_back(point_from(g[label], "planted value"));
    }
  }
  return f;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace lipcore
