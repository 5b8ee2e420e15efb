#include "lipcore/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "lipcore/select.hpp"

namespace lipcore {

namespace {

std::vector<double> pick_lambdas(const InstanceFile& inst, const PipelineOptions& opts) {
  if (!opts.lambdas.empty()) return opts.lambdas;
  if (!inst.lambdas.empty()) return inst.lambdas;
  if (!inst.preset.empty()) return find_preset(inst.preset).lambdas;
  throw MalformedInput("no lambdas given and the instance names no preset");
}

double pick_gamma(const InstanceFile& inst, const PipelineOptions& opts) {
  if (opts.gamma) return *opts.gamma;
  if (inst.gamma) return *inst.gamma;
  if (!inst.preset.empty()) return find_preset(inst.preset).gamma;
  throw MalformedInput("no gamma given and the instance names no preset");
}

void run_intervals(const InstanceFile& inst, const std::vector<double>& lambdas, InstanceReport& r) {
  const auto f = inst.interval_values();
  const auto f1 = interval_refinement(f, inst.space, lambdas.at(0));
  r.nonempty = {true, std::all_of(f1.begin(), f1.end(), [](const MaybeInterval& k) { return k.has_value(); })};
  if (!r.nonempty.back()) return;
  std::vector<Interval> values;
  for (const auto& k : f1) values.push_back(*k);
  const auto c = interval_core_check(values, inst.space, r.gamma);
  r.certificate_valid = c.ok;
  r.max_ratio = c.max_ratio;
}

void run_sets(const InstanceFile& inst, const std::vector<double>& lambdas, const PipelineOptions& opts,
              InstanceReport& r) {
  const auto f = inst.map();
  if (opts.check_hypothesis) {
    const auto h = check_hypothesis(f, 4, 1.0);
    r.hypothesis = h.ok;
    r.indeterminate = r.indeterminate || h.indeterminate;
  }
  const RefinementSchedule sched{lambdas, r.gamma};
  sched.check(true);
  const auto chain = iterate(f, sched, 2);
  for (const auto& m : chain) r.nonempty.push_back(m.all_nonempty());
  r.gamma_allowance = certificate_allowance(*f.norm, r.gamma);
  const auto cert = certify_core(f, chain[2], r.gamma, r.gamma_allowance);
  r.certificate_valid = cert.valid();
  r.max_ratio = cert.max_ratio;
  if (!chain[2].all_nonempty()) return;
  r.stabilization_defect = stabilization_check(chain[2], r.gamma).defect;
  const auto sel = steiner_selection(chain[2]);
  r.selection_seminorm = sel.seminorm;
  double offset = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x)
    offset = std::max(offset, euclidean_distance(sel.values[x], *f.bodies[x]) / std::max(1.0, f.bodies[x]->scale()));
  r.selection_offset = offset;
}

bool passes(const InstanceReport& r) {
  if (r.nonempty.empty() || !r.nonempty.back() || !r.certificate_valid) return false;
  if (r.stabilization_defect && !(*r.stabilization_defect <= kStabilizationTolerance)) return false;
  if (r.selection_seminorm && !(*r.selection_seminorm <= kSelectionCeiling * r.gamma)) return false;
  if (r.selection_offset && !(*r.selection_offset <= kCheckEps)) return false;
  return true;
}

// JSON has no infinity; store it as the string "inf" like the metric.
Json num(double v) { return std::isinf(v) ? Json("inf") : Json(v); }

double num_from(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return kInfinity;
  if (!j.is_number()) throw MalformedInput("report field must be a number");
  return j.get<double>();
}

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

}  // namespace

InstanceReport run_pipeline(const InstanceFile& inst, const PipelineOptions& opts) {
  InstanceReport r;
  r.preset = inst.preset;
  r.seed = inst.seed.value_or(0);
  r.n = inst.size();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto lambdas = pick_lambdas(inst, opts);
    r.gamma = pick_gamma(inst, opts);
    if (inst.interval_valued)
      run_intervals(inst, lambdas, r);
    else
      run_sets(inst, lambdas, opts, r);
    r.status = passes(r) ? "PASS" : "FAIL";
  } catch (const std::exception& e) {
    r.status = "ERROR";
    r.error = e.what();
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Json to_json(const InstanceReport& r) {
  Json j;
  j["preset"] = r.preset;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["hypothesis"] = r.hypothesis ? Json(*r.hypothesis) : Json(nullptr);
  j["nonempty"] = r.nonempty;
  j["gamma"] = r.gamma;
  j["gamma_allowance"] = r.gamma_allowance;
  j["certificate_valid"] = r.certificate_valid;
  j["max_ratio"] = num(r.max_ratio);
  j["stabilization_defect"] = r.stabilization_defect ? num(*r.stabilization_defect) : Json(nullptr);
  j["selection_seminorm"] = r.selection_seminorm ? num(*r.selection_seminorm) : Json(nullptr);
  j["selection_offset"] = r.selection_offset ? num(*r.selection_offset) : Json(nullptr);
  j["wall_ms"] = r.wall_ms;
  j["status"] = r.status;
  if (!r.error.empty()) j["error"] = r.error;
  if (r.indeterminate) j["indeterminate"] = true;
  return j;
}

InstanceReport report_from_json(const Json& j) {
  if (!j.is_object()) throw MalformedInput("report must be an object");
  try {
    InstanceReport r;
    r.preset = j.at("preset").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.n = j.at("n").get<std::size_t>();
    if (!j.at("hypothesis").is_null()) r.hypothesis = j["hypothesis"].get<bool>();
    r.nonempty = j.at("nonempty").get<std::vector<bool>>();
    r.gamma = j.at("gamma").get<double>();
    r.gamma_allowance = j.at("gamma_allowance").get<double>();
    r.certificate_valid = j.at("certificate_valid").get<bool>();
    r.max_ratio = num_from(j.at("max_ratio"));
    if (!j.at("stabilization_defect").is_null()) r.stabilization_defect = num_from(j["stabilization_defect"]);
    if (!j.at("selection_seminorm").is_null()) r.selection_seminorm = num_from(j["selection_seminorm"]);
    if (!j.at("selection_offset").is_null()) r.selection_offset = num_from(j["selection_offset"]);
    r.wall_ms = j.at("wall_ms").get<double>();
    r.status = j.at("status").get<std::string>();
    r.error = j.value("error", "");
    r.indeterminate = j.value("indeterminate", false);
    return r;
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("bad report: ") + e.what());
  }
}

std::string reports_to_csv(std::span<const InstanceReport> reports) {
  std::ostringstream out;
  out << "preset,seed,n,hypothesis,f2_nonempty,gamma,gamma_allowance,max_ratio,ratio_over_gamma,"
         "stabilization_defect,selection_seminorm,selection_over_gamma,wall_ms,status\n";
  for (const auto& r : reports) {
    const std::string hyp = r.hypothesis ? (*r.hypothesis ? "true" : "false") : "";
    const std::string ne = r.nonempty.empty() ? "" : (r.nonempty.back() ? "true" : "false");
    const double q = r.gamma > 0.0 ? r.max_ratio / r.gamma : kInfinity;
    std::optional<double> sq;
    if (r.selection_seminorm && r.gamma > 0.0) sq = *r.selection_seminorm / r.gamma;
    out << r.preset << ',' << r.seed << ',' << r.n << ',' << hyp << ',' << ne << ',' << fmt(r.gamma) << ','
        << fmt(r.gamma_allowance) << ',' << fmt(r.max_ratio) << ',' << fmt(q) << ',' << fmt(r.stabilization_defect)
        << ',' << fmt(r.selection_seminorm) << ',' << fmt(sq) << ',' << fmt(r.wall_ms) << ',' << r.status << '\n';
  }
  return out.str();
}

BatchConfig batch_from_json(const Json& j) {
  if (!j.is_object()) throw MalformedInput("batch config must be an object");
  BatchConfig c;
  c.options.check_hypothesis = j.value("check_hypothesis", false);
  if (!j.contains("runs")) return c;
  if (!j["runs"].is_array()) throw MalformedInput("runs must be an array");
  for (const auto& r : j["runs"]) {
    if (!r.is_object() || !r.contains("preset") || !r["preset"].is_string())
      throw MalformedInput("each run needs a preset name");
    BatchRun run;
    run.preset = r["preset"].get<std::string>();
    find_preset(run.preset);
    if (r.contains("n")) {
      if (!r["n"].is_number_unsigned() || r["n"].get<std::size_t>() == 0)
        throw MalformedInput("n must be a positive integer");
      run.n = r["n"].get<std::size_t>();
    }
    if (r.contains("seeds")) {
      if (!r["seeds"].is_array()) throw MalformedInput("seeds must be an array");
      for (const auto& s : r["seeds"]) {
        if (!s.is_number_unsigned()) throw MalformedInput("seeds must be non-negative integers");
        run.seeds.push_back(s.get<std::uint64_t>());
      }
    }
    if (r.contains("seed_range")) {
      const auto& sr = r["seed_range"];
      if (!sr.is_array() || sr.size() != 2 || !sr[0].is_number_unsigned() || !sr[1].is_number_unsigned())
        throw MalformedInput("seed_range must be [first, last]");
      for (auto s = sr[0].get<std::uint64_t>(); s <= sr[1].get<std::uint64_t>(); ++s) run.seeds.push_back(s);
    }
    c.runs.push_back(std::move(run));
  }
  return c;
}

unsigned batch_threads() {
  if (const char* env = std::getenv("LIPCORE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<InstanceReport> batch_run(const BatchConfig& config, unsigned threads) {
  struct Job {
    const BatchRun* run;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& run : config.runs)
    for (auto s : run.seeds) jobs.push_back({&run, s});
  std::vector<InstanceReport> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& [run, seed] = jobs[i];
      try {
        const auto& p = find_preset(run->preset);
        const InstanceFile f = p.bodies == BodyKind::kInterval
                                   ? to_file(interval_instance(preset_config(p, run->n, seed)), p.name)
                                   : to_file(generate(p, run->n, seed));
        out[i] = run_pipeline(f, config.options);
      } catch (const std::exception& e) {
        out[i].preset = run->preset;
        out[i].seed = seed;
        out[i].n = run->n;
        out[i].status = "ERROR";
        out[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace lipcore
