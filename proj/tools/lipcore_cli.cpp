// Command-line front end: generate, check, refine, certify and select on
// instance files, run the property suites, and batch experiments.
//
// Exit codes: 0 success / positive verdict, 1 negative verdict, 2 malformed
// input, 3 indeterminate LP result.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lipcore/io.hpp"
#include "lipcore/report.hpp"
#include "lipcore/select.hpp"
#include "lipcore/theorems.hpp"

using namespace lipcore;

namespace {

constexpr int kYes = 0, kNo = 1, kMalformed = 2, kIndeterminate = 3;

Json read_input(const std::string& path) {
  if (path != "-") return read_json_file(path);
  try {
    return Json::parse(std::cin);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(std::string("stdin: ") + e.what());
  }
}

void emit(const std::string& path, const Json& j) {
  if (path.empty() || path == "-")
    std::cout << j.dump(2) << '\n';
  else
    write_json_file(path, j);
}

std::vector<double> parse_lambdas(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw MalformedInput("bad lambda list: " + s);
    }
  }
  if (out.empty()) throw MalformedInput("empty lambda list");
  return out;
}

NormKind norm_kind(const std::string& s) {
  if (s == "linf") return NormKind::kLinf;
  if (s == "l1") return NormKind::kL1;
  if (s == "euclidean") return NormKind::kEuclidean;
  if (s == "hexagon") return NormKind::kHexagon;
  throw MalformedInput("unknown norm: " + s);
}

MetricKind metric_kind(const std::string& s) {
  if (s == "tree") return MetricKind::kTree;
  if (s == "random") return MetricKind::kRandomValid;
  if (s == "euclidean") return MetricKind::kEuclideanSubmetric;
  throw MalformedInput("unknown metric kind: " + s);
}

struct Common {
  std::string input = "-";
  std::string out;
  std::string lambdas;
  double gamma = 0.0;
  bool force_invalid_metric = false;

  InstanceFile load() const { return instance_from_json(read_input(input), force_invalid_metric); }
  PipelineOptions options() const {
    PipelineOptions o;
    if (!lambdas.empty()) o.lambdas = parse_lambdas(lambdas);
    if (gamma > 0.0) o.gamma = gamma;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c, bool constants) {
  cmd->add_option("instance", c.input, "Instance JSON file ('-' for stdin)");
  cmd->add_option("-o,--out", c.out, "Output file (default stdout)");
  cmd->add_flag("--force-invalid-metric", c.force_invalid_metric, "Accept matrices that fail the metric axioms");
  if (constants) {
    cmd->add_option("--lambdas", c.lambdas, "Refinement constants, e.g. 1,3");
    cmd->add_option("--gamma", c.gamma, "Claimed Lipschitz constant of the core");
  }
}

std::vector<double> lambdas_for(const InstanceFile& f, const PipelineOptions& o) {
  if (!o.lambdas.empty()) return o.lambdas;
  if (!f.lambdas.empty()) return f.lambdas;
  if (!f.preset.empty()) return find_preset(f.preset).lambdas;
  throw MalformedInput("give --lambdas or an instance with lambdas");
}

double gamma_for(const InstanceFile& f, const PipelineOptions& o) {
  if (o.gamma) return *o.gamma;
  if (f.gamma) return *f.gamma;
  if (!f.preset.empty()) return find_preset(f.preset).gamma;
  throw MalformedInput("give --gamma or an instance with gamma");
}

Json label_points(const PseudometricSpace& space, std::span<const Point2> pts) {
  Json j = Json::object();
  for (std::size_t x = 0; x < pts.size(); ++x) j[space.labels()[x]] = Json::array({pts[x].x, pts[x].y});
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz selections of set-valued maps into the plane"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate instance files");
  std::string preset, norm = "linf", metric = "tree", bodies = "polygon", out, out_dir;
  std::size_t n = 10, count = 1;
  std::uint64_t seed = 1;
  int ngon = 64;
  bool adversarial = false;
  gen->add_option("--preset", preset, "Preset name (overrides --norm/--metric/--bodies)");
  gen->add_option("--norm", norm, "linf | l1 | euclidean | hexagon");
  gen->add_option("--metric", metric, "tree | random | euclidean");
  gen->add_option("--bodies", bodies, "polygon | segment | interval");
  gen->add_option("--n", n, "Number of points");
  gen->add_option("--seed", seed, "Seed of the first instance");
  gen->add_option("--ngon", ngon, "Vertices of the Euclidean stand-in");
  gen->add_option("--count", count, "Number of instances (seeds seed, seed+1, ...)");
  gen->add_flag("--adversarial", adversarial, "Random bodies without a planted selection");
  gen->add_option("-o,--out", out, "Output file for a single instance (default stdout)");
  gen->add_option("--out-dir", out_dir, "Directory for <preset>_<seed>.json files");

  // check-hypothesis
  auto* chk = app.add_subcommand("check-hypothesis", "Four-point selection hypothesis; exit 0 iff it holds");
  Common chk_c;
  std::size_t max_subset = 4;
  double bound = 1.0;
  add_common(chk, chk_c, false);
  chk->add_option("--subset", max_subset, "Largest subset size checked");
  chk->add_option("--bound", bound, "Seminorm bound on each subset");

  // refine
  auto* ref = app.add_subcommand("refine", "Write the refinement iterates");
  Common ref_c;
  std::size_t steps = 2;
  add_common(ref, ref_c, true);
  ref->add_option("--steps", steps, "Number of refinement steps");

  // certify
  auto* cert = app.add_subcommand("certify", "Refine twice and certify the core; exit 0 iff valid");
  Common cert_c;
  double tolerance = 0.0;
  add_common(cert, cert_c, true);
  cert->add_option("--tolerance", tolerance, "Extra allowance on gamma");

  // select
  auto* sel = app.add_subcommand("select", "Steiner-point selection of the core");
  Common sel_c;
  add_common(sel, sel_c, true);

  // run: whole pipeline on one instance
  auto* run = app.add_subcommand("run", "Full pipeline on one instance, written as a report");
  Common run_c;
  bool run_hyp = false;
  add_common(run, run_c, true);
  run->add_flag("--check-hypothesis", run_hyp, "Also check the four-point hypothesis");

  // theorems
  auto* thm = app.add_subcommand("theorems", "Randomized property suites; exit 0 iff all pass");
  std::string suite = "all";
  std::size_t trials = 500;
  std::uint64_t thm_seed = 1;
  thm->add_option("--suite", suite, "ns | cpr | pf3 | c123 | squareness | helly | all");
  thm->add_option("--trials", trials, "Trials per suite (samples per beta for squareness)");
  thm->add_option("--seed", thm_seed, "Seed");

  // report
  auto* rep = app.add_subcommand("report", "Aggregate JSON reports into CSV");
  std::vector<std::string> rep_in;
  std::string rep_out;
  rep->add_option("reports", rep_in, "Report JSON files (objects or arrays)")->required();
  rep->add_option("-o,--out", rep_out, "CSV output (default stdout)");

  // batch
  auto* bat = app.add_subcommand("batch", "Run presets x seeds from a config file");
  std::string bat_in, bat_out, bat_csv;
  bat->add_option("config", bat_in, "Batch config JSON")->required();
  bat->add_option("-o,--out", bat_out, "Report JSON output (default stdout)");
  bat->add_option("--csv", bat_csv, "Also write CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kMalformed;
  }

  try {
    if (*gen) {
      if (n == 0) throw MalformedInput("--n must be positive");
      if (count > 1 && out_dir.empty()) throw MalformedInput("--count needs --out-dir");
      for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t s = seed + i;
        InstanceFile f;
        if (!preset.empty()) {
          const auto& p = find_preset(preset);
          if (adversarial && p.bodies != BodyKind::kPolygon) throw MalformedInput("adversarial needs polygon bodies");
          if (adversarial) {
            f = to_file(adversarial_instance(preset_config(p, n, s)).instance);
            f.preset = p.name;
            f.seed = s;
            f.lambdas = p.lambdas;
            f.gamma = p.gamma;
          } else {
            f = p.bodies == BodyKind::kInterval ? to_file(interval_instance(preset_config(p, n, s)), p.name)
                                                : to_file(generate(p, n, s));
          }
        } else {
          GeneratorConfig cfg;
          cfg.n = n;
          cfg.seed = s;
          cfg.ngon = ngon;
          cfg.norm = norm_kind(norm);
          cfg.metric = metric_kind(metric);
          if (bodies == "interval") {
            f = to_file(interval_instance(cfg), "");
          } else if (adversarial) {
            f = to_file(adversarial_instance(cfg).instance);
            f.seed = s;
          } else if (bodies == "segment") {
            f = to_file(segment_instance(cfg));
          } else if (bodies == "polygon") {
            f = to_file(hidden_selection_instance(cfg));
          } else {
            throw MalformedInput("unknown body kind: " + bodies);
          }
        }
        if (out_dir.empty()) {
          emit(out, to_json(f));
        } else {
          std::filesystem::create_directories(out_dir);
          const std::string name = (f.preset.empty() ? std::string("instance") : f.preset) + "_" + std::to_string(s);
          write_json_file((std::filesystem::path(out_dir) / (name + ".json")).string(), to_json(f));
        }
      }
      return kYes;
    }

    if (*chk) {
      const auto f = chk_c.load();
      HypothesisResult h;
      if (f.interval_valued) {
        // embed intervals on the axis of l-infinity
        h = check_hypothesis(embed_on_axis(f.interval_values(), f.space), max_subset, bound);
      } else {
        h = check_hypothesis(f.map(), max_subset, bound);
      }
      Json j;
      j["holds"] = h.ok;
      j["indeterminate"] = h.indeterminate;
      j["subsets_checked"] = h.subsets_checked;
      Json failing = Json::array();
      for (auto i : h.failing_subset) failing.push_back(f.space.labels()[i]);
      j["failing_subset"] = failing;
      emit(chk_c.out, j);
      if (h.indeterminate) return kIndeterminate;
      return h.ok ? kYes : kNo;
    }

    if (*ref) {
      const auto f = ref_c.load();
      const auto lambdas = lambdas_for(f, ref_c.options());
      Json iterates = Json::array();
      if (f.interval_valued) {
        if (steps > 1) throw MalformedInput("interval maps refine in one step");
        InstanceFile r1 = f;
        r1.intervals.clear();
        for (const auto& k : interval_refinement(f.interval_values(), f.space, lambdas.at(0))) r1.intervals.push_back(k);
        iterates.push_back(to_json(f));
        if (steps == 1) iterates.push_back(to_json(r1));
      } else {
        const auto chain = iterate(f.map(), RefinementSchedule{lambdas, 1.0}, steps);
        for (const auto& m : chain) {
          auto fi = to_file(m);
          fi.preset = f.preset;
          fi.seed = f.seed;
          iterates.push_back(to_json(fi));
        }
      }
      emit(ref_c.out, iterates);
      return kYes;
    }

    if (*cert) {
      const auto f = cert_c.load();
      const auto o = cert_c.options();
      const auto lambdas = lambdas_for(f, o);
      const double gamma = gamma_for(f, o);
      Json j;
      bool valid = false;
      if (f.interval_valued) {
        const auto f1 = interval_refinement(f.interval_values(), f.space, lambdas.at(0));
        std::vector<Interval> values;
        for (const auto& k : f1)
          if (k) values.push_back(*k);
        const bool nonempty = values.size() == f1.size();
        const auto c = nonempty ? interval_core_check(values, f.space, gamma + tolerance) : IntervalCoreCheck{false, 0};
        valid = nonempty && c.ok;
        j = {{"gamma", gamma}, {"nonempty", nonempty}, {"max_ratio", c.max_ratio}, {"valid", valid}};
      } else {
        const auto m = f.map();
        const RefinementSchedule sched{lambdas, gamma};
        sched.check(true);
        const auto chain = iterate(m, sched, 2);
        const double allowance = certificate_allowance(*m.norm, gamma) + tolerance;
        const auto c = certify_core(m, chain[2], gamma, allowance);
        valid = c.valid();
        j["gamma"] = gamma;
        j["gamma_allowance"] = allowance;
        j["nonempty"] = c.nonempty;
        j["subset_containment"] = c.subset_containment;
        j["max_ratio"] = std::isinf(c.max_ratio) ? Json("inf") : Json(c.max_ratio);
        if (c.worst_pair)
          j["worst_pair"] = {f.space.labels()[c.worst_pair->first], f.space.labels()[c.worst_pair->second]};
        if (c.witness_point) j["witness_point"] = f.space.labels()[*c.witness_point];
        j["valid"] = valid;
      }
      emit(cert_c.out, j);
      return valid ? kYes : kNo;
    }

    if (*sel) {
      const auto f = sel_c.load();
      const auto m = f.map();
      const auto lambdas = lambdas_for(f, sel_c.options());
      const auto chain = iterate(m, RefinementSchedule{lambdas, 1.0}, 2);
      try {
        const auto s = steiner_selection(chain[2]);
        emit(sel_c.out, {{"selection", label_points(f.space, s.values)}, {"seminorm", s.seminorm}});
        return kYes;
      } catch (const CertificationFailed& e) {
        std::cerr << e.what() << '\n';
        return kNo;
      }
    }

    if (*run) {
      const auto f = run_c.load();
      auto o = run_c.options();
      o.check_hypothesis = run_hyp;
      const auto r = run_pipeline(f, o);
      emit(run_c.out, to_json(r));
      if (r.status == "ERROR") {
        std::cerr << r.error << '\n';
        return kMalformed;
      }
      if (r.indeterminate) return kIndeterminate;
      return r.status == "PASS" ? kYes : kNo;
    }

    if (*thm) {
      const auto results = run_suite(suite, trials, thm_seed);
      bool all = true;
      for (const auto& r : results) {
        std::printf("%-40s %s  passed %zu  vacuous %zu  of %zu  worst margin %.3g  %s\n", r.name.c_str(),
                    r.ok() ? "PASS" : "FAIL", r.passed, r.vacuous, r.trials, r.worst_margin, r.note.c_str());
        all = all && r.ok();
      }
      return all ? kYes : kNo;
    }

    if (*rep) {
      std::vector<InstanceReport> reports;
      for (const auto& path : rep_in) {
        const auto j = read_input(path);
        if (j.is_array())
          for (const auto& e : j) reports.push_back(report_from_json(e));
        else
          reports.push_back(report_from_json(j));
      }
      const auto csv = reports_to_csv(reports);
      if (rep_out.empty() || rep_out == "-") {
        std::cout << csv;
      } else {
        std::ofstream o(rep_out);
        o << csv;
      }
      return kYes;
    }

    if (*bat) {
      const auto config = batch_from_json(read_input(bat_in));
      const auto reports = batch_run(config, batch_threads());
      Json j = Json::array();
      bool all = true, indeterminate = false;
      for (const auto& r : reports) {
        j.push_back(to_json(r));
        all = all && r.status == "PASS";
        indeterminate = indeterminate || r.indeterminate;
      }
      emit(bat_out, j);
      if (!bat_csv.empty()) {
        std::ofstream o(bat_csv);
        o << reports_to_csv(reports);
      }
      if (indeterminate) return kIndeterminate;
      return all ? kYes : kNo;
    }
  } catch (const MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMalformed;
  }
  return kYes;
}
