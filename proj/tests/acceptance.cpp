// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are pinned below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "grid_oracle.hpp"
#include "lipcore/gen.hpp"
#include "lipcore/report.hpp"
#include "lipcore/theorems.hpp"
#include "orbit_oracle.hpp"

using namespace lipcore;

namespace {

constexpr double kEps = 1e-7;              // certificate and inclusion slack
constexpr double kStabilization = 1e-6;    // defect allowed after one more refinement
constexpr double kSelectionFactor = 10.0;  // seminorm ceiling in units of gamma
constexpr double kSquarenessBand = 0.02;   // relative band below psi for the 64-gon
constexpr double kIntervalTolerance = 1e-12;
constexpr std::size_t kSquarenessSamples = 100000;

int failures = 0;

void line(bool ok, int id, const std::string& what, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Sweep {
  std::string preset;
  std::size_t count = 0;
  std::size_t nonempty = 0;
  std::size_t valid = 0;
  std::size_t errors = 0;
  double max_ratio = 0.0;
  double gamma = 0.0;
  double allowance = 0.0;
  // over certified instances
  std::size_t stable = 0;
  double max_defect = 0.0;
  std::size_t selections_ok = 0;
  double max_selection_ratio = 0.0;
  double seconds = 0.0;
};

Sweep sweep(const std::string& preset, std::size_t count, std::size_t n_min, std::size_t n_span) {
  BatchConfig cfg;
  for (std::uint64_t seed = 1; seed <= count; ++seed) cfg.runs.push_back({preset, n_min + seed % n_span, {seed}});
  const auto t0 = std::chrono::steady_clock::now();
  const auto reports = batch_run(cfg, batch_threads());
  Sweep s;
  s.preset = preset;
  s.count = reports.size();
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& r : reports) {
    if (r.status == "ERROR") {
      ++s.errors;
      std::printf("     %s seed %llu: %s\n", preset.c_str(), static_cast<unsigned long long>(r.seed), r.error.c_str());
      continue;
    }
    s.gamma = r.gamma;
    s.allowance = std::max(s.allowance, r.gamma_allowance);
    const bool ne = !r.nonempty.empty() && r.nonempty.back();
    if (ne) ++s.nonempty;
    s.max_ratio = std::max(s.max_ratio, r.max_ratio);
    const bool valid = ne && r.max_ratio <= r.gamma + r.gamma_allowance + kEps && r.certificate_valid;
    if (!valid) continue;
    ++s.valid;
    if (r.stabilization_defect) {
      s.max_defect = std::max(s.max_defect, *r.stabilization_defect);
      if (*r.stabilization_defect <= kStabilization) ++s.stable;
    }
    if (r.selection_seminorm && r.selection_offset) {
      const double q = *r.selection_seminorm / r.gamma;
      s.max_selection_ratio = std::max(s.max_selection_ratio, q);
      if (q <= kSelectionFactor && *r.selection_offset <= kEps) ++s.selections_ok;
    }
  }
  return s;
}

bool certified(const Sweep& s) { return s.errors == 0 && s.nonempty == s.count && s.valid == s.count; }

std::string describe(const Sweep& s) {
  return fmt("%s %zu/%zu F2 nonempty, %zu/%zu valid at gamma %g (allowance %.3g), max ratio %.4f, %.1fs",
             s.preset.c_str(), s.nonempty, s.count, s.valid, s.count, s.gamma, s.allowance, s.max_ratio, s.seconds);
}

std::string suite_summary(const std::vector<SuiteResult>& results, bool& ok) {
  std::string out;
  ok = !results.empty();
  for (const auto& r : results) {
    ok = ok && r.ok();
    out += fmt("\n     %-40s %s %zu passed %zu vacuous of %zu, worst margin %.3g", r.name.c_str(),
               r.ok() ? "ok  " : "FAIL", r.passed, r.vacuous, r.trials, r.worst_margin);
  }
  return out;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::printf("acceptance run, %u threads\n", batch_threads());

  // 1-4: core certification sweeps
  const auto linf = sweep("linf", 1000, 5, 36);
  line(certified(linf) && linf.seconds < 300.0, 1, "l-infinity core certification", describe(linf));

  const auto general = sweep("general2d", 300, 5, 20);
  line(certified(general), 2, "random hexagon norms", describe(general));

  const auto euclid = sweep("euclid", 300, 5, 20);
  const auto submetric = sweep("euclid-submetric", 300, 5, 20);
  line(certified(euclid) && certified(submetric), 3, "Euclidean 64-gon and Euclidean submetrics",
       describe(euclid) + "; " + describe(submetric));

  const auto seg = sweep("segments", 300, 5, 20);
  const auto seg_eu = sweep("segments-euclid", 300, 5, 20);
  line(certified(seg) && certified(seg_eu), 4, "segment-valued maps", describe(seg) + "; " + describe(seg_eu));

  const std::vector<const Sweep*> all = {&linf, &general, &euclid, &submetric, &seg, &seg_eu};

  // 5: stabilization
  {
    std::size_t certified_count = 0, stable = 0;
    double worst = 0.0;
    for (const auto* s : all) {
      certified_count += s->valid;
      stable += s->stable;
      worst = std::max(worst, s->max_defect);
    }
    line(stable == certified_count && certified_count > 0, 5, "stabilization at lambda = gamma",
         fmt("%zu/%zu certified instances stable, max defect %.3g (tolerance %.0e)", stable, certified_count, worst,
             kStabilization));
  }

  // 6: selections
  {
    std::size_t certified_count = 0, ok = 0;
    double worst = 0.0;
    std::string per;
    for (const auto* s : all) {
      certified_count += s->valid;
      ok += s->selections_ok;
      worst = std::max(worst, s->max_selection_ratio);
      per += fmt(" %s %.3f", s->preset.c_str(), s->max_selection_ratio);
    }
    line(ok == certified_count && certified_count > 0, 6, "Steiner selections",
         fmt("%zu/%zu inside F and seminorm <= %g gamma; max seminorm/gamma %.4f (", ok, certified_count,
             kSelectionFactor, worst) +
             per.substr(1) + ")");
  }

  // 7: neighborhood inclusion and the counterexample
  {
    bool ok = false;
    const auto detail = suite_summary(neighborhood_suite(500, 7), ok);
    const double depth = counterexample_cpr(100.0);
    line(ok && depth > 0.0, 7, "neighborhood-of-intersection sweep",
         fmt("counterexample depth at r/s = 100: %.6g", depth) + detail);
  }

  // 8: three-set inclusions
  {
    bool ok_a = false, ok_b = false;
    const auto a = suite_summary(pf3_suite(500, 8), ok_a);
    const auto b = suite_summary(c123_suite(500, 8), ok_b);
    line(ok_a && ok_b, 8, "three-set inclusion sweeps", "500 trials each" + a + b);
  }

  // 9: modulus of squareness
  {
    const auto t0 = std::chrono::steady_clock::now();
    bool ngon_ok = true, phi_ok = true;
    std::string detail;
    const auto ngon = PolygonalNorm::euclidean(64);
    std::mt19937_64 rng(9);
    const auto hexagon = random_hexagon_norm(rng);
    const PolygonalNorm linf_norm = PolygonalNorm::linf();
    for (int i = 1; i <= 9; ++i) {
      const double beta = i / 10.0;
      const double psi = psi_euclidean(beta), phi = phi_bound(beta);
      const double xi_ngon = modulus_of_squareness(ngon, beta, kSquarenessSamples, 100 + i);
      const double xi_linf = modulus_of_squareness(linf_norm, beta, kSquarenessSamples, 200 + i);
      const double xi_hex = modulus_of_squareness(hexagon, beta, kSquarenessSamples, 300 + i);
      const bool in_band = xi_ngon <= psi + kEps && xi_ngon >= (1.0 - kSquarenessBand) * psi;
      ngon_ok = ngon_ok && in_band;
      phi_ok = phi_ok && xi_linf <= phi + kEps && xi_hex <= phi + kEps;
      detail += fmt("\n     beta %.1f  64-gon %.5f vs psi %.5f (%+.2f%%)%s, 64-gon bound %.5f  linf %.5f  hexagon %.5f  phi %.5f",
                    beta, xi_ngon, psi, 100.0 * (xi_ngon / psi - 1.0), in_band ? "" : " out of band",
                    psi_polygonal(beta, 64), xi_linf, xi_hex, phi);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    line(ngon_ok && phi_ok && secs < 60.0, 9, "modulus of squareness",
         fmt("64-gon within %g%% below psi: %s; linf and hexagon under phi: %s; %.1fs", 100 * kSquarenessBand,
             ngon_ok ? "yes" : "no", phi_ok ? "yes" : "no", secs) +
             detail);
  }

  // 10: oracle equivalence
  {
    std::mt19937_64 rng(10);
    int feasible = 0, disagreements = 0, indeterminate = 0;
    for (int t = 0; t < 200; ++t) {
      const auto inst = testing::small_instance(rng, t);
      const auto lp = subset_feasible(inst.bodies, inst.rho, 1.0, inst.norm);
      if (lp.indeterminate) ++indeterminate;
      const auto grid = testing::grid_feasible(inst.bodies, inst.rho, 1.0, inst.norm, 0.05);
      if (lp.feasible) ++feasible;
      if (lp.feasible ? !grid.relaxed : grid.strict) ++disagreements;
    }
    int orbit_checked = 0, orbit_ok = 0;
    const char* names[] = {"linf", "general2d", "euclid-submetric", "euclid", "linf"};
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto inst = generate(find_preset(names[seed % 5]), 3 + seed % 6, seed);
      const auto chain = iterate(inst.map, RefinementSchedule{inst.lambdas, inst.gamma}, 2);
      bool same = true;
      for (std::size_t x = 0; x < inst.map.size(); ++x) {
        const auto t = testing::orbit_refinement(inst, x);
        const auto& f2 = chain[2].bodies[x];
        if (!t.body || !f2) {
          same = same && !t.whole_plane && !t.body && !f2;
          continue;
        }
        same = same && contains(*t.body, *f2, kEps) && contains(*f2, *t.body, kEps);
      }
      ++orbit_checked;
      if (same) ++orbit_ok;
    }
    line(disagreements == 0 && indeterminate == 0 && orbit_ok == orbit_checked, 10, "oracle equivalence",
         fmt("lattice search vs LP on 200 four-point instances (%d feasible): %d disagreements, %d indeterminate; "
             "orbit identity %d/%d instances",
             feasible, disagreements, indeterminate, orbit_ok, orbit_checked));
  }

  // 11: intervals
  {
    const auto& p = find_preset("intervals");
    int nonempty = 0, ok = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      const auto inst = interval_instance(preset_config(p, 2 + seed % 39, seed));
      const auto f1 = interval_refinement(inst.sets, inst.space, 1.0);
      std::vector<Interval> values;
      for (const auto& k : f1)
        if (k) values.push_back(*k);
      if (values.size() != f1.size()) continue;
      ++nonempty;
      double excess = 0.0;
      for (std::size_t x = 0; x < values.size(); ++x)
        for (std::size_t y = x + 1; y < values.size(); ++y) {
          const double d = inst.space(x, y);
          if (std::isinf(d)) continue;
          excess = std::max(excess, interval_hausdorff(values[x], values[y]) - d);
        }
      worst = std::max(worst, excess);
      if (excess <= kIntervalTolerance) ++ok;
    }
    line(nonempty == 1000 && ok == 1000, 11, "interval maps, lambda = gamma = 1",
         fmt("%d/1000 F1 nonempty, %d/1000 Lipschitz at gamma 1, worst excess over rho %.3g (tolerance %.0e)",
             nonempty, ok, worst, kIntervalTolerance));
  }

  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 11 criteria failed, %.1fs\n", failures, total);
  return failures == 0 ? 0 : 1;
}
