// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [work_dir]
//
// The baseline runs go through the command-line driver so that the
// determinism check compares the files a user would get.

#include <json.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stratlab/csv.hpp"
#include "stratlab/decay_lemmas.hpp"
#include "stratlab/manufactured.hpp"
#include "stratlab/rearrangement.hpp"
#include "stratlab/scenarios.hpp"
#include "stratlab/series.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace stratlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct BaselineRun {
  std::string preset;
  std::string label;
  bool ok = false;
  std::string error;
  json summary;
  std::vector<DiagnosticsRecord> records;
  std::size_t n2 = 0;
  bool deterministic = false;
};

int run_cli(const fs::path& work, const std::string& args, const std::string& log) {
  const std::string cmd =
      "cd '" + work.string() + "' && '" STRATLAB_CLI "' " + args + " > '" + log + "' 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::vector<DiagnosticsRecord> load_records(const fs::path& csv) {
  const CsvTable t = read_csv_file(csv);
  std::vector<DiagnosticsRecord> out;
  const auto col = [&](const char* name) { return t.column(name); };
  const auto tt = col("t"), E = col("E"), K = col("K"), u2 = col("u2_l2sq");
  for (std::size_t k = 0; k < tt.size(); ++k) {
    DiagnosticsRecord r;
    r.t = tt[k];
    r.E = E[k];
    r.K = K[k];
    r.u2_l2sq = u2[k];
    out.push_back(r);
  }
  return out;
}

BaselineRun run_baseline(const fs::path& work, const std::string& preset, const std::string& label) {
  BaselineRun b;
  b.preset = preset;
  b.label = label;
  b.n2 = find_preset(preset).config.n2;
  std::fprintf(stderr, "running %s (threads 1 and 2)...\n", preset.c_str());
  const auto t0 = Clock::now();
  const std::string d1 = preset + "-t1", d2 = preset + "-t2";
  const int rc1 = run_cli(work, "--threads 1 run --preset " + preset + " --out " + d1, d1 + ".log");
  const int rc2 = run_cli(work, "--threads 2 run --preset " + preset + " --out " + d2, d2 + ".log");
  std::fprintf(stderr, "  %s done in %.0f s (exit %d, %d)\n", preset.c_str(), seconds_since(t0), rc1, rc2);
  // Exit 3 only means a property tag failed; the outputs are complete.
  if ((rc1 != 0 && rc1 != 3) || (rc2 != 0 && rc2 != 3)) {
    b.error = "driver exit " + std::to_string(rc1) + "/" + std::to_string(rc2);
    return b;
  }
  try {
    b.summary = json::parse(slurp(work / d1 / "summary.json"));
    b.records = load_records(work / d1 / "diagnostics.csv");
    const std::string a = slurp(work / d1 / "diagnostics.csv");
    b.deterministic = !a.empty() && a == slurp(work / d2 / "diagnostics.csv");
    b.ok = b.summary["status"] == "completed";
    if (!b.ok) b.error = "status " + b.summary["status"].get<std::string>();
  } catch (const std::exception& e) {
    b.error = e.what();
  }
  return b;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  for (Model m : {Model::IPM, Model::Stokes})
    for (int fd : {2, 4}) {
      const double floor = fd == 2 ? 1.9 : 3.7;
      double worst = 1e300;
      for (const ConvergenceRow& r : convergence_study(m, fd, 3))
        if (r.order != 0.0) worst = std::min(worst, r.order);
      o.require(worst >= floor, std::string(model_name(m)) + " fd" + std::to_string(fd) + " order " + fmt("%.2f", worst));
    }
  const double secs = seconds_since(t0);
  o.require(secs < 10.0, fmt("%.2f s", secs));
  return o;
}

Outcome per_baseline(const std::vector<BaselineRun>& runs, const std::function<void(const BaselineRun&, Outcome&)>& f) {
  Outcome o;
  for (const BaselineRun& b : runs) {
    if (!b.ok) {
      o.require(false, b.label + ": " + b.error);
      continue;
    }
    f(b, o);
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  double worst = 0.0;
  int energy_bad = 0, idem_bad = 0;
  const std::vector<std::pair<std::size_t, std::size_t>> sizes{{32, 65}, {64, 129}, {16, 33}, {48, 97}, {32, 257}};
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto [n1, n2] = sizes[seed % sizes.size()];
    const Grid g(n1, n2);
    const ScalarField f = oracle::random_smooth(g, seed, 0.05 + 0.02 * static_cast<double>(seed));
    const Profile fs_ = vertical_rearrangement(f);
    const std::vector<double> ref = oracle::sort_and_stack(f);
    double d = 0.0;
    for (std::size_t j = 0; j < n2; ++j) d = std::max(d, std::abs(fs_[j] - ref[j]));
    worst = std::max(worst, d * static_cast<double>(n2) / 2.0);
    if (interpolant_potential_energy(f) < rearranged_potential_energy(f)) ++energy_bad;
    const Profile twice = vertical_rearrangement(fs_.lift());
    if (twice.values() != fs_.values()) ++idem_bad;
  }
  o.require(worst <= 1.0, "max |f* - oracle| = " + fmt("%.3f", worst) + " x 2/n2");
  o.require(energy_bad == 0, std::to_string(energy_bad) + " energy violations");
  o.require(idem_bad == 0, std::to_string(idem_bad) + " non-idempotent");
  return o;
}

Outcome criterion7() {
  Outcome o;
  // Gradient ratio floor, fixed in advance for the whole family.
  constexpr double kGradientFloor = 0.1;
  for (const char* name : {"ipm-baseline", "stokes-baseline"}) {
    const RunConfig& c = find_preset(name).config;
    const Grid g(c.n1, c.n2, c.fd_order);
    const StratifiedProfile rho_s = make_profile(g, c.ic.rho_s);
    double rlo = 1e300, rhi = 0.0, glo = 1e300, worst_gap = 0.0;
    bool valid = true;
    for (double eps : {0.01, 0.05, 0.1}) {
      InitialCondition ic = c.ic;
      ic.epsilon = eps;
      const ScalarField f = make_perturbation(g, ic) + rho_s.rho.lift();
      const EnergyGap e = energy_gap(f);
      rlo = std::min(rlo, e.ratio);
      rhi = std::max(rhi, e.ratio);
      glo = std::min(glo, check_gradient_bound(f));
      const LevelDecomposition d = decompose_levels(f, rho_s.rho);
      valid = valid && d.valid;
      if (d.valid) worst_gap = std::max(worst_gap, std::abs(e.gap - d.half_h2) / e.gap);
    }
    const std::string tag = c.model == Model::IPM ? "ipm" : "stokes";
    o.require(rlo >= 0.05 && rhi <= 20.0, tag + " ratio in [" + fmt("%.3g", rlo) + ", " + fmt("%.3g", rhi) + "]");
    o.require(rhi <= 2.0 * rlo, tag + " spread " + fmt("%.3f", rhi / rlo));
    o.require(glo >= kGradientFloor, tag + " grad ratio >= " + fmt("%.3g", glo));
    o.require(valid && worst_gap <= 0.1, tag + " |gap - h2/2|/gap " + fmt("%.2e", worst_gap));
  }
  return o;
}

Trajectory sample(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  std::vector<double> t(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = f(t[i]);
  }
  return Trajectory(t, v);
}

Outcome criterion8(const std::vector<BaselineRun>& runs) {
  Outcome o;
  const auto t0 = Clock::now();

  const auto f21 = sample([](double t) { return 1 / (1 + t); }, 0, 20, 201);
  const auto one = sample([](double) { return 1.0; }, 0, 20, 201);
  const auto l21 = lemma21_bound(f21, one, 1.0, 2.0);
  o.require(l21.verdict == Verdict::holds && l21.margin > 0, "21 fixture margin " + fmt("%.3g", l21.margin));
  o.require(lemma21_bound(f21, one, 1.0, 1.5).verdict == Verdict::not_applicable, "21 adversarial n/a");

  const double n = 2.0;
  const auto f = sample([&](double t) { return std::pow(t, -n); }, 0.5, 40, 4000);
  const auto g = sample([&](double t) { return n * std::pow(t, -n - 1); }, 0.5, 40, 4000);
  const auto h = sample([&](double t) { return n * (n + 1) * std::pow(t, -n - 2); }, 0.5, 40, 4000);
  const auto l22 = lemma22_check(f, g, h, n, 1.0);
  o.require(l22.g == Verdict::holds && l22.h == Verdict::holds && l22.g_margin > 0 && l22.h_margin > 0,
            "22 fixture margins " + fmt("%.3g", l22.g_margin) + "/" + fmt("%.3g", l22.h_margin));
  std::vector<double> gv = g.values();
  gv[gv.size() / 2] *= 1e6;
  const auto l22b = lemma22_check(f, Trajectory(g.times(), gv), h, n, 1.0);
  o.require(l22b.g == Verdict::not_applicable && l22b.h == Verdict::not_applicable, "22 adversarial n/a");

  const double E = 0.8, Eavg = 2 * E * (std::pow(2.0, n - 1) - 1) / (n - 1) * (1 + 1e-4);
  const auto f23 = sample([&](double t) { return E * std::pow(t, -n); }, 0.5, 64, 20000);
  const auto l23 = lemma23_check(f23, n, Eavg, 1.0);
  o.require(l23.verdict == Verdict::holds && l23.bound > l23.integral,
            "23 fixture margin " + fmt("%.3g", (l23.bound - l23.integral) / l23.bound));
  const auto slow = sample([&](double t) { return E * std::pow(t, -n / 2); }, 0.5, 64, 20000);
  o.require(lemma23_check(slow, n, Eavg, 1.0).verdict == Verdict::not_applicable, "23 adversarial n/a");
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "fixtures " + fmt("%.2f s", secs));

  for (const BaselineRun& b : runs) {
    if (!b.ok) {
      o.require(false, b.label + ": " + b.error);
      continue;
    }
    constexpr double t_min = 10.0;
    const PowerFit fit = fit_power_law(series_of(b.records, &DiagnosticsRecord::E), t_min, b.records.back().t);
    const CascadeCheck c = cascade_check(b.records, t_min, -fit.exponent, 1.0);
    o.require(c.result.g == Verdict::holds && c.result.h == Verdict::holds,
              b.label + " cascade n=" + fmt("%.2f", c.n) + " " + verdict_name(c.result.g) + "/" +
                  verdict_name(c.result.h));
  }
  return o;
}

void report(int k, const Outcome& o, int& failures) {
  std::printf("criterion %2d: %s  %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "stratlab_acceptance";
  fs::create_directories(work);
  int failures = 0;

  report(1, criterion1(), failures);

  const std::vector<BaselineRun> runs{run_baseline(work, "ipm-baseline", "ipm"),
                                      run_baseline(work, "stokes-baseline", "stokes")};

  report(2, per_baseline(runs, [](const BaselineRun& b, Outcome& o) {
           const double r = b.summary["residuals"]["max_resid_E"];
           o.require(r <= 1e-3, b.label + " max |dE/dt + K|/K = " + fmt("%.2e", r));
         }), failures);

  report(3, per_baseline(runs, [](const BaselineRun& b, Outcome& o) {
           const int ev = b.summary["monotonicity"]["E_violations"], kv = b.summary["monotonicity"]["K_violations"];
           o.require(ev == 0 && kv == 0, b.label + " violations E " + std::to_string(ev) + ", K " + std::to_string(kv));
         }), failures);

  report(4, per_baseline(runs, [](const BaselineRun& b, Outcome& o) {
           const double r = b.summary["residuals"]["max_resid_K"];
           o.require(r <= 5e-3, b.label + " max |dK/dt - d2E|/|d2E| = " + fmt("%.2e", r));
         }), failures);

  report(5, per_baseline(runs, [](const BaselineRun& b, Outcome& o) {
           const json& fits = b.summary["fits"];
           if (fits["E"].is_null() || fits["E_time_avg"].is_null() || fits["K_time_avg"].is_null()) {
             o.require(false, b.label + " fits missing");
             return;
           }
           const double pE = fits["E"]["exponent"];
           const double aE = fits["E_time_avg"]["exponent"], aK = fits["K_time_avg"]["exponent"];
           o.require(pE <= -2.0, b.label + " E exponent " + fmt("%.3f", pE));
           o.require(aK <= aE - 0.8, b.label + " averaged K " + fmt("%.3f", aK) + " vs E " + fmt("%.3f", aE));
         }), failures);

  report(6, criterion6(), failures);
  report(7, criterion7(), failures);
  report(8, criterion8(runs), failures);

  report(9, per_baseline(runs, [](const BaselineRun& b, Outcome& o) {
           o.require(b.deterministic, b.label + (b.deterministic ? " identical" : " differs") + " for 1 vs 2 threads");
         }), failures);

  report(10, per_baseline(runs, [](const BaselineRun& b, Outcome& o) {
            const json& drift = b.summary["rearrangement_drift"];
            if (drift.empty() || std::abs(drift.back()["t"].get<double>() - 50.0) > 1e-9) {
              o.require(false, b.label + " no drift sample at t = 50");
              return;
            }
            const double d = drift.back()["sup"];
            const double lim = 5.0 / static_cast<double>(b.n2);
            o.require(d <= lim, b.label + " sup|rho* - rho0*| = " + fmt("%.2e", d) + " <= " + fmt("%.3g", lim));
          }), failures);

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
