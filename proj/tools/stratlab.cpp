// Command-line driver.
//
// Exit codes: 0 success, 1 configuration or input error, 2 guard or
// numerical abort (partial outputs written), 3 property failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stratlab/config.hpp"
#include "stratlab/csv.hpp"
#include "stratlab/decay_lemmas.hpp"
#include "stratlab/diagnostics.hpp"
#include "stratlab/kernels.hpp"
#include "stratlab/manufactured.hpp"
#include "stratlab/parallel.hpp"
#include "stratlab/rearrangement.hpp"
#include "stratlab/scenarios.hpp"
#include "stratlab/series.hpp"
#include "stratlab/snapshot.hpp"

#ifndef STRATLAB_VERSION
#define STRATLAB_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace stratlab;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kAbort = 2;
constexpr int kPropertyFailure = 3;

struct Common {
  int threads = 0;
  std::string kernels;
  int verbosity = 1;
};

struct RunArgs {
  std::string preset;
  std::string config;
  std::string out = "out";
  std::vector<std::string> sets;
  std::size_t snapshots_every = 0;
  std::optional<std::uint64_t> seed;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void apply_common(const Common& c) {
  set_threads(c.threads);
  if (!c.kernels.empty()) {
    kernels::Isa isa;
    if (!kernels::parse_isa(c.kernels, isa)) throw UsageError("unknown kernel set '" + c.kernels + "'");
    if (!kernels::set_isa(isa)) throw UsageError("kernel set '" + c.kernels + "' is not available on this CPU");
  }
}

json fit_json(const std::optional<PowerFit>& f) {
  if (!f) return nullptr;
  return {{"exponent", f->exponent}, {"prefactor", f->prefactor}, {"r2", f->r2}, {"points", f->points}};
}

std::string status_name(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::guard_stop: return "guard_stop";
    case RunStatus::numerical_abort: return "numerical_abort";
  }
  return "?";
}

Metadata run_metadata(const RunConfig& cfg) {
  Metadata m{{"version", STRATLAB_VERSION},
             {"preset", cfg.preset.empty() ? "-" : cfg.preset},
             {"grid", std::to_string(cfg.n1) + "x" + std::to_string(cfg.n2)},
             {"seed", std::to_string(cfg.ic.seed)}};
  for (auto& [k, v] : config_entries(cfg))
    if (k != "preset") m.emplace_back("config." + k, v);
  return m;
}

int cmd_run(const RunArgs& a, const Common& common) {
  RunConfig cfg;
  std::vector<std::string> expected;
  try {
    apply_common(common);
    std::vector<std::pair<std::string, std::string>> entries;
    if (!a.config.empty()) entries = read_config_file(a.config);
    std::string preset = a.preset;
    if (preset.empty())
      for (auto& [k, v] : entries)
        if (k == "preset") preset = v;
    if (preset.empty() && a.config.empty()) throw UsageError("run needs --preset or --config");
    if (!preset.empty()) {
      const Preset& p = find_preset(preset);
      cfg = p.config;
      expected = p.expected;
    }
    for (auto& [k, v] : entries)
      if (k != "preset") apply_setting(cfg, k, v);
    for (const auto& s : a.sets) {
      auto [k, v] = split_assignment(s);
      apply_setting(cfg, k, v);
    }
    if (a.seed) cfg.ic.seed = *a.seed;
    cfg.validate();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  }

  std::optional<SimState> state;
  try {
    state.emplace(build_state(cfg));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  }

  const fs::path out(a.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) {
    std::fprintf(stderr, "cannot create %s: %s\n", out.c_str(), ec.message().c_str());
    return kConfigError;
  }

  const double theta0_l2 = norm_l2(state->theta);
  RunObserver obs;
  const std::size_t total = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.sample_dt));
  obs.on_sample = [&](const SimState& s, const DiagnosticsRecord& r, std::size_t m) {
    if (a.snapshots_every && m % a.snapshots_every == 0) {
      char name[32];
      std::snprintf(name, sizeof name, "snap_%06zu.bin", m);
      write_snapshot(out / name, s.theta + s.rho_s.rho.lift());
    }
    if (common.verbosity >= 2 && m % 100 == 0)
      std::fprintf(stderr, "sample %zu/%zu  t=%.4g  E=%.6e  K=%.6e\n", m, total, r.t, r.E, r.K);
  };
  const RunResult res = run(cfg, std::move(*state), obs);

  {
    std::ofstream csv(out / "diagnostics.csv", std::ios::binary);
    write_diagnostics_csv(csv, res.records, run_metadata(cfg));
  }

  const SeriesReport rep = analyze_series(res.records, theta0_l2);
  const auto tags = check_tags(expected, res.records, rep);
  bool all_pass = true;
  json props = json::object();
  for (auto& [tag, ok] : tags) {
    props[tag] = ok;
    all_pass = all_pass && ok;
  }
  json drift = json::array();
  for (auto& [t, d] : res.rearrangement_drift) drift.push_back({{"t", t}, {"sup", d}});

  json summary = {
      {"version", STRATLAB_VERSION},
      {"preset", cfg.preset},
      {"model", std::string(model_name(cfg.model))},
      {"grid", {{"n1", cfg.n1}, {"n2", cfg.n2}, {"fd_order", cfg.fd_order}}},
      {"seed", cfg.ic.seed},
      {"threads", threads()},
      {"kernels", std::string(kernels::isa_name(kernels::active().isa))},
      {"status", status_name(res.status)},
      {"message", res.message},
      {"steps", res.steps},
      {"samples", res.records.size()},
      {"residuals",
       {{"max_resid_E", rep.max_resid_E},
        {"t_max_resid_E", rep.t_max_resid_E},
        {"max_resid_K", rep.max_resid_K},
        {"t_max_resid_K", rep.t_max_resid_K},
        {"samples", rep.residual_samples}}},
      {"monotonicity", {{"E_violations", rep.E_violations}, {"K_violations", rep.K_violations}, {"min_E", rep.min_E}}},
      {"mass", {{"drift", rep.mass_drift}, {"tolerance", rep.mass_tol}}},
      {"fits",
       {{"t_min", rep.fit_t_min},
        {"t_max", rep.fit_t_max},
        {"E", fit_json(rep.E_fit)},
        {"K", fit_json(rep.K_fit)},
        {"u2_l2sq", fit_json(rep.u2_fit)},
        {"E_time_avg", fit_json(rep.E_avg_fit)},
        {"K_time_avg", fit_json(rep.K_avg_fit)}}},
      {"rearrangement_drift", drift},
      {"properties", props},
      {"passed", all_pass && res.status == RunStatus::completed},
  };
  std::ofstream(out / "summary.json", std::ios::binary) << summary.dump(2) << '\n';

  if (common.verbosity >= 1) {
    std::fprintf(stderr, "%s: %s after %lld steps, %zu samples\n", cfg.preset.empty() ? "run" : cfg.preset.c_str(),
                 status_name(res.status).c_str(), static_cast<long long>(res.steps), res.records.size());
    for (auto& [tag, ok] : tags) std::fprintf(stderr, "  %-22s %s\n", tag.c_str(), ok ? "pass" : "FAIL");
  }
  if (res.status != RunStatus::completed) {
    std::fprintf(stderr, "aborted: %s\n", res.message.c_str());
    return kAbort;
  }
  return all_pass ? kOk : kPropertyFailure;
}

int cmd_presets() {
  json arr = json::array();
  for (const Preset& p : presets()) {
    const RunConfig& c = p.config;
    arr.push_back({{"name", p.name},
                   {"description", p.description},
                   {"model", std::string(model_name(c.model))},
                   {"n1", c.n1},
                   {"n2", c.n2},
                   {"fd_order", c.fd_order},
                   {"t_end", c.t_end},
                   {"sample_dt", c.sample_dt},
                   {"rho_s", c.ic.rho_s},
                   {"ic", {{"shape", c.ic.shape}, {"epsilon", c.ic.epsilon}, {"mode", c.ic.mode}}},
                   {"expected", p.expected}});
  }
  std::cout << arr.dump(2) << '\n';
  return kOk;
}

int cmd_rearrange(const std::string& snapshot, const std::string& out_dir, int fd_order, const std::string& rho_s_desc) {
  Snapshot snap;
  StratifiedProfile rho_s = [&] {
    try {
      snap = read_snapshot(snapshot);
      return make_profile(Grid(snap.n1, snap.n2, fd_order), rho_s_desc);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  const ScalarField f = snap.to_field(fd_order);
  const Grid& g = f.grid();
  const fs::path out(out_dir);
  fs::create_directories(out);
  const Metadata meta{{"version", STRATLAB_VERSION},
                      {"source", fs::path(snapshot).filename().string()},
                      {"grid", std::to_string(g.n1()) + "x" + std::to_string(g.n2())}};

  const Profile fstar = vertical_rearrangement(f);
  {
    std::ofstream os(out / "rearrangement.csv", std::ios::binary);
    write_metadata(os, meta);
    os << "x2,f_star\n";
    for (std::size_t j = 0; j < g.n2(); ++j) os << format_double(g.x2(j)) << ',' << format_double(fstar[j]) << '\n';
  }
  const LevelDecomposition d = decompose_levels(f, rho_s.rho);
  if (d.valid) {
    std::ofstream os(out / "levels.csv", std::ios::binary);
    write_metadata(os, meta);
    os << "s,x1,phi1,h\n";
    for (std::size_t m = 0; m < d.s_grid.size(); ++m)
      for (std::size_t i = 0; i < g.n1(); ++i)
        os << format_double(d.s_grid[m]) << ',' << format_double(g.x1(i)) << ',' << format_double(d.phi1[m]) << ','
           << format_double(d.h_at(i, m)) << '\n';
  }
  const EnergyGap gap = energy_gap(f);
  json j = {{"gap", gap.gap},
            {"dist2", gap.dist2},
            {"ratio", gap.ratio},
            {"gradient_ratio", check_gradient_bound(f)},
            {"levels_valid", d.valid}};
  if (d.valid) {
    j["half_h2"] = d.half_h2;
    j["h_sup"] = d.h_sup;
    j["dh_ds_sup"] = d.dh_ds_sup;
    j["phi1_minus_phi0_sup"] = d.phi1_minus_phi0_sup;
  } else {
    j["bad_column"] = d.bad_column;
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

struct LemmaArgs {
  std::string diagnostics;
  double t_min = 10.0;
  double h_scale = 1.0;
  std::optional<double> n;
  std::string series;
  std::string a_series;
  std::string lemma = "23";
  double alpha = 1.0;
  double E = 0.0;
};

Trajectory read_series(const std::string& path) {
  const CsvTable t = read_csv_file(path);
  if (t.columns.size() < 2) throw UsageError(path + ": need two columns (t, value)");
  return Trajectory(t.column(t.columns[0]), t.column(t.columns[1]));
}

int cmd_lemmas(const LemmaArgs& a) {
  json j;
  bool ok = true;
  if (!a.diagnostics.empty()) {
    std::vector<DiagnosticsRecord> recs;
    try {
      const CsvTable t = read_csv_file(a.diagnostics);
      for (const auto& row : t.rows) {
        DiagnosticsRecord r;
        r.t = row.at(0);
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
          if (t.columns[c] == "E") r.E = row[c];
          if (t.columns[c] == "K") r.K = row[c];
          if (t.columns[c] == "u2_l2sq") r.u2_l2sq = row[c];
        }
        recs.push_back(r);
      }
      if (!t.has("E") || !t.has("K") || !t.has("u2_l2sq")) throw UsageError("missing E, K or u2_l2sq column");
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    double n = 0.0;
    if (a.n) {
      n = *a.n;
    } else {
      const PowerFit fit = fit_power_law(series_of(recs, &DiagnosticsRecord::E), a.t_min, recs.back().t);
      n = -fit.exponent;
    }
    const CascadeCheck c = cascade_check(recs, a.t_min, n, a.h_scale);
    j = {{"lemma", "22"},
         {"n", c.n},
         {"C", c.C},
         {"h_scale", c.h_scale},
         {"g", verdict_name(c.result.g)},
         {"g_margin", c.result.g_margin},
         {"g_checked", c.result.g_checked},
         {"h", verdict_name(c.result.h)},
         {"h_margin", c.result.h_margin},
         {"h_checked", c.result.h_checked}};
    ok = c.result.g == Verdict::holds && c.result.h == Verdict::holds;
  } else if (!a.series.empty()) {
    const Trajectory f = read_series(a.series);
    if (a.lemma == "21") {
      if (!a.n) throw UsageError("lemma 21 needs --n");
      const Trajectory w = a.a_series.empty() ? Trajectory(f.times(), std::vector<double>(f.size(), 1.0))
                                              : read_series(a.a_series);
      const Lemma21Result r = lemma21_bound(f, w, a.alpha, *a.n);
      j = {{"lemma", "21"}, {"verdict", verdict_name(r.verdict)}, {"margin", r.margin}};
      ok = r.verdict == Verdict::holds;
    } else if (a.lemma == "23") {
      if (!a.n) throw UsageError("lemma 23 needs --n");
      const Lemma23Result r = lemma23_check(f, *a.n, a.E, a.alpha);
      j = {{"lemma", "23"},
           {"verdict", verdict_name(r.verdict)},
           {"integral", r.integral},
           {"bound", r.bound},
           {"constant", lemma23_constant(a.alpha, *a.n)}};
      ok = r.verdict == Verdict::holds;
    } else {
      throw UsageError("--lemma must be 21 or 23");
    }
  } else {
    throw UsageError("lemmas needs --diagnostics or --series");
  }
  std::cout << j.dump(2) << '\n';
  return ok ? kOk : kPropertyFailure;
}

int cmd_manufactured(const std::string& model_arg, int levels, int fd_only) {
  std::vector<Model> models;
  if (model_arg == "both") {
    models = {Model::IPM, Model::Stokes};
  } else {
    Model m;
    if (!parse_model(model_arg, m)) throw UsageError("unknown model '" + model_arg + "'");
    models = {m};
  }
  if (levels < 2) throw UsageError("--levels must be at least 2");
  bool ok = true;
  std::printf("%-7s %3s %6s %14s %14s %14s %7s\n", "model", "fd", "n2", "psi_err_inf", "pde_resid", "div_resid",
              "order");
  for (Model m : models) {
    for (int fd : {2, 4}) {
      if (fd_only && fd != fd_only) continue;
      const double floor = fd == 2 ? 1.9 : 3.7;
      for (const ConvergenceRow& r : convergence_study(m, fd, levels)) {
        std::printf("%-7s %3d %6zu %14.6e %14.6e %14.6e ", std::string(model_name(m)).c_str(), fd, r.n2, r.psi_error,
                    r.pde_residual, r.div_residual);
        if (r.order == 0.0) {
          std::printf("%7s\n", "-");
        } else {
          std::printf("%7.3f\n", r.order);
          ok = ok && r.order >= floor;
        }
      }
    }
  }
  std::printf("%s\n", ok ? "orders ok" : "order below floor");
  return ok ? kOk : kPropertyFailure;
}

int cmd_report(const std::string& input, const std::string& output, const std::vector<std::string>& only) {
  CsvTable t;
  try {
    t = read_csv_file(input);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (t.columns.empty() || t.columns[0] != "t") throw UsageError(input + ": first column must be t");
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!output.empty() && output != "-") {
    file.open(output, std::ios::binary);
    if (!file) throw UsageError("cannot write " + output);
    os = &file;
  }
  write_metadata(*os, t.meta);
  *os << "t,series,value\n";
  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    if (!only.empty() && std::find(only.begin(), only.end(), t.columns[c]) == only.end()) continue;
    for (const auto& row : t.rows)
      *os << format_double(row[0]) << ',' << t.columns[c] << ',' << format_double(row[c]) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stratified IPM / Stokes transport laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", STRATLAB_VERSION);

  Common common;
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)");
  app.add_option("--kernels", common.kernels, "Kernel set: scalar, avx2, neon");
  app.add_option("-v,--verbosity", common.verbosity, "0 quiet, 1 summary, 2 progress");

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "Integrate a preset or config file");
  run_cmd->add_option("--preset", ra.preset, "Preset name");
  run_cmd->add_option("--config", ra.config, "Config file (key = value lines)")->check(CLI::ExistingFile);
  run_cmd->add_option("--out", ra.out, "Output directory");
  run_cmd->add_option("--set", ra.sets, "Override key=value (repeatable)")->take_all();
  run_cmd->add_option("--snapshots-every", ra.snapshots_every, "Write rho every N samples");
  run_cmd->add_option("--seed", ra.seed, "Seed for randomized initial data");

  app.add_subcommand("presets", "List presets as JSON");

  std::string snap, rout = "out", rho_s = "linear";
  int rfd = 4;
  auto* re_cmd = app.add_subcommand("rearrange", "Rearrangement and level sets of a snapshot");
  re_cmd->add_option("snapshot", snap, "Snapshot file")->required()->check(CLI::ExistingFile);
  re_cmd->add_option("--out", rout, "Output directory");
  re_cmd->add_option("--fd-order", rfd, "Vertical difference order")->check(CLI::IsMember({2, 4}));
  re_cmd->add_option("--rho-s", rho_s, "Steady profile descriptor for the level comparison");

  LemmaArgs la;
  auto* lem_cmd = app.add_subcommand("lemmas", "Decay-lemma checks on sampled series");
  lem_cmd->add_option("--diagnostics", la.diagnostics, "diagnostics.csv: E -> K -> |u2|^2 cascade");
  lem_cmd->add_option("--t-min", la.t_min, "Start of the analysed window (cascade)");
  lem_cmd->add_option("--h-scale", la.h_scale, "Multiplier c in h = c |u2|^2 (cascade)");
  lem_cmd->add_option("--n", la.n, "Decay exponent; fitted from E when omitted (cascade)");
  lem_cmd->add_option("--series", la.series, "Two-column (t, value) CSV");
  lem_cmd->add_option("--a", la.a_series, "Weight series a(t) for lemma 21 (default 1)");
  lem_cmd->add_option("--lemma", la.lemma, "21 or 23 (with --series)");
  lem_cmd->add_option("--alpha", la.alpha, "Exponent alpha");
  lem_cmd->add_option("--E", la.E, "Averaged-decay constant (lemma 23)");

  std::string mmodel = "both";
  int mlevels = 3, mfd = 0;
  auto* man_cmd = app.add_subcommand("manufactured", "Convergence table for the stream solvers");
  man_cmd->add_option("--model", mmodel, "ipm, stokes or both");
  man_cmd->add_option("--levels", mlevels, "Grid doublings from n2 = 65");
  man_cmd->add_option("--fd-order", mfd, "Only this order (default both)")->check(CLI::IsMember({0, 2, 4}));

  std::string rin, rep_out;
  std::vector<std::string> only;
  auto* rep_cmd = app.add_subcommand("report", "Long-format (t, series, value) CSV from diagnostics.csv");
  rep_cmd->add_option("input", rin, "diagnostics.csv")->required()->check(CLI::ExistingFile);
  rep_cmd->add_option("--out", rep_out, "Output file (default stdout)");
  rep_cmd->add_option("--series", only, "Columns to include (default all)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (*run_cmd) return cmd_run(ra, common);
    apply_common(common);
    if (app.got_subcommand("presets")) return cmd_presets();
    if (*re_cmd) return cmd_rearrange(snap, rout, rfd, rho_s);
    if (*lem_cmd) return cmd_lemmas(la);
    if (*man_cmd) return cmd_manufactured(mmodel, mlevels, mfd);
    if (*rep_cmd) return cmd_report(rin, rep_out, only);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }
  return kOk;
}
