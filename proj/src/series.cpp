#include "stratlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stratlab/diagnostics.hpp"

namespace stratlab {

Trajectory series_of(const std::vector<DiagnosticsRecord>& records, double DiagnosticsRecord::*field, double t_min) {
  std::vector<double> t, v;
  for (const auto& r : records) {
    if (r.t < t_min) continue;
    t.push_back(r.t);
    // Energies can dip below zero at quadrature roundoff.
    v.push_back(std::max(0.0, r.*field));
  }
  return Trajectory(std::move(t), std::move(v));
}

namespace {

std::optional<PowerFit> try_fit(const Trajectory& tr, double a, double b) {
  try {
    return fit_power_law(tr, a, b);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::optional<PowerFit> fit_average(const Trajectory& tr, double a, double b) {
  std::vector<double> t, v;
  for (double s : tr.times()) {
    if (s < a || s > b || s <= 0.0 || s / 2 < tr.times().front()) continue;
    t.push_back(s);
    v.push_back(time_average(tr, s));
  }
  if (t.size() < 8) return std::nullopt;
  return try_fit(Trajectory(std::move(t), std::move(v)), a, b);
}

}  // namespace

SeriesReport analyze_series(const std::vector<DiagnosticsRecord>& records, double theta0_l2, const Tolerances& tol,
                            double fit_t_min, double fit_t_max) {
  SeriesReport rep;
  if (records.empty()) return rep;
  rep.min_E = records.front().E;
  for (std::size_t m = 0; m < records.size(); ++m) {
    rep.min_E = std::min(rep.min_E, records[m].E);
    rep.mass_drift = std::max(rep.mass_drift, std::abs(records[m].mass - records.front().mass));
    if (m == 0) continue;
    if (records[m].E - records[m - 1].E > tol.monotone_floor) ++rep.E_violations;
    if (records[m].K - records[m - 1].K > tol.monotone_floor) ++rep.K_violations;
  }
  rep.mass_tol = tol.mass_rel * (1.0 + theta0_l2);
  for (std::size_t m = 1; m + 1 < records.size(); ++m) {
    if (records[m].K <= tol.K_min) continue;
    const auto d = check_dissipation(records[m - 1], records[m], records[m + 1]);
    ++rep.residual_samples;
    if (d.resid_E > rep.max_resid_E) {
      rep.max_resid_E = d.resid_E;
      rep.t_max_resid_E = records[m].t;
    }
    if (d.resid_K > rep.max_resid_K) {
      rep.max_resid_K = d.resid_K;
      rep.t_max_resid_K = records[m].t;
    }
  }
  const double t_end = records.back().t;
  rep.fit_t_min = fit_t_min < 0 ? t_end / 5 : fit_t_min;
  rep.fit_t_max = fit_t_max < 0 ? t_end : fit_t_max;
  if (records.size() >= 3) {
    const Trajectory E = series_of(records, &DiagnosticsRecord::E);
    const Trajectory K = series_of(records, &DiagnosticsRecord::K);
    const Trajectory U = series_of(records, &DiagnosticsRecord::u2_l2sq);
    rep.E_fit = try_fit(E, rep.fit_t_min, rep.fit_t_max);
    rep.K_fit = try_fit(K, rep.fit_t_min, rep.fit_t_max);
    rep.u2_fit = try_fit(U, rep.fit_t_min, rep.fit_t_max);
    rep.E_avg_fit = fit_average(E, rep.fit_t_min, rep.fit_t_max);
    rep.K_avg_fit = fit_average(K, rep.fit_t_min, rep.fit_t_max);
  }
  return rep;
}

std::vector<std::pair<std::string, bool>> check_tags(const std::vector<std::string>& tags,
                                                      const std::vector<DiagnosticsRecord>& records,
                                                      const SeriesReport& rep, const Tolerances& tol) {
  std::vector<std::pair<std::string, bool>> out;
  for (const auto& tag : tags) {
    bool ok = false;
    if (tag == "E_monotone") {
      ok = rep.E_violations == 0 && rep.min_E >= -tol.monotone_floor;
    } else if (tag == "K_monotone") {
      ok = rep.K_violations == 0;
    } else if (tag == "mass_conserved") {
      ok = rep.mass_drift <= rep.mass_tol;
    } else if (tag == "dissipation_identity") {
      ok = rep.max_resid_E <= tol.resid_E && rep.max_resid_K <= tol.resid_K;
    } else if (tag == "steady") {
      ok = !records.empty();
      for (const auto& r : records)
        ok = ok && r.E == 0.0 && r.K == 0.0 && r.u2_l2sq == 0.0 && r.u_l2sq == 0.0 && r.linf == records.front().linf;
    }
    out.emplace_back(tag, ok);
  }
  return out;
}

CascadeCheck cascade_check(const std::vector<DiagnosticsRecord>& records, double t_min, double n, double h_scale) {
  if (!(t_min > 0.0)) throw std::invalid_argument("cascade_check: t_min must be positive");
  CascadeCheck c;
  c.n = n;
  c.h_scale = h_scale;
  const Trajectory f = series_of(records, &DiagnosticsRecord::E, t_min);
  const Trajectory g = series_of(records, &DiagnosticsRecord::K, t_min);
  std::vector<double> hv = series_of(records, &DiagnosticsRecord::u2_l2sq, t_min).values();
  for (double& v : hv) v *= h_scale;
  const Trajectory h(f.times(), hv);
  c.C = power_prefactor(f, n);
  c.result = lemma22_check(f, g, h, n, c.C);
  return c;
}

}  // namespace stratlab
