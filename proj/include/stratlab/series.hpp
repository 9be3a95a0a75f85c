#pragma once
// Post-run analysis of a diagnostics series: identity residuals,
// monotonicity, mass drift, decay fits and the property tags of presets.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stratlab/decay_lemmas.hpp"
#include "stratlab/records.hpp"

namespace stratlab {

struct Tolerances {
  double resid_E = 1e-3;
  double resid_K = 5e-3;
  /// Samples with K at or below this are left out of the residual maxima.
  double K_min = 1e-12;
  /// Increase between consecutive samples tolerated by the monotonicity tags.
  double monotone_floor = 1e-14;
  /// Mass tolerance is mass_rel * (1 + |theta0|_{L2}).
  double mass_rel = 1e-8;
};

struct SeriesReport {
  double max_resid_E = 0.0;
  double max_resid_K = 0.0;
  double t_max_resid_E = 0.0;
  double t_max_resid_K = 0.0;
  std::size_t residual_samples = 0;
  std::size_t E_violations = 0;
  std::size_t K_violations = 0;
  double min_E = 0.0;
  double mass_drift = 0.0;
  double mass_tol = 0.0;
  double fit_t_min = 0.0;
  double fit_t_max = 0.0;
  std::optional<PowerFit> E_fit;
  std::optional<PowerFit> K_fit;
  std::optional<PowerFit> u2_fit;
  /// Fits of the time averages (2/t) int_{t/2}^t.
  std::optional<PowerFit> E_avg_fit;
  std::optional<PowerFit> K_avg_fit;
};

/// Needs uniformly spaced records. Fits use [fit_t_min, fit_t_max]; pass
/// negative values for [t_end / 5, t_end].
SeriesReport analyze_series(const std::vector<DiagnosticsRecord>& records, double theta0_l2,
                            const Tolerances& tol = {}, double fit_t_min = -1.0, double fit_t_max = -1.0);

/// Pass/fail of every tag; unknown tags fail.
std::vector<std::pair<std::string, bool>> check_tags(const std::vector<std::string>& tags,
                                                      const std::vector<DiagnosticsRecord>& records,
                                                      const SeriesReport& report, const Tolerances& tol = {});

/// E -> K -> |u2|^2 cascade fed to lemma22_check: f = E, g = K, h = c |u2|^2
/// with n = -(fitted E exponent) and C the smallest prefactor with E <= C t^{-n}
/// on the fit window.
struct CascadeCheck {
  double n = 0.0;
  double C = 0.0;
  double h_scale = 1.0;
  Lemma22Result result;
};

/// Samples from t_min on (t_min > 0).
CascadeCheck cascade_check(const std::vector<DiagnosticsRecord>& records, double t_min, double n, double h_scale);

Trajectory series_of(const std::vector<DiagnosticsRecord>& records, double DiagnosticsRecord::*field, double t_min = 0.0);

}  // namespace stratlab
