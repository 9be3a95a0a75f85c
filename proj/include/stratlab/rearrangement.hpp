#pragma once
// Vertical decreasing rearrangement and the level-set decomposition.
//
// Fields are read as their piecewise-linear interpolant in x2 (exact Fourier
// samples in x1). The super-level measure
//   mu(s) = |{f > s}| / 2pi
// is then piecewise linear in s with breakpoints at the sample values, and
// f* is its generalized inverse. Energies of f and f* are integrated exactly
// for that interpolant, so E_P(f) >= E_P(f*) holds to roundoff.

#include <cstddef>
#include <limits>
#include <vector>

#include "stratlab/grid.hpp"

namespace stratlab {

double superlevel_measure(const ScalarField& f, double s);

/// f* sampled at the vertical nodes; nonincreasing.
Profile vertical_rearrangement(const ScalarField& f);

/// 2pi * int_0^1 f*(z) z dz for the exact rearrangement of the interpolant.
double rearranged_potential_energy(const ScalarField& f);
/// int f x2 for the piecewise-linear interpolant (exact).
double interpolant_potential_energy(const ScalarField& f);

struct LevelDecomposition {
  std::vector<double> s_grid;
  std::vector<double> phi1;  // mean level height, per s
  std::vector<double> h;     // h[i * s_grid.size() + m], zero mean over i
  bool valid = false;
  std::size_t bad_column = 0;
  // Logged quantities; never asserted.
  double h_sup = 0.0;
  double dh_ds_sup = 0.0;
  double phi1_minus_phi0_sup = 0.0;
  /// 1/2 of the integral of h^2 over T x [min f, max f].
  double half_h2 = 0.0;

  double h_at(std::size_t i, std::size_t m) const { return h[i * s_grid.size() + m]; }
};

/// Requires every column strictly decreasing; otherwise valid = false and
/// bad_column names the first offending column.
LevelDecomposition decompose_levels(const ScalarField& f, const Profile& rho_s);

struct EnergyGap {
  double gap = 0.0;
  double dist2 = 0.0;
  double ratio = 0.0;
};

inline constexpr double kDist2Floor = 1e-14;

/// gap = E_P(f) - E_P(f*), dist2 = |f - f*|^2, ratio = gap / dist2 (0 when
/// dist2 < kDist2Floor).
EnergyGap energy_gap(const ScalarField& f);

/// |d1 f| / |f - f*|, infinity when |f - f*|^2 < kDist2Floor.
double check_gradient_bound(const ScalarField& f);

}  // namespace stratlab
