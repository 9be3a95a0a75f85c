#pragma once

#include <array>
#include <string>
#include <vector>

namespace stratlab {

/// One sampled row of the energy observables.
struct DiagnosticsRecord {
  double t = 0.0;
  double E_P = 0.0;
  double E = 0.0;
  double K = 0.0;
  double u2_l2sq = 0.0;
  double u_l2sq = 0.0;
  std::array<double, 5> theta_h{};  // ||theta||_{H^k}, k = 0..4
  double gradpsi_hk = 0.0;
  double d2E_integrand = 0.0;
  double mass = 0.0;
  double linf = 0.0;
  double bc_drift = 0.0;
};

/// Column names in CSV order.
const std::vector<std::string>& record_columns();
/// Values in the same order as record_columns().
std::vector<double> record_values(const DiagnosticsRecord& r);

}  // namespace stratlab
