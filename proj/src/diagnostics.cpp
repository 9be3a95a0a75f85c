#include "stratlab/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace stratlab {

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> cols = {
      "t",        "E_P",      "E",        "K",          "u2_l2sq",       "u_l2sq", "theta_h0", "theta_h1",
      "theta_h2", "theta_h3", "theta_h4", "gradpsi_hk", "d2E_integrand", "mass",   "linf",     "bc_drift"};
  return cols;
}

std::vector<double> record_values(const DiagnosticsRecord& r) {
  return {r.t,          r.E_P,        r.E,          r.K,          r.u2_l2sq,   r.u_l2sq,        r.theta_h[0], r.theta_h[1],
          r.theta_h[2], r.theta_h[3], r.theta_h[4], r.gradpsi_hk, r.d2E_integrand, r.mass, r.linf, r.bc_drift};
}

double kinetic_functional(const StreamSolution& s) {
  if (s.model == Model::IPM) return integrate_product(s.u1, s.u1) + integrate_product(s.u2, s.u2);
  const ScalarField lap = laplacian(s);
  return integrate_product(lap, lap);
}

DiagnosticsRecord record_with_stream(const SimState& state, const StreamSolution& s) {
  const Grid& g = state.theta.grid();
  const ScalarField x2 = Profile::from_function(g, [](double z) { return z; }).lift();
  DiagnosticsRecord r;
  r.t = state.t;
  const double theta_x2 = integrate_product(state.theta, x2);
  r.E_P = integrate_product(state.rho_s.rho.lift(), x2) + theta_x2;
  r.E = theta_x2 + state.energy_offset;
  r.u2_l2sq = integrate_product(s.u2, s.u2);
  r.u_l2sq = integrate_product(s.u1, s.u1) + r.u2_l2sq;
  r.K = kinetic_functional(s);
  const std::vector<double> hk = norm_hk_all(state.theta, 4);
  std::copy(hk.begin(), hk.end(), r.theta_h.begin());
  if (s.model == Model::IPM) {
    const std::vector<double> a = norm_hk_all(s.u1, 3);
    const std::vector<double> b = norm_hk_all(s.u2, 3);
    r.gradpsi_hk = std::hypot(a.back(), b.back());
  } else {
    r.gradpsi_hk = norm_hk(laplacian(s), 2);
  }
  // u . grad rho = u1 d1 theta + u2 (d2 theta + rho_s')
  ScalarField adv = ddx2(state.theta);
  adv += state.drho_field;
  const ScalarField d1 = ddx1(state.theta);
  for (std::size_t k = 0; k < adv.values().size(); ++k)
    adv.values()[k] = s.u1.values()[k] * d1.values()[k] + s.u2.values()[k] * adv.values()[k];
  r.d2E_integrand = 2.0 * integrate_product(s.u2, adv);
  r.mass = integrate(state.theta);
  r.linf = norm_linf(state.theta);
  r.bc_drift = state.bc_drift;
  for (double v : record_values(r))
    if (!std::isfinite(v)) throw NumericalAbort(state.step_count, "diagnostics");
  return r;
}

DiagnosticsRecord record(const SimState& state) { return record_with_stream(state, state.stream); }

DissipationResiduals check_dissipation(const DiagnosticsRecord& a, const DiagnosticsRecord& b,
                                       const DiagnosticsRecord& c) {
  const double h1 = b.t - a.t;
  const double h2 = c.t - b.t;
  if (!(h1 > 0.0) || std::abs(h1 - h2) > 1e-9 * std::max(h1, h2))
    throw std::invalid_argument("check_dissipation: records must be equally spaced in time");
  const double dt2 = c.t - a.t;
  DissipationResiduals r;
  r.resid_E = std::abs((c.E - a.E) / dt2 + b.K) / std::max(b.K, kResidualFloor);
  r.resid_K = std::abs((c.K - a.K) / dt2 - b.d2E_integrand) / std::max(std::abs(b.d2E_integrand), kResidualFloor);
  return r;
}

}  // namespace stratlab
