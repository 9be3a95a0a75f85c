#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stratlab/diagnostics.hpp"
#include "stratlab/rearrangement.hpp"
#include "stratlab/scenarios.hpp"
#include "stratlab/series.hpp"

using namespace stratlab;

namespace {

constexpr double kPi = std::numbers::pi;

DiagnosticsRecord rec(double t, double E, double K, double d2E = 0.0) {
  DiagnosticsRecord r;
  r.t = t;
  r.E = E;
  r.K = K;
  r.d2E_integrand = d2E;
  return r;
}

}  // namespace

TEST_CASE("unperturbed state") {
  const Grid g(32, 129);
  const SimState s = make_state(Model::IPM, ScalarField(g), make_profile(g, "linear"));
  const DiagnosticsRecord r = record(s);
  CHECK(r.E_P == doctest::Approx(kPi / 3).epsilon(1e-4));
  CHECK(std::abs(r.E) < 1e-14);
  CHECK(r.K == 0.0);
  CHECK(r.mass == 0.0);
  CHECK(r.d2E_integrand == 0.0);
}

TEST_CASE("kinetic functional of an injected stream function") {
  const Grid g(32, 257);
  const ScalarField psi =
      ScalarField::from_function(g, [](double x, double z) { return std::sin(x) * std::sin(kPi * z); });
  const StreamSolution s = stream_from_psi(Model::IPM, psi);
  CHECK(kinetic_functional(s) == doctest::Approx(kPi / 2 + std::pow(kPi, 3) / 2).epsilon(1e-4));
  // Stokes: |Lap psi|^2 = (1 + pi^2)^2 pi / 2.
  const StreamSolution t = stream_from_psi(Model::Stokes, psi);
  CHECK(kinetic_functional(t) == doctest::Approx(std::pow(1 + kPi * kPi, 2) * kPi / 2).epsilon(1e-4));
}

TEST_CASE("record invariants on a perturbed state") {
  for (const char* name : {"ipm-smoke", "stokes-smoke"}) {
    const Scenario sc = build(name, {{"ic.epsilon", "0.05"}});
    const DiagnosticsRecord r = record(sc.state);
    CAPTURE(name);
    CHECK(r.E >= 0.0);
    CHECK(r.K > 0.0);
    if (sc.config.model == Model::IPM) CHECK(r.u2_l2sq <= r.u_l2sq);
    for (int k = 1; k <= 4; ++k) CHECK(r.theta_h[k] >= r.theta_h[k - 1]);
    CHECK(r.d2E_integrand < 0.0);
    // E against the energy gap of the exact rearrangement.
    const ScalarField rho = sc.state.theta + sc.state.rho_s.rho.lift();
    CHECK(r.E == doctest::Approx(energy_gap(rho).gap).epsilon(2e-2));
  }
}

TEST_CASE("dissipation residuals") {
  const auto z = check_dissipation(rec(0, 0, 0), rec(1, 0, 0), rec(2, 0, 0));
  CHECK(z.resid_E == 0.0);
  CHECK(z.resid_K == 0.0);
  CHECK_THROWS_AS(check_dissipation(rec(0, 0, 0), rec(1, 0, 0), rec(2.5, 0, 0)), std::invalid_argument);

  // E = 1/t, K = 1/t^2 = -E', d2E = K' = -2/t^3: Taylor remainder only.
  auto resid = [](double dt) {
    const double t = 1.0;
    auto r = [](double s) { return rec(s, 1 / s, 1 / (s * s), -2 / (s * s * s)); };
    return check_dissipation(r(t - dt), r(t), r(t + dt));
  };
  const auto a = resid(0.01), b = resid(0.005);
  CHECK(a.resid_E < 2e-4);
  CHECK(a.resid_E / b.resid_E == doctest::Approx(4.0).epsilon(0.01));
  CHECK(a.resid_K / b.resid_K == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("series analysis and tags") {
  std::vector<DiagnosticsRecord> rs;
  for (int m = 0; m <= 2000; ++m) {
    const double t = 0.01 * m;
    DiagnosticsRecord r = rec(t, 1 / (1 + t), 1 / ((1 + t) * (1 + t)), -2 / std::pow(1 + t, 3));
    r.u2_l2sq = r.K / 10;
    rs.push_back(r);
  }
  const SeriesReport rep = analyze_series(rs, 1.0);
  CHECK(rep.E_violations == 0);
  CHECK(rep.K_violations == 0);
  CHECK(rep.max_resid_E < 1e-3);
  CHECK(rep.max_resid_K < 5e-3);
  REQUIRE(rep.E_fit);
  CHECK(rep.E_fit->exponent < -0.7);
  const auto tags = check_tags({"E_monotone", "K_monotone", "mass_conserved", "dissipation_identity", "bogus"}, rs, rep);
  for (std::size_t k = 0; k < 4; ++k) CHECK(tags[k].second);
  CHECK_FALSE(tags[4].second);

  rs[10].E += 0.1;
  const SeriesReport bad = analyze_series(rs, 1.0);
  CHECK(bad.E_violations == 1);
  CHECK_FALSE(check_tags({"E_monotone"}, rs, bad)[0].second);
}
