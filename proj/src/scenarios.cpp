#include "stratlab/scenarios.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "stratlab/config.hpp"

namespace stratlab {

namespace {

constexpr double kPi = std::numbers::pi;

RunConfig base(Model model, const std::string& rho_s, double eps, int mode) {
  RunConfig c;
  c.model = model;
  c.ic.shape = "sine";
  c.ic.epsilon = eps;
  c.ic.mode = mode;
  c.ic.rho_s = rho_s;
  return c;
}

std::vector<Preset> make_presets() {
  const std::vector<std::string> decay = {"E_monotone", "K_monotone", "mass_conserved", "dissipation_identity"};
  std::vector<Preset> out;

  Preset ipm{"ipm-baseline", "IPM, rho_s = 1 - x2, theta0 = 0.01 sin(x1) sin^2(pi x2), 128x129, t <= 50",
             base(Model::IPM, "linear", 0.01, 1), decay};
  out.push_back(ipm);

  Preset stokes{"stokes-baseline",
                "Stokes, rho_s = 2 - x2 - 0.3 x2^2 (gamma = 1), theta0 = 0.01 sin(2 x1) sin^2(pi x2), 128x129, t <= 50",
                base(Model::Stokes, "poly:2,-1,-0.3", 0.01, 2), decay};
  out.push_back(stokes);

  Preset null{"null", "IPM at rest: epsilon = 0, every dynamic observable stays zero",
              base(Model::IPM, "linear", 0.0, 1), {"E_monotone", "K_monotone", "mass_conserved", "steady"}};
  null.config.n1 = 32;
  null.config.n2 = 33;
  null.config.t_end = 1.0;
  out.push_back(null);

  Preset ipm_smoke{"ipm-smoke", "Small IPM run for quick checks (32x33, t <= 2)", base(Model::IPM, "linear", 0.01, 1),
                   decay};
  ipm_smoke.config.n1 = 32;
  ipm_smoke.config.n2 = 33;
  ipm_smoke.config.t_end = 2.0;
  ipm_smoke.config.sample_dt = 0.02;
  out.push_back(ipm_smoke);

  Preset stokes_smoke{"stokes-smoke", "Small Stokes run for quick checks (32x129, t <= 2)",
                      base(Model::Stokes, "poly:2,-1,-0.3", 0.01, 2), decay};
  stokes_smoke.config.n1 = 32;
  // The energy identity error is O(dx2^2); 33 rows leave it near 6e-3.
  stokes_smoke.config.n2 = 129;
  stokes_smoke.config.t_end = 2.0;
  stokes_smoke.config.sample_dt = 0.02;
  out.push_back(stokes_smoke);

  Preset large{"ipm-large", "IPM with epsilon = 0.5; no expectations, for manual exploration",
               base(Model::IPM, "linear", 0.5, 1), {}};
  large.config.n1 = 64;
  large.config.n2 = 65;
  large.config.t_end = 20.0;
  large.config.sample_dt = 0.05;
  out.push_back(large);

  for (Preset& p : out) p.config.preset = p.name;
  return out;
}

std::vector<double> parse_coefficients(const std::string& list) {
  std::vector<double> c;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const std::string item = list.substr(pos, comma - pos);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || p != item.data() + item.size())
      throw std::invalid_argument("bad coefficient '" + item + "' in steady profile");
    c.push_back(v);
    pos = comma + 1;
  }
  return c;
}

std::vector<double> coefficients(const std::string& descriptor) {
  if (descriptor == "linear") return {1.0, -1.0};
  if (descriptor.rfind("poly:", 0) == 0) return parse_coefficients(descriptor.substr(5));
  throw std::invalid_argument("unknown steady profile '" + descriptor + "' (use linear or poly:c0,c1,...)");
}

bool is_linear_profile(const std::string& descriptor) {
  const std::vector<double> c = coefficients(descriptor);
  for (std::size_t k = 2; k < c.size(); ++k)
    if (c[k] != 0.0) return false;
  return c.size() >= 2 && c[0] == 1.0 && c[1] == -1.0;
}

// Uniform in [-1, 1) from raw generator bits (portable across libraries).
double uniform(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = make_presets();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const Preset& p : presets())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown preset '" + name + "'");
}

StratifiedProfile make_profile(const Grid& g, const std::string& descriptor) {
  const std::vector<double> c = coefficients(descriptor);
  Profile rho(g);
  Profile drho(g);
  for (std::size_t j = 0; j < g.n2(); ++j) {
    const double z = g.x2(j);
    double v = 0.0;
    double d = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
      v = v * z + c[k];
      if (k > 0) d = d * z + static_cast<double>(k) * c[k];
    }
    rho[j] = v;
    drho[j] = d;
  }
  return StratifiedProfile(std::move(rho), std::move(drho), descriptor);
}

ScalarField make_perturbation(const Grid& g, const InitialCondition& ic) {
  const double eps = ic.epsilon;
  const double m = static_cast<double>(ic.mode);
  auto env = [](double z) {
    const double s = std::sin(kPi * z);
    return s * s;
  };
  if (ic.shape == "zero") return ScalarField(g);
  if (ic.shape == "sine")
    return ScalarField::from_function(g, [&](double x, double z) { return eps * std::sin(m * x) * env(z); });
  if (ic.shape == "cosine")
    return ScalarField::from_function(g, [&](double x, double z) { return eps * std::cos(m * x) * env(z); });
  if (ic.shape == "sine1")
    return ScalarField::from_function(g, [&](double x, double z) { return eps * std::sin(m * x) * std::sin(kPi * z); });
  if (ic.shape == "twomode")
    return ScalarField::from_function(g, [&](double x, double z) {
      return eps * (std::sin(m * x) + 0.5 * std::cos(2.0 * m * x)) * env(z) * z;
    });
  if (ic.shape == "random") {
    std::mt19937_64 rng(ic.seed);
    double a[4][3];
    for (auto& row : a)
      for (double& v : row) v = uniform(rng);
    ScalarField f = ScalarField::from_function(g, [&](double x, double z) {
      double v = 0.0;
      for (int k = 0; k < 4; ++k) {
        const double kk = k + 1.0;
        v += (a[k][0] * std::cos(kk * x) + a[k][1] * std::sin(kk * x)) * (1.0 + 0.5 * a[k][2] * z) / (kk * kk);
      }
      return v * env(z);
    });
    const double sup = norm_linf(f);
    if (sup > 0.0) f *= eps / sup;
    return f;
  }
  throw std::invalid_argument("unknown perturbation shape '" + ic.shape + "'");
}

SimState build_state(const RunConfig& c) {
  c.validate();
  if (c.model == Model::IPM && !c.experimental_general_rhos && !is_linear_profile(c.ic.rho_s))
    throw std::invalid_argument("IPM requires rho_s = linear unless experimental_general_rhos is set");
  if (c.model == Model::Stokes && c.ic.shape == "sine1")
    throw std::invalid_argument("Stokes initial data must vanish with its vertical derivative on the walls");
  const Grid g(c.n1, c.n2, c.fd_order);
  StratifiedProfile rho_s = make_profile(g, c.ic.rho_s);
  return make_state(c.model, make_perturbation(g, c.ic), std::move(rho_s), c.dealias);
}

Scenario build(const std::string& name, const std::map<std::string, std::string>& overrides) {
  const Preset& p = find_preset(name);
  RunConfig c = p.config;
  for (const auto& [k, v] : overrides) apply_setting(c, k, v);
  c.preset = name;
  SimState s = build_state(c);
  return Scenario{c, p.expected, std::move(s)};
}

}  // namespace stratlab
