#pragma once
// Steady profiles, initial perturbations and named run presets.
//
// Steady-profile descriptors:
//   linear               rho_s = 1 - x2
//   poly:c0,c1,...       rho_s = c0 + c1 x2 + c2 x2^2 + ...
// Perturbation shapes (amplitude epsilon, horizontal mode m):
//   sine      epsilon sin(m x1) sin^2(pi x2)
//   cosine    epsilon cos(m x1) sin^2(pi x2)
//   twomode   epsilon (sin(m x1) + cos(2 m x1) / 2) sin^2(pi x2) x2
//   random    smooth field of modes 1..4 with sin^2(pi x2) envelope, sup norm epsilon
//   sine1     epsilon sin(m x1) sin(pi x2)   (IPM only: d2 theta != 0 on the walls)
//   zero

#include <map>
#include <string>
#include <vector>

#include "stratlab/transport.hpp"

namespace stratlab {

struct Preset {
  std::string name;
  std::string description;
  RunConfig config;
  /// Property tags checked by `run`: E_monotone, K_monotone,
  /// mass_conserved, dissipation_identity, steady.
  std::vector<std::string> expected;
};

const std::vector<Preset>& presets();
/// Throws std::invalid_argument for unknown names.
const Preset& find_preset(const std::string& name);

StratifiedProfile make_profile(const Grid& grid, const std::string& descriptor);
ScalarField make_perturbation(const Grid& grid, const InitialCondition& ic);

struct Scenario {
  RunConfig config;
  std::vector<std::string> expected;
  SimState state;
};

/// Validates `config` and builds the initial state.
SimState build_state(const RunConfig& config);
/// Preset plus overrides (keys as in the config file format).
Scenario build(const std::string& preset_name, const std::map<std::string, std::string>& overrides = {});

}  // namespace stratlab
