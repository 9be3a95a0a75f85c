#pragma once
// Time integration of the perturbation theta = rho - rho_s:
//   theta_t + u . grad theta = -rho_s' u2
// with u from the model's stream-function solve, classical RK4 in time.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratlab/grid.hpp"
#include "stratlab/records.hpp"
#include "stratlab/velocity.hpp"

namespace stratlab {

/// Steady density with its derivative and gamma = min(-rho_s').
struct StratifiedProfile {
  Profile rho;
  Profile drho;
  double gamma = 0.0;
  std::string descriptor;

  /// Throws std::invalid_argument if gamma <= 0.
  StratifiedProfile(Profile rho, Profile drho, std::string descriptor = {});
};

struct InitialCondition {
  std::string shape = "sine";  // see scenarios for the catalogue
  double epsilon = 0.01;
  int mode = 1;
  std::string rho_s = "linear";
  std::uint64_t seed = 0;  // used by randomized shapes
};

struct Guards {
  double max_linf = 10.0;
  /// Check every RK stage for non-finite values; when off only the end of
  /// each step and the sampled records are checked.
  bool nan_abort = true;
};

struct RunConfig {
  std::string preset;
  Model model = Model::IPM;
  std::size_t n1 = 128;
  std::size_t n2 = 129;
  int fd_order = 4;
  double cfl = 0.5;
  double t_end = 50.0;
  double sample_dt = 0.01;
  InitialCondition ic;
  bool dealias = false;
  Guards guards;
  bool experimental_general_rhos = false;
  /// Samples between recomputations of the rearrangement of rho(t).
  std::size_t drift_every = 100;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct SimState {
  Model model = Model::IPM;
  double t = 0.0;
  ScalarField theta;
  StratifiedProfile rho_s;
  Profile rho0_star;
  StreamSolution stream;
  std::int64_t step_count = 0;
  bool dealias = false;
  /// max |theta| on the wall rows before the last re-pinning.
  double bc_drift = 0.0;
  /// integrate((rho_s - rho0_star) x2), fixed at construction.
  double energy_offset = 0.0;
  /// rho_s' lifted to the full grid.
  ScalarField drho_field;
};

/// Builds a coherent state: pins theta to zero on the walls, freezes the
/// rearrangement of rho_s + theta and solves for the stream function.
SimState make_state(Model model, ScalarField theta, StratifiedProfile rho_s, bool dealias = false);

/// Non-finite value during a step.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(std::int64_t step, std::string field);
  std::int64_t step() const { return step_; }
  const std::string& field() const { return field_; }

 private:
  std::int64_t step_;
  std::string field_;
};

ScalarField rhs(const SimState& state);
/// One RK4 step; velocity re-solved at every stage. Throws NumericalAbort on a
/// non-finite stage (checked only when `check_stages`) or result.
SimState step(const SimState& state, double dt, bool check_stages = true);
/// cfl * min(dx1 / |u1|_inf, dx2 / |u2|_inf), capped by max_dt.
double adaptive_dt(const SimState& state, double cfl, double max_dt);

enum class RunStatus { completed, guard_stop, numerical_abort };

struct RunResult {
  RunStatus status = RunStatus::completed;
  std::string message;
  std::vector<DiagnosticsRecord> records;
  /// (t, sup |rho(t)* - rho0*|) at every drift_every-th sample and at the end.
  std::vector<std::pair<double, double>> rearrangement_drift;
  std::int64_t steps = 0;
};

struct RunObserver {
  std::function<void(const SimState&, const DiagnosticsRecord&, std::size_t sample)> on_sample;
};

/// Integrates to t_end, sampling at t = m * sample_dt exactly.
RunResult run(const RunConfig& config, SimState state, const RunObserver& observer = {});

}  // namespace stratlab
