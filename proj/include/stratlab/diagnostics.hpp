#pragma once
// Energy observables of a state.
//   E_P = int rho x2,  E = int (rho - rho0*) x2
//   K   = |grad psi|^2 (IPM) or |Lap psi|^2 (Stokes), with dE/dt = -K
//   d2E_integrand = 2 int u2 (u . grad rho), with dK/dt = d2E_integrand

#include "stratlab/records.hpp"
#include "stratlab/transport.hpp"

namespace stratlab {

/// Throws NumericalAbort if any observable is non-finite.
DiagnosticsRecord record(const SimState& state);
/// Same, with `stream` in place of the state's cached solution.
DiagnosticsRecord record_with_stream(const SimState& state, const StreamSolution& stream);

/// Kinetic functional of a stream solution.
double kinetic_functional(const StreamSolution& s);

struct DissipationResiduals {
  double resid_E = 0.0;
  double resid_K = 0.0;
};

inline constexpr double kResidualFloor = 1e-14;

/// Centered differences of E and K at the middle record against -K and the
/// second-variation integrand. Throws std::invalid_argument on unequal spacing.
DissipationResiduals check_dissipation(const DiagnosticsRecord& prev, const DiagnosticsRecord& mid,
                                       const DiagnosticsRecord& next);

}  // namespace stratlab
