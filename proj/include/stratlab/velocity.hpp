#pragma once
// Stream function and velocity from the density perturbation, mode by mode.
//   IPM:    -Lap psi = d1 theta,     psi = 0 on the walls
//   Stokes: Lap^2 psi = d1 theta,    psi = d2 psi = 0 on the walls
// with u = (-d2 psi, d1 psi).

#include <memory>
#include <string_view>
#include <vector>

#include "stratlab/banded.hpp"
#include "stratlab/grid.hpp"

namespace stratlab {

enum class Model { IPM, Stokes };

std::string_view model_name(Model m);
bool parse_model(std::string_view s, Model& out);

struct StreamSolution {
  Model model;
  ModalField psi_hat;
  ScalarField psi;
  ScalarField u1;
  ScalarField u2;
  /// L2 norm of the PDE residual on rows where the composed stencils are centered.
  double residual_norm = 0.0;
};

struct VelocityResiduals {
  double pde_residual = 0.0;
  double div_residual = 0.0;
  double bc_residual = 0.0;
};

/// Per-mode factorizations for one grid and model, built once.
class StreamSolver {
 public:
  StreamSolver(const Grid& grid, Model model);

  const Grid& grid() const { return grid_; }
  Model model() const { return model_; }
  StreamSolution solve(const ScalarField& theta, bool with_residual = true) const;
  /// Half-bandwidths of the mode-k system (kl, ku).
  std::pair<std::size_t, std::size_t> bandwidth(std::size_t k) const;

 private:
  Grid grid_;
  Model model_;
  std::vector<std::unique_ptr<BandedLU>> lu_;  // index k; k = 0 and Nyquist unused
  std::vector<std::pair<std::size_t, std::size_t>> bands_;
};

/// Shared solver for (grid, model); thread-safe.
const StreamSolver& stream_solver(const Grid& grid, Model model);

StreamSolution solve_ipm_stream(const ScalarField& theta);
StreamSolution solve_stokes_stream(const ScalarField& theta);
StreamSolution solve_stream(Model model, const ScalarField& theta, bool with_residual = true);

/// Builds velocity and modal data from a given stream function (boundary rows
/// are used as given). residual_norm is left at 0.
StreamSolution stream_from_psi(Model model, const ScalarField& psi);

/// pde: L2 residual via composed grid derivatives on centered rows;
/// div: L2 norm of d1 u1 + d2 u2; bc: max |psi| on the walls, plus max |d2 psi|
/// there for Stokes.
VelocityResiduals velocity_residuals(const StreamSolution& sol, const ScalarField& theta);

/// Modal Laplacian (d2^2 - k^2) of psi using the grid's second-derivative operator.
ScalarField laplacian(const StreamSolution& sol);

}  // namespace stratlab
