#pragma once
// Manufactured stream functions with closed-form forcing:
//   IPM    psi = sin(x1) sin(pi x2),    theta = -(1 + pi^2) cos(x1) sin(pi x2)
//   Stokes psi = sin(x1) sin^2(pi x2),  theta = -q(x2) cos(x1),
//          q = -8 pi^4 c - 4 pi^2 c + (1 - c) / 2,  c = cos(2 pi x2)

#include <cstddef>
#include <vector>

#include "stratlab/velocity.hpp"

namespace stratlab {

ScalarField manufactured_theta(Model model, const Grid& grid);
ScalarField manufactured_psi(Model model, const Grid& grid);

struct ConvergenceRow {
  std::size_t n2 = 0;
  double psi_error = 0.0;  // sup norm
  double pde_residual = 0.0;
  double div_residual = 0.0;
  double order = 0.0;  // from the previous row; 0 on the first
};

/// n2 = 64 * 2^l + 1 for l < levels, n1 = 16.
std::vector<ConvergenceRow> convergence_study(Model model, int fd_order, int levels);

}  // namespace stratlab
