#include "stratlab/manufactured.hpp"

#include <cmath>
#include <numbers>

namespace stratlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

ScalarField manufactured_theta(Model model, const Grid& grid) {
  if (model == Model::IPM)
    return ScalarField::from_function(
        grid, [](double x, double z) { return -(1 + kPi * kPi) * std::cos(x) * std::sin(kPi * z); });
  return ScalarField::from_function(grid, [](double x, double z) {
    const double c = std::cos(2 * kPi * z);
    const double q = -8 * std::pow(kPi, 4) * c - 4 * kPi * kPi * c + (1 - c) / 2;
    return -q * std::cos(x);
  });
}

ScalarField manufactured_psi(Model model, const Grid& grid) {
  if (model == Model::IPM)
    return ScalarField::from_function(grid, [](double x, double z) { return std::sin(x) * std::sin(kPi * z); });
  return ScalarField::from_function(grid, [](double x, double z) {
    const double s = std::sin(kPi * z);
    return std::sin(x) * s * s;
  });
}

std::vector<ConvergenceRow> convergence_study(Model model, int fd_order, int levels) {
  std::vector<ConvergenceRow> rows;
  for (int l = 0; l < levels; ++l) {
    const Grid g(16, (std::size_t{64} << l) + 1, fd_order);
    const ScalarField theta = manufactured_theta(model, g);
    const StreamSolution s = solve_stream(model, theta);
    const VelocityResiduals r = velocity_residuals(s, theta);
    ConvergenceRow row;
    row.n2 = g.n2();
    row.psi_error = norm_linf(s.psi - manufactured_psi(model, g));
    row.pde_residual = r.pde_residual;
    row.div_residual = r.div_residual;
    if (!rows.empty()) row.order = std::log2(rows.back().psi_error / row.psi_error);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace stratlab
