#include "stratlab/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

namespace stratlab {

std::string_view model_name(Model m) { return m == Model::IPM ? "ipm" : "stokes"; }

bool parse_model(std::string_view s, Model& out) {
  if (s == "ipm" || s == "IPM") {
    out = Model::IPM;
    return true;
  }
  if (s == "stokes" || s == "Stokes") {
    out = Model::Stokes;
    return true;
  }
  return false;
}

namespace {

// Sparse row: first column and dense weights.
struct Row {
  std::size_t first = 0;
  std::vector<double> w;
  std::size_t last() const { return first + w.size() - 1; }
};

Row helmholtz_row(const VerticalOperator& d2, std::size_t j, double k2) {
  const StencilRow& s = d2.row(j);
  Row r{s.first, s.w};
  r.w[j - r.first] -= k2;
  return r;
}

Row product_row(const std::vector<Row>& d, std::size_t j) {
  const Row& a = d[j];
  std::size_t lo = SIZE_MAX;
  std::size_t hi = 0;
  for (std::size_t s = 0; s < a.w.size(); ++s) {
    lo = std::min(lo, d[a.first + s].first);
    hi = std::max(hi, d[a.first + s].last());
  }
  Row r{lo, std::vector<double>(hi - lo + 1, 0.0)};
  for (std::size_t s = 0; s < a.w.size(); ++s) {
    const Row& b = d[a.first + s];
    for (std::size_t t = 0; t < b.w.size(); ++t) r.w[b.first + t - lo] += a.w[s] * b.w[t];
  }
  return r;
}

Row unit_row(std::size_t j) { return Row{j, {1.0}}; }

double max_abs(const Row& r) {
  double m = 0.0;
  for (double w : r.w) m = std::max(m, std::abs(w));
  return m;
}

// Boundary-condition rows are rescaled to the magnitude of the interior rows;
// otherwise the backward error of the solve lands mostly on the wall
// conditions. Their right-hand sides are zero, so the solution is unchanged.
void equilibrate(std::vector<Row>& rows, std::size_t bc) {
  const std::size_t n = rows.size();
  double scale = 0.0;
  for (std::size_t j = bc; j + bc < n; ++j) scale = std::max(scale, max_abs(rows[j]));
  for (std::size_t j = 0; j < n; ++j) {
    if (j >= bc && j + bc < n) continue;
    const double f = scale / max_abs(rows[j]);
    for (double& w : rows[j].w) w *= f;
  }
}

std::unique_ptr<BandedLU> factor(std::vector<Row> rows, std::size_t bc, std::pair<std::size_t, std::size_t>& band) {
  const std::size_t n = rows.size();
  equilibrate(rows, bc);
  std::size_t kl = 0;
  std::size_t ku = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (rows[j].first < j) kl = std::max(kl, j - rows[j].first);
    if (rows[j].last() > j) ku = std::max(ku, rows[j].last() - j);
  }
  BandedMatrix a(n, kl, ku);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t s = 0; s < rows[j].w.size(); ++s) a.at(j, rows[j].first + s) = rows[j].w[s];
  band = {kl, ku};
  return std::make_unique<BandedLU>(std::move(a));
}

// First row where a stencil of the given half-width composed `times` times is
// centered.
std::size_t composed_margin(const Grid& g, int times) {
  return static_cast<std::size_t>(times) * g.d2_first().radius();
}

// |r|^2 integrated over the channel from half-spectrum modes on rows
// [margin, n2 - margin).
double modal_l2sq(const Grid& g, const std::vector<std::complex<double>>& r, std::size_t margin) {
  const std::size_t n2 = g.n2();
  std::vector<double> per_mode(g.modes(), 0.0);
  for (std::size_t k = 0; k < g.modes(); ++k) {
    double s = 0.0;
    for (std::size_t j = margin; j + margin < n2; ++j) s += std::norm(r[k * n2 + j]);
    const double mult = (k == 0 || k == g.n1() / 2) ? 1.0 : 2.0;
    per_mode[k] = mult * s;
  }
  return 2.0 * std::numbers::pi * g.dx2() * pairwise_sum(per_mode.data(), per_mode.size());
}

// Residual of the model PDE with vertical derivatives composed from the
// first-derivative operator.
double pde_residual_modal(Model model, const ModalField& psi_hat, const ModalField& theta_hat) {
  const Grid& g = psi_hat.grid();
  const std::size_t n2 = g.n2();
  const VerticalOperator& d1 = g.d2_first();
  std::vector<std::complex<double>> r(g.modes() * n2, 0.0);
  std::vector<std::complex<double>> a(n2), b(n2), lap(n2);
  auto dz = [&](const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) {
    d1.apply_complex(reinterpret_cast<const double*>(in.data()), reinterpret_cast<double*>(out.data()));
  };
  const std::size_t nyq = g.n1() / 2;
  for (std::size_t k = 0; k < nyq; ++k) {
    const double kk = static_cast<double>(k);
    const std::complex<double> ik(0.0, kk);
    std::vector<std::complex<double>> p(psi_hat.mode(k), psi_hat.mode(k) + n2);
    dz(p, a);
    dz(a, b);
    for (std::size_t j = 0; j < n2; ++j) lap[j] = b[j] - kk * kk * p[j];
    if (model == Model::IPM) {
      for (std::size_t j = 0; j < n2; ++j) r[k * n2 + j] = -lap[j] - ik * theta_hat(k, j);
    } else {
      dz(lap, a);
      dz(a, b);
      for (std::size_t j = 0; j < n2; ++j) r[k * n2 + j] = (b[j] - kk * kk * lap[j]) - ik * theta_hat(k, j);
    }
  }
  const std::size_t margin = composed_margin(g, model == Model::IPM ? 2 : 4);
  return std::sqrt(modal_l2sq(g, r, margin));
}

void fill_velocity(StreamSolution& sol) {
  const Grid& g = sol.psi_hat.grid();
  const std::size_t n2 = g.n2();
  const VerticalOperator& d1 = g.d2_first();
  ModalField u1_hat(g);
  ModalField u2_hat(g);
  const std::ptrdiff_t nyq = static_cast<std::ptrdiff_t>(g.n1() / 2);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t kk = 0; kk < nyq; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    const auto* p = sol.psi_hat.mode(k);
    auto* v1 = u1_hat.mode(k);
    d1.apply_complex(reinterpret_cast<const double*>(p), reinterpret_cast<double*>(v1));
    for (std::size_t j = 0; j < n2; ++j) v1[j] = -v1[j];
    const std::complex<double> ik(0.0, static_cast<double>(k));
    auto* v2 = u2_hat.mode(k);
    for (std::size_t j = 0; j < n2; ++j) v2[j] = ik * p[j];
  }
  sol.u1 = to_physical(u1_hat);
  sol.u2 = to_physical(u2_hat);
}

}  // namespace

StreamSolver::StreamSolver(const Grid& grid, Model model) : grid_(grid), model_(model) {
  const std::size_t n2 = grid.n2();
  const std::size_t nyq = grid.n1() / 2;
  lu_.resize(nyq);
  bands_.resize(nyq);
  const VerticalOperator& d1 = grid.d2_first();
  const VerticalOperator& d2 = grid.d2_second();
  for (std::size_t k = 1; k < nyq; ++k) {
    const double k2 = static_cast<double>(k * k);
    std::vector<Row> rows(n2);
    if (model == Model::IPM) {
      rows[0] = unit_row(0);
      rows[n2 - 1] = unit_row(n2 - 1);
      for (std::size_t j = 1; j + 1 < n2; ++j) rows[j] = helmholtz_row(d2, j, k2);
    } else {
      std::vector<Row> d(n2);
      for (std::size_t j = 0; j < n2; ++j) d[j] = helmholtz_row(d2, j, k2);
      rows[0] = unit_row(0);
      rows[n2 - 1] = unit_row(n2 - 1);
      rows[1] = Row{d1.row(0).first, d1.row(0).w};
      rows[n2 - 2] = Row{d1.row(n2 - 1).first, d1.row(n2 - 1).w};
      for (std::size_t j = 2; j + 2 < n2; ++j) rows[j] = product_row(d, j);
    }
    try {
      lu_[k] = factor(std::move(rows), model == Model::IPM ? 1 : 2, bands_[k]);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("stream solver: mode " + std::to_string(k) + ": " + e.what());
    }
  }
}

std::pair<std::size_t, std::size_t> StreamSolver::bandwidth(std::size_t k) const {
  if (k == 0 || k >= bands_.size()) throw std::out_of_range("no system for this mode");
  return bands_[k];
}

StreamSolution StreamSolver::solve(const ScalarField& theta, bool with_residual) const {
  if (!theta.grid().same_as(grid_)) throw std::invalid_argument("stream solver: grid mismatch");
  const std::size_t n2 = grid_.n2();
  const ModalField theta_hat = to_modal(theta);
  ModalField psi_hat(grid_);
  const std::ptrdiff_t nyq = static_cast<std::ptrdiff_t>(grid_.n1() / 2);
  // IPM right-hand side is -ik theta_hat, Stokes +ik theta_hat; the wall rows
  // hold homogeneous boundary conditions.
  const double sign = model_ == Model::IPM ? -1.0 : 1.0;
  const std::size_t bc = model_ == Model::IPM ? 1 : 2;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t kk = 1; kk < nyq; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    const double kd = static_cast<double>(k);
    std::vector<double> b(2 * n2, 0.0);
    const auto* th = theta_hat.mode(k);
    for (std::size_t j = bc; j + bc < n2; ++j) {
      // sign * i k (a + i b) = sign * (-k b + i k a)
      b[j] = -sign * kd * th[j].imag();
      b[n2 + j] = sign * kd * th[j].real();
    }
    lu_[k]->solve(b.data(), 2);
    b[0] = b[n2 - 1] = b[n2] = b[2 * n2 - 1] = 0.0;
    auto* p = psi_hat.mode(k);
    for (std::size_t j = 0; j < n2; ++j) p[j] = {b[j], b[n2 + j]};
  }
  StreamSolution sol{model_, psi_hat, to_physical(psi_hat), ScalarField(grid_), ScalarField(grid_), 0.0};
  fill_velocity(sol);
  if (with_residual) sol.residual_norm = pde_residual_modal(model_, sol.psi_hat, theta_hat);
  return sol;
}

const StreamSolver& stream_solver(const Grid& grid, Model model) {
  static std::mutex m;
  static std::map<std::tuple<std::size_t, std::size_t, int, int>, std::unique_ptr<StreamSolver>> cache;
  std::lock_guard lock(m);
  auto key = std::make_tuple(grid.n1(), grid.n2(), grid.fd_order(), static_cast<int>(model));
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<StreamSolver>(grid, model)).first;
  return *it->second;
}

StreamSolution solve_stream(Model model, const ScalarField& theta, bool with_residual) {
  if (!theta.all_finite()) throw std::invalid_argument("stream solver: non-finite density");
  return stream_solver(theta.grid(), model).solve(theta, with_residual);
}

StreamSolution solve_ipm_stream(const ScalarField& theta) { return solve_stream(Model::IPM, theta); }
StreamSolution solve_stokes_stream(const ScalarField& theta) { return solve_stream(Model::Stokes, theta); }

StreamSolution stream_from_psi(Model model, const ScalarField& psi) {
  const Grid& g = psi.grid();
  ModalField psi_hat = to_modal(psi);
  std::fill(psi_hat.mode(0), psi_hat.mode(0) + g.n2(), std::complex<double>(0.0, 0.0));
  std::fill(psi_hat.mode(g.n1() / 2), psi_hat.mode(g.n1() / 2) + g.n2(), std::complex<double>(0.0, 0.0));
  StreamSolution sol{model, psi_hat, psi, ScalarField(g), ScalarField(g), 0.0};
  fill_velocity(sol);
  return sol;
}

VelocityResiduals velocity_residuals(const StreamSolution& sol, const ScalarField& theta) {
  const Grid& g = sol.psi.grid();
  if (!theta.grid().same_as(g)) throw std::invalid_argument("velocity_residuals: grid mismatch");
  VelocityResiduals r;
  r.pde_residual = pde_residual_modal(sol.model, to_modal(sol.psi), to_modal(theta));
  r.div_residual = norm_l2(ddx1(sol.u1) + ddx2(sol.u2));
  const std::size_t n2 = g.n2();
  const ScalarField dpsi = ddx2(sol.psi);
  for (std::size_t i = 0; i < g.n1(); ++i) {
    r.bc_residual = std::max({r.bc_residual, std::abs(sol.psi(i, 0)), std::abs(sol.psi(i, n2 - 1))});
    if (sol.model == Model::Stokes)
      r.bc_residual = std::max({r.bc_residual, std::abs(dpsi(i, 0)), std::abs(dpsi(i, n2 - 1))});
  }
  return r;
}

ScalarField laplacian(const StreamSolution& sol) {
  const Grid& g = sol.psi_hat.grid();
  const std::size_t n2 = g.n2();
  ModalField lap(g);
  const VerticalOperator& d2 = g.d2_second();
  for (std::size_t k = 0; k < g.n1() / 2; ++k) {
    const double k2 = static_cast<double>(k * k);
    d2.apply_complex(reinterpret_cast<const double*>(sol.psi_hat.mode(k)), reinterpret_cast<double*>(lap.mode(k)));
    for (std::size_t j = 0; j < n2; ++j) lap(k, j) -= k2 * sol.psi_hat(k, j);
  }
  return to_physical(lap);
}

}  // namespace stratlab
