#include "stratlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stratlab/diagnostics.hpp"
#include "stratlab/kernels.hpp"
#include "stratlab/rearrangement.hpp"

namespace stratlab {

StratifiedProfile::StratifiedProfile(Profile rho_, Profile drho_, std::string descriptor_)
    : rho(std::move(rho_)), drho(std::move(drho_)), descriptor(std::move(descriptor_)) {
  gamma = std::numeric_limits<double>::infinity();
  for (double d : drho.values()) gamma = std::min(gamma, -d);
  if (!(gamma > 0.0)) throw std::invalid_argument("steady profile must be strictly decreasing (gamma > 0)");
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (n1 < 8 || n1 % 2 != 0) fail("n1 must be even and >= 8");
  if (n2 < 9) fail("n2 must be >= 9");
  if (fd_order != 2 && fd_order != 4) fail("fd_order must be 2 or 4");
  if (!(cfl > 0.0 && cfl <= 1.0)) fail("cfl must lie in (0, 1]");
  if (!(t_end > 0.0)) fail("t_end must be positive");
  if (!(sample_dt > 0.0) || sample_dt > t_end) fail("sample_dt must lie in (0, t_end]");
  if (!(ic.epsilon >= 0.0)) fail("ic.epsilon must be nonnegative");
  if (ic.mode < 1 || static_cast<std::size_t>(3 * ic.mode) > n1) fail("ic.mode must satisfy 1 <= 3 mode <= n1");
  if (!(guards.max_linf > 0.0)) fail("guards.max_linf must be positive");
  if (drift_every == 0) fail("drift_every must be positive");
}

NumericalAbort::NumericalAbort(std::int64_t step, std::string field)
    : std::runtime_error("non-finite " + field + " at step " + std::to_string(step)), step_(step),
      field_(std::move(field)) {}

namespace {

void pin_walls(ScalarField& f, double* drift = nullptr) {
  const Grid& g = f.grid();
  double m = 0.0;
  for (std::size_t i = 0; i < g.n1(); ++i) {
    double* c = f.column(i);
    m = std::max({m, std::abs(c[0]), std::abs(c[g.n2() - 1])});
    c[0] = 0.0;
    c[g.n2() - 1] = 0.0;
  }
  if (drift != nullptr) *drift = m;
}

ScalarField smooth(const ScalarField& f) { return to_physical(dealias(to_modal(f))); }

ScalarField rhs_of(const ScalarField& theta, const StreamSolution& s, const ScalarField& drho, bool dealias_on,
                   std::int64_t step, bool check) {
  const Grid& g = theta.grid();
  ModalField th = to_modal(theta);
  if (dealias_on) dealias_in_place(th);
  const ScalarField d1 = to_physical(ddx1(th));
  const ScalarField d2 = dealias_on ? to_physical(ddx2(th)) : ddx2(theta);
  ScalarField out(g);
  const std::size_t n = g.size();
  if (dealias_on) {
    const ScalarField u1 = smooth(s.u1);
    const ScalarField u2 = smooth(s.u2);
    kernels::active().advect(n, out.values().data(), u1.values().data(), d1.values().data(), u2.values().data(),
                             d2.values().data(), drho.values().data(), u2.values().data());
  } else {
    kernels::active().advect(n, out.values().data(), s.u1.values().data(), d1.values().data(),
                             s.u2.values().data(), d2.values().data(), drho.values().data(),
                             s.u2.values().data());
  }
  if (check && !out.all_finite()) throw NumericalAbort(step, "rhs");
  return out;
}

ScalarField stage(const ScalarField& y, double a, const ScalarField& k) {
  ScalarField out(y.grid());
  kernels::active().add_scaled(y.grid().size(), out.values().data(), y.values().data(), a, k.values().data());
  return out;
}

}  // namespace

SimState make_state(Model model, ScalarField theta, StratifiedProfile rho_s, bool dealias) {
  const Grid g = theta.grid();
  if (!rho_s.rho.grid().same_as(g)) throw std::invalid_argument("steady profile grid does not match theta");
  if (!theta.all_finite()) throw std::invalid_argument("initial perturbation is not finite");
  pin_walls(theta);
  const ScalarField rho_s_field = rho_s.rho.lift();
  Profile star = vertical_rearrangement(rho_s_field + theta);
  const ScalarField x2 = Profile::from_function(g, [](double z) { return z; }).lift();
  const double offset = integrate_product(rho_s_field - star.lift(), x2);
  StreamSolution stream = solve_stream(model, theta);
  ScalarField drho = rho_s.drho.lift();
  return SimState{model, 0.0, std::move(theta), std::move(rho_s), std::move(star), std::move(stream), 0,
                  dealias, 0.0, offset, std::move(drho)};
}

ScalarField rhs(const SimState& s) { return rhs_of(s.theta, s.stream, s.drho_field, s.dealias, s.step_count, true); }

SimState step(const SimState& s, double dt, bool check) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const std::int64_t n = s.step_count;
  auto solve = [&](const ScalarField& th) {
    if (check && !th.all_finite()) throw NumericalAbort(n, "theta stage");
    return solve_stream(s.model, th, false);
  };
  const ScalarField k1 = rhs_of(s.theta, s.stream, s.drho_field, s.dealias, n, check);
  const ScalarField y2 = stage(s.theta, 0.5 * dt, k1);
  const ScalarField k2 = rhs_of(y2, solve(y2), s.drho_field, s.dealias, n, check);
  const ScalarField y3 = stage(s.theta, 0.5 * dt, k2);
  const ScalarField k3 = rhs_of(y3, solve(y3), s.drho_field, s.dealias, n, check);
  const ScalarField y4 = stage(s.theta, dt, k3);
  const ScalarField k4 = rhs_of(y4, solve(y4), s.drho_field, s.dealias, n, check);

  SimState next = s;
  kernels::active().rk4_combine(s.theta.grid().size(), next.theta.values().data(), s.theta.values().data(), dt / 6.0,
                                k1.values().data(), k2.values().data(), k3.values().data(), k4.values().data());
  if (!next.theta.all_finite()) throw NumericalAbort(n, "theta");
  pin_walls(next.theta, &next.bc_drift);
  next.stream = solve_stream(s.model, next.theta);
  next.t = s.t + dt;
  next.step_count = n + 1;
  return next;
}

double adaptive_dt(const SimState& s, double cfl, double max_dt) {
  const Grid& g = s.theta.grid();
  const double a = norm_linf(s.stream.u1);
  const double b = norm_linf(s.stream.u2);
  double dt = max_dt;
  if (a > 0.0) dt = std::min(dt, cfl * g.dx1() / a);
  if (b > 0.0) dt = std::min(dt, cfl * g.dx2() / b);
  return dt;
}

namespace {

double rearrangement_drift(const SimState& s) {
  const Profile now = vertical_rearrangement(s.rho_s.rho.lift() + s.theta);
  double m = 0.0;
  for (std::size_t j = 0; j < now.size(); ++j) m = std::max(m, std::abs(now[j] - s.rho0_star[j]));
  return m;
}

}  // namespace

RunResult run(const RunConfig& cfg, SimState state, const RunObserver& observer) {
  cfg.validate();
  RunResult result;
  const auto samples = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.sample_dt));
  auto emit = [&](const DiagnosticsRecord& r, std::size_t m) {
    result.records.push_back(r);
    if (observer.on_sample) observer.on_sample(state, r, m);
  };
  try {
    emit(record(state), 0);
    result.rearrangement_drift.emplace_back(state.t, rearrangement_drift(state));
    for (std::size_t m = 1; m <= samples; ++m) {
      const double target = m == samples ? cfg.t_end : static_cast<double>(m) * cfg.sample_dt;
      bool guard = false;
      while (state.t < target) {
        double dt = adaptive_dt(state, cfg.cfl, cfg.sample_dt);
        const bool last = state.t + dt >= target - 1e-9 * cfg.sample_dt;
        if (last) dt = target - state.t;
        state = step(state, dt, cfg.guards.nan_abort);
        if (last) state.t = target;
        ++result.steps;
        if (norm_linf(state.theta) > cfg.guards.max_linf) {
          guard = true;
          break;
        }
      }
      const DiagnosticsRecord r = record(state);
      emit(r, m);
      if (m % cfg.drift_every == 0 || m == samples || guard)
        result.rearrangement_drift.emplace_back(state.t, rearrangement_drift(state));
      if (guard) {
        result.status = RunStatus::guard_stop;
        result.message = "theta sup norm exceeded guards.max_linf at t = " + std::to_string(state.t);
        break;
      }
    }
  } catch (const NumericalAbort& e) {
    result.status = RunStatus::numerical_abort;
    result.message = e.what();
  }
  return result;
}

}  // namespace stratlab
