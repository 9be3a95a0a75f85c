#include "stratlab/decay_lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stratlab {

Trajectory::Trajectory(std::vector<double> times, std::vector<double> values)
    : t_(std::move(times)), v_(std::move(values)) {
  if (t_.size() != v_.size()) throw std::invalid_argument("trajectory: times and values differ in length");
  if (t_.size() < 3) throw std::invalid_argument("trajectory: need at least 3 samples");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i]) || !std::isfinite(v_[i])) throw std::invalid_argument("trajectory: non-finite sample");
    if (v_[i] < 0.0) throw std::invalid_argument("trajectory: negative value");
    if (i > 0 && !(t_[i] > t_[i - 1])) throw std::invalid_argument("trajectory: times not strictly increasing");
  }
}

double Trajectory::at(double t) const {
  if (t < t_.front() || t > t_.back()) throw std::out_of_range("trajectory: time outside sampled range");
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  if (it == t_.end()) return v_.back();
  const std::size_t i = static_cast<std::size_t>(it - t_.begin());
  if (i == 0) return v_.front();
  const double w = (t - t_[i - 1]) / (t_[i] - t_[i - 1]);
  return v_[i - 1] + w * (v_[i] - v_[i - 1]);
}

double Trajectory::integral(double a, double b) const {
  if (a > b) throw std::invalid_argument("trajectory: reversed integration bounds");
  if (a < t_.front() || b > t_.back()) throw std::out_of_range("trajectory: integral outside sampled range");
  double acc = 0.0;
  double prev_t = a;
  double prev_v = at(a);
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (t_[i] <= a) continue;
    if (t_[i] >= b) break;
    acc += 0.5 * (t_[i] - prev_t) * (v_[i] + prev_v);
    prev_t = t_[i];
    prev_v = v_[i];
  }
  acc += 0.5 * (b - prev_t) * (at(b) + prev_v);
  return acc;
}

Trajectory Trajectory::window(double a, double b) const {
  std::vector<double> t, v;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (t_[i] < a || t_[i] > b) continue;
    t.push_back(t_[i]);
    v.push_back(v_[i]);
  }
  return Trajectory(std::move(t), std::move(v));
}

double time_average(const Trajectory& tr, double t) {
  if (!(t > 0.0)) throw std::out_of_range("time_average: t must be positive");
  return 2.0 / t * tr.integral(0.5 * t, t);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::not_applicable:
      return "not-applicable";
  }
  return "?";
}

bool derivative_hypothesis(const Trajectory& f, const std::vector<double>& g) {
  const auto& t = f.times();
  const auto& v = f.values();
  const std::size_t n = t.size();
  if (g.size() != n) throw std::invalid_argument("derivative_hypothesis: length mismatch");
  auto slack = [&](std::size_t i) { return kHypothesisSlack * (1.0 + std::abs(v[i])); };
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    secant[i] = (v[i + 1] - v[i]) / (t[i + 1] - t[i]);
    if (secant[i] > -std::min(g[i], g[i + 1]) + slack(i)) return false;
  }
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (std::min(secant[i - 1], secant[i]) > -g[i] + slack(i)) return false;
  return true;
}

namespace {

void require_common_times(const Trajectory& a, const Trajectory& b) {
  if (a.times() != b.times()) throw std::invalid_argument("trajectories must share sample times");
}

}  // namespace

Lemma21Result lemma21_bound(const Trajectory& f, const Trajectory& a, double alpha, double n) {
  if (!(alpha > 0.0) || !(n > 1.0)) throw std::invalid_argument("lemma21: need alpha > 0 and n > 1");
  require_common_times(f, a);
  const auto& t = f.times();
  const auto& fv = f.values();
  const auto& av = a.values();
  std::vector<double> rate(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(av[i] > 0.0)) return {};
    rate[i] = std::pow(av[i], -alpha) * std::pow(fv[i], n);
  }
  Lemma21Result r;
  if (!derivative_hypothesis(f, rate)) return r;
  r.margin = std::numeric_limits<double>::infinity();
  double A = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    A += 0.5 * (t[i] - t[i - 1]) * (av[i] + av[i - 1]);
    const double s = t[i] - t.front();
    const double bound = std::pow(std::pow(A, alpha) / ((n - 1.0) * std::pow(s, alpha + 1.0)), 1.0 / (n - 1.0));
    r.margin = std::min(r.margin, (bound - fv[i]) / bound);
  }
  r.verdict = r.margin >= 0.0 ? Verdict::holds : Verdict::fails;
  return r;
}

Lemma22Result lemma22_check(const Trajectory& f, const Trajectory& g, const Trajectory& h, double n, double C) {
  if (!(n > 0.0) || !(C >= 0.0)) throw std::invalid_argument("lemma22: need n > 0 and C >= 0");
  require_common_times(f, g);
  require_common_times(f, h);
  const auto& t = f.times();
  if (!(t.front() > 0.0)) throw std::invalid_argument("lemma22: sample times must be positive");
  Lemma22Result r;
  if (!derivative_hypothesis(f, g.values()) || !derivative_hypothesis(g, h.values())) return r;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (f.values()[i] > C * std::pow(t[i], -n) * (1.0 + 1e-12)) return r;

  const double cg = std::pow(2.0, n + 1.0) * C;
  const double ch = std::pow(2.0, 2.0 * n + 3.0) * C;
  r.g_margin = r.h_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = t[i];
    if (s / 2.0 >= t.front()) {
      const double bound = cg * std::pow(s, -(n + 1.0));
      r.g_margin = std::min(r.g_margin, (bound - time_average(g, s)) / bound);
      ++r.g_checked;
    }
    if (s / 4.0 >= t.front()) {
      const double bound = ch * std::pow(s, -(n + 2.0));
      r.h_margin = std::min(r.h_margin, (bound - time_average(h, s)) / bound);
      ++r.h_checked;
    }
  }
  r.g = r.g_margin >= 0.0 ? Verdict::holds : Verdict::fails;
  r.h = r.h_margin >= 0.0 ? Verdict::holds : Verdict::fails;
  return r;
}

double lemma23_constant(double alpha, double n) {
  const double q = std::pow(2.0, 1.0 - alpha * n);
  return std::pow(2.0, -alpha * n) * (1.0 + 1.0 / (1.0 - q));
}

Lemma23Result lemma23_check(const Trajectory& f, double n, double E, double alpha) {
  if (!(n > 1.0) || !(E >= 0.0) || !(alpha > 1.0 / n && alpha <= 1.0))
    throw std::invalid_argument("lemma23: need n > 1, E >= 0, alpha in (1/n, 1]");
  const auto& t = f.times();
  const double T = t.back();
  if (t.front() > 1.0 || !(T > 2.0)) throw std::invalid_argument("lemma23: samples must cover [1, T] with T > 2");
  Lemma23Result r;
  auto hyp = [&](double s) {
    const double lim = E * std::pow(s, -n);
    return time_average(f, s) <= lim + kHypothesisSlack * lim;
  };
  if (!hyp(2.0)) return r;
  for (double s = T; s >= 2.0; s *= 0.5)
    if (!hyp(s)) return r;
  // integral of f^alpha over [1, T]: trapezoid of the interpolant's samples
  const auto& v = f.values();
  double prev_t = 1.0;
  double prev_v = std::pow(f.at(1.0), alpha);
  double acc = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= 1.0) continue;
    const double fv = std::pow(v[i], alpha);
    acc += 0.5 * (t[i] - prev_t) * (fv + prev_v);
    prev_t = t[i];
    prev_v = fv;
  }
  r.integral = acc;
  r.bound = lemma23_constant(alpha, n) * std::pow(E, alpha);
  r.verdict = r.integral <= r.bound ? Verdict::holds : Verdict::fails;
  return r;
}

PowerFit fit_power_law(const Trajectory& tr, double t_min, double t_max) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double t = tr.times()[i];
    const double v = tr.values()[i];
    if (t < t_min || t > t_max || !(v > 0.0) || !(t > 0.0)) continue;
    x.push_back(std::log(t));
    y.push_back(std::log(v));
  }
  if (x.size() < 8) throw std::invalid_argument("fit_power_law: fewer than 8 positive samples in window");
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_power_law: degenerate time window");
  PowerFit p;
  p.exponent = sxy / sxx;
  p.prefactor = std::exp(my - p.exponent * mx);
  p.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  p.points = x.size();
  return p;
}

double power_prefactor(const Trajectory& tr, double n) {
  double c = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double t = tr.times()[i];
    if (!(t > 0.0)) throw std::invalid_argument("power_prefactor: times must be positive");
    c = std::max(c, tr.values()[i] * std::pow(t, n));
  }
  return c;
}

}  // namespace stratlab
