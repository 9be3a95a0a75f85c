#include "stratlab/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <tuple>

namespace stratlab {

namespace {

// mu(s) as a piecewise-linear, right-continuous function of s. Breakpoints
// are descending; on (v[m+1], v[m]) mu has slope -slope[m] in s and runs from
// left[m] at v[m] to right[m+1] at v[m+1].
struct Measure {
  std::vector<double> v;
  std::vector<double> right;  // mu(v[m])
  std::vector<double> left;   // mu(v[m]-), includes flat segments at v[m]
  std::vector<double> slope;  // |d mu / ds| just below v[m]
};

Measure build_measure(const ScalarField& f) {
  const Grid& g = f.grid();
  const std::size_t n1 = g.n1();
  const std::size_t n2 = g.n2();
  const double dz = g.dx2();
  const double inv_n1 = 1.0 / static_cast<double>(n1);
  // (value, order key, slope change, jump)
  std::vector<std::tuple<double, std::size_t, double, double>> ev;
  ev.reserve(2 * n1 * (n2 - 1));
  std::size_t key = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    const double* c = f.column(i);
    for (std::size_t j = 0; j + 1 < n2; ++j) {
      const double a = c[j];
      const double b = c[j + 1];
      if (a == b) {
        ev.emplace_back(a, key++, 0.0, dz * inv_n1);
        continue;
      }
      const double lo = std::min(a, b);
      const double hi = std::max(a, b);
      const double d = dz * inv_n1 / (hi - lo);
      ev.emplace_back(hi, key++, d, 0.0);
      ev.emplace_back(lo, key++, -d, 0.0);
    }
  }
  std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
    return std::get<1>(x) < std::get<1>(y);
  });

  Measure m;
  double mu = 0.0;
  double slope = 0.0;
  for (std::size_t e = 0; e < ev.size();) {
    const double v = std::get<0>(ev[e]);
    if (!m.v.empty()) mu += slope * (m.v.back() - v);
    m.v.push_back(v);
    m.right.push_back(mu);
    double jump = 0.0;
    double ds = 0.0;
    for (; e < ev.size() && std::get<0>(ev[e]) == v; ++e) {
      ds += std::get<2>(ev[e]);
      jump += std::get<3>(ev[e]);
    }
    mu += jump;
    m.left.push_back(mu);
    slope = std::max(0.0, slope + ds);
    m.slope.push_back(slope);
  }
  return m;
}

// Nonincreasing column shared by every x1, or nothing.
std::optional<std::vector<double>> stratified_decreasing(const ScalarField& f) {
  const Grid& g = f.grid();
  const double* c0 = f.column(0);
  for (std::size_t j = 0; j + 1 < g.n2(); ++j)
    if (c0[j + 1] > c0[j]) return std::nullopt;
  for (std::size_t i = 1; i < g.n1(); ++i)
    if (!std::equal(c0, c0 + g.n2(), f.column(i))) return std::nullopt;
  return std::vector<double>(c0, c0 + g.n2());
}

std::vector<double> invert(const Measure& m, const Grid& g) {
  const std::size_t n2 = g.n2();
  std::vector<double> out(n2);
  std::size_t k = 0;
  for (std::size_t j = 0; j < n2; ++j) {
    const double z = g.x2(j);
    double s = m.v.back();
    for (; k < m.v.size(); ++k) {
      if (k > 0 && z < m.right[k]) {
        const double sl = m.slope[k - 1];
        s = sl > 0.0 ? m.v[k - 1] - (z - m.left[k - 1]) / sl : m.v[k];
        s = std::clamp(s, m.v[k], m.v[k - 1]);
        break;
      }
      if (z < m.left[k]) {
        s = m.v[k];
        break;
      }
    }
    out[j] = s;
  }
  for (std::size_t j = 1; j < n2; ++j) out[j] = std::min(out[j], out[j - 1]);
  return out;
}

double measure_energy(const Measure& m) {
  // int_0^1 z f*(z) dz = s_min / 2 + 1/2 int mu(s)^2 ds
  std::vector<double> pieces(m.v.size(), 0.0);
  for (std::size_t k = 1; k < m.v.size(); ++k) {
    const double a = m.left[k - 1];
    const double b = m.right[k];
    pieces[k] = (m.v[k - 1] - m.v[k]) * (a * a + a * b + b * b) / 3.0;
  }
  const double smin = m.v.back();
  return 2.0 * std::numbers::pi * (0.5 * smin + 0.5 * pairwise_sum(pieces.data(), pieces.size()));
}

double column_energy(const double* c, const Grid& g) {
  const double d = g.dx2();
  std::vector<double> seg(g.n2() - 1);
  for (std::size_t j = 0; j + 1 < g.n2(); ++j) {
    const double a = c[j];
    const double b = c[j + 1];
    seg[j] = d * (g.x2(j) * 0.5 * (a + b) + d * (a / 6.0 + b / 3.0));
  }
  return pairwise_sum(seg.data(), seg.size());
}

ScalarField lift(const Grid& g, const std::vector<double>& col) { return Profile(g, col).lift(); }

}  // namespace

double superlevel_measure(const ScalarField& f, double s) {
  const Grid& g = f.grid();
  const double dz = g.dx2();
  std::vector<double> cols(g.n1(), 0.0);
  for (std::size_t i = 0; i < g.n1(); ++i) {
    const double* c = f.column(i);
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < g.n2(); ++j) {
      const double a = c[j];
      const double b = c[j + 1];
      const double lo = std::min(a, b);
      const double hi = std::max(a, b);
      if (s >= hi) continue;
      if (s < lo || a == b) {
        acc += dz;
        continue;
      }
      acc += dz * (hi - s) / (hi - lo);
    }
    cols[i] = acc;
  }
  return std::clamp(pairwise_sum(cols.data(), cols.size()) / static_cast<double>(g.n1()), 0.0, 1.0);
}

Profile vertical_rearrangement(const ScalarField& f) {
  const Grid& g = f.grid();
  if (auto col = stratified_decreasing(f)) return Profile(g, *col);
  return Profile(g, invert(build_measure(f), g));
}

double rearranged_potential_energy(const ScalarField& f) {
  if (auto col = stratified_decreasing(f)) return interpolant_potential_energy(f);
  return measure_energy(build_measure(f));
}

double interpolant_potential_energy(const ScalarField& f) {
  const Grid& g = f.grid();
  std::vector<double> cols(g.n1());
  for (std::size_t i = 0; i < g.n1(); ++i) cols[i] = column_energy(f.column(i), g);
  return g.dx1() * pairwise_sum(cols.data(), cols.size());
}

EnergyGap energy_gap(const ScalarField& f) {
  const Grid& g = f.grid();
  EnergyGap r;
  std::vector<double> star;
  double ep_star = 0.0;
  if (auto col = stratified_decreasing(f)) {
    star = *col;
    ep_star = interpolant_potential_energy(f);
  } else {
    const Measure m = build_measure(f);
    star = invert(m, g);
    ep_star = measure_energy(m);
  }
  r.gap = interpolant_potential_energy(f) - ep_star;
  const ScalarField diff = f - lift(g, star);
  r.dist2 = integrate_product(diff, diff);
  r.ratio = r.dist2 < kDist2Floor ? 0.0 : r.gap / r.dist2;
  return r;
}

double check_gradient_bound(const ScalarField& f) {
  const double num = norm_l2(ddx1(f));
  const ScalarField diff = f - vertical_rearrangement(f).lift();
  const double d2 = integrate_product(diff, diff);
  if (d2 < kDist2Floor) return std::numeric_limits<double>::infinity();
  return num / std::sqrt(d2);
}

namespace {

// Height where a strictly decreasing column crosses s (0 above the top value,
// 1 below the bottom value).
double level_height(const double* c, const Grid& g, double s) {
  const std::size_t n2 = g.n2();
  if (s >= c[0]) return 0.0;
  if (s <= c[n2 - 1]) return 1.0;
  std::size_t lo = 0;
  std::size_t hi = n2 - 1;  // c[lo] > s >= c[hi]
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (c[mid] > s)
      lo = mid;
    else
      hi = mid;
  }
  const double t = (c[lo] - s) / (c[lo] - c[hi]);
  return g.x2(lo) + t * g.dx2();
}

}  // namespace

LevelDecomposition decompose_levels(const ScalarField& f, const Profile& rho_s) {
  const Grid& g = f.grid();
  const std::size_t n1 = g.n1();
  const std::size_t n2 = g.n2();
  LevelDecomposition d;
  for (std::size_t i = 0; i < n1; ++i) {
    const double* c = f.column(i);
    for (std::size_t j = 0; j + 1 < n2; ++j) {
      if (!(c[j + 1] < c[j])) {
        d.valid = false;
        d.bad_column = i;
        return d;
      }
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(f.values().begin(), f.values().end());
  const double smin = *lo_it;
  const double smax = *hi_it;
  const std::size_t ns = 2 * n2;
  d.s_grid.resize(ns);
  for (std::size_t m = 0; m < ns; ++m)
    d.s_grid[m] = smin + (smax - smin) * static_cast<double>(m) / static_cast<double>(ns - 1);

  std::vector<double> phi(n1 * ns);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n1); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t m = 0; m < ns; ++m) phi[i * ns + m] = level_height(f.column(i), g, d.s_grid[m]);
  }
  d.phi1.assign(ns, 0.0);
  std::vector<double> tmp(n1);
  for (std::size_t m = 0; m < ns; ++m) {
    for (std::size_t i = 0; i < n1; ++i) tmp[i] = phi[i * ns + m];
    d.phi1[m] = pairwise_sum(tmp.data(), n1) / static_cast<double>(n1);
  }
  d.h.resize(n1 * ns);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t m = 0; m < ns; ++m) d.h[i * ns + m] = phi[i * ns + m] - d.phi1[m];

  const double ds = ns > 1 ? (smax - smin) / static_cast<double>(ns - 1) : 0.0;
  std::vector<double> col_int(n1, 0.0);
  for (std::size_t i = 0; i < n1; ++i) {
    double acc = 0.0;
    for (std::size_t m = 0; m < ns; ++m) {
      const double hv = d.h[i * ns + m];
      const double w = (m == 0 || m + 1 == ns) ? 0.5 : 1.0;
      acc += w * hv * hv;
      d.h_sup = std::max(d.h_sup, std::abs(hv));
      if (m + 1 < ns && ds > 0.0)
        d.dh_ds_sup = std::max(d.dh_ds_sup, std::abs(d.h[i * ns + m + 1] - hv) / ds);
    }
    col_int[i] = acc * ds;
  }
  d.half_h2 = 0.5 * g.dx1() * pairwise_sum(col_int.data(), n1);

  // phi0 = rho_s^{-1}, where rho_s is strictly decreasing.
  bool invertible = true;
  for (std::size_t j = 0; j + 1 < n2; ++j) invertible = invertible && rho_s[j + 1] < rho_s[j];
  if (invertible) {
    for (std::size_t m = 0; m < ns; ++m) {
      const double phi0 = level_height(rho_s.values().data(), g, d.s_grid[m]);
      d.phi1_minus_phi0_sup = std::max(d.phi1_minus_phi0_sup, std::abs(d.phi1[m] - phi0));
    }
  } else {
    d.phi1_minus_phi0_sup = std::numeric_limits<double>::quiet_NaN();
  }
  d.valid = true;
  return d;
}

}  // namespace stratlab
