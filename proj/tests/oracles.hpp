#pragma once
// Independent reference computations used by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "stratlab/grid.hpp"

namespace oracle {

// Sort-and-stack rearrangement: every sample carries the area of its cell
// (dx1 times its trapezoid weight, normalized by 2 pi); samples are stacked
// in decreasing order and f*(z) is the value whose cumulative area reaches z.
inline std::vector<double> sort_and_stack(const stratlab::ScalarField& f) {
  const stratlab::Grid& g = f.grid();
  const auto& w = g.vertical_weights();
  std::vector<std::pair<double, double>> cells;
  cells.reserve(g.size());
  for (std::size_t i = 0; i < g.n1(); ++i)
    for (std::size_t j = 0; j < g.n2(); ++j) cells.emplace_back(f(i, j), w[j] / static_cast<double>(g.n1()));
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<double> out(g.n2());
  std::size_t c = 0;
  double acc = 0.0;
  for (std::size_t j = 0; j < g.n2(); ++j) {
    const double z = g.x2(j);
    while (c + 1 < cells.size() && acc + cells[c].second < z) acc += cells[c++].second;
    out[j] = cells[c].first;
  }
  return out;
}

// Fraction of the domain with f > s, counting each sample with its cell area.
inline double cell_count_measure(const stratlab::ScalarField& f, double s) {
  const stratlab::Grid& g = f.grid();
  const auto& w = g.vertical_weights();
  double m = 0.0;
  for (std::size_t i = 0; i < g.n1(); ++i)
    for (std::size_t j = 0; j < g.n2(); ++j)
      if (f(i, j) > s) m += w[j];
  return m / static_cast<double>(g.n1());
}

// Smooth field: decreasing background plus a few random modes with a
// sin^2 envelope (vanishing on the walls).
inline stratlab::ScalarField random_smooth(const stratlab::Grid& g, std::uint64_t seed, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double a[4][3];
  for (auto& row : a)
    for (double& v : row) v = u(rng);
  const double slope = 0.5 + std::abs(u(rng));
  return stratlab::ScalarField::from_function(g, [&](double x, double z) {
    const double s = std::sin(std::numbers::pi * z);
    double p = 0.0;
    for (int k = 0; k < 4; ++k) p += (a[k][0] * std::sin((k + 1) * x) + a[k][1] * std::cos((k + 1) * x)) * std::cos(a[k][2] * 3 * z);
    return slope * (1 - z) + amp * p * s * s;
  });
}

}  // namespace oracle
