#include "stratlab/fd_weights.hpp"

#include <algorithm>
#include <stdexcept>

#include "stratlab/kernels.hpp"

namespace stratlab {

std::vector<double> fd_weights(double x0, std::span<const double> x, int deriv) {
  const std::size_t n = x.size();
  if (deriv < 0 || n <= static_cast<std::size_t>(deriv))
    throw std::invalid_argument("fd_weights: not enough nodes for derivative order");
  const std::size_t m = static_cast<std::size_t>(deriv);
  // c[i][k]: weight of node i for derivative k.
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

VerticalOperator::VerticalOperator(std::size_t n, double h, int deriv, int order) : n_(n) {
  if (order != 2 && order != 4) throw std::invalid_argument("fd order must be 2 or 4");
  if (deriv < 1 || deriv > 2) throw std::invalid_argument("vertical operator supports d/dx2 and d2/dx2^2");
  radius_ = static_cast<std::size_t>(order / 2);
  const std::size_t window = static_cast<std::size_t>(order + deriv);
  if (n < window + 1) throw std::invalid_argument("too few vertical nodes for stencil");

  const double scale = deriv == 1 ? 1.0 / h : 1.0 / (h * h);
  // Weights computed on integer offsets, then scaled.
  std::vector<double> offs(2 * radius_ + 1);
  for (std::size_t s = 0; s < offs.size(); ++s) offs[s] = static_cast<double>(s) - static_cast<double>(radius_);
  interior_ = fd_weights(0.0, offs, deriv);
  for (double& w : interior_) w *= scale;

  rows_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    StencilRow& r = rows_[j];
    if (is_interior(j)) {
      r.first = j - radius_;
      r.w = interior_;
      continue;
    }
    r.first = j < radius_ ? 0 : n - window;
    std::vector<double> nodes(window);
    for (std::size_t s = 0; s < window; ++s) nodes[s] = static_cast<double>(r.first + s);
    r.w = fd_weights(static_cast<double>(j), nodes, deriv);
    for (double& w : r.w) w *= scale;
  }
}

void VerticalOperator::apply(const double* in, double* out) const {
  kernels::active().stencil(n_, out, in, interior_.data(), radius_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (is_interior(j)) continue;
    const StencilRow& r = rows_[j];
    double acc = 0.0;
    for (std::size_t s = 0; s < r.w.size(); ++s) acc += r.w[s] * in[r.first + s];
    out[j] = acc;
  }
}

void VerticalOperator::apply_complex(const double* in, double* out) const {
  for (std::size_t j = 0; j < n_; ++j) {
    const StencilRow& r = rows_[j];
    double re = 0.0;
    double im = 0.0;
    for (std::size_t s = 0; s < r.w.size(); ++s) {
      re += r.w[s] * in[2 * (r.first + s)];
      im += r.w[s] * in[2 * (r.first + s) + 1];
    }
    out[2 * j] = re;
    out[2 * j + 1] = im;
  }
}

}  // namespace stratlab
