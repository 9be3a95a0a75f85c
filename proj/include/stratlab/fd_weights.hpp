#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stratlab {

/// Finite-difference weights for the `deriv`-th derivative at `x0` using the
/// nodes `x` (Fornberg's recursion). Exact for polynomials of degree < x.size().
std::vector<double> fd_weights(double x0, std::span<const double> x, int deriv);

/// One row of a vertical difference operator: out[j] = sum_s w[s] * in[first + s].
struct StencilRow {
  std::size_t first = 0;
  std::vector<double> w;
};

/// Vertical difference operator on n uniformly spaced nodes with spacing h.
/// Interior rows use the centered stencil of the requested accuracy order;
/// rows too close to a wall use a one-sided window of the same order pinned to
/// that wall (accuracy + deriv points).
class VerticalOperator {
 public:
  VerticalOperator() = default;
  VerticalOperator(std::size_t n, double h, int deriv, int order);

  std::size_t size() const { return n_; }
  std::size_t radius() const { return radius_; }
  const std::vector<double>& interior() const { return interior_; }
  const StencilRow& row(std::size_t j) const { return rows_[j]; }
  bool is_interior(std::size_t j) const { return j >= radius_ && j + radius_ < n_; }

  /// Scalar reference application on a contiguous line (stride 1).
  void apply(const double* in, double* out) const;
  /// Complex line stored as interleaved (re, im) pairs.
  void apply_complex(const double* in, double* out) const;

 private:
  std::size_t n_ = 0;
  std::size_t radius_ = 0;
  std::vector<double> interior_;
  std::vector<StencilRow> rows_;
};

}  // namespace stratlab
