#pragma once
// Discretization of the periodic channel T x (0, 1): Fourier collocation in
// x1 (period 2*pi), uniform vertical nodes including both walls.

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "stratlab/fd_weights.hpp"

namespace stratlab {

namespace detail {
struct GridResources;
}

class Grid {
 public:
  Grid(std::size_t n1, std::size_t n2, int fd_order = 4);

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  int fd_order() const { return fd_order_; }
  std::size_t size() const { return n1_ * n2_; }
  /// Number of stored Fourier modes, k = 0..n1/2.
  std::size_t modes() const { return n1_ / 2 + 1; }

  double dx1() const;
  double dx2() const;
  double x1(std::size_t i) const;
  double x2(std::size_t j) const;

  /// Vertical trapezoid weights (sum to 1).
  const std::vector<double>& vertical_weights() const;
  const VerticalOperator& d2_first() const;
  const VerticalOperator& d2_second() const;
  const detail::GridResources& resources() const { return *res_; }

  /// Same node set and difference order.
  bool same_as(const Grid& other) const;

 private:
  std::size_t n1_;
  std::size_t n2_;
  int fd_order_;
  std::shared_ptr<const detail::GridResources> res_;
};

/// Real samples v[i][j] = f(x1_i, x2_j), stored row-major (j fastest).
class ScalarField {
 public:
  explicit ScalarField(const Grid& grid);
  ScalarField(const Grid& grid, std::vector<double> values);

  template <class F>
  static ScalarField from_function(const Grid& grid, F&& f) {
    ScalarField out(grid);
    for (std::size_t i = 0; i < grid.n1(); ++i)
      for (std::size_t j = 0; j < grid.n2(); ++j) out(i, j) = f(grid.x1(i), grid.x2(j));
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * grid_.n2() + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * grid_.n2() + j]; }
  double* column(std::size_t i) { return values_.data() + i * grid_.n2(); }
  const double* column(std::size_t i) const { return values_.data() + i * grid_.n2(); }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double a);
  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double a, ScalarField b);

/// Half-spectrum Fourier coefficients per vertical node: coeff(k, j) for
/// k = 0..n1/2 with f(x1) = sum_k fhat_k e^{i k x1} (Hermitian completion).
class ModalField {
 public:
  explicit ModalField(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::complex<double>& operator()(std::size_t k, std::size_t j) { return coeffs_[k * grid_.n2() + j]; }
  std::complex<double> operator()(std::size_t k, std::size_t j) const { return coeffs_[k * grid_.n2() + j]; }
  std::complex<double>* mode(std::size_t k) { return coeffs_.data() + k * grid_.n2(); }
  const std::complex<double>* mode(std::size_t k) const { return coeffs_.data() + k * grid_.n2(); }
  std::vector<std::complex<double>>& coeffs() { return coeffs_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// Function of x2 alone, sampled at the vertical nodes.
class Profile {
 public:
  explicit Profile(const Grid& grid);
  Profile(const Grid& grid, std::vector<double> values);

  template <class F>
  static Profile from_function(const Grid& grid, F&& f) {
    Profile p(grid);
    for (std::size_t j = 0; j < grid.n2(); ++j) p[j] = f(grid.x2(j));
    return p;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t j) { return values_[j]; }
  double operator[](std::size_t j) const { return values_[j]; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  /// Constant-in-x1 field with these values.
  ScalarField lift() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

ModalField to_modal(const ScalarField& f);
ScalarField to_physical(const ModalField& m);

/// Spectral derivative in x1; the Nyquist mode is dropped.
ScalarField ddx1(const ScalarField& f);
/// Finite-difference derivative in x2 of the grid's order.
ScalarField ddx2(const ScalarField& f);
ModalField ddx1(const ModalField& m);
ModalField ddx2(const ModalField& m);

/// Rectangle rule in x1 times trapezoid rule in x2, fixed summation order.
double integrate(const ScalarField& f);
/// integrate(f * g) without materializing the product.
double integrate_product(const ScalarField& f, const ScalarField& g);
/// Trapezoid rule of a profile over [0, 1] (no 2*pi factor).
double integrate_vertical(const Profile& p);

enum class NormKind { L2, Hk, Linf, W1inf };
double norm(const ScalarField& f, NormKind kind, int k = 0);
inline double norm_l2(const ScalarField& f) { return norm(f, NormKind::L2); }
inline double norm_hk(const ScalarField& f, int k) { return norm(f, NormKind::Hk, k); }
/// H^0..H^kmax norms in one pass.
std::vector<double> norm_hk_all(const ScalarField& f, int kmax);
inline double norm_linf(const ScalarField& f) { return norm(f, NormKind::Linf); }

Profile x1_average(const ScalarField& f);
/// Two-thirds rule: zeroes modes k with 3k > n1.
ModalField dealias(const ModalField& m);
void dealias_in_place(ModalField& m);
inline bool is_dealiased_mode(const Grid& g, std::size_t k) { return 3 * k > g.n1(); }

/// Sum with pairwise splitting; deterministic for a given length.
double pairwise_sum(const double* v, std::size_t n);

}  // namespace stratlab
