#pragma once
// LU factorization of a real banded matrix (LAPACK dgbtrf/dgbtrs).

#include <cstddef>
#include <vector>

namespace stratlab {

class BandedMatrix {
 public:
  BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

  std::size_t size() const { return n_; }
  std::size_t kl() const { return kl_; }
  std::size_t ku() const { return ku_; }
  bool in_band(std::size_t i, std::size_t j) const { return j + kl_ >= i && i + ku_ >= j; }
  /// Entry (i, j); must lie in the band.
  double& at(std::size_t i, std::size_t j);
  double at(std::size_t i, std::size_t j) const;

  /// y = A x
  void multiply(const double* x, double* y) const;

 private:
  friend class BandedLU;
  std::size_t n_, kl_, ku_, ld_;
  std::vector<double> ab_;  // LAPACK band storage, column-major, ld = 2 kl + ku + 1
};

class BandedLU {
 public:
  /// Throws std::runtime_error if the matrix is singular.
  explicit BandedLU(BandedMatrix a);

  /// Solves A X = B in place for `nrhs` column-major right-hand sides.
  void solve(double* b, std::size_t nrhs) const;
  /// Reference path through dgbtrs.
  void solve_lapack(double* b, std::size_t nrhs) const;
  std::size_t size() const { return a_.n_; }

 private:
  BandedMatrix a_;
  std::vector<int> ipiv_;
};

}  // namespace stratlab
