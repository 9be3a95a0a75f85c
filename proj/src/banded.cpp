#include "stratlab/banded.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

extern "C" {
void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku, double* ab, const int* ldab, int* ipiv,
             int* info);
void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku, const int* nrhs, const double* ab,
             const int* ldab, const int* ipiv, double* b, const int* ldb, int* info, std::size_t trans_len);
}

namespace stratlab {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), ab_(ld_ * n, 0.0) {}

// Row kl + ku + i - j of column j holds A(i, j); the top kl rows are fill-in
// space for dgbtrf.
double& BandedMatrix::at(std::size_t i, std::size_t j) {
  if (!in_band(i, j)) throw std::out_of_range("banded entry outside band");
  return ab_[j * ld_ + kl_ + ku_ + i - j];
}

double BandedMatrix::at(std::size_t i, std::size_t j) const {
  if (!in_band(i, j)) return 0.0;
  return ab_[j * ld_ + kl_ + ku_ + i - j];
}

void BandedMatrix::multiply(const double* x, double* y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > kl_ ? i - kl_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + ku_);
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) acc += ab_[j * ld_ + kl_ + ku_ + i - j] * x[j];
    y[i] = acc;
  }
}

BandedLU::BandedLU(BandedMatrix a) : a_(std::move(a)), ipiv_(a_.n_) {
  const int n = static_cast<int>(a_.n_);
  const int kl = static_cast<int>(a_.kl_);
  const int ku = static_cast<int>(a_.ku_);
  const int ld = static_cast<int>(a_.ld_);
  int info = 0;
  dgbtrf_(&n, &n, &kl, &ku, a_.ab_.data(), &ld, ipiv_.data(), &info);
  if (info != 0) throw std::runtime_error("banded factorization failed (info " + std::to_string(info) + ")");
}

// Same arithmetic as dgbtrs('N'), written out so that the many small
// two-column solves avoid per-column BLAS call overhead.
void BandedLU::solve(double* b, std::size_t nrhs) const {
  const std::size_t n = a_.n_;
  const std::size_t kl = a_.kl_;
  const std::size_t kd = a_.kl_ + a_.ku_;
  const std::size_t ld = a_.ld_;
  const double* ab = a_.ab_.data();
  for (std::size_t r = 0; r < nrhs; ++r) {
    double* x = b + r * n;
    if (kl > 0) {
      for (std::size_t j = 0; j + 1 < n; ++j) {
        const std::size_t lm = std::min(kl, n - 1 - j);
        const std::size_t l = static_cast<std::size_t>(ipiv_[j] - 1);
        if (l != j) std::swap(x[l], x[j]);
        const double xj = x[j];
        const double* col = ab + j * ld + kd;
        for (std::size_t i = 1; i <= lm; ++i) x[j + i] -= col[i] * xj;
      }
    }
    for (std::size_t j = n; j-- > 0;) {
      const double* col = ab + j * ld + kd;
      const double xj = x[j] / col[0];
      x[j] = xj;
      const std::size_t top = j > kd ? j - kd : 0;
      for (std::size_t i = top; i < j; ++i) x[i] -= col[static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j)] * xj;
    }
  }
}

void BandedLU::solve_lapack(double* b, std::size_t nrhs) const {
  const char trans = 'N';
  const int n = static_cast<int>(a_.n_);
  const int kl = static_cast<int>(a_.kl_);
  const int ku = static_cast<int>(a_.ku_);
  const int ld = static_cast<int>(a_.ld_);
  const int nr = static_cast<int>(nrhs);
  int info = 0;
  dgbtrs_(&trans, &n, &kl, &ku, &nr, a_.ab_.data(), &ld, ipiv_.data(), b, &n, &info, 1);
  if (info != 0) throw std::runtime_error("banded solve failed (info " + std::to_string(info) + ")");
}

}  // namespace stratlab
