#include "stratlab/kernels.hpp"

namespace stratlab::kernels {
namespace {

void axpy(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t k = 0; k < n; ++k) y[k] += a * x[k];
}

void add_scaled(std::size_t n, double* out, const double* x, double a, const double* y) {
  for (std::size_t k = 0; k < n; ++k) out[k] = x[k] + a * y[k];
}

void mul(std::size_t n, double* out, const double* a, const double* b) {
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * b[k];
}

void advect(std::size_t n, double* out, const double* u1, const double* d1, const double* u2a,
            const double* d2, const double* src, const double* u2) {
  for (std::size_t k = 0; k < n; ++k) {
    const double adv = u1[k] * d1[k] + u2a[k] * d2[k];
    out[k] = -adv - src[k] * u2[k];
  }
}

void rk4_combine(std::size_t n, double* out, const double* y, double h, const double* k1,
                 const double* k2, const double* k3, const double* k4) {
  for (std::size_t k = 0; k < n; ++k) {
    const double s = ((k1[k] + 2.0 * k2[k]) + 2.0 * k3[k]) + k4[k];
    out[k] = y[k] + h * s;
  }
}

void stencil(std::size_t n, double* out, const double* in, const double* w, std::size_t radius) {
  const std::size_t width = 2 * radius + 1;
  if (n < width) return;
  for (std::size_t j = radius; j + radius < n; ++j) {
    const double* p = in + (j - radius);
    double acc = w[0] * p[0];
    for (std::size_t s = 1; s < width; ++s) acc = acc + w[s] * p[s];
    out[j] = acc;
  }
}

const KernelTable kTable{Isa::scalar, axpy, add_scaled, mul, advect, rk4_combine, stencil};

}  // namespace

const KernelTable& scalar_table() { return kTable; }

}  // namespace stratlab::kernels
