#include <arm_neon.h>

#include "stratlab/kernels.hpp"

// 2-lane float64 variants for AArch64. Same operation order as the scalar
// reference, no fused multiply-add.

namespace stratlab::kernels {
namespace {

void axpy(std::size_t n, double a, const double* x, double* y) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2)
    vst1q_f64(y + k, vaddq_f64(vld1q_f64(y + k), vmulq_f64(va, vld1q_f64(x + k))));
  for (; k < n; ++k) y[k] += a * x[k];
}

void add_scaled(std::size_t n, double* out, const double* x, double a, const double* y) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2)
    vst1q_f64(out + k, vaddq_f64(vld1q_f64(x + k), vmulq_f64(va, vld1q_f64(y + k))));
  for (; k < n; ++k) out[k] = x[k] + a * y[k];
}

void mul(std::size_t n, double* out, const double* a, const double* b) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) vst1q_f64(out + k, vmulq_f64(vld1q_f64(a + k), vld1q_f64(b + k)));
  for (; k < n; ++k) out[k] = a[k] * b[k];
}

void advect(std::size_t n, double* out, const double* u1, const double* d1, const double* u2a,
            const double* d2, const double* src, const double* u2) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t a = vmulq_f64(vld1q_f64(u1 + k), vld1q_f64(d1 + k));
    const float64x2_t b = vmulq_f64(vld1q_f64(u2a + k), vld1q_f64(d2 + k));
    const float64x2_t s = vmulq_f64(vld1q_f64(src + k), vld1q_f64(u2 + k));
    vst1q_f64(out + k, vsubq_f64(vnegq_f64(vaddq_f64(a, b)), s));
  }
  for (; k < n; ++k) {
    const double adv = u1[k] * d1[k] + u2a[k] * d2[k];
    out[k] = -adv - src[k] * u2[k];
  }
}

void rk4_combine(std::size_t n, double* out, const double* y, double h, const double* k1,
                 const double* k2, const double* k3, const double* k4) {
  const float64x2_t two = vdupq_n_f64(2.0);
  const float64x2_t vh = vdupq_n_f64(h);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t s = vaddq_f64(vld1q_f64(k1 + k), vmulq_f64(two, vld1q_f64(k2 + k)));
    s = vaddq_f64(s, vmulq_f64(two, vld1q_f64(k3 + k)));
    s = vaddq_f64(s, vld1q_f64(k4 + k));
    vst1q_f64(out + k, vaddq_f64(vld1q_f64(y + k), vmulq_f64(vh, s)));
  }
  for (; k < n; ++k) {
    const double s = ((k1[k] + 2.0 * k2[k]) + 2.0 * k3[k]) + k4[k];
    out[k] = y[k] + h * s;
  }
}

void stencil(std::size_t n, double* out, const double* in, const double* w, std::size_t radius) {
  const std::size_t width = 2 * radius + 1;
  if (n < width) return;
  const std::size_t end = n - radius;
  std::size_t j = radius;
  for (; j + 2 <= end; j += 2) {
    const double* p = in + (j - radius);
    float64x2_t acc = vmulq_f64(vdupq_n_f64(w[0]), vld1q_f64(p));
    for (std::size_t s = 1; s < width; ++s)
      acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(w[s]), vld1q_f64(p + s)));
    vst1q_f64(out + j, acc);
  }
  for (; j < end; ++j) {
    const double* p = in + (j - radius);
    double acc = w[0] * p[0];
    for (std::size_t s = 1; s < width; ++s) acc = acc + w[s] * p[s];
    out[j] = acc;
  }
}

const KernelTable kTable{Isa::neon, axpy, add_scaled, mul, advect, rk4_combine, stencil};

}  // namespace

namespace detail {
const KernelTable* neon_table() { return &kTable; }
}  // namespace detail

}  // namespace stratlab::kernels
