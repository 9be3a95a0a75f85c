#include <immintrin.h>

#include "stratlab/kernels.hpp"

// Compiled with -mavx2. No FMA: products and sums are rounded separately,
// matching the scalar reference bit for bit.

namespace stratlab::kernels {
namespace {

void axpy(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vy = _mm256_loadu_pd(y + k);
    _mm256_storeu_pd(y + k, _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + k))));
  }
  for (; k < n; ++k) y[k] += a * x[k];
}

void add_scaled(std::size_t n, double* out, const double* x, double a, const double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(y + k));
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_loadu_pd(x + k), t));
  }
  for (; k < n; ++k) out[k] = x[k] + a * y[k];
}

void mul(std::size_t n, double* out, const double* a, const double* b) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4)
    _mm256_storeu_pd(out + k, _mm256_mul_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  for (; k < n; ++k) out[k] = a[k] * b[k];
}

void advect(std::size_t n, double* out, const double* u1, const double* d1, const double* u2a,
            const double* d2, const double* src, const double* u2) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(u1 + k), _mm256_loadu_pd(d1 + k));
    const __m256d b = _mm256_mul_pd(_mm256_loadu_pd(u2a + k), _mm256_loadu_pd(d2 + k));
    const __m256d adv = _mm256_add_pd(a, b);
    const __m256d s = _mm256_mul_pd(_mm256_loadu_pd(src + k), _mm256_loadu_pd(u2 + k));
    _mm256_storeu_pd(out + k, _mm256_sub_pd(_mm256_xor_pd(adv, sign), s));
  }
  for (; k < n; ++k) {
    const double adv = u1[k] * d1[k] + u2a[k] * d2[k];
    out[k] = -adv - src[k] * u2[k];
  }
}

void rk4_combine(std::size_t n, double* out, const double* y, double h, const double* k1,
                 const double* k2, const double* k3, const double* k4) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d vh = _mm256_set1_pd(h);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(k1 + k), _mm256_mul_pd(two, _mm256_loadu_pd(k2 + k)));
    s = _mm256_add_pd(s, _mm256_mul_pd(two, _mm256_loadu_pd(k3 + k)));
    s = _mm256_add_pd(s, _mm256_loadu_pd(k4 + k));
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_loadu_pd(y + k), _mm256_mul_pd(vh, s)));
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
  for (; j + 4 <= end; j += 4) {
    const double* p = in + (j - radius);
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(w[0]), _mm256_loadu_pd(p));
    for (std::size_t s = 1; s < width; ++s)
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(w[s]), _mm256_loadu_pd(p + s)));
    _mm256_storeu_pd(out + j, acc);
  }
  for (; j < end; ++j) {
    const double* p = in + (j - radius);
    double acc = w[0] * p[0];
    for (std::size_t s = 1; s < width; ++s) acc = acc + w[s] * p[s];
    out[j] = acc;
  }
}

const KernelTable kTable{Isa::avx2, axpy, add_scaled, mul, advect, rk4_combine, stencil};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kTable; }
}  // namespace detail

}  // namespace stratlab::kernels
