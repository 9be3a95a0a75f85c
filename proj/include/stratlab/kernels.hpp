#pragma once
// Data-parallel inner loops used by the transport step and the grid
// operators. Every kernel has a scalar reference implementation and, where
// the target supports it, a SIMD variant selected once at startup. Variants
// perform the same floating-point operations in the same order, so results
// are bitwise identical across ISAs.

#include <cstddef>
#include <string_view>

namespace stratlab::kernels {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  // y[k] += a * x[k]
  void (*axpy)(std::size_t n, double a, const double* x, double* y);
  // out[k] = x[k] + a * y[k]
  void (*add_scaled)(std::size_t n, double* out, const double* x, double a, const double* y);
  // out[k] = a[k] * b[k]
  void (*mul)(std::size_t n, double* out, const double* a, const double* b);
  // out[k] = -(u1[k] * d1[k] + u2a[k] * d2[k]) - src[k] * u2[k]
  void (*advect)(std::size_t n, double* out, const double* u1, const double* d1, const double* u2a,
                 const double* d2, const double* src, const double* u2);
  // out[k] = y[k] + h * (k1[k] + 2 k2[k] + 2 k3[k] + k4[k]), h = dt / 6
  void (*rk4_combine)(std::size_t n, double* out, const double* y, double h, const double* k1,
                      const double* k2, const double* k3, const double* k4);
  // Centered stencil on a contiguous line: out[j] = sum_s w[s] * in[j - r + s]
  // for j in [r, n - r). Entries outside that range are left untouched.
  void (*stencil)(std::size_t n, double* out, const double* in, const double* w, std::size_t radius);
};

/// Table chosen by CPU detection, overridable by set_isa() or the
/// STRATLAB_KERNELS environment variable ("scalar", "avx2", "neon").
const KernelTable& active();

/// Reference implementation, always available.
const KernelTable& scalar_table();

/// Nullptr when the ISA is not compiled in or not supported by this CPU.
const KernelTable* table_for(Isa isa);

/// Returns false (and leaves the selection unchanged) if `isa` is unavailable.
bool set_isa(Isa isa);

std::string_view isa_name(Isa isa);
bool parse_isa(std::string_view name, Isa& out);

namespace detail {
const KernelTable* avx2_table();
const KernelTable* neon_table();
}  // namespace detail

}  // namespace stratlab::kernels
