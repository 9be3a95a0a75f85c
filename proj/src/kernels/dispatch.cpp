#include <atomic>
#include <cstdlib>

#include "stratlab/kernels.hpp"

namespace stratlab::kernels {

#if !defined(STRATLAB_HAVE_AVX2)
const KernelTable* detail::avx2_table() { return nullptr; }
#endif
#if !defined(STRATLAB_HAVE_NEON)
const KernelTable* detail::neon_table() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(STRATLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* detect() {
  if (const char* env = std::getenv("STRATLAB_KERNELS")) {
    Isa isa{};
    if (parse_isa(env, isa)) {
      if (const KernelTable* t = table_for(isa)) return t;
    }
  }
  if (const KernelTable* t = table_for(Isa::avx2)) return t;
  if (const KernelTable* t = table_for(Isa::neon)) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &scalar_table();
    case Isa::avx2:
      return cpu_has_avx2() ? detail::avx2_table() : nullptr;
    case Isa::neon:
      return detail::neon_table();
  }
  return nullptr;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool set_isa(Isa isa) {
  const KernelTable* t = table_for(isa);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool parse_isa(std::string_view name, Isa& out) {
  if (name == "scalar") {
    out = Isa::scalar;
  } else if (name == "avx2") {
    out = Isa::avx2;
  } else if (name == "neon") {
    out = Isa::neon;
  } else {
    return false;
  }
  return true;
}

}  // namespace stratlab::kernels
