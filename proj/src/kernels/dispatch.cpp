#include <atomic>
#include <cstdlib>
#include <string>

#include "rackd/error.hpp"
#include "rackd/kernels.hpp"

namespace rackd::kernels {
namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("RACKD_ISA"); env != nullptr) {
    if (std::string_view(env) == "scalar") return Isa::kScalar;
  }
  if (isa_supported(Isa::kAvx2)) return Isa::kAvx2;
  return Isa::kScalar;
}

std::atomic<Isa>& selected() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(RACKD_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return selected().load(std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

void force_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw Error("instruction set not supported on this CPU: " +
                std::string(isa_name(isa)));
  }
  selected().store(isa, std::memory_order_relaxed);
}

ComposeFn compose_kernel() noexcept {
#if defined(RACKD_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::kAvx2) return &compose_avx2;
#endif
  return &compose_scalar;
}

ConjugateFn conjugate_kernel() noexcept {
#if defined(RACKD_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::kAvx2) return &conjugate_avx2;
#endif
  return &conjugate_scalar;
}

}  // namespace rackd::kernels
