#include "rackd/kernels.hpp"

namespace rackd::kernels {

void compose_scalar(const std::uint8_t* a, const std::uint8_t* b,
                    std::uint8_t* out) noexcept {
  for (int i = 0; i < kLanes; ++i) out[i] = a[b[i]];
}

void conjugate_scalar(const std::uint8_t* g, const std::uint8_t* g_inv,
                      const std::uint8_t* x, std::uint8_t* out) noexcept {
  for (int i = 0; i < kLanes; ++i) out[i] = g[x[g_inv[i]]];
}

}  // namespace rackd::kernels
