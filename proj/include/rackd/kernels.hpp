#pragma once

// Byte-table kernels behind permutation arithmetic. Every permutation is
// stored as a 64-entry image table (entries past the degree map to
// themselves), so composition is a 64-lane gather. The scalar variants are
// the reference; the AVX2 variants must agree with them bit for bit.

#include <cstdint>
#include <string_view>

namespace rackd::kernels {

inline constexpr int kLanes = 64;

enum class Isa { kScalar, kAvx2 };

// out[i] = a[b[i]] for all 64 lanes. out may alias neither a nor b.
using ComposeFn = void (*)(const std::uint8_t* a, const std::uint8_t* b,
                           std::uint8_t* out) noexcept;
// out[i] = g[x[g_inv[i]]], i.e. the table of g x g^-1.
using ConjugateFn = void (*)(const std::uint8_t* g, const std::uint8_t* g_inv,
                             const std::uint8_t* x, std::uint8_t* out) noexcept;

void compose_scalar(const std::uint8_t* a, const std::uint8_t* b,
                    std::uint8_t* out) noexcept;
void conjugate_scalar(const std::uint8_t* g, const std::uint8_t* g_inv,
                      const std::uint8_t* x, std::uint8_t* out) noexcept;

#if defined(__x86_64__) || defined(_M_X64)
#define RACKD_HAVE_AVX2_KERNELS 1
void compose_avx2(const std::uint8_t* a, const std::uint8_t* b,
                  std::uint8_t* out) noexcept;
void conjugate_avx2(const std::uint8_t* g, const std::uint8_t* g_inv,
                    const std::uint8_t* x, std::uint8_t* out) noexcept;
#endif

bool isa_supported(Isa isa) noexcept;

// Selected once from CPUID; RACKD_ISA=scalar in the environment forces the
// reference path.
Isa active_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;

// Test hook: overrides the runtime selection. Throws if unsupported.
void force_isa(Isa isa);

ComposeFn compose_kernel() noexcept;
ConjugateFn conjugate_kernel() noexcept;

}  // namespace rackd::kernels
