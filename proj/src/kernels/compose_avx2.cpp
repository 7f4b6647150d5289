// Compiled with -mavx2 (see src/CMakeLists.txt); only reached after the
// dispatcher has confirmed CPU support.

#include "rackd/kernels.hpp"

#if defined(RACKD_HAVE_AVX2_KERNELS)
#include <immintrin.h>

namespace rackd::kernels {
namespace {

// Gathers table[idx[i]] for 32 byte indices in [0, 64). pshufb only looks at
// the low nibble within each 128-bit lane, so the 64-byte table is split into
// four 16-byte quarters broadcast to both lanes, and the quarter is chosen by
// the high bits of each index.
struct Table64 {
  __m256i q[4];

  explicit Table64(const std::uint8_t* table) noexcept {
    for (int k = 0; k < 4; ++k) {
      __m128i part =
          _mm_loadu_si128(reinterpret_cast<const __m128i*>(table + 16 * k));
      q[k] = _mm256_broadcastsi128_si256(part);
    }
  }

  __m256i gather(__m256i idx) const noexcept {
    const __m256i low_nibble = _mm256_and_si256(idx, _mm256_set1_epi8(0x0F));
    const __m256i quarter = _mm256_and_si256(_mm256_srli_epi16(idx, 4),
                                             _mm256_set1_epi8(0x03));
    __m256i result = _mm256_shuffle_epi8(q[0], low_nibble);
    for (int k = 1; k < 4; ++k) {
      __m256i hit = _mm256_cmpeq_epi8(quarter, _mm256_set1_epi8(static_cast<char>(k)));
      __m256i val = _mm256_shuffle_epi8(q[k], low_nibble);
      result = _mm256_blendv_epi8(result, val, hit);
    }
    return result;
  }
};

inline __m256i load32(const std::uint8_t* p) noexcept {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store32(std::uint8_t* p, __m256i v) noexcept {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

}  // namespace

void compose_avx2(const std::uint8_t* a, const std::uint8_t* b,
                  std::uint8_t* out) noexcept {
  const Table64 ta(a);
  store32(out, ta.gather(load32(b)));
  store32(out + 32, ta.gather(load32(b + 32)));
}

void conjugate_avx2(const std::uint8_t* g, const std::uint8_t* g_inv,
                    const std::uint8_t* x, std::uint8_t* out) noexcept {
  const Table64 tg(g);
  const Table64 tx(x);
  for (int half = 0; half < 2; ++half) {
    __m256i idx = load32(g_inv + 32 * half);
    store32(out + 32 * half, tg.gather(tx.gather(idx)));
  }
}

}  // namespace rackd::kernels

#endif
