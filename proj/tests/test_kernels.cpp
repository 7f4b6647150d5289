#include <array>
#include <numeric>
#include <random>

#include "doctest.h"
#include "rackd/kernels.hpp"

namespace k = rackd::kernels;

namespace {

std::array<std::uint8_t, 64> random_table(std::mt19937& rng, int degree) {
  std::array<std::uint8_t, 64> t;
  std::iota(t.begin(), t.end(), 0);
  std::shuffle(t.begin(), t.begin() + degree, rng);
  return t;
}

}  // namespace

TEST_CASE("scalar kernel matches definition") {
  std::mt19937 rng(1);
  auto a = random_table(rng, 64), b = random_table(rng, 64);
  std::array<std::uint8_t, 64> out;
  k::compose_scalar(a.data(), b.data(), out.data());
  for (int i = 0; i < 64; ++i) CHECK(out[i] == a[b[i]]);
}

#if defined(RACKD_HAVE_AVX2_KERNELS)
TEST_CASE("avx2 kernels agree with scalar kernels") {
  if (!k::isa_supported(k::Isa::kAvx2)) {
    MESSAGE("AVX2 not available on this CPU; skipping");
    return;
  }
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 5000; ++trial) {
    const int degree = 1 + trial % 64;
    auto a = random_table(rng, degree), b = random_table(rng, degree),
         c = random_table(rng, degree);
    std::array<std::uint8_t, 64> s1, v1, s2, v2;
    k::compose_scalar(a.data(), b.data(), s1.data());
    k::compose_avx2(a.data(), b.data(), v1.data());
    CHECK(s1 == v1);
    std::array<std::uint8_t, 64> a_inv;
    for (int i = 0; i < 64; ++i) a_inv[a[i]] = static_cast<std::uint8_t>(i);
    k::conjugate_scalar(a.data(), a_inv.data(), c.data(), s2.data());
    k::conjugate_avx2(a.data(), a_inv.data(), c.data(), v2.data());
    CHECK(s2 == v2);
  }
}
#endif

TEST_CASE("dispatch can be forced to the reference path") {
  const auto before = k::active_isa();
  k::force_isa(k::Isa::kScalar);
  CHECK(k::active_isa() == k::Isa::kScalar);
  CHECK(k::compose_kernel() == &k::compose_scalar);
  if (k::isa_supported(before)) k::force_isa(before);
  CHECK(k::isa_name(k::Isa::kAvx2) == "avx2");
}
