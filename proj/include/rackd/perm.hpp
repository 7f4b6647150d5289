#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rackd {

inline constexpr int kMaxDegree = 64;

/// A bijection of {1..m}, m <= 64.
///
/// Points are 1-indexed at the interface to match cycle notation; the image
/// table is stored 0-indexed and padded to 64 entries with fixed points so
/// that products are a single fixed-width gather. Products evaluate right to
/// left: (a * b)(i) = a(b(i)).
class Permutation {
 public:
  using Table = std::array<std::uint8_t, kMaxDegree>;

  Permutation() noexcept;  // degree 0
  explicit Permutation(int degree);  // identity

  // images[i-1] = sigma(i). Throws unless images is a bijection of {1..m}.
  static Permutation from_images(std::span<const int> images);
  static Permutation from_cycles(int degree,
                                 const std::vector<std::vector<int>>& cycles);
  // Accepts "(1 2)(3 4 5)" and "()". Points must lie in {1..degree}.
  static Permutation parse(std::string_view text, int degree);
  // The m-cycle (first first+1 ... first+len-1) inside S_degree.
  static Permutation cycle(int degree, int first, int len);
  // Trusted fast path for kernels: table must be a bijection of {0..63} that
  // fixes every lane >= degree.
  static Permutation from_table_unchecked(int degree, const Table& table) noexcept;

  int degree() const noexcept { return degree_; }
  int operator()(int point) const;  // 1-indexed
  const Table& table() const noexcept { return img_; }

  Permutation inverse() const;
  Permutation pow(long long k) const;
  bool is_identity() const noexcept;
  int sign() const noexcept;
  bool is_even() const noexcept { return sign() == 1; }
  std::uint64_t order() const noexcept;
  int support_size() const noexcept;
  int first_moved_point() const noexcept;  // 0 when identity

  // Nontrivial cycles, each rotated to start at its least point, listed by
  // increasing least point.
  std::vector<std::vector<int>> cycles() const;
  std::string to_string() const;

  // this ⊥ other: other acts on points degree()+1 .. degree()+other.degree().
  Permutation juxtapose(const Permutation& other) const;
  // Re-embed into a larger degree with extra fixed points.
  Permutation extended(int new_degree) const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);

  friend bool operator==(const Permutation& a, const Permutation& b) noexcept {
    return a.degree_ == b.degree_ && a.img_ == b.img_;
  }
  // Canonical order: degree first, then lexicographic image array.
  friend std::strong_ordering operator<=>(const Permutation& a,
                                          const Permutation& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  int degree_ = 0;
  Table img_;
};

Permutation compose(const Permutation& a, const Permutation& b);
// g x g^-1
Permutation conjugate(const Permutation& g, const Permutation& x);
// Same, with g^-1 precomputed.
Permutation conjugate(const Permutation& g, const Permutation& g_inv,
                      const Permutation& x);
// x ▷ y in a conjugation rack: x y x^-1.
inline Permutation rack_op(const Permutation& x, const Permutation& y) {
  return conjugate(x, y);
}
// (rs)^2 != (sr)^2, equivalently r ▷ (s ▷ (r ▷ s)) != s.
bool squares_differ(const Permutation& r, const Permutation& s);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    return p.hash();
  }
};

/// Multiset of cycle lengths, (1^{n_1}, 2^{n_2}, ...). Fixed points count.
class CycleType {
 public:
  CycleType() = default;
  explicit CycleType(std::map<int, int> counts);
  // "1^2,2^2", "2,3", "3^2", "(1^3,2)". Repeated lengths accumulate.
  static CycleType parse(std::string_view text);
  static CycleType of(const Permutation& x);

  const std::map<int, int>& counts() const noexcept { return counts_; }
  int count(int length) const;
  int degree() const noexcept;
  int sign() const noexcept;  // (-1)^{sum (j-1) n_j}
  bool is_even() const noexcept { return sign() == 1; }
  bool is_identity() const noexcept;
  std::uint64_t order() const noexcept;  // lcm of lengths
  // Lengths with multiplicity, ascending.
  std::vector<int> lengths() const;
  std::string to_string() const;  // "1^2,2^2"

  friend bool operator==(const CycleType&, const CycleType&) = default;
  friend auto operator<=>(const CycleType&, const CycleType&) = default;

 private:
  std::map<int, int> counts_;  // zero entries omitted
};

CycleType cycle_type(const Permutation& x);

// (even part, odd part): cycles of even length, and of odd length > 1.
std::pair<Permutation, Permutation> even_odd_parts(const Permutation& x);

// The permutation i -> k i (mod m) on Z/m, with residue r stored at point r+1
// (so point m is residue 0). Conjugates (1 2 ... m) to its k-th power.
Permutation lambda_k(int m, long long k);

// Jacobi symbol (k/m) for odd m >= 1.
int jacobi(long long k, long long m);

}  // namespace rackd

template <>
struct std::hash<rackd::Permutation> {
  std::size_t operator()(const rackd::Permutation& p) const noexcept {
    return p.hash();
  }
};
