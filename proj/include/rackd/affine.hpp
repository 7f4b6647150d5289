#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rackd/perm.hpp"
#include "rackd/rack.hpp"

namespace rackd {

/// Square matrix over F_p, row-major, entries in [0, p).
class FpMatrix {
 public:
  FpMatrix() = default;
  // Entries are reduced mod p. Throws unless p is prime and rows is t*t.
  FpMatrix(int p, int t, std::vector<int> entries);
  static FpMatrix identity(int p, int t);
  static FpMatrix scalar(int p, int t, int c);

  int p() const noexcept { return p_; }
  int dim() const noexcept { return t_; }
  int at(int i, int j) const { return a_[i * t_ + j]; }
  const std::vector<int>& entries() const noexcept { return a_; }

  FpMatrix operator*(const FpMatrix& o) const;
  FpMatrix operator+(const FpMatrix& o) const;
  FpMatrix operator-(const FpMatrix& o) const;
  FpMatrix pow(long long e) const;  // e >= 0, or any e when invertible
  std::optional<FpMatrix> inverse() const;

  bool is_zero() const noexcept;
  bool is_invertible() const;
  int rank() const;
  // Least k >= 1 with M^k = id; throws for singular M.
  int order() const;

  std::vector<int> apply(const std::vector<int>& v) const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  int p_ = 2;
  int t_ = 0;
  std::vector<int> a_;
};

bool is_prime(int n);

// Monic polynomials as coefficient lists, constant term first.
bool is_irreducible(int p, const std::vector<int>& poly);
// Monic irreducible polynomials of degree t over F_p, in lexicographic
// order of coefficients; X and X - 1 are left out.
std::vector<std::vector<int>> irreducible_polynomials(int p, int t);
FpMatrix companion_matrix(int p, const std::vector<int>& poly);
std::string poly_to_string(const std::vector<int>& poly);

/// (F_p^t, T) with x ▷ y = (1 - T)x + Ty. Vector v is stored as the index
/// sum v_i p^i.
struct AffineRack {
  int p = 0;
  int t = 0;
  FpMatrix T;
  int d = 0;  // order of T

  int size() const;
  std::vector<int> vec(int index) const;
  int index(const std::vector<int>& v) const;
  int op(int x, int y) const;
  FiniteRack rack() const;
};

// Throws for singular T.
AffineRack make_affine(int p, int t, const FpMatrix& T);
// Throws unless poly is monic irreducible and differs from X and X - 1.
AffineRack companion_affine(int p, const std::vector<int>& poly);

// Q^[1,j]: 0..N-1 are (v, T), N..2N-1 are (v, T^j), N = p^t.
FiniteRack double_rack(const AffineRack& a, int j);
// Q^j alone: the affine rack (F_p^t, T^j).
FiniteRack layer_rack(const AffineRack& a, int j);

// (j)_T = sum_{i<j} T^i.
FpMatrix j_sum(const FpMatrix& T, int j);
// (id + T^{j+1})(id - T).
FpMatrix condition_matrix(const AffineRack& a, int j);

// When (j)_T is invertible, checks that v -> (j)_T v is an isomorphism
// (Q^1)^[j] -> Q^j and that the induced map (Q^1)^[1,j] -> Q^[1,j] is an
// isomorphism. nullopt when (j)_T is singular.
std::optional<bool> check_power_isomorphism(const AffineRack& a, int j);

struct AffineWitness {
  int r = 0;  // indices into double_rack(a, j)
  int s = 0;
};

// r = (0, T), s = (v, T^j) with v outside the kernel of condition_matrix;
// nullopt when that matrix vanishes. The inequality is re-checked on the rack.
std::optional<AffineWitness> type_d_condition(const AffineRack& a, int j);

// Every pair (r, s), r in Q^1, s in Q^j, with r ▷ (s ▷ (r ▷ s)) != s; first hit.
std::optional<AffineWitness> brute_force_double_witness(const AffineRack& a, int j);

// Exceptional j of the simple case: d/2 - 1 for p odd and d even, d - 1 for
// p = 2, none for p odd and d odd.
std::optional<int> exceptional_j(const AffineRack& a);

// Fixed points of T (the kernel of id - T) as vector indices.
std::vector<int> fixed_points(const AffineRack& a);

/// Outcome of the quasi-real criterion on a class of permutations.
struct QuasiRealEvidence {
  bool applies = false;
  std::vector<std::string> failed;  // one entry per failed hypothesis
  std::vector<Permutation> R;       // psi(A)
  std::vector<Permutation> S;       // psi(A)^j
  Permutation r, s;
};

// psi maps affine index v to a permutation of the class cls. Checks that
// psi is a rack monomorphism, that cls is quasi-real of type j on psi(A),
// that id - T^j is invertible and id + T^{j+1} != 0, and that psi(A) and
// psi(A)^j are disjoint. On success R ⊔ S = psi(A) ⊔ psi(A)^j and (r, s)
// satisfy (rs)^2 != (sr)^2.
QuasiRealEvidence quasi_real_affine_criterion(const AffineRack& a,
                                              const std::vector<Permutation>& psi,
                                              int j, const ConjClassSpec& cls);

}  // namespace rackd
