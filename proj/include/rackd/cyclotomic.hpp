#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace rackd {

/// Element of Z[ζ_N], stored as integer coefficients of 1, ζ, ..., ζ^{φ(N)-1}
/// after reduction modulo the N-th cyclotomic polynomial. Equal values have
/// equal coefficient vectors.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(int n, long long value = 0);

  static Cyclotomic zero(int n) { return Cyclotomic(n, 0); }
  static Cyclotomic one(int n) { return Cyclotomic(n, 1); }
  // ζ_N^k for any integer k.
  static Cyclotomic root(int n, long long k);
  // Σ c_k ζ^k for any number of coefficients, reduced mod Φ_n.
  static Cyclotomic from_coefficients(int n, std::vector<long long> c);

  int order() const noexcept { return n_; }
  const std::vector<long long>& coefficients() const noexcept { return c_; }

  bool is_zero() const noexcept;
  // k in [0, N) with value ζ_N^k, if the value is a root of unity.
  std::optional<int> root_exponent() const;
  // Same value in Z[ζ_M]; M must be a multiple of N.
  Cyclotomic lift(int m) const;

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic pow(long long e) const;  // e >= 0, or any e for roots of unity

  std::string to_string() const;

  friend bool operator==(const Cyclotomic&, const Cyclotomic&) = default;
  friend auto operator<=>(const Cyclotomic&, const Cyclotomic&) = default;

 private:
  Cyclotomic(int n, std::vector<long long> raw, bool reduce);
  int n_;
  std::vector<long long> c_;
};

// Coefficients of Φ_N, constant term first.
const std::vector<long long>& cyclotomic_polynomial(int n);
int euler_phi(int n);

/// Square matrix over Z[ζ_N], row-major.
class CycloMatrix {
 public:
  CycloMatrix() = default;
  CycloMatrix(int n, int dim, std::vector<Cyclotomic> entries);
  static CycloMatrix identity(int n, int dim);
  static CycloMatrix scalar(const Cyclotomic& c, int dim);

  int order() const noexcept { return n_; }
  int dim() const noexcept { return dim_; }
  const Cyclotomic& at(int i, int j) const { return a_[i * dim_ + j]; }
  const std::vector<Cyclotomic>& entries() const noexcept { return a_; }

  CycloMatrix operator*(const CycloMatrix& o) const;
  Cyclotomic det() const;
  bool is_invertible() const { return !det().is_zero(); }

  std::string to_string() const;

  friend bool operator==(const CycloMatrix&, const CycloMatrix&) = default;
  friend auto operator<=>(const CycloMatrix&, const CycloMatrix&) = default;

 private:
  int n_ = 1;
  int dim_ = 0;
  std::vector<Cyclotomic> a_;
};

}  // namespace rackd
