#pragma once

#include <map>
#include <string>
#include <vector>

#include "rackd/cyclotomic.hpp"
#include "rackd/group.hpp"
#include "rackd/perm.hpp"

namespace rackd {

enum class Mu { kEpsilon, kSgn };

/// Linear character of the centralizer of σ in S_m, which is the product over
/// the cycle lengths j of (Z/j)^{n_j} ⋊ S_{n_j}. Each j carries the exponent
/// t_j of the character on every j-cycle and the character μ_j of S_{n_j};
/// μ_j is kept only when n_j >= 2.
struct DegreeOneRep {
  CycleType type;
  std::map<int, int> t;   // cycle length -> t_j in Z/j
  std::map<int, Mu> mu;   // cycle length with n_j >= 2 -> μ_j

  // Common order of the values: lcm of the cycle lengths and 2.
  int value_order() const;
  // Per length: "ε" or "sgn" for j = 1, "χ_t" for one j-cycle,
  // "χ⃗_t⊗μ" for several; joined by ", ".
  std::string to_string() const;

  friend bool operator==(const DegreeOneRep&, const DegreeOneRep&) = default;
};

std::vector<DegreeOneRep> enumerate_degree_one(const CycleType& type);

// Value of rep on c, an element of the centralizer of sigma (sigma of the
// rep's type). Throws if c does not commute with sigma.
Cyclotomic rep_value(const DegreeOneRep& rep, const Permutation& sigma,
                     const Permutation& c);

// ρ(σ) = ∏_j ω_j^{t_j n_j}.
Cyclotomic q_sigma_sigma(const CycleType& type, const DegreeOneRep& rep);

}  // namespace rackd
