#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rackd/cyclotomic.hpp"
#include "rackd/group.hpp"
#include "rackd/rack.hpp"
#include "rackd/reps.hpp"

namespace rackd {

/// A 2-cocycle on a rack with values in GL(n_i, Z[ζ_N]). The rack is split
/// into stable parts X_i (one part for a principal cocycle); q(x, z) is an
/// n_i × n_i matrix when z lies in X_i.
class Cocycle {
 public:
  // Principal: one part of the given degree. q is indexed x * |X| + z.
  static Cocycle principal(FiniteRack rack, int n, int degree, std::vector<CycloMatrix> q);
  // Non-principal: part[z] is the part of z, degrees[i] the degree of X_i.
  static Cocycle non_principal(FiniteRack rack, int n, std::vector<int> part,
                               std::vector<int> degrees, std::vector<CycloMatrix> q);
  // Constant degree-one cocycle ζ_N^k.
  static Cocycle constant(FiniteRack rack, int n, int k);

  const FiniteRack& rack() const noexcept { return rack_; }
  int order() const noexcept { return n_; }
  bool is_principal() const noexcept { return degrees_.size() == 1; }
  const std::vector<int>& parts() const noexcept { return part_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  int degree_at(int z) const { return degrees_[part_[z]]; }
  const CycloMatrix& at(int x, int z) const { return q_[x * rack_.size() + z]; }
  const std::vector<CycloMatrix>& values() const noexcept { return q_; }
  void set(int x, int z, CycloMatrix m);

 private:
  Cocycle(FiniteRack rack, int n, std::vector<int> part, std::vector<int> degrees,
          std::vector<CycloMatrix> q);
  FiniteRack rack_;
  int n_;
  std::vector<int> part_;
  std::vector<int> degrees_;
  std::vector<CycloMatrix> q_;
};

struct CocycleCheck {
  bool ok = false;
  std::optional<std::array<int, 3>> triple;  // (x, y, z)
  std::string message;
};

// q(x, y▷z) q(y, z) = q(x▷y, x▷z) q(x, z) for all x, y, z, and every value
// invertible.
CocycleCheck validate_cocycle(const Cocycle& q);

struct BraidCheck {
  bool ok = false;
  // (x, v, y, w, z, u): the basis tensor e_x v ⊗ e_y w ⊗ e_z u.
  std::optional<std::array<int, 6>> basis;
  std::string message;
};

// c(e_x v ⊗ e_y w) = e_{x▷y} q(x,y)w ⊗ e_x v on V = ⊕ e_x W_i; compares both
// sides of the braid equation on every basis tensor of V ⊗ V ⊗ V.
BraidCheck braiding_check(const Cocycle& q);

struct GMapReport {
  bool faithful = false;  // x -> g_x injective
  bool morphism = false;  // g_{x▷y} g_x = g_x g_y
  std::optional<std::size_t> group_order;  // |<g_x>| when within the cap
};

// g_x(e_y w) = e_{x▷y} q(x,y) w.
GMapReport g_map(const Cocycle& q, std::size_t group_cap = 10000);
bool g_map_faithful(const Cocycle& q);

// For each class element x (in class_elements order), the least g in the
// ambient group with g σ g^-1 = x, σ the class representative.
std::vector<Permutation> conjugator_section(const ConjClassSpec& spec, std::size_t cap);

// Degree-one cocycle of the Yetter-Drinfeld braiding of M(O, ρ):
// q(x, y) = ρ(g_{x▷y}^-1 x g_y). The rack is class_rack(spec). The section
// defaults to conjugator_section.
Cocycle yd_braiding(const ConjClassSpec& spec, const DegreeOneRep& rep,
                    std::size_t cap = 100000,
                    const std::vector<Permutation>* section = nullptr);

}  // namespace rackd
