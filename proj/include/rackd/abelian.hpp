#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rackd/cyclotomic.hpp"
#include "rackd/group.hpp"
#include "rackd/perm.hpp"
#include "rackd/reps.hpp"

namespace rackd {

/// σ1, σ2, σ3 pairwise commuting in one class, σ_i = g_i σ1 g_i^-1 with
/// g1 = id, σ1^h = σ2 σ3 with h odd, and g3 g2, g2 g3 centralizing σ1.
struct CommutingTriple {
  ConjClassSpec ambient;
  std::array<Permutation, 3> sigma;
  Permutation g2, g3;
  int h = 0;
  std::string provenance;  // "SEARCH" or "A4xZ/r"
};

struct TripleCheck {
  bool ok = false;
  bool commuting = false;
  bool in_class = false;
  bool conjugators = false;  // σ_i = g_i σ1 g_i^-1, g_i in the ambient group
  bool power = false;        // σ1^h = σ2 σ3
  bool odd = false;
  bool centralizing = false;  // g3 g2, g2 g3 and every γ_ij centralize σ1
  std::string violation;
};

TripleCheck check_triple(const CommutingTriple& t);

// γ_ij = g_j^-1 σ_i g_j, with g1 = id.
std::array<std::array<Permutation, 3>, 3> gamma_matrix(const CommutingTriple& t);

/// Diagram of the braided subspace spanned by the triple: vertices λ1, edges
/// λ1^h, λ1^h, λ1^{h^2-2}, kept as exponents of λ1.
struct TriangleDiagram {
  int h = 0;
  std::array<std::array<long long, 3>, 3> exponent;  // diagonal 1; edge (i,j) symmetric
  // The diagram with λ1 substituted.
  std::array<std::array<Cyclotomic, 3>, 3> instantiate(const Cyclotomic& lambda1) const;
};

TriangleDiagram triangle_diagram(int h);

// q_ij = ρ(γ_ij) for a degree-one rep of the centralizer of σ1.
std::array<std::array<Cyclotomic, 3>, 3> raw_qmatrix(const CommutingTriple& t,
                                                     const DegreeOneRep& rep);

enum class TriangleStatus { kInfiniteAllReps, kInconclusive };
std::string_view to_string(TriangleStatus s) noexcept;

struct TriangleVerdict {
  TriangleStatus status = TriangleStatus::kInconclusive;
  TriangleDiagram diagram;
  std::string reason;
};

// Finiteness of the Nichols algebra of this diagram forces λ1 = -1 and h even
// (cited, not re-derived); an odd h therefore gives infinite dimension for
// every ρ. Inconclusive when the triple fails re-verification or h is even.
TriangleVerdict triangle_verdict(const CommutingTriple& t);
// λ1 = 1 already forces infinite dimension.
bool lambda_one_branch(const Cyclotomic& lambda1);

struct TripleSearch {
  std::optional<CommutingTriple> triple;
  std::size_t pairs_examined = 0;
  std::size_t candidates = 0;  // pairs passing the power test
  std::string reason;
};

// σ1 the class representative; scans commuting pairs (σ2, σ3) of class
// elements commuting with σ1, in order, with σ2 σ3 = σ1^h, h odd (least
// positive odd h), then searches conjugators.
TripleSearch find_triple(const ConjClassSpec& spec, std::size_t budget = 1000000);

// Type (1^{n1}, 2^{2k}, σ_o): A_4 × Z/r → (A_4)^k × A_rest via the diagonal,
// r the order of σ_o. Returns the image of the triple σ1 = ((1 2)(3 4), τ),
// g2 = ((1 3 2), 1), g3 = g2^-1, h = r + 2, placed in spec's class.
CommutingTriple a4xcr_embed(const ConjClassSpec& spec);

}  // namespace rackd
