#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rackd/group.hpp"
#include "rackd/perm.hpp"
#include "rackd/rack.hpp"

namespace rackd {

/// A decomposable subrack R ⊔ S of a conjugacy class with r in R, s in S and
/// r ▷ (s ▷ (r ▷ s)) != s.
struct TypeDWitness {
  ConjClassSpec ambient;
  std::vector<Permutation> R;
  std::vector<Permutation> S;
  Permutation r;
  Permutation s;
  std::string provenance;  // SPLITTING, JORDAN, AFFINE, EMBEDDING, PAIR, STEP-..., SEARCH
  std::string note;        // free text, e.g. "|H| = 21"
};

struct WitnessCheck {
  bool ok = false;
  bool in_class = false;
  bool disjoint = false;
  bool closed = false;  // R and S are subracks
  bool stable = false;  // R ▷ S ⊆ S and S ▷ R ⊆ R
  bool inequality = false;
  std::string violation;  // first failed clause
};

// Re-verifies every clause from the permutations alone.
WitnessCheck check_witness(const TypeDWitness& w);

enum class VerdictStatus { kTypeD, kNotTypeD, kException, kUnknown };
std::string_view to_string(VerdictStatus s) noexcept;

struct Verdict {
  VerdictStatus status = VerdictStatus::kUnknown;
  std::optional<TypeDWitness> witness;  // set iff TYPE_D
  std::string scope;                    // NOT_TYPE_D: what was exhausted
  std::string tag;                      // EXCEPTION: "a" or "b"
  std::string note;
};

/// Pair (r, s) from the class with R, S the orbits of r and s under
/// conjugation by H = <r, s>. nullopt unless (rs)^2 != (sr)^2 and s is not
/// H-conjugate to r (or an orbit exceeds cap).
std::optional<TypeDWitness> splitting_pair(const ConjClassSpec& spec,
                                           const Permutation& r,
                                           const Permutation& s, std::size_t cap,
                                           std::string provenance);

struct SplittingResult {
  std::optional<TypeDWitness> witness;
  std::size_t pairs_examined = 0;
  std::size_t candidates = 0;  // pairs with (rs)^2 != (sr)^2
  std::size_t capped = 0;      // candidates whose H-orbit exceeded the cap
  bool class_enumerated = false;
  // True when every s in the class was examined against the fixed
  // representative r and none capped: the class is then not of type D.
  bool exhaustive() const { return class_enumerated && capped == 0 && !witness; }
};

// Scans s over the class (sorted) against r = the class representative.
// Since the class is one orbit, fixing r loses nothing; a decomposable
// subrack containing r and s contains the <r, s>-orbits of both, so the scan
// decides type D when it runs to completion.
SplittingResult splitting_search(const ConjClassSpec& spec, const Caps& caps);

// j in (1, |σ|) with σ^j in the class and σ^j != σ.
std::vector<int> quasi_real_types(const ConjClassSpec& spec);

struct JordanResult {
  std::optional<TypeDWitness> witness;
  std::string reason;  // first failed hypothesis
  int N = 0, M = 0, j = 0;
};

// σ = τκ with τ, κ powers of σ of coprime orders N (prime > 3) and M > 1;
// K = centralizer of κ in the ambient group; r = σ and s = κ^j s0 with s0 in
// the K-class of τ^j, (τ s0)^2 != (s0 τ)^2, σ^j in the class, M ∤ j - 1.
JordanResult jordan_criterion(const ConjClassSpec& spec, const Caps& caps);

// The constructions for specific cycle types. nullopt when none applies.
// The witness lies in spec's class (split part included).
std::optional<TypeDWitness> direct_step(const ConjClassSpec& spec, const Caps& caps);

// Sub-multiset μ of degree >= 5 whose class is type D by a direct step,
// juxtaposed with a fixed permutation of the complementary type.
std::optional<TypeDWitness> juxtaposition_step(const ConjClassSpec& spec,
                                               const Caps& caps);

// Which exception list the type falls on ("a", "b"), if any.
std::optional<std::string> exception_list(const CycleType& type);

// Mersenne construction for (1, p), p = 2^h - 1 prime.
std::optional<TypeDWitness> mersenne_step(const ConjClassSpec& spec, const Caps& caps);

/// Memoizing classifier. Thread-safe.
class Classifier {
 public:
  explicit Classifier(Caps caps = {}) : caps_(caps) {}
  Verdict classify(const ConjClassSpec& spec);
  const Caps& caps() const noexcept { return caps_; }

 private:
  Verdict classify_uncached(const ConjClassSpec& spec);
  Caps caps_;
  std::mutex mu_;
  std::map<std::string, Verdict> memo_;
};

Verdict classify(const ConjClassSpec& spec, const Caps& caps = {});

/// Witness in index form for racks without group elements.
struct RackWitness {
  std::vector<int> R, S;
  int r = 0, s = 0;
};

bool check_rack_witness(const FiniteRack& x, const RackWitness& w);

struct ExhaustiveResult {
  VerdictStatus status = VerdictStatus::kUnknown;  // TYPE_D, NOT_TYPE_D or UNKNOWN
  std::optional<RackWitness> witness;
  std::string scope;
  std::size_t subracks = 0;
  std::size_t decomposable_pairs = 0;
  std::string method;  // "subrack enumeration" or "pair reduction"
};

// All subracks as closures (deduplicated, at most caps.subracks), then all
// disjoint mutually stable pairs (R, S), then all (r, s). When the subrack
// cap is hit, falls back to the pair reduction: for r over representatives
// of the inner orbits and every s, s in the <φ_r, φ_s>-orbit of r or the
// inequality fails.
ExhaustiveResult exhaustive_not_type_d(const FiniteRack& x, const Caps& caps);
// Only the subrack enumeration; UNKNOWN past the cap.
ExhaustiveResult enumerate_subrack_pairs(const FiniteRack& x, const Caps& caps);
// Only the pair reduction.
ExhaustiveResult pair_reduction(const FiniteRack& x);

// Conjugates every element of the witness by c.
TypeDWitness conjugate_witness(const TypeDWitness& w, const Permutation& c,
                               const ConjClassSpec& target);

}  // namespace rackd
