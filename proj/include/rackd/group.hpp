#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rackd/perm.hpp"

namespace rackd {

using BigInt = boost::multiprecision::cpp_int;

/// Search limits. Exceeding a cap yields OVERFLOW / UNKNOWN, never a guess.
struct Caps {
  std::size_t closure = 1'000'000;
  std::size_t orbit = 100'000;
  std::size_t subracks = 20'000;
};

enum class Ternary { kYes, kNo, kUnknown };
std::string_view to_string(Ternary t) noexcept;

/// Subgroup of S_m given by generators. Order and membership come from a
/// deterministic Schreier-Sims chain built on first use; explicit element
/// enumeration is available below a cap.
class GeneratedGroup {
 public:
  GeneratedGroup(int degree, std::vector<Permutation> generators);

  int degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }

  BigInt order() const;
  bool contains(const Permutation& x) const;
  // Base points (1-indexed) and basic orbit sizes of the stabilizer chain.
  std::vector<int> base() const;
  std::vector<std::size_t> orbit_sizes() const;

  // All elements in lexicographic order if |G| <= cap, else nullopt.
  std::optional<std::vector<Permutation>> closure(std::size_t cap) const;

 private:
  struct Chain;
  const Chain& chain() const;

  int degree_;
  std::vector<Permutation> gens_;
  std::shared_ptr<Chain> chain_;
};

// Conjugation orbit of x under the group generated by gens, in breadth-first
// discovery order (x first). nullopt once the orbit would exceed cap.
std::optional<std::vector<Permutation>> class_orbit(
    const Permutation& x, const std::vector<Permutation>& gens, std::size_t cap);
std::optional<std::vector<Permutation>> class_orbit(const Permutation& x,
                                                    const GeneratedGroup& g,
                                                    std::size_t cap);

// YES / NO decided from the orbit of x; UNKNOWN past the cap.
Ternary are_conjugate_in(const Permutation& x, const Permutation& y,
                         const GeneratedGroup& g, std::size_t cap);

GeneratedGroup symmetric_group(int m);
GeneratedGroup alternating_group(int m);

// Generators of G ∩ A_m from generators of G (Schreier generators for the
// transversal {e, t}, t the first odd generator).
std::vector<Permutation> even_subgroup_generators(
    const std::vector<Permutation>& gens);

// Cycles A_{l,j} of x together with swaps B_{l,j} of consecutive j-cycles.
GeneratedGroup centralizer_in_Sm(const Permutation& x);
// prod_j j^{n_j} n_j!
BigInt centralizer_order(const CycleType& type);
BigInt class_size_in_Sm(const CycleType& type);

// c with c x c^-1 = y, aligning cycles; nullopt if the cycle types differ.
std::optional<Permutation> conjugator_in_Sm(const Permutation& x,
                                            const Permutation& y);

enum class Ambient { kSym, kAlt };
enum class SplitPart { kPlus, kMinus };

std::string_view to_string(Ambient a) noexcept;
std::string_view to_string(SplitPart s) noexcept;

// All cycle lengths odd and pairwise distinct (fixed points included).
bool splits_in_Am(const CycleType& type);

// Fixed points first, then cycles by increasing length on consecutive points.
Permutation canonical_representative(const CycleType& type);

/// A conjugacy class of S_m or A_m. A split A_m class is one of two parts:
/// PLUS holds the canonical representative, MINUS its conjugate by (1 2).
struct ConjClassSpec {
  int m = 0;
  CycleType type;
  Ambient ambient = Ambient::kSym;
  std::optional<SplitPart> split;

  // Throws Error on inconsistent data.
  void validate() const;
  Permutation representative() const;
  bool contains(const Permutation& x) const;
  // |class| (half the S_m class size for a split part).
  BigInt size() const;
  GeneratedGroup ambient_group() const;
  std::string to_string() const;  // "A_6 (3^2)", "A_5 (5)+"

  friend bool operator==(const ConjClassSpec&, const ConjClassSpec&) = default;
};

// Builds a spec, defaulting split to PLUS for split ALT types.
ConjClassSpec make_spec(Ambient ambient, const CycleType& type,
                        std::optional<SplitPart> split = std::nullopt);

// Every class of S_m (one per type) or of A_m (split types give two).
std::vector<ConjClassSpec> all_classes(int m, Ambient ambient);

// Sorted elements of the class, or nullopt past cap.
std::optional<std::vector<Permutation>> class_elements(const ConjClassSpec& spec,
                                                       std::size_t cap);

}  // namespace rackd
