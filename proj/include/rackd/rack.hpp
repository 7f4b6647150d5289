#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rackd/group.hpp"
#include "rackd/perm.hpp"

namespace rackd {

/// A finite rack on {0..n-1}. Either an explicit table, or a set of
/// permutations closed under conjugation whose product x ▷ y = x y x^-1 is
/// evaluated lazily (the table is materialized below a size threshold).
class FiniteRack {
 public:
  enum class Backing { kTable, kGroupConjugation };

  static constexpr std::size_t kDefaultMaterialize = 5000;

  FiniteRack() = default;

  // table[x][y] = x ▷ y. Only shape and range are checked here; use
  // validate() for the axioms.
  static FiniteRack from_table(const std::vector<std::vector<int>>& table,
                               std::vector<std::string> labels = {});
  // Throws if the set is not closed under conjugation.
  static FiniteRack from_elements(std::vector<Permutation> elements,
                                  std::size_t materialize = kDefaultMaterialize);

  int size() const noexcept { return n_; }
  Backing backing() const noexcept { return backing_; }
  bool materialized() const noexcept { return !table_.empty() || n_ == 0; }

  int op(int x, int y) const;
  // φ_x^{-1}(y).
  int op_inv(int x, int y) const;
  std::vector<int> row(int x) const;

  const std::vector<Permutation>& elements() const noexcept { return elems_; }
  std::optional<int> index_of(const Permutation& p) const;

  std::string label(int x) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  FiniteRack with_labels(std::vector<std::string> labels) const;

  std::vector<std::vector<int>> table() const;

  // Set by constructors that know the inner group acts transitively
  // (conjugacy classes generating a group that is transitive on them).
  std::optional<bool> indecomposable_hint() const noexcept { return indecomposable_hint_; }
  void set_indecomposable_hint(bool v) noexcept { indecomposable_hint_ = v; }

 private:
  void materialize();

  int n_ = 0;
  Backing backing_ = Backing::kTable;
  std::vector<std::uint32_t> table_;      // row-major, empty when lazy
  std::vector<std::uint32_t> inv_table_;  // φ_x^{-1}, same layout
  std::vector<Permutation> elems_;
  std::vector<Permutation> elem_inv_;
  std::shared_ptr<std::unordered_map<Permutation, int, PermutationHash>> index_;
  std::vector<std::string> labels_;
  std::optional<bool> indecomposable_hint_;
};

struct RackValidation {
  bool ok = false;
  bool is_quandle = false;
  bool is_crossed_set = false;
  std::string kind;     // "rack", "quandle", "crossed set" or "not a rack"
  std::string message;  // first violation, if any
  bool self_distributivity_checked = true;
};

// Checks the axioms. For group-backed racks above 400 elements only closure
// and bijectivity are checked; self-distributivity then holds by
// associativity of the group law (reported in the result).
RackValidation validate(const FiniteRack& r);

// Least subrack containing seed; nullopt once it would exceed cap.
std::optional<std::vector<int>> subrack_closure(const FiniteRack& r,
                                                const std::vector<int>& seed,
                                                std::size_t cap);

bool is_subrack(const FiniteRack& r, const std::vector<int>& members);

// Orbits of the inner group <φ_x>, each sorted, ordered by least element.
std::vector<std::vector<int>> decompose(const FiniteRack& r);
bool is_indecomposable(const FiniteRack& r);

// Restriction to a subrack, with inherited labels/elements.
FiniteRack induced_subrack(const FiniteRack& r, const std::vector<int>& members);

FiniteRack power_rack(const FiniteRack& r, int j);
// X^[1,j] on 2n points: 0..n-1 is X, n..2n-1 is X^[j].
FiniteRack amalgam(const FiniteRack& r, int j);
FiniteRack product(const FiniteRack& a, const FiniteRack& b);

bool is_faithful(const FiniteRack& r);
bool is_trivial_rack(const FiniteRack& r);  // x ▷ y = y for all x, y

enum class SearchStatus { kFound, kNotFound, kBudgetExceeded };
std::string_view to_string(SearchStatus s) noexcept;

struct Embedding {
  SearchStatus status = SearchStatus::kNotFound;
  std::vector<int> map;  // pattern index -> target index
  std::uint64_t nodes = 0;
};

// Injective rack morphism pattern -> target by backtracking over generator
// images. When the target is indecomposable its inner automorphisms act
// transitively, so the first generator is pinned to target element 0.
// Any returned map has been re-verified as a morphism.
Embedding find_embedding(const FiniteRack& pattern, const FiniteRack& target,
                         std::uint64_t budget = 10'000'000);
bool is_morphism(const FiniteRack& a, const FiniteRack& b,
                 const std::vector<int>& map);
std::optional<std::vector<int>> find_isomorphism(const FiniteRack& a,
                                                 const FiniteRack& b,
                                                 std::uint64_t budget = 10'000'000);

// Catalog: "D_n", "tetrahedron", "cube", "dodecahedron", "oct", "oct2",
// "trivial:n", "permutation:n". Throws on unknown names.
FiniteRack catalog_rack(const std::string& name);
std::vector<std::string> catalog_names();

// Z/n with x ▷ y = 2x - y.
FiniteRack dihedral_rack(int n);
FiniteRack trivial_rack(int n);
// Z/n with x ▷ y = y + 1.
FiniteRack permutation_rack(int n);

// Conjugacy class as a group-backed rack; nullopt past cap.
std::optional<FiniteRack> class_rack(const ConjClassSpec& spec, std::size_t cap);

// Name of r against the catalog: "trivial:k", "D_3", "tetrahedron", ...,
// otherwise "indecomposable:n" or "decomposable:n".
std::string identify_rack(const FiniteRack& r);

struct CensusEntry {
  std::string name;
  int size = 0;
  std::size_t count = 0;
};

struct Census {
  int rack_size = 0;
  int base_point = 0;  // pairs examined are (base_point, y)
  std::size_t pairs = 0;
  std::size_t whole_rack = 0;  // pairs generating everything
  std::vector<CensusEntry> entries;  // proper subracks by name
};

// Subracks <x0, y> for every y, x0 = element 0. When r is indecomposable
// every pair is conjugate by an inner automorphism to such a pair, so this
// lists the isomorphism classes of all 2-generated subracks.
Census two_generated_census(const FiniteRack& r, std::size_t cap = 100'000);

}  // namespace rackd
