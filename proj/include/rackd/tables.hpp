#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rackd/abelian.hpp"
#include "rackd/group.hpp"
#include "rackd/reps.hpp"
#include "rackd/typed.hpp"

namespace rackd {

/// Imported result: a class pattern and the citation that discards it.
struct CitedFact {
  Ambient ambient;
  std::string pattern;   // e.g. "(p) in S_p, (1,p) in S_{1+p}, p odd prime"
  std::string citation;  // e.g. "[AZ, Th. 1]"
  bool rep_restriction = false;  // discards only representations outside the list
  std::function<bool(const ConjClassSpec&)> matches;
};

const std::vector<CitedFact>& cited_facts();
// The first fact whose pattern matches the class, if any.
std::optional<CitedFact> cited_fact_for(const ConjClassSpec& spec);

// kOpen: no kill and not on the survivor list.
enum class PairVerdict { kSurvives, kKilled, kOpen };
std::string_view to_string(PairVerdict v) noexcept;
enum class KillReason { kNone, kTypeD, kAbelianTriple, kCitedFact };
std::string_view to_string(KillReason r) noexcept;

struct PairStatus {
  ConjClassSpec spec;
  // nullopt: the entry covers every ρ (or every ρ of degree > 1 when
  // higher_degree is set).
  std::optional<DegreeOneRep> rep;
  bool higher_degree = false;
  PairVerdict status = PairVerdict::kKilled;
  KillReason reason = KillReason::kNone;
  std::string tag;       // survivor list item ("i", "ii", "iii") or citation
  std::string detail;    // certificate summary
  std::optional<TypeDWitness> witness;
  std::optional<CommutingTriple> triple;
};

// Every class of the ambient group of degree m (identity excluded), each
// entry carrying its kill or its place on the survivor list.
std::vector<PairStatus> theorem_tables(int m, Ambient ambient, Classifier& classifier);
std::vector<PairStatus> survivors(const std::vector<PairStatus>& table);

// Whether the centralizer of the type's representative in S_m is abelian.
bool centralizer_is_abelian(const CycleType& type);

}  // namespace rackd
