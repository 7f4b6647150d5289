#include "rackd/tables.hpp"

#include "rackd/error.hpp"

namespace rackd {

namespace {

bool is_type(const ConjClassSpec& s, const char* t) { return s.type == CycleType::parse(t); }

bool odd_prime(int p) {
  if (p < 3) return false;
  for (int k = 2; k * k <= p; ++k)
    if (p % k == 0) return false;
  return true;
}

// (p), (1,p) with p an odd prime, (1^n,3), (3^2).
bool prime_or_three(const ConjClassSpec& s) {
  const auto lens = s.type.lengths();
  if (lens.size() == 1 && odd_prime(lens[0])) return true;
  if (lens.size() == 2 && lens[0] == 1 && odd_prime(lens[1])) return true;
  if (s.type.count(3) == 1 && s.type.count(1) + 3 == s.m) return true;
  return is_type(s, "3^2");
}

// (1^n, 2), (2,3) in S_5, (2^3) in S_6.
std::optional<std::string> list_a_item(const ConjClassSpec& s) {
  if (s.ambient != Ambient::kSym) return std::nullopt;
  if (s.type.count(2) == 1 && s.type.count(1) + 2 == s.m) return "i";
  if (is_type(s, "2,3")) return "ii";
  if (is_type(s, "2^3")) return "iii";
  return std::nullopt;
}

bool survives(const std::string& item, const DegreeOneRep& rep) {
  if (item == "i") return rep.t.at(2) == 1;
  if (item == "ii") return rep.t.at(2) == 1 && rep.t.at(3) == 0;
  return rep.t.at(2) == 1;  // iii: χ⃗_1 ⊗ ε or χ⃗_1 ⊗ sgn
}

std::optional<CommutingTriple> triple_for(const ConjClassSpec& spec) {
  const CycleType& t = spec.type;
  const int n2 = t.count(2);
  if (n2 == 0 || n2 % 2 != 0 || spec.m < 5) return std::nullopt;
  for (auto [len, count] : t.counts())
    if (len % 2 == 0 && len != 2) return std::nullopt;
  return a4xcr_embed(spec);
}

}  // namespace

std::string_view to_string(KillReason r) noexcept {
  switch (r) {
    case KillReason::kNone: return "NONE";
    case KillReason::kTypeD: return "TYPE_D";
    case KillReason::kAbelianTriple: return "ABELIAN_TRIPLE";
    case KillReason::kCitedFact: return "CITED_FACT";
  }
  return "NONE";
}

std::string_view to_string(PairVerdict v) noexcept {
  switch (v) {
    case PairVerdict::kSurvives: return "SURVIVES";
    case PairVerdict::kKilled: return "KILLED";
    case PairVerdict::kOpen: return "OPEN";
  }
  return "OPEN";
}

const std::vector<CitedFact>& cited_facts() {
  static const std::vector<CitedFact> facts = {
      {Ambient::kSym,
       "(p) in S_p, (1,p) in S_{1+p} (p odd prime), (1^n,3) in S_{n+3}, (3^2) in S_6",
       "[AZ, Th. 1]", false,
       [](const ConjClassSpec& s) { return s.ambient == Ambient::kSym && prime_or_three(s); }},
      {Ambient::kSym, "(1,2^2) in S_5, (1^2,2^2) in S_6, (2^2,3) in S_7", "[AZ, Th. 1]", false,
       [](const ConjClassSpec& s) {
         return s.ambient == Ambient::kSym &&
                (is_type(s, "1,2^2") || is_type(s, "1^2,2^2") || is_type(s, "2^2,3"));
       }},
      {Ambient::kSym, "(2^4) in S_8", "[AF1, Th. 1 (B)(i)]", false,
       [](const ConjClassSpec& s) { return s.ambient == Ambient::kSym && is_type(s, "2^4"); }},
      {Ambient::kSym,
       "(1^n,2), (2,3) in S_5, (2^3) in S_6: representations outside the survivor list",
       "[afz]", true,
       [](const ConjClassSpec& s) { return list_a_item(s).has_value(); }},
      {Ambient::kAlt,
       "(p) in A_p, (1,p) in A_{1+p} (p odd prime), (1^n,3) in A_{n+3}, (3^2) in A_6",
       "[AF2, Th. 2.3]", false,
       [](const ConjClassSpec& s) { return s.ambient == Ambient::kAlt && prime_or_three(s); }},
  };
  return facts;
}

std::optional<CitedFact> cited_fact_for(const ConjClassSpec& spec) {
  for (const auto& f : cited_facts())
    if (f.matches(spec)) return f;
  return std::nullopt;
}

bool centralizer_is_abelian(const CycleType& type) {
  for (auto [len, count] : type.counts()) {
    if (count >= 3) return false;
    if (count == 2 && len > 1) return false;
  }
  return true;
}

std::vector<PairStatus> theorem_tables(int m, Ambient ambient, Classifier& classifier) {
  std::vector<PairStatus> out;
  for (const auto& spec : all_classes(m, ambient)) {
    if (spec.type.is_identity()) continue;
    const Verdict v = classifier.classify(spec);
    PairStatus base;
    base.spec = spec;
    if (v.status == VerdictStatus::kTypeD) {
      const auto c = check_witness(*v.witness);
      if (!c.ok) throw Error("internal: witness for " + spec.to_string() + ": " + c.violation);
      base.reason = KillReason::kTypeD;
      base.tag = v.witness->provenance;
      base.detail = "type D witness, |R| = " + std::to_string(v.witness->R.size()) +
                    ", |S| = " + std::to_string(v.witness->S.size()) +
                    (v.witness->note.empty() ? "" : "; " + v.witness->note);
      base.witness = v.witness;
      out.push_back(base);
      continue;
    }
    if (auto item = list_a_item(spec)) {
      const auto fact = cited_fact_for(spec);
      for (const auto& rep : enumerate_degree_one(spec.type)) {
        PairStatus e = base;
        e.rep = rep;
        if (survives(*item, rep)) {
          e.status = PairVerdict::kSurvives;
          e.tag = *item;
          if (*item == "iii") e.detail = "rack isomorphic to the transpositions of S_6";
        } else {
          e.reason = KillReason::kCitedFact;
          e.tag = fact->citation;
          e.detail = fact->pattern;
        }
        out.push_back(std::move(e));
      }
      if (!centralizer_is_abelian(spec.type)) {
        PairStatus e = base;
        e.higher_degree = true;
        e.reason = KillReason::kCitedFact;
        e.tag = fact->citation;
        e.detail = fact->pattern;
        out.push_back(std::move(e));
      }
      continue;
    }
    const auto triple = triple_for(spec);
    const auto fact = cited_fact_for(spec);
    const auto use_triple = [&](PairStatus& e) {
      const auto tv = triangle_verdict(*triple);
      if (tv.status != TriangleStatus::kInfiniteAllReps) return false;
      e.triple = triple;
      e.detail = "commuting triple, h = " + std::to_string(triple->h) + ", " + tv.reason;
      return true;
    };
    PairStatus e = base;
    if (ambient == Ambient::kSym && fact) {
      e.reason = KillReason::kCitedFact;
      e.tag = fact->citation;
      e.detail = fact->pattern;
      if (triple && use_triple(e)) e.detail = fact->pattern + "; also " + e.detail;
    } else if (triple && use_triple(e)) {
      e.reason = KillReason::kAbelianTriple;
      e.tag = "A4xZ/r";
    } else if (fact) {
      e.reason = KillReason::kCitedFact;
      e.tag = fact->citation;
      e.detail = fact->pattern;
    } else {
      e.status = PairVerdict::kOpen;
      e.detail = std::string(to_string(v.status)) + (v.note.empty() ? "" : ": " + v.note);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<PairStatus> survivors(const std::vector<PairStatus>& table) {
  std::vector<PairStatus> out;
  for (const auto& e : table)
    if (e.status != PairVerdict::kKilled) out.push_back(e);
  return out;
}

}  // namespace rackd
