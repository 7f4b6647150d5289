#include <set>

#include "doctest.h"
#include "rackd/affine.hpp"
#include "rackd/error.hpp"
#include "rackd/typed.hpp"

using namespace rackd;

namespace {

Permutation P(const char* s, int m) { return Permutation::parse(s, m); }

ConjClassSpec simple(const char* type) {
  auto t = CycleType::parse(type);
  return make_spec(t.is_even() ? Ambient::kAlt : Ambient::kSym, t);
}

// Oracle: every clause re-checked by direct conjugation in rack form.
bool naive_witness_ok(const TypeDWitness& w) {
  const std::set<Permutation> rs(w.R.begin(), w.R.end()), ss(w.S.begin(), w.S.end());
  auto in = [&](const std::vector<Permutation>& v, const Permutation& x) {
    return (&v == &w.R ? rs : ss).count(x) > 0;
  };
  for (const auto& x : w.R) {
    if (in(w.S, x) || !w.ambient.contains(x)) return false;
    for (const auto& y : w.R)
      if (!in(w.R, rack_op(x, y))) return false;
    for (const auto& y : w.S)
      if (!in(w.S, rack_op(x, y)) || !in(w.R, rack_op(y, x))) return false;
  }
  for (const auto& x : w.S) {
    if (!w.ambient.contains(x)) return false;
    for (const auto& y : w.S)
      if (!in(w.S, rack_op(x, y))) return false;
  }
  return in(w.R, w.r) && in(w.S, w.s) &&
         rack_op(w.r, rack_op(w.s, rack_op(w.r, w.s))) != w.s;
}

}  // namespace

TEST_CASE("check_witness") {
  auto spec = simple("3^3");
  auto w = splitting_pair(spec, P("(1 2 3)(4 5 6)(7 8 9)", 9),
                          P("(1 2 4)(3 5 6)(7 9 8)", 9), 100000, "PAIR");
  REQUIRE(w);
  CHECK(check_witness(*w).ok);
  CHECK(naive_witness_ok(*w));

  auto bad = *w;
  bad.S = bad.R;
  bad.s = bad.R.back();
  auto c = check_witness(bad);
  CHECK_FALSE(c.ok);
  CHECK_FALSE(c.disjoint);

  bad = *w;
  bad.R.pop_back();
  if (bad.R.empty() || std::find(bad.R.begin(), bad.R.end(), bad.r) == bad.R.end()) {
    bad.R = {w->r};
  }
  CHECK_FALSE(check_witness(bad).ok);

  bad = *w;
  bad.ambient = simple("3^2");
  CHECK_FALSE(check_witness(bad).ok);
}

TEST_CASE("explicit pairs") {
  struct Row {
    const char* type;
    const char* s1;
    const char* s2;
  };
  const Row rows[] = {{"1^3,2^2", "(4 5)(6 7)", "(1 2)(3 7)"},
                      {"1,3^2", "(2 3 4)(5 6 7)", "(1 2 5)(3 4 6)"},
                      {"3^3", "(1 2 3)(4 5 6)(7 8 9)", "(1 2 4)(3 5 6)(7 9 8)"},
                      {"2^5", "(1 2)(3 4)(5 6)(7 8)(9 10)", "(1 3)(2 4)(5 7)(6 9)(8 10)"},
                      {"1,2^3", "(2 3)(4 5)(6 7)", "(1 6)(2 4)(3 5)"}};
  std::set<std::string> notes;
  for (const auto& row : rows) {
    auto spec = simple(row.type);
    const int m = spec.m;
    auto w = splitting_pair(spec, P(row.s1, m), P(row.s2, m), 100000, "PAIR");
    REQUIRE_MESSAGE(w, row.type);
    CHECK(naive_witness_ok(*w));
    notes.insert(w->note);
  }
  CHECK(notes.count("|H| = 21"));
  CHECK(notes.count("|H| = 36"));
}

TEST_CASE("quasi-real exponents") {
  // (5) in A_5: σ^2 lies in the other class, σ^4 = σ^-1 in the same one.
  CHECK(quasi_real_types(make_spec(Ambient::kAlt, CycleType::parse("5"))) ==
        std::vector<int>{4});
  // (7) in S_7: every power coprime to 7.
  CHECK(quasi_real_types(make_spec(Ambient::kSym, CycleType::parse("7"))) ==
        std::vector<int>{2, 3, 4, 5, 6});
  // Oracle for split classes: σ^j stays in the A_m class iff the Jacobi
  // symbol product over the cycle lengths is 1.
  auto spec = make_spec(Ambient::kAlt, CycleType::parse("1,7"));
  for (int j : quasi_real_types(spec)) CHECK(jacobi(j, 7) == 1);
  for (int j = 2; j < 7; ++j) {
    auto qr = quasi_real_types(spec);
    CHECK((std::find(qr.begin(), qr.end(), j) != qr.end()) == (jacobi(j, 7) == 1));
  }
}

TEST_CASE("Jordan criterion on a 15-cycle") {
  auto spec = make_spec(Ambient::kAlt, CycleType::parse("15"));
  auto j = jordan_criterion(spec, Caps{});
  CHECK(j.N == 5);
  CHECK(j.M == 3);
  CHECK(j.j == 2);
  REQUIRE_MESSAGE(j.witness, j.reason);
  CHECK(check_witness(*j.witness).ok);
  CHECK(j.witness->r == spec.representative());
}

TEST_CASE("direct steps produce checked witnesses") {
  const char* types[] = {"6", "8", "9", "3,5", "1^2,5", "2,5", "1,2,3", "2^3,3",
                         "4,3", "4^2", "1,4", "2,4", "1^3,2^2", "1,3^2", "3^3",
                         "2^5", "1,2^3", "2,3^2", "1,7", "10", "1,2,5"};
  for (const char* t : types) {
    auto spec = simple(t);
    auto w = direct_step(spec, Caps{});
    REQUIRE_MESSAGE(w, std::string(t));
    CHECK_MESSAGE(naive_witness_ok(*w), std::string(t));
    CHECK(w->ambient == spec);
  }
  CHECK(direct_step(simple("1,7"), {})->provenance == "AFFINE-mersenne");
  CHECK(direct_step(simple("1,4"), {})->provenance == "AFFINE");
  CHECK(direct_step(simple("5"), {}) == std::nullopt);
  CHECK(direct_step(simple("2,3"), {}) == std::nullopt);
}

TEST_CASE("split classes: both parts") {
  for (const char* t : {"1,7", "3,5", "1^2,5", "7"}) {
    for (auto part : {SplitPart::kPlus, SplitPart::kMinus}) {
      if (!splits_in_Am(CycleType::parse(t))) continue;
      auto spec = make_spec(Ambient::kAlt, CycleType::parse(t), part);
      auto v = classify(spec);
      if (v.status != VerdictStatus::kTypeD) continue;
      CHECK(v.witness->ambient == spec);
      CHECK(check_witness(*v.witness).ok);
    }
  }
}

TEST_CASE("tetrahedron route fails for (2,3^2)") {
  const AffineRack a = companion_affine(2, {1, 1, 1});
  auto spec = simple("2,3^2");
  CHECK(quasi_real_types(spec) == std::vector<int>{5});
  CHECK(exceptional_j(a) == 2);
  // T^6 = id, so id + T^{5+1} = 0 in characteristic 2.
  CHECK((FpMatrix::identity(2, 2) + a.T.pow(6)).is_zero());
  auto w = direct_step(spec, {});
  REQUIRE(w);
  CHECK(w->provenance == "SPLITTING");
  CHECK(w->note.find("tetrahedron route") != std::string::npos);
}

TEST_CASE("exception lists") {
  for (const char* t : {"2,3", "2^3", "1^3,2", "1,2"}) CHECK(exception_list(CycleType::parse(t)) == "a");
  for (const char* t : {"3^2", "2^2,3", "1^4,3", "2^4", "1^2,2^2", "1,2^2", "1,5", "7", "1,11"})
    CHECK(exception_list(CycleType::parse(t)) == "b");
  for (const char* t : {"2,5", "1,4", "3,5", "9", "1,2,3"})
    CHECK(exception_list(CycleType::parse(t)) == std::nullopt);
}

TEST_CASE("rack exhaustion") {
  auto five = class_rack(make_spec(Ambient::kAlt, CycleType::parse("5")), 1000);
  REQUIRE(five);
  auto e = exhaustive_not_type_d(*five, Caps{});
  CHECK(e.status == VerdictStatus::kNotTypeD);
  CHECK(e.method == "subrack enumeration");
  CHECK(pair_reduction(*five).status == VerdictStatus::kNotTypeD);

  auto d32 = amalgam(dihedral_rack(3), 1);
  auto t = exhaustive_not_type_d(d32, Caps{});
  REQUIRE(t.status == VerdictStatus::kTypeD);
  CHECK(check_rack_witness(d32, *t.witness));
  auto p = pair_reduction(d32);
  REQUIRE(p.status == VerdictStatus::kTypeD);
  CHECK(check_rack_witness(d32, *p.witness));

  // Subrack cap forces the fallback.
  Caps tight;
  tight.subracks = 3;
  auto f = exhaustive_not_type_d(*five, tight);
  CHECK(f.method == "pair reduction");
  CHECK(f.status == VerdictStatus::kNotTypeD);
}

TEST_CASE("subrack enumeration agrees with pair reduction on small racks") {
  std::vector<FiniteRack> racks = {dihedral_rack(3), dihedral_rack(4), dihedral_rack(5),
                                   amalgam(dihedral_rack(3), 1), trivial_rack(3),
                                   catalog_rack("tetrahedron"), catalog_rack("cube"),
                                   catalog_rack("oct"), catalog_rack("oct2")};
  for (const auto& spec : all_classes(5, Ambient::kSym)) {
    if (spec.size() <= 40) racks.push_back(*class_rack(spec, 1000));
  }
  for (const auto& spec : all_classes(6, Ambient::kAlt)) {
    if (spec.size() <= 40) racks.push_back(*class_rack(spec, 1000));
  }
  for (const auto& x : racks) {
    auto a = enumerate_subrack_pairs(x, Caps{});
    auto b = pair_reduction(x);
    REQUIRE(a.status != VerdictStatus::kUnknown);
    CHECK(a.status == b.status);
    if (a.witness) CHECK(check_rack_witness(x, *a.witness));
    if (b.witness) CHECK(check_rack_witness(x, *b.witness));
  }
}

TEST_CASE("classify agrees with exhaustion on classes up to 40 elements") {
  Classifier cl;
  for (int m = 3; m <= 8; ++m) {
    for (auto amb : {Ambient::kSym, Ambient::kAlt}) {
      for (const auto& spec : all_classes(m, amb)) {
        if (spec.size() > 40 || spec.type.is_identity()) continue;
        auto v = cl.classify(spec);
        auto x = class_rack(spec, 1000);
        auto e = pair_reduction(*x);
        INFO(spec.to_string());
        if (v.status == VerdictStatus::kTypeD) {
          CHECK(e.status == VerdictStatus::kTypeD);
        } else if (v.status == VerdictStatus::kNotTypeD) {
          CHECK(e.status == VerdictStatus::kNotTypeD);
        }
      }
    }
  }
}

TEST_CASE("classify m = 5..10 follows the exception lists") {
  Classifier cl;
  for (int m = 5; m <= 10; ++m) {
    for (const auto& sym : all_classes(m, Ambient::kSym)) {
      if (sym.type.is_identity()) continue;
      const auto spec = make_spec(sym.type.is_even() ? Ambient::kAlt : Ambient::kSym, sym.type);
      auto v = cl.classify(spec);
      const auto tag = exception_list(spec.type);
      const bool mersenne = spec.type == CycleType::parse("1,7");
      INFO(spec.to_string(), " ", to_string(v.status), " ", v.note);
      if (!tag || mersenne) {
        REQUIRE(v.status == VerdictStatus::kTypeD);
        CHECK(naive_witness_ok(*v.witness));
      } else {
        CHECK(v.status != VerdictStatus::kTypeD);
        CHECK(v.status != VerdictStatus::kUnknown);
      }
    }
  }
  // An S_m class that splits in A_m is not simple.
  auto s5 = cl.classify(make_spec(Ambient::kSym, CycleType::parse("5")));
  CHECK(s5.status == VerdictStatus::kException);
  auto a5 = cl.classify(make_spec(Ambient::kAlt, CycleType::parse("5")));
  CHECK(a5.status == VerdictStatus::kNotTypeD);
  CHECK(a5.tag == "b");
  CHECK_FALSE(a5.scope.empty());
}

TEST_CASE("juxtaposition keeps type D") {
  Classifier cl;
  for (const char* t : {"1,2,5", "2,3,5", "1^3,5", "3,6", "2^2,6", "1,3,5"}) {
    auto spec = simple(t);
    auto w = juxtaposition_step(spec, {});
    REQUIRE_MESSAGE(w, std::string(t));
    CHECK(w->provenance == "JUXTAPOSITION");
    CHECK(naive_witness_ok(*w));
  }
  CHECK(juxtaposition_step(simple("5"), {}) == std::nullopt);
}

TEST_CASE("large prime cycles") {
  Caps caps;
  caps.orbit = 2000;
  auto v = classify(make_spec(Ambient::kAlt, CycleType::parse("13")), caps);
  CHECK(v.status == VerdictStatus::kUnknown);
  CHECK(v.note.find("unverified") != std::string::npos);
  auto e = classify(make_spec(Ambient::kAlt, CycleType::parse("11")), caps);
  CHECK(e.status == VerdictStatus::kException);
}
