#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "rackd/error.hpp"
#include "rackd/group.hpp"

using namespace rackd;

namespace {

Permutation P(const char* s, int m) { return Permutation::parse(s, m); }

// Oracle: naive closure by repeated multiplication over a std::set.
std::set<Permutation> naive_closure(int m, const std::vector<Permutation>& gens) {
  std::set<Permutation> s{Permutation(m)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Permutation> cur(s.begin(), s.end());
    for (const auto& a : cur)
      for (const auto& g : gens)
        if (s.insert(g * a).second) grew = true;
  }
  return s;
}

std::vector<Permutation> all_perms(int m) {
  std::vector<int> v(m);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do out.push_back(Permutation::from_images(v));
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace

TEST_CASE("small closures and orders") {
  GeneratedGroup g(2, {P("(1 2)", 2)});
  auto c = g.closure(100);
  REQUIRE(c);
  CHECK(c->size() == 2);
  CHECK(g.order() == 2);
  GeneratedGroup t21(7, {P("(2 3 4)(5 6 7)", 7), P("(1 2 5)(3 4 6)", 7)});
  CHECK(t21.order() == 21);
  CHECK(t21.closure(1000)->size() == 21);
  GeneratedGroup t36(9, {P("(1 2 3)(4 5 6)(7 8 9)", 9), P("(1 2 4)(3 5 6)(7 9 8)", 9)});
  CHECK(t36.order() == 36);
  CHECK(GeneratedGroup(5, {P("(1 2 3)", 5), P("(3 4 5)", 5)}).order() == 60);
  for (int m = 2; m <= 12; ++m) {
    CHECK(GeneratedGroup(m, {Permutation::cycle(m, 1, m)}).order() == m);
  }
  CHECK(symmetric_group(10).order() == BigInt(3628800));
  CHECK(alternating_group(10).order() == BigInt(1814400));
  CHECK(alternating_group(64).order() * 2 == symmetric_group(64).order());
  CHECK(!g.closure(1));
}

TEST_CASE("membership agrees with closure enumeration") {
  std::vector<std::vector<Permutation>> gensets = {
      {P("(1 2 3 4 5 6)", 6), P("(1 2)", 6)},
      {P("(1 2 3)(4 5 6)", 6), P("(1 4)", 6)},
      {P("(1 2)(3 4)", 6), P("(1 3)(2 4)", 6), P("(5 6)", 6)},
      {P("(1 2 3 4)", 6), P("(2 4)", 6)},
      {P("(1 2 3 4 5)", 6), P("(1 2)(3 4)", 6)},
  };
  auto all = all_perms(6);
  for (const auto& gens : gensets) {
    GeneratedGroup g(6, gens);
    auto oracle = naive_closure(6, gens);
    CHECK(g.order() == oracle.size());
    for (const auto& x : all) CHECK(g.contains(x) == (oracle.count(x) == 1));
  }
}

TEST_CASE("class orbits") {
  auto s = P("(1 2 3 4 5)", 5);
  GeneratedGroup cyc(5, {s});
  auto o = class_orbit(s, cyc, 100);
  REQUIRE(o);
  CHECK(o->size() == 1);
  // Table row (1^3,2^2): distinct classes in H.
  auto s1 = P("(4 5)(6 7)", 7), s2 = P("(1 2)(3 7)", 7);
  GeneratedGroup h(7, {s1, s2});
  CHECK(are_conjugate_in(s1, s2, h, 1000) == Ternary::kNo);
  CHECK(are_conjugate_in(s1, s1, h, 1000) == Ternary::kYes);
  // Orbit sizes divide |H|.
  auto sz = class_orbit(s1, h, 1000)->size();
  CHECK(static_cast<std::size_t>(h.order()) % sz == 0);
  // Step example m = 6.
  auto sig = P("(1 2 3 4 5 6)", 6), tau = P("(1 2 5 6 3 4)", 6);
  GeneratedGroup h6(6, {sig, tau});
  CHECK(are_conjugate_in(sig, tau, h6, 100000) == Ternary::kNo);
  CHECK(are_conjugate_in(sig, tau, symmetric_group(6), 10) == Ternary::kUnknown);
}

TEST_CASE("conjugacy NO answers agree with brute force over H") {
  std::vector<Permutation> gens = {P("(1 2 3 4)", 6), P("(3 4 5 6)", 6)};
  GeneratedGroup h(6, gens);
  auto elems = *h.closure(100000);
  auto all = all_perms(6);
  for (std::size_t i = 0; i < all.size(); i += 37) {
    for (std::size_t j = 0; j < all.size(); j += 53) {
      bool brute = false;
      for (const auto& g : elems)
        if (conjugate(g, all[i]) == all[j]) { brute = true; break; }
      auto t = are_conjugate_in(all[i], all[j], h, 100000);
      CHECK(t == (brute ? Ternary::kYes : Ternary::kNo));
    }
  }
}

TEST_CASE("centralizers in S_m") {
  auto c = centralizer_in_Sm(Permutation::cycle(7, 1, 7));
  CHECK(c.order() == 7);
  CHECK(centralizer_in_Sm(P("(1 2)", 4)).order() == 4);
  for (int m = 1; m <= 7; ++m) {
    auto all = all_perms(m);
    std::set<CycleType> seen;
    for (const auto& x : all) {
      auto t = cycle_type(x);
      if (!seen.insert(t).second) continue;
      std::size_t brute = 0;
      for (const auto& g : all) brute += (g * x == x * g);
      CHECK(centralizer_order(t) == brute);
      CHECK(centralizer_in_Sm(x).order() == brute);
    }
  }
}

TEST_CASE("even subgroup generators") {
  auto gens = centralizer_in_Sm(P("(1 2)(3 4)(5 6 7)", 7)).generators();
  GeneratedGroup full(7, gens);
  GeneratedGroup even(7, even_subgroup_generators(gens));
  CHECK(even.order() * 2 == full.order());
  for (const auto& g : even.generators()) CHECK(g.is_even());
}

TEST_CASE("class elements and splitting") {
  auto t = CycleType::parse("1^3,2");
  CHECK(class_elements(make_spec(Ambient::kSym, t), 1000)->size() == 10);
  auto five = CycleType::parse("5");
  CHECK(splits_in_Am(five));
  auto plus = class_elements(make_spec(Ambient::kAlt, five, SplitPart::kPlus), 1000);
  auto minus = class_elements(make_spec(Ambient::kAlt, five, SplitPart::kMinus), 1000);
  CHECK(plus->size() == 12);
  CHECK(minus->size() == 12);
  for (const auto& x : *plus) CHECK(std::find(minus->begin(), minus->end(), x) == minus->end());
  CHECK(!splits_in_Am(CycleType::parse("1,2^2")));
  CHECK(!splits_in_Am(CycleType::parse("1^2,3")));
  // Split test agrees with enumeration for all even types, m <= 8.
  for (int m = 2; m <= 8; ++m) {
    for (const auto& spec : all_classes(m, Ambient::kSym)) {
      if (!spec.type.is_even()) continue;
      auto s_class = class_elements(spec, 100000);
      ConjClassSpec a = make_spec(Ambient::kAlt, spec.type);
      auto a_class = class_elements(a, 100000);
      bool split = a_class->size() < s_class->size();
      CHECK(split == splits_in_Am(spec.type));
      for (const auto& x : *a_class) CHECK(a.contains(x));
      if (split) {
        ConjClassSpec other = a;
        other.split = SplitPart::kMinus;
        for (const auto& x : *a_class) CHECK(!other.contains(x));
      }
    }
  }
  CHECK_THROWS_AS(make_spec(Ambient::kAlt, CycleType::parse("2,3")), Error);
  CHECK_THROWS_AS(make_spec(Ambient::kSym, five, SplitPart::kPlus), Error);
}
