#include "doctest.h"
#include "rackd/abelian.hpp"
#include "rackd/error.hpp"

using namespace rackd;

namespace {

ConjClassSpec alt(const char* type) { return make_spec(Ambient::kAlt, CycleType::parse(type)); }

// Oracle: the hypotheses by plain multiplication.
bool naive_ok(const CommutingTriple& t) {
  const auto& s = t.sigma;
  Permutation p = Permutation(s[0].degree());
  for (int i = 0; i < t.h; ++i) p = p * s[0];
  return s[0] * s[1] == s[1] * s[0] && s[0] * s[2] == s[2] * s[0] &&
         s[1] * s[2] == s[2] * s[1] && t.h % 2 == 1 && p == s[1] * s[2] &&
         t.g2 * s[0] * t.g2.inverse() == s[1] && t.g3 * s[0] * t.g3.inverse() == s[2] &&
         (t.g3 * t.g2) * s[0] == s[0] * (t.g3 * t.g2) &&
         (t.g2 * t.g3) * s[0] == s[0] * (t.g2 * t.g3);
}

}  // namespace

TEST_CASE("A4 x Z/r embeddings") {
  struct Case {
    const char* type;
    int r;
  };
  for (auto [type, r] : {Case{"1,2^2", 1}, Case{"1^2,2^2", 1}, Case{"2^2,3", 3},
                         Case{"2^4", 1}, Case{"2^2,5", 5}, Case{"2^2,3^2", 3}}) {
    auto spec = alt(type);
    auto t = a4xcr_embed(spec);
    INFO(type);
    CHECK(t.h == r + 2);
    CHECK(naive_ok(t));
    CHECK(check_triple(t).ok);
    for (const auto& x : t.sigma) CHECK(spec.contains(x));
    auto v = triangle_verdict(t);
    CHECK(v.status == TriangleStatus::kInfiniteAllReps);
    CHECK(v.diagram.exponent[1][2] == static_cast<long long>(t.h) * t.h - 2);
  }
  CHECK_THROWS_AS(a4xcr_embed(alt("1^2,3")), Error);
  CHECK_THROWS_AS(a4xcr_embed(make_spec(Ambient::kSym, CycleType::parse("1,2,4"))), Error);
}

TEST_CASE("triple search") {
  for (const char* type : {"1,2^2", "1^2,2^2", "2^2,3", "2^4"}) {
    auto spec = alt(type);
    auto s = find_triple(spec);
    INFO(type, " ", s.reason);
    REQUIRE(s.triple);
    CHECK(naive_ok(*s.triple));
    CHECK(triangle_verdict(*s.triple).status == TriangleStatus::kInfiniteAllReps);
    // The least odd exponent never exceeds the embedded one.
    CHECK(s.triple->h <= a4xcr_embed(spec).h);
  }
  // The involutions of A_4.
  auto a4 = make_spec(Ambient::kAlt, CycleType::parse("2^2"));
  auto s = find_triple(a4);
  REQUIRE(s.triple);
  CHECK(naive_ok(*s.triple));
  // No commuting triple among 3-cycles fixing a point in A_4.
  CHECK_FALSE(find_triple(make_spec(Ambient::kAlt, CycleType::parse("1,3"), SplitPart::kPlus)).triple);
}

TEST_CASE("hypothesis gate") {
  auto t = a4xcr_embed(alt("2^2,3"));
  auto even = t;
  even.h = t.h + 1;
  CHECK(triangle_verdict(even).status == TriangleStatus::kInconclusive);
  auto bad = t;
  std::swap(bad.g2, bad.g3);
  CHECK_FALSE(check_triple(bad).ok);
  CHECK(lambda_one_branch(Cyclotomic::one(6)));
  CHECK_FALSE(lambda_one_branch(Cyclotomic(6, -1)));
}

TEST_CASE("gamma matrix and raw q-matrix") {
  for (const char* type : {"1,2^2", "2^2,3", "2^4"}) {
    auto t = a4xcr_embed(alt(type));
    for (const auto& row : gamma_matrix(t))
      for (const auto& g : row) CHECK(g * t.sigma[0] == t.sigma[0] * g);
    for (const auto& rep : enumerate_degree_one(t.ambient.type)) {
      auto q = raw_qmatrix(t, rep);
      const Cyclotomic lambda = q[0][0];
      auto fig = triangle_diagram(t.h).instantiate(lambda);
      INFO(type, " ", rep.to_string());
      // Diagonal entries all equal λ1 = ρ(σ1).
      for (int i = 0; i < 3; ++i) CHECK(q[i][i] == lambda);
      CHECK(q[0][0] == fig[0][0]);
      // Symmetrized off-diagonal products match the edge labels.
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CHECK(q[i][j] * q[j][i] == fig[i][j]);
    }
  }
}
