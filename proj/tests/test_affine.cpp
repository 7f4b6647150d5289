#include <set>

#include "doctest.h"
#include "rackd/affine.hpp"
#include "rackd/error.hpp"

using namespace rackd;

namespace {

// Oracle: matrix product by the textbook triple loop over long long.
std::vector<int> naive_mul(const FpMatrix& a, const FpMatrix& b) {
  const int t = a.dim(), p = a.p();
  std::vector<int> c(t * t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      long long s = 0;
      for (int k = 0; k < t; ++k) s += 1LL * a.at(i, k) * b.at(k, j);
      c[i * t + j] = static_cast<int>(s % p);
    }
  return c;
}

// Oracle: a polynomial is reducible iff it has a root or (for degree 4)
// a quadratic factor; checked by evaluating all products of monic pairs.
std::set<std::vector<int>> reducible_by_products(int p, int deg) {
  std::set<std::vector<int>> out;
  std::vector<std::vector<std::vector<int>>> by_deg(deg + 1);
  for (int k = 1; k < deg; ++k) {
    int total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    for (int code = 0; code < total; ++code) {
      std::vector<int> c(k + 1, 0);
      int x = code;
      for (int i = 0; i < k; ++i) { c[i] = x % p; x /= p; }
      c[k] = 1;
      by_deg[k].push_back(c);
    }
  }
  for (int k = 1; k < deg; ++k)
    for (const auto& f : by_deg[k])
      for (const auto& g : by_deg[deg - k]) {
        std::vector<int> h(deg + 1, 0);
        for (std::size_t i = 0; i < f.size(); ++i)
          for (std::size_t j = 0; j < g.size(); ++j) h[i + j] = (h[i + j] + f[i] * g[j]) % p;
        out.insert(h);
      }
  return out;
}

std::vector<std::pair<int, int>> prime_powers() {
  return {{3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}};
}

}  // namespace

TEST_CASE("matrix arithmetic") {
  FpMatrix a(5, 2, {1, 2, 3, 4});
  FpMatrix b(5, 2, {0, 1, 4, 2});
  CHECK((a * b).entries() == naive_mul(a, b));
  CHECK(a.pow(0) == FpMatrix::identity(5, 2));
  CHECK(a.pow(3) == a * a * a);
  auto ai = a.inverse();
  REQUIRE(ai);
  CHECK(a * *ai == FpMatrix::identity(5, 2));
  CHECK(a.pow(-2) == (*ai) * (*ai));
  CHECK_FALSE(FpMatrix(5, 2, {1, 2, 2, 4}).is_invertible());
  CHECK(FpMatrix(5, 2, {1, 2, 2, 4}).rank() == 1);
  CHECK(FpMatrix(3, 1, {2}).order() == 2);
  CHECK(FpMatrix(7, 1, {3}).order() == 6);
  CHECK_THROWS_AS(FpMatrix(4, 1, {1}), Error);
  CHECK_THROWS_AS(FpMatrix(5, 2, {1, 2, 3}), Error);
}

TEST_CASE("irreducible polynomials against factor products") {
  for (auto [p, t] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}}) {
    auto red = reducible_by_products(p, t);
    auto irr = irreducible_polynomials(p, t);
    int total = 1;
    for (int i = 0; i < t; ++i) total *= p;
    CHECK(irr.size() + red.size() == static_cast<std::size_t>(total));
    for (const auto& f : irr) CHECK(red.count(f) == 0);
  }
  // Known counts of monic irreducibles: 2^4 -> 3, 3^3 -> 8, 5^2 -> 10.
  CHECK(irreducible_polynomials(2, 4).size() == 3);
  CHECK(irreducible_polynomials(3, 3).size() == 8);
  CHECK(irreducible_polynomials(5, 2).size() == 10);
  CHECK(irreducible_polynomials(5, 1).size() == 3);
  CHECK_FALSE(is_irreducible(2, {1, 0, 1}));
  CHECK(poly_to_string({1, 1, 0, 1}) == "X^3 + X + 1");
}

TEST_CASE("affine racks from the literature") {
  auto d3 = companion_affine(3, {1, 1});  // X + 1: T = -1
  CHECK(d3.d == 2);
  CHECK(find_isomorphism(d3.rack(), dihedral_rack(3)));

  auto tet = companion_affine(2, {1, 1, 1});
  CHECK(tet.d == 3);
  CHECK(tet.size() == 4);
  CHECK(find_isomorphism(tet.rack(), catalog_rack("tetrahedron")));

  auto f5 = make_affine(5, 1, FpMatrix(5, 1, {2}));
  CHECK(f5.d == 4);
  auto cls = class_rack(make_spec(Ambient::kSym, CycleType::parse("1,4")), 1000);
  CHECK(find_embedding(f5.rack(), *cls).status == SearchStatus::kFound);

  CHECK_THROWS_AS(companion_affine(2, {1, 0, 1}), Error);
  CHECK_THROWS_AS(companion_affine(5, {4, 1}), Error);  // X - 1
  CHECK_THROWS_AS(companion_affine(5, {0, 1}), Error);  // X
  CHECK_THROWS_AS(make_affine(5, 1, FpMatrix(5, 1, {0})), Error);
  CHECK(fixed_points(tet) == std::vector<int>{0});
}

TEST_CASE("double racks") {
  for (auto [p, t] : prime_powers()) {
    if (p * t > 12) continue;
    for (const auto& f : irreducible_polynomials(p, t)) {
      auto a = companion_affine(p, f);
      CHECK(validate(a.rack()).ok);
      for (int j = 0; j < a.d; ++j) {
        auto q = double_rack(a, j);
        CHECK(validate(q).ok);
        std::vector<int> lo(a.size()), hi(a.size());
        for (int v = 0; v < a.size(); ++v) { lo[v] = v; hi[v] = a.size() + v; }
        CHECK(is_subrack(q, lo));
        CHECK(is_subrack(q, hi));
        // The upper layer is the affine rack with T^j.
        CHECK(induced_subrack(q, hi).table() == layer_rack(a, j).table());
      }
    }
  }
  // j = 1 doubles the rack.
  auto d5 = companion_affine(5, {1, 1});
  CHECK(double_rack(d5, 1).table() == amalgam(d5.rack(), 1).table());
}

TEST_CASE("power isomorphism when (j)_T is invertible") {
  int checked = 0;
  for (auto [p, t] : prime_powers()) {
    for (const auto& f : irreducible_polynomials(p, t)) {
      auto a = companion_affine(p, f);
      for (int j = 1; j < a.d; ++j) {
        auto r = check_power_isomorphism(a, j);
        if (j_sum(a.T, j).is_invertible()) {
          REQUIRE(r);
          CHECK(*r);
          ++checked;
        } else {
          CHECK_FALSE(r);
        }
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("type D condition matches brute force and the exceptional j") {
  for (auto [p, t] : prime_powers()) {
    for (const auto& f : irreducible_polynomials(p, t)) {
      auto a = companion_affine(p, f);
      auto ex = exceptional_j(a);
      for (int j = 0; j < a.d; ++j) {
        auto w = type_d_condition(a, j);
        auto bf = brute_force_double_witness(a, j);
        CHECK(w.has_value() == bf.has_value());
        CHECK(condition_matrix(a, j).is_zero() == (ex && *ex == j));
        if (w) {
          auto q = double_rack(a, j);
          CHECK(w->r < a.size());
          CHECK(w->s >= a.size());
          CHECK(q.op(w->r, q.op(w->s, q.op(w->r, w->s))) != w->s);
        }
      }
    }
  }
  // D_p^(2): T = -1, j = 1 gives 4 != 0.
  auto d7 = companion_affine(7, {1, 1});
  CHECK(type_d_condition(d7, 1));
  CHECK_FALSE(type_d_condition(d7, 0));
}

TEST_CASE("quasi-real criterion on the class (1,4)") {
  // psi(v) = t^v sigma with t = (1 2 3 4 5), sigma = (2 3 5 4) (x -> 2x).
  auto a = make_affine(5, 1, FpMatrix(5, 1, {2}));
  const Permutation t = Permutation::parse("(1 2 3 4 5)", 5);
  const Permutation sigma = lambda_k(5, 2);
  std::vector<Permutation> psi;
  for (int v = 0; v < 5; ++v) psi.push_back(t.pow(v) * sigma);
  auto spec = make_spec(Ambient::kSym, CycleType::parse("1,4"));
  auto ev = quasi_real_affine_criterion(a, psi, 3, spec);
  CHECK(ev.applies);
  CHECK(ev.failed.empty());
  CHECK(squares_differ(ev.r, ev.s));
  // j = 1 is not quasi-real.
  auto bad = quasi_real_affine_criterion(a, psi, 1, spec);
  CHECK_FALSE(bad.applies);
  CHECK_FALSE(bad.failed.empty());
}
