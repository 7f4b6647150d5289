#include <complex>
#include <numbers>
#include <set>

#include "doctest.h"
#include "rackd/cocycle.hpp"
#include "rackd/error.hpp"

using namespace rackd;

namespace {

// Oracle: numeric value of a cyclotomic integer.
std::complex<double> numeric(const Cyclotomic& c) {
  std::complex<double> z = std::polar(1.0, 2 * std::numbers::pi / c.order()), v = 0, p = 1;
  for (long long a : c.coefficients()) {
    v += static_cast<double>(a) * p;
    p *= z;
  }
  return v;
}

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

std::vector<FiniteRack> small_racks() {
  std::vector<FiniteRack> out = {dihedral_rack(3), dihedral_rack(4), dihedral_rack(5),
                                 trivial_rack(2), catalog_rack("tetrahedron"),
                                 catalog_rack("oct"), catalog_rack("cube"),
                                 *class_rack(make_spec(Ambient::kSym, CycleType::parse("1^2,2")), 100)};
  return out;
}

// Coboundary-twisted values q(x,y) = f(x▷y) f(y)^-1 with f(x) = ζ^{a x}.
Cocycle coboundary(const FiniteRack& X, int n, int a) {
  std::vector<CycloMatrix> q;
  for (int x = 0; x < X.size(); ++x)
    for (int y = 0; y < X.size(); ++y)
      q.push_back(CycloMatrix::scalar(Cyclotomic::root(n, a * (X.op(x, y) - y)), 1));
  return Cocycle::principal(X, n, 1, q);
}

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long long>{-1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long long>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long long>{1, 0, -1, 0, 1});
  CHECK(euler_phi(12) == 4);
  for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 30}) {
    CHECK(Cyclotomic::root(n, 1).pow(n) == Cyclotomic::one(n));
    Cyclotomic s = Cyclotomic::zero(n);
    for (int k = 0; k < n; ++k) s = s + Cyclotomic::root(n, k);
    CHECK(s.is_zero() == (n > 1));
    for (int k = 0; k < n; ++k) {
      auto r = Cyclotomic::root(n, k);
      CHECK(r.root_exponent() == k);
      CHECK(close(numeric(r), std::polar(1.0, 2 * std::numbers::pi * k / n)));
      // Reducing a reduced value changes nothing.
      CHECK(r * Cyclotomic::one(n) == r);
      CHECK(r.lift(2 * n) == Cyclotomic::root(2 * n, 2 * k));
    }
  }
  // Products and sums against the numeric oracle.
  const int n = 12;
  Cyclotomic a = Cyclotomic::root(n, 1) + Cyclotomic(n, 3) - Cyclotomic::root(n, 7);
  Cyclotomic b = Cyclotomic::root(n, 5) * Cyclotomic(n, -2) + Cyclotomic::root(n, 11);
  CHECK(close(numeric(a * b), numeric(a) * numeric(b)));
  CHECK(close(numeric(a + b), numeric(a) + numeric(b)));
  CHECK(close(numeric(a.pow(5)), std::pow(numeric(a), 5)));
  CHECK(Cyclotomic::root(4, 2) == Cyclotomic(4, -1));
  CHECK(Cyclotomic::root(5, 3).pow(-1) == Cyclotomic::root(5, 2));
  CHECK(Cyclotomic(2, -1).to_string() == "-1");
  CHECK(Cyclotomic::root(7, 3).to_string() == "ζ7^3");
  CHECK_FALSE((Cyclotomic(3, 2)).root_exponent());
  CHECK_THROWS_AS(Cyclotomic::one(3) + Cyclotomic::one(4), Error);
}

TEST_CASE("cyclotomic matrices") {
  const int n = 8;
  auto z = [&](int k) { return Cyclotomic::root(n, k); };
  CycloMatrix m(n, 2, {z(1), z(2), z(3), z(0)});
  CHECK(close(numeric(m.det()), numeric(z(1)) - numeric(z(5))));
  CHECK(m * CycloMatrix::identity(n, 2) == m);
  CycloMatrix sing(n, 2, {z(1), z(2), z(3), z(4)});
  CHECK_FALSE(sing.is_invertible());
  CycloMatrix three(n, 3, {z(0), z(1), Cyclotomic(n), Cyclotomic(n), z(2), z(3), z(4),
                           Cyclotomic(n), z(5)});
  // Oracle: numeric 3x3 determinant.
  std::complex<double> a[9];
  for (int i = 0; i < 9; ++i) a[i] = numeric(three.entries()[i]);
  auto d = a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  CHECK(close(numeric(three.det()), d));
}

TEST_CASE("degree-one reps of centralizers") {
  CHECK(enumerate_degree_one(CycleType::parse("1^3,2")).size() == 4);
  CHECK(enumerate_degree_one(CycleType::parse("5")).size() == 5);
  // Oracle: the number of linear characters is |C / [C, C]|.
  for (int m = 2; m <= 6; ++m) {
    for (const auto& spec : all_classes(m, Ambient::kSym)) {
      const Permutation sigma = spec.representative();
      auto C = *centralizer_in_Sm(sigma).closure(100000);
      std::vector<Permutation> comms;
      std::set<Permutation> cs;
      for (const auto& a : C)
        for (const auto& b : C) cs.insert(a * b * a.inverse() * b.inverse());
      comms.assign(cs.begin(), cs.end());
      const auto derived = GeneratedGroup(m, comms).order();
      const auto reps = enumerate_degree_one(spec.type);
      INFO(spec.to_string());
      CHECK(BigInt(C.size()) == derived * BigInt(reps.size()));
      // Each rep is a homomorphism, and distinct reps differ somewhere.
      std::set<std::vector<Cyclotomic>> tables;
      for (const auto& rep : reps) {
        std::vector<Cyclotomic> vals;
        for (const auto& c : C) vals.push_back(rep_value(rep, sigma, c));
        for (std::size_t i = 0; i < C.size(); i += 3)
          for (std::size_t j = 0; j < C.size(); j += 5)
            CHECK(rep_value(rep, sigma, C[i] * C[j]) == vals[i] * vals[j]);
        tables.insert(vals);
        CHECK(q_sigma_sigma(spec.type, rep) == rep_value(rep, sigma, sigma));
      }
      CHECK(tables.size() == reps.size());
    }
  }
  // (2,3) with ρ2 = sgn, ρ3 = χ_0: q_σσ = -1.
  DegreeOneRep r{CycleType::parse("2,3"), {{2, 1}, {3, 0}}, {}};
  CHECK(q_sigma_sigma(r.type, r) == Cyclotomic(6, -1));
  CHECK(r.to_string() == "ρ2 = χ_1, ρ3 = χ_0");
}

TEST_CASE("cocycle identity and braid equation agree") {
  int tables = 0, valid = 0, invalid = 0;
  auto both = [&](const Cocycle& q) {
    const auto v = validate_cocycle(q);
    const auto b = braiding_check(q);
    CHECK(v.ok == b.ok);
    ++tables;
    (v.ok ? valid : invalid)++;
    return v.ok;
  };
  for (const auto& X : small_racks()) {
    CHECK(both(Cocycle::constant(X, 3, 1)));
    CHECK(both(Cocycle::constant(X, 2, 1)));
    CHECK(both(coboundary(X, 5, 2)));
    // Mutations of valid tables.
    for (int k = 0; k < 3; ++k) {
      auto q = coboundary(X, 5, 1);
      const int x = (7 * k + 1) % X.size(), y = (3 * k + 2) % X.size();
      q.set(x, y, CycloMatrix::scalar(q.at(x, y).at(0, 0) * Cyclotomic::root(5, 1 + k), 1));
      both(q);
    }
    // Degree two: a constant invertible matrix.
    const int n = 4;
    CycloMatrix m(n, 2, {Cyclotomic::root(n, 1), Cyclotomic(n, 1), Cyclotomic(n, 0),
                         Cyclotomic::root(n, 3)});
    std::vector<CycloMatrix> vals(X.size() * X.size(), m);
    CHECK(both(Cocycle::principal(X, n, 2, vals)));
    vals[1] = CycloMatrix::identity(n, 2);
    both(Cocycle::principal(X, n, 2, vals));
  }
  // Non-principal: two parts of D_4 with degrees 1 and 2.
  {
    auto X = dihedral_rack(4);
    auto parts = decompose(X);
    REQUIRE(parts.size() == 2);
    std::vector<int> part(X.size());
    for (int z : parts[1]) part[z] = 1;
    std::vector<CycloMatrix> q;
    for (int x = 0; x < X.size(); ++x)
      for (int z = 0; z < X.size(); ++z)
        q.push_back(part[z] == 0 ? CycloMatrix::scalar(Cyclotomic(2, -1), 1)
                                 : CycloMatrix(2, 2, {Cyclotomic(2, 0), Cyclotomic(2, 1),
                                                      Cyclotomic(2, 1), Cyclotomic(2, 0)}));
    auto c = Cocycle::non_principal(X, 2, part, {1, 2}, q);
    CHECK_FALSE(c.is_principal());
    CHECK(both(c));
    c.set(0, parts[1][0], CycloMatrix::identity(2, 2));
    CHECK_FALSE(both(c));
  }
  CHECK(tables >= 50);
  CHECK(valid > 0);
  CHECK(invalid > 0);
}

TEST_CASE("constant -1 on the transpositions of S_3") {
  auto X = *class_rack(make_spec(Ambient::kSym, CycleType::parse("1,2")), 10);
  auto q = Cocycle::constant(X, 2, 1);
  CHECK(validate_cocycle(q).ok);
  CHECK(braiding_check(q).ok);
  auto g = g_map(q);
  CHECK(g.faithful);
  CHECK(g.morphism);
  REQUIRE(g.group_order);
  CHECK(*g.group_order > 0);
}

TEST_CASE("g map") {
  auto t2 = Cocycle::constant(trivial_rack(2), 3, 1);
  CHECK_FALSE(g_map_faithful(t2));
  for (const auto& X : small_racks()) {
    auto q = Cocycle::constant(X, 4, 1);
    auto g = g_map(q);
    CHECK(g.morphism);
    if (is_faithful(X)) CHECK(g.faithful);
    CHECK(g.group_order);
  }
  // A rejected table is reported with its triple.
  auto q = coboundary(dihedral_rack(3), 5, 1);
  q.set(0, 1, CycloMatrix::scalar(Cyclotomic::root(5, 2), 1));
  auto v = validate_cocycle(q);
  CHECK_FALSE(v.ok);
  CHECK(v.triple);
  CHECK_THROWS_AS(Cocycle::constant(trivial_rack(2), 0, 1), Error);
}

TEST_CASE("Yetter-Drinfeld braiding of degree-one pairs") {
  // Transpositions in S_3 with the sign character: constant -1.
  auto spec3 = make_spec(Ambient::kSym, CycleType::parse("1,2"));
  DegreeOneRep sgn{spec3.type, {{1, 0}, {2, 1}}, {}};
  // Some section makes the cocycle constant -1; every section gives a
  // valid table with -1 on the diagonal.
  const auto base = conjugator_section(spec3, 100);
  const Permutation sigma3 = spec3.representative();
  int constant = 0;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<Permutation> sec = base;
    for (int x = 0; x < 3; ++x)
      if (mask >> x & 1) sec[x] = sec[x] * sigma3;
    auto q = yd_braiding(spec3, sgn, 100, &sec);
    CHECK(validate_cocycle(q).ok);
    for (int x = 0; x < 3; ++x) CHECK(q.at(x, x).at(0, 0) == Cyclotomic(2, -1));
    bool all = true;
    for (const auto& v : q.values()) all = all && v.at(0, 0) == Cyclotomic(2, -1);
    constant += all;
  }
  CHECK(constant > 0);
  // The least section gives a cohomologous table with the same diagonal.
  auto least = yd_braiding(spec3, sgn);
  CHECK(validate_cocycle(least).ok);
  for (int x = 0; x < 3; ++x) CHECK(least.at(x, x).at(0, 0) == Cyclotomic(2, -1));

  for (int m = 3; m <= 6; ++m) {
    for (const auto& spec : all_classes(m, Ambient::kSym)) {
      if (spec.type.is_identity()) continue;
      const bool full = spec.size() <= 30;
      for (const auto& rep : enumerate_degree_one(spec.type)) {
        auto c = yd_braiding(spec, rep);
        INFO(spec.to_string(), " ", rep.to_string());
        for (int x = 0; x < c.rack().size(); ++x) {
          CHECK(c.at(x, x).at(0, 0) == q_sigma_sigma(spec.type, rep));
        }
        if (full) CHECK(validate_cocycle(c).ok);
      }
    }
  }
  // Another section gives another cocycle with the same diagonal, still a
  // solution of the braid equation.
  auto spec = make_spec(Ambient::kSym, CycleType::parse("1,3"));
  auto sec = conjugator_section(spec, 1000);
  const Permutation sigma = spec.representative();
  std::vector<Permutation> other;
  for (const auto& g : sec) other.push_back(g * sigma);
  for (const auto& rep : enumerate_degree_one(spec.type)) {
    auto a = yd_braiding(spec, rep);
    auto b = yd_braiding(spec, rep, 1000, &other);
    CHECK(braiding_check(b).ok);
    for (int x = 0; x < a.rack().size(); ++x) CHECK(a.at(x, x) == b.at(x, x));
  }
  // In A_4 the section uses even conjugators.
  auto alt = make_spec(Ambient::kAlt, CycleType::parse("1,3"));
  for (const auto& g : conjugator_section(alt, 1000)) CHECK(g.is_even());
}
