#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "rackd/error.hpp"
#include "rackd/perm.hpp"

using rackd::CycleType;
using rackd::Permutation;

namespace {

// Independent oracle: images as plain vectors, composed by hand.
std::vector<int> images_of(const Permutation& p) {
  std::vector<int> v(p.degree());
  for (int i = 1; i <= p.degree(); ++i) v[i - 1] = p(i);
  return v;
}

std::vector<Permutation> all_perms(int m) {
  std::vector<int> v(m);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

int brute_sign(const std::vector<int>& v) {
  int inv = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) inv += v[i] > v[j];
  return inv % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("parse and print round trip") {
  auto p = Permutation::parse("(1 2)(3 4 5)", 5);
  CHECK(p.to_string() == "(1 2)(3 4 5)");
  CHECK(Permutation(4).to_string() == "()");
  CHECK(Permutation::parse("()", 3).is_identity());
  CHECK(Permutation::parse("(3 1 2)", 3).to_string() == "(1 2 3)");
  CHECK_THROWS_AS(Permutation::parse("(1 2", 3), rackd::Error);
  CHECK_THROWS_AS(Permutation::parse("(1 1)", 3), rackd::Error);
  CHECK_THROWS_AS(Permutation::parse("(1 4)", 3), rackd::Error);
  CHECK_THROWS_AS(Permutation::parse("1 2", 3), rackd::Error);
}

TEST_CASE("compose evaluates right to left") {
  auto id = Permutation(3);
  auto a = Permutation::parse("(1 2 3)", 3);
  auto b = Permutation::parse("(1 2)", 3);
  CHECK(id * a == a);
  CHECK((b * b).is_identity());
  auto ab = a * b;
  auto ia = images_of(a), ib = images_of(b);
  for (int i = 1; i <= 3; ++i) CHECK(ab(i) == ia[ib[i - 1] - 1]);
  CHECK(ab == Permutation::parse("(1 3)", 3));
  CHECK_THROWS_AS(a * Permutation(4), rackd::Error);
}

TEST_CASE("conjugate") {
  auto s = Permutation::parse("(1 2 3 4)", 4);
  CHECK(rackd::conjugate(Permutation(4), s) == s);
  CHECK(rackd::conjugate(Permutation::parse("(1 3)", 4), s) ==
        Permutation::parse("(3 2 1 4)", 4));
  // Cycle type is preserved: exhaustive at m = 5.
  auto all = all_perms(5);
  for (const auto& g : all)
    for (std::size_t k = 0; k < all.size(); k += 7)
      CHECK(rackd::cycle_type(rackd::conjugate(g, all[k])) ==
            rackd::cycle_type(all[k]));
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 6 + trial % 7;
    std::vector<int> v(m), w(m);
    std::iota(v.begin(), v.end(), 1);
    std::iota(w.begin(), w.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    std::shuffle(w.begin(), w.end(), rng);
    auto g = Permutation::from_images(v), x = Permutation::from_images(w);
    auto c = rackd::conjugate(g, x);
    CHECK(rackd::cycle_type(c) == rackd::cycle_type(x));
    CHECK(c == g * x * g.inverse());
  }
}

TEST_CASE("sign, order, inverse agree with brute force on S_6") {
  for (const auto& p : all_perms(6)) {
    CHECK(p.sign() == brute_sign(images_of(p)));
    CHECK((p * p.inverse()).is_identity());
    auto q = p;
    std::uint64_t k = 1;
    while (!q.is_identity()) {
      q = q * p;
      ++k;
    }
    CHECK(p.order() == k);
    CHECK(p.pow(static_cast<long long>(k)).is_identity());
    CHECK(p.pow(-1) == p.inverse());
  }
}

TEST_CASE("cycle types and parts") {
  auto x = Permutation::parse("(1 2)(3 4 5)", 5);
  auto t = rackd::cycle_type(x);
  CHECK(t == CycleType::parse("2,3"));
  auto [e, o] = rackd::even_odd_parts(x);
  CHECK(e == Permutation::parse("(1 2)", 5));
  CHECK(o == Permutation::parse("(3 4 5)", 5));
  auto [e1, o1] = rackd::even_odd_parts(Permutation(5));
  CHECK(e1.is_identity());
  CHECK(o1.is_identity());
  CHECK(rackd::cycle_type(Permutation(5)).to_string() == "1^5");
  for (const auto& p : all_perms(6)) {
    auto [ev, od] = rackd::even_odd_parts(p);
    CHECK(ev * od == p);
    CHECK(ev * od == od * ev);
    CHECK(rackd::cycle_type(p).sign() == p.sign());
  }
}

TEST_CASE("cycle type parsing") {
  auto t = CycleType::parse("1^2,2^2");
  CHECK(t.degree() == 6);
  CHECK(t.count(2) == 2);
  CHECK(t.to_string() == "1^2,2^2");
  CHECK(CycleType::parse("(1^3,2)").degree() == 5);
  CHECK(CycleType::parse("3,3") == CycleType::parse("3^2"));
  CHECK(CycleType::parse("2,4").sign() == 1);
  CHECK(CycleType::parse("2,3").sign() == -1);
  CHECK_THROWS_AS(CycleType::parse("2,,3"), rackd::Error);
  CHECK_THROWS_AS(CycleType::parse("a"), rackd::Error);
  CHECK_THROWS_AS(CycleType::parse(""), rackd::Error);
  CHECK_THROWS_AS(CycleType::parse("0"), rackd::Error);
}

TEST_CASE("juxtaposition") {
  auto a = Permutation::parse("(1 2)", 2);
  auto b = Permutation::parse("(1 2 3)", 3);
  CHECK(a.juxtapose(b) == Permutation::parse("(1 2)(3 4 5)", 5));
  CHECK(a.extended(4) == Permutation::parse("(1 2)", 4));
}

TEST_CASE("lambda_k and jacobi") {
  CHECK(rackd::lambda_k(7, 1).is_identity());
  auto l2 = rackd::lambda_k(5, 2);
  CHECK(rackd::cycle_type(l2) == CycleType::parse("1,4"));
  CHECK(l2.sign() == -1);
  CHECK(rackd::jacobi(1, 9) == 1);
  CHECK(rackd::jacobi(2, 5) == -1);
  CHECK(rackd::jacobi(3, 9) == 0);
  CHECK_THROWS_AS(rackd::jacobi(1, 4), rackd::Error);
  CHECK_THROWS_AS(rackd::lambda_k(9, 3), rackd::Error);
  for (int m = 3; m <= 21; m += 2) {
    auto s = Permutation::cycle(m, 1, m);
    for (int k = 1; k < m; ++k) {
      if (std::gcd(k, m) != 1) continue;
      CHECK(rackd::conjugate(rackd::lambda_k(m, k), s) == s.pow(k));
    }
  }
}

TEST_CASE("jacobi agrees with Euler's criterion for primes") {
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23}) {
    for (int k = 1; k < p; ++k) {
      long long r = 1;
      for (int e = 0; e < (p - 1) / 2; ++e) r = r * k % p;
      CHECK(rackd::jacobi(k, p) == (r == 1 ? 1 : -1));
    }
  }
}
