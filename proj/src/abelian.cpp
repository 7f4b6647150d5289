#include "rackd/abelian.hpp"

#include <algorithm>

#include "rackd/error.hpp"

namespace rackd {

std::string_view to_string(TriangleStatus s) noexcept {
  return s == TriangleStatus::kInfiniteAllReps ? "INFINITE_DIM_ALL_REPS" : "INCONCLUSIVE";
}

std::array<std::array<Permutation, 3>, 3> gamma_matrix(const CommutingTriple& t) {
  const int m = t.sigma[0].degree();
  const std::array<Permutation, 3> g{Permutation(m), t.g2, t.g3};
  std::array<std::array<Permutation, 3>, 3> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = g[j].inverse() * t.sigma[i] * g[j];
  return out;
}

TripleCheck check_triple(const CommutingTriple& t) {
  TripleCheck c;
  auto fail = [&](std::string msg) {
    c.violation = std::move(msg);
    return c;
  };
  const auto& s = t.sigma;
  for (const auto& x : s)
    if (!t.ambient.contains(x)) return fail(x.to_string() + " is not in " + t.ambient.to_string());
  if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) return fail("σ1, σ2, σ3 are not distinct");
  c.in_class = true;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (s[i] * s[j] != s[j] * s[i]) return fail("σ" + std::to_string(i + 1) + " and σ" +
                                                  std::to_string(j + 1) + " do not commute");
  c.commuting = true;
  if (t.ambient.ambient == Ambient::kAlt && (!t.g2.is_even() || !t.g3.is_even())) {
    return fail("conjugators must be even");
  }
  if (conjugate(t.g2, s[0]) != s[1]) return fail("g2 σ1 g2^-1 != σ2");
  if (conjugate(t.g3, s[0]) != s[2]) return fail("g3 σ1 g3^-1 != σ3");
  c.conjugators = true;
  if (t.h % 2 == 0) return fail("h is even");
  c.odd = true;
  if (s[0].pow(t.h) != s[1] * s[2]) return fail("σ1^h != σ2 σ3");
  c.power = true;
  auto centralizes = [&](const Permutation& g) { return g * s[0] == s[0] * g; };
  if (!centralizes(t.g3 * t.g2) || !centralizes(t.g2 * t.g3)) {
    return fail("g3 g2 or g2 g3 does not centralize σ1");
  }
  for (const auto& row : gamma_matrix(t))
    for (const auto& g : row)
      if (!centralizes(g)) return fail("γ entry " + g.to_string() + " does not centralize σ1");
  c.centralizing = true;
  c.ok = true;
  return c;
}

TriangleDiagram triangle_diagram(int h) {
  TriangleDiagram d;
  d.h = h;
  const long long hh = h;
  d.exponent = {{{1, hh, hh}, {hh, 1, hh * hh - 2}, {hh, hh * hh - 2, 1}}};
  return d;
}

std::array<std::array<Cyclotomic, 3>, 3> TriangleDiagram::instantiate(
    const Cyclotomic& lambda1) const {
  std::array<std::array<Cyclotomic, 3>, 3> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = lambda1.pow(exponent[i][j]);
  return out;
}

std::array<std::array<Cyclotomic, 3>, 3> raw_qmatrix(const CommutingTriple& t,
                                                     const DegreeOneRep& rep) {
  const auto gamma = gamma_matrix(t);
  std::array<std::array<Cyclotomic, 3>, 3> q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q[i][j] = rep_value(rep, t.sigma[0], gamma[i][j]);
  return q;
}

bool lambda_one_branch(const Cyclotomic& lambda1) {
  return lambda1 == Cyclotomic::one(lambda1.order());
}

TriangleVerdict triangle_verdict(const CommutingTriple& t) {
  TriangleVerdict v;
  v.diagram = triangle_diagram(t.h);
  const auto c = check_triple(t);
  if (!c.ok) {
    v.reason = "hypothesis fails: " + c.violation;
    return v;
  }
  v.status = TriangleStatus::kInfiniteAllReps;
  v.reason = "finite dimension would force λ1 = -1 and h even; h = " + std::to_string(t.h) +
             " is odd";
  return v;
}

namespace {

// Least odd h in [1, 2|σ|) with σ^h = x.
std::optional<int> odd_exponent(const Permutation& sigma, const Permutation& x, int ord) {
  Permutation p = sigma;
  const Permutation sq = sigma * sigma;
  for (int h = 1; h < 2 * ord; h += 2) {
    if (p == x) return h;
    p = p * sq;
  }
  return std::nullopt;
}

}  // namespace

TripleSearch find_triple(const ConjClassSpec& spec, std::size_t budget) {
  TripleSearch res;
  const Permutation s1 = spec.representative();
  const int ord = static_cast<int>(spec.type.order());
  auto elems = class_elements(spec, budget);
  if (!elems) {
    res.reason = "class exceeds the budget";
    return res;
  }
  auto cent = centralizer_in_Sm(s1).closure(budget);
  if (!cent) {
    res.reason = "centralizer exceeds the budget";
    return res;
  }
  std::vector<Permutation> cand;
  for (const auto& x : *elems)
    if (x != s1 && x * s1 == s1 * x) cand.push_back(x);
  for (const auto& s2 : cand) {
    for (const auto& s3 : cand) {
      if (s3 == s2) continue;
      if (++res.pairs_examined > budget) {
        res.reason = "pair budget exhausted";
        return res;
      }
      if (s2 * s3 != s3 * s2) continue;
      auto h = odd_exponent(s1, s2 * s3, ord);
      if (!h) continue;
      ++res.candidates;
      // Conjugators: cosets g0 C(σ1), even ones for A_m.
      auto coset = [&](const Permutation& target) {
        std::vector<Permutation> out;
        const Permutation g0 = *conjugator_in_Sm(s1, target);
        for (const auto& c : *cent) {
          Permutation g = g0 * c;
          if (spec.ambient == Ambient::kAlt && !g.is_even()) continue;
          out.push_back(std::move(g));
        }
        std::sort(out.begin(), out.end());
        return out;
      };
      const auto G2 = coset(s2), G3 = coset(s3);
      for (const auto& g2 : G2)
        for (const auto& g3 : G3) {
          const Permutation a = g3 * g2, b = g2 * g3;
          if (a * s1 != s1 * a || b * s1 != s1 * b) continue;
          CommutingTriple t{spec, {s1, s2, s3}, g2, g3, *h, "SEARCH"};
          if (check_triple(t).ok) {
            res.triple = t;
            return res;
          }
        }
    }
  }
  res.reason = "no commuting pair with conjugators satisfying the hypotheses";
  return res;
}

CommutingTriple a4xcr_embed(const ConjClassSpec& spec) {
  spec.validate();
  const CycleType& t = spec.type;
  const int n2 = t.count(2);
  if (n2 == 0 || n2 % 2 != 0) throw Error("a4xcr_embed needs an even, positive number of 2-cycles");
  for (auto [len, count] : t.counts())
    if (len % 2 == 0 && len != 2) throw Error("a4xcr_embed needs all other cycles odd");
  if (spec.m < 5) throw Error("a4xcr_embed needs m >= 5");
  const int k = n2 / 2, m = spec.m;
  std::map<int, int> odd;
  for (auto [len, count] : t.counts())
    if (len % 2 == 1 && len > 1) odd[len] = count;
  const CycleType odd_type(odd);
  const Permutation tau = odd.empty() ? Permutation(0) : canonical_representative(odd_type);
  const int r = odd.empty() ? 1 : static_cast<int>(odd_type.order());

  // δ(a) acts as a on each block {4b+1, ..., 4b+4}; σ_o on the next points.
  auto delta = [&](const Permutation& a, bool with_tau) {
    Permutation x(0);
    for (int b = 0; b < k; ++b) x = x.juxtapose(a);
    if (!odd.empty()) x = x.juxtapose(with_tau ? tau : Permutation(tau.degree()));
    return x.extended(m);
  };
  const Permutation v = Permutation::parse("(1 2)(3 4)", 4);
  const Permutation c = Permutation::parse("(1 3 2)", 4);
  CommutingTriple out;
  out.ambient = spec;
  out.h = r + 2;
  out.provenance = "A4xZ/r";
  const Permutation s1 = delta(v, true);
  out.g2 = delta(c, false);
  out.g3 = out.g2.inverse();
  out.sigma = {s1, conjugate(out.g2, s1), conjugate(out.g3, s1)};
  if (spec.split && !spec.contains(s1)) {
    const Permutation f = Permutation::cycle(m, 1, 2);
    for (auto& x : out.sigma) x = conjugate(f, x);
    out.g2 = conjugate(f, out.g2);
    out.g3 = conjugate(f, out.g3);
  }
  const auto chk = check_triple(out);
  if (!chk.ok) throw Error("internal: A4 × Z/r triple failed: " + chk.violation);
  return out;
}

}  // namespace rackd
