#include "rackd/typed.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include <boost/dynamic_bitset.hpp>

#include "rackd/affine.hpp"
#include "rackd/error.hpp"

namespace rackd {

namespace {

using PermSet = std::unordered_set<Permutation, PermutationHash>;

Permutation P(const char* text, int m) { return Permutation::parse(text, m); }

std::string order_note(const Permutation& r, const Permutation& s) {
  GeneratedGroup h(r.degree(), {r, s});
  std::ostringstream os;
  os << "|H| = " << h.order();
  return os.str();
}

// The class of which spec is the simple rack: ALT (PLUS part when split) for
// even types, SYM for odd ones.
ConjClassSpec simple_spec(const ConjClassSpec& spec) {
  if (spec.ambient == Ambient::kAlt || !spec.type.is_even()) return spec;
  return make_spec(Ambient::kAlt, spec.type);
}

CycleType minus(const CycleType& a, const CycleType& b) {
  std::map<int, int> c = a.counts();
  for (auto [len, n] : b.counts()) {
    c[len] -= n;
    if (c[len] < 0) throw Error("internal: cycle type difference is negative");
    if (c[len] == 0) c.erase(len);
  }
  return CycleType(c);
}

// Moves a witness into the requested split part (conjugating by (1 2) when
// it landed in the other one) and sets the ambient.
TypeDWitness place(TypeDWitness w, const ConjClassSpec& spec) {
  if (spec.split && !spec.contains(w.r)) {
    w = conjugate_witness(w, Permutation::cycle(spec.m, 1, 2), spec);
  }
  w.ambient = spec;
  return w;
}

TypeDWitness verified(TypeDWitness w) {
  auto c = check_witness(w);
  if (!c.ok) {
    throw Error("internal: " + w.provenance + " witness for " + w.ambient.to_string() +
                " failed: " + c.violation);
  }
  return w;
}

// First (x, y) in X × Y, in order, with (xy)^2 != (yx)^2.
std::optional<std::pair<Permutation, Permutation>> first_pair(
    const std::vector<Permutation>& X, const std::vector<Permutation>& Y) {
  for (const auto& x : X)
    for (const auto& y : Y)
      if (squares_differ(x, y)) return std::pair{x, y};
  return std::nullopt;
}

bool is_prime_int(long long n) {
  if (n < 2) return false;
  for (long long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

long long inv_mod(long long a, long long n) {
  a %= n;
  for (long long x = 1; x < n; ++x)
    if (a * x % n == 1) return x;
  throw Error("internal: no inverse");
}

}  // namespace

std::string_view to_string(VerdictStatus s) noexcept {
  switch (s) {
    case VerdictStatus::kTypeD: return "TYPE_D";
    case VerdictStatus::kNotTypeD: return "NOT_TYPE_D";
    case VerdictStatus::kException: return "EXCEPTION";
    case VerdictStatus::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

TypeDWitness conjugate_witness(const TypeDWitness& w, const Permutation& c,
                               const ConjClassSpec& target) {
  const Permutation ci = c.inverse();
  TypeDWitness out = w;
  out.ambient = target;
  for (auto& x : out.R) x = conjugate(c, ci, x);
  for (auto& x : out.S) x = conjugate(c, ci, x);
  out.r = conjugate(c, ci, w.r);
  out.s = conjugate(c, ci, w.s);
  return out;
}

// ------------------------------------------------------------ check_witness

WitnessCheck check_witness(const TypeDWitness& w) {
  WitnessCheck c;
  auto fail = [&](std::string msg) {
    c.violation = std::move(msg);
    return c;
  };
  try {
    w.ambient.validate();
  } catch (const Error& e) {
    return fail(std::string("ambient: ") + e.what());
  }
  if (w.R.empty() || w.S.empty()) return fail("R and S must be nonempty");

  for (const auto* part : {&w.R, &w.S}) {
    for (const auto& x : *part) {
      if (!w.ambient.contains(x)) {
        return fail(x.to_string() + " is not in " + w.ambient.to_string());
      }
    }
  }
  if (!w.ambient.contains(w.r) || !w.ambient.contains(w.s)) {
    return fail("r or s is not in " + w.ambient.to_string());
  }
  c.in_class = true;

  PermSet rset(w.R.begin(), w.R.end()), sset(w.S.begin(), w.S.end());
  if (rset.size() != w.R.size()) return fail("R has repeated elements");
  if (sset.size() != w.S.size()) return fail("S has repeated elements");
  for (const auto& x : w.R) {
    if (sset.count(x)) return fail("R and S are not disjoint: " + x.to_string());
  }
  c.disjoint = true;
  if (!rset.count(w.r)) return fail("r is not in R");
  if (!sset.count(w.s)) return fail("s is not in S");

  // R, S the <r,s>-orbits of r and s: closure and stability follow.
  auto orbit_is = [&](const Permutation& x, const PermSet& target) {
    auto orb = class_orbit(x, {w.r, w.s}, target.size());
    if (!orb || orb->size() != target.size()) return false;
    return std::all_of(orb->begin(), orb->end(),
                       [&](const Permutation& y) { return target.count(y) > 0; });
  };
  if (orbit_is(w.r, rset) && orbit_is(w.s, sset)) {
    c.closed = c.stable = true;
  } else {
    auto maps_into = [](const std::vector<Permutation>& A, const std::vector<Permutation>& B,
                        const PermSet& target) -> std::optional<std::string> {
      for (const auto& a : A) {
        const Permutation ai = a.inverse();
        for (const auto& b : B) {
          Permutation z = conjugate(a, ai, b);
          if (!target.count(z)) return a.to_string() + " ▷ " + b.to_string();
        }
      }
      return std::nullopt;
    };
    if (auto e = maps_into(w.R, w.R, rset)) return fail("R is not a subrack: " + *e);
    if (auto e = maps_into(w.S, w.S, sset)) return fail("S is not a subrack: " + *e);
    c.closed = true;
    if (auto e = maps_into(w.R, w.S, sset)) return fail("R ▷ S is not in S: " + *e);
    if (auto e = maps_into(w.S, w.R, rset)) return fail("S ▷ R is not in R: " + *e);
    c.stable = true;
  }

  const bool sq = squares_differ(w.r, w.s);
  const bool rk = rack_op(w.r, rack_op(w.s, rack_op(w.r, w.s))) != w.s;
  if (sq != rk) throw Error("internal: square and rack forms of the inequality disagree");
  if (!rk) return fail("r ▷ (s ▷ (r ▷ s)) = s");
  c.inequality = true;
  c.ok = true;
  return c;
}

// -------------------------------------------------------------- splitting

std::optional<TypeDWitness> splitting_pair(const ConjClassSpec& spec,
                                           const Permutation& r,
                                           const Permutation& s, std::size_t cap,
                                           std::string provenance) {
  if (!squares_differ(r, s)) return std::nullopt;
  auto orb_r = class_orbit(r, {r, s}, cap);
  if (!orb_r) return std::nullopt;
  if (std::find(orb_r->begin(), orb_r->end(), s) != orb_r->end()) return std::nullopt;
  auto orb_s = class_orbit(s, {r, s}, cap);
  if (!orb_s) return std::nullopt;
  TypeDWitness w;
  w.ambient = spec;
  w.R = std::move(*orb_r);
  w.S = std::move(*orb_s);
  w.r = r;
  w.s = s;
  w.provenance = std::move(provenance);
  w.note = order_note(r, s);
  return w;
}

namespace {

// Outcome of testing one pair: witness, conjugate in H, or orbit capped.
enum class PairOutcome { kWitness, kConjugate, kEqualSquares, kCapped };

PairOutcome test_pair(const ConjClassSpec& spec, const Permutation& r,
                      const Permutation& s, std::size_t cap,
                      std::optional<TypeDWitness>& out) {
  if (!squares_differ(r, s)) return PairOutcome::kEqualSquares;
  auto orb_r = class_orbit(r, {r, s}, cap);
  if (!orb_r) return PairOutcome::kCapped;
  if (std::find(orb_r->begin(), orb_r->end(), s) != orb_r->end()) {
    return PairOutcome::kConjugate;
  }
  out = splitting_pair(spec, r, s, cap, "SPLITTING");
  return out ? PairOutcome::kWitness : PairOutcome::kCapped;
}

}  // namespace

SplittingResult splitting_search(const ConjClassSpec& spec, const Caps& caps) {
  spec.validate();
  SplittingResult res;
  const Permutation r = spec.representative();
  auto account = [&](const Permutation& s) {
    ++res.pairs_examined;
    const auto o = test_pair(spec, r, s, caps.orbit, res.witness);
    if (o != PairOutcome::kEqualSquares) ++res.candidates;
    if (o == PairOutcome::kCapped) ++res.capped;
    return o == PairOutcome::kWitness;
  };
  if (spec.size() <= caps.orbit) {
    auto elems = class_elements(spec, caps.orbit);
    if (elems) {
      res.class_enumerated = true;
      for (const auto& s : *elems) {
        if (s == r) continue;
        if (account(s)) return res;
      }
      return res;
    }
  }
  // Class too large to list: σ2 = g ▷ σ1 for g a product of at most two
  // transpositions, in lexicographic order, within a fixed budget.
  const int m = spec.m;
  std::vector<Permutation> ts;
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) ts.push_back(Permutation::from_cycles(m, {{a, b}}));
  std::size_t budget = 200;
  PermSet tried{r};
  auto consider = [&](const Permutation& g) {
    Permutation s = conjugate(g, r);
    if (!spec.contains(s) || !tried.insert(s).second) return false;
    if (budget == 0) return false;
    --budget;
    return account(s);
  };
  for (std::size_t i = 0; i < ts.size() && budget > 0; ++i) {
    if (consider(ts[i])) return res;
    for (std::size_t k = i + 1; k < ts.size() && budget > 0; ++k) {
      if (consider(ts[i] * ts[k])) return res;
    }
  }
  return res;
}

std::vector<int> quasi_real_types(const ConjClassSpec& spec) {
  const Permutation s = spec.representative();
  const auto ord = static_cast<int>(spec.type.order());
  std::vector<int> out;
  for (int j = 2; j < ord; ++j) {
    const Permutation x = s.pow(j);
    if (x != s && spec.contains(x)) out.push_back(j);
  }
  return out;
}

// ----------------------------------------------------------------- Jordan

JordanResult jordan_criterion(const ConjClassSpec& spec, const Caps& caps) {
  JordanResult res;
  const Permutation sigma = spec.representative();
  const long long ord = static_cast<long long>(spec.type.order());
  for (long long n = 5; n <= ord; ++n) {
    if (ord % n == 0 && is_prime_int(n) && std::gcd(n, ord / n) == 1 && ord / n > 1) {
      res.N = static_cast<int>(n);
      res.M = static_cast<int>(ord / n);
      break;
    }
  }
  if (res.N == 0) {
    res.reason = "order " + std::to_string(ord) +
                 " has no prime factor N > 3 with gcd(N, order/N) = 1 and order/N > 1";
    return res;
  }
  const long long N = res.N, M = res.M;
  const long long a = M * inv_mod(M, N);  // 1 mod N, 0 mod M
  const long long b = N * inv_mod(N, M);  // 0 mod N, 1 mod M
  const Permutation tau = sigma.pow(a), kappa = sigma.pow(b);
  if (tau * kappa != sigma) throw Error("internal: Jordan factorization failed");

  for (long long j = 2; j < ord; ++j) {
    if (std::gcd(j, ord) != 1 || (j - 1) % M == 0) continue;
    if (spec.contains(sigma.pow(j))) {
      res.j = static_cast<int>(j);
      break;
    }
  }
  if (res.j == 0) {
    res.reason = "no j with σ^j in the class and M ∤ j - 1";
    return res;
  }
  std::vector<Permutation> kgens = centralizer_in_Sm(kappa).generators();
  if (spec.ambient == Ambient::kAlt) kgens = even_subgroup_generators(kgens);

  // K-class of τ^j, breadth first, stopping at the first usable s0.
  const Permutation start = tau.pow(res.j);
  std::vector<Permutation> kinv;
  for (const auto& g : kgens) kinv.push_back(g.inverse());
  PermSet seen{start};
  std::vector<Permutation> queue{start};
  std::optional<Permutation> s0;
  for (std::size_t k = 0; k < queue.size() && !s0; ++k) {
    if (squares_differ(tau, queue[k])) {
      s0 = queue[k];
      break;
    }
    for (std::size_t i = 0; i < kgens.size(); ++i) {
      Permutation y = conjugate(kgens[i], kinv[i], queue[k]);
      if (seen.insert(y).second) {
        if (queue.size() >= caps.orbit) {
          res.reason = "K-class of τ^j exceeded the orbit cap";
          return res;
        }
        queue.push_back(std::move(y));
      }
    }
  }
  if (!s0) {
    res.reason = "no s0 in the K-class of τ^j with (τ s0)^2 != (s0 τ)^2";
    return res;
  }
  const Permutation s = kappa.pow(res.j) * *s0;
  if (!spec.contains(s)) throw Error("internal: Jordan s left the class");
  auto w = splitting_pair(spec, sigma, s, caps.orbit, "JORDAN");
  if (!w) {
    res.reason = "H-orbit of r or s exceeded the orbit cap";
    return res;
  }
  std::ostringstream os;
  os << "N = " << N << ", M = " << M << ", j = " << res.j << ", " << w->note;
  w->note = os.str();
  res.witness = std::move(w);
  return res;
}

// ------------------------------------------------------------------ steps

namespace {

bool only_odd_besides(const CycleType& t, std::initializer_list<int> even_ok) {
  for (auto [len, n] : t.counts()) {
    if (len % 2 == 0 && std::find(even_ok.begin(), even_ok.end(), len) == even_ok.end()) {
      return false;
    }
  }
  return true;
}

bool has_odd_cycle(const CycleType& t) {
  for (auto [len, n] : t.counts())
    if (len >= 3 && len % 2 == 1) return true;
  return false;
}

// Single m-cycle, m >= 6 composite.
std::optional<TypeDWitness> step_cycle(const ConjClassSpec& spec, const Caps& caps) {
  const int m = spec.m;
  if (spec.type.count(m) != 1 || m < 6 || is_prime_int(m)) return std::nullopt;
  const Permutation sigma = canonical_representative(spec.type);
  if (m % 2 == 0) {
    const Permutation tau = m == 6 ? P("(1 2 5 6 3 4)", 6)
                                   : conjugate(Permutation::from_cycles(m, {{1, 3}}), sigma);
    return splitting_pair(spec, sigma, tau, caps.orbit, "STEP-cycle-even");
  }
  for (int h = 3; h * h <= m; h += 2) {
    if (m % (h * h) != 0) continue;
    const int hk = m / h;
    std::vector<int> c;
    for (int i = 0; i < h; ++i) c.push_back(1 + i * hk);
    const Permutation r1 = Permutation::from_cycles(m, {c});
    return splitting_pair(spec, sigma, conjugate(r1, sigma), caps.orbit,
                          "STEP-cycle-square");
  }
  auto j = jordan_criterion(spec, caps);
  return j.witness;
}

// (n, p), both odd, n >= 3, max >= 5.
std::optional<TypeDWitness> step_two_odd_cycles(const ConjClassSpec& spec,
                                                const Caps& caps) {
  auto lens = spec.type.lengths();
  if (lens.size() != 2 || lens[0] < 3 || lens[0] % 2 == 0 || lens[1] % 2 == 0 ||
      lens[1] < 5) {
    return std::nullopt;
  }
  const int n = lens[0], m = spec.m;
  const Permutation s1 = canonical_representative(spec.type);
  const Permutation g = Permutation::from_cycles(m, {{1, 2}, {n + 1, n + 3}});
  return splitting_pair(spec, s1, conjugate(g, s1), caps.orbit, "STEP-two-odd-cycles");
}

// (1^2, j), j >= 5 odd: the two A_j classes of j-cycles on {3..j+2}.
std::optional<TypeDWitness> step_fixed_pair(const ConjClassSpec& spec, const Caps& caps) {
  const int m = spec.m, j = m - 2;
  if (spec.type.count(1) != 2 || spec.type.count(j) != 1 || j < 5 || j % 2 == 0) {
    return std::nullopt;
  }
  const Permutation sigma = canonical_representative(spec.type);  // (3 ... j+2)
  std::vector<Permutation> aj{Permutation::cycle(m, 3, 3), Permutation::cycle(m, 3, j)};
  auto other = class_orbit(conjugate(Permutation::cycle(m, 3, 2), sigma), aj, caps.orbit);
  if (!other) return std::nullopt;
  std::sort(other->begin(), other->end());
  for (const auto& s : *other) {
    auto w = splitting_pair(spec, sigma, s, caps.orbit, "STEP-fixed-pair");
    if (w) return w;
  }
  return std::nullopt;
}

// X = {cκ}, X' = {cκ^-1} for c in cs (acting on the first k points) and κ of
// the remaining type on the rest.
std::optional<TypeDWitness> kappa_trick(const ConjClassSpec& spec,
                                        const std::vector<Permutation>& cs,
                                        const CycleType& base, const std::string& prov) {
  const int k = base.degree();
  const CycleType rest = minus(spec.type, base);
  const Permutation kappa = Permutation(k).juxtapose(canonical_representative(rest));
  const Permutation kinv = kappa.inverse();
  std::vector<Permutation> X, Y;
  for (const auto& c : cs) {
    X.push_back(c.extended(spec.m) * kappa);
    Y.push_back(c.extended(spec.m) * kinv);
  }
  auto pr = first_pair(X, Y);
  if (!pr) return std::nullopt;
  TypeDWitness w;
  w.ambient = spec;
  w.R = X;
  w.S = Y;
  w.r = pr->first;
  w.s = pr->second;
  w.provenance = prov;
  w.note = "κ = " + kappa.to_string();
  return w;
}

std::vector<Permutation> class_in(const char* type) {
  return *class_elements(make_spec(Ambient::kSym, CycleType::parse(type)), 1000);
}

// S_3 acting on itself by left multiplication; images of the transpositions.
std::vector<Permutation> regular_transpositions() {
  auto s3 = *symmetric_group(3).closure(10);
  std::vector<Permutation> out;
  for (const auto& c : s3) {
    if (cycle_type(c) != CycleType::parse("1,2")) continue;
    std::vector<int> images;
    for (const auto& g : s3) {
      const Permutation cg = c * g;
      images.push_back(1 + static_cast<int>(std::find(s3.begin(), s3.end(), cg) - s3.begin()));
    }
    out.push_back(Permutation::from_images(images));
  }
  return out;
}

std::optional<TypeDWitness> step_embedding(const ConjClassSpec& spec, const Caps& caps) {
  const CycleType& t = spec.type;
  if (t.count(1) >= 1 && t.count(2) == 1 && only_odd_besides(t, {2}) && has_odd_cycle(t)) {
    return kappa_trick(spec, class_in("1,2"), CycleType::parse("1,2"), "EMBEDDING-D3x2");
  }
  if (t.count(2) == 3 && only_odd_besides(t, {2}) && has_odd_cycle(t)) {
    return kappa_trick(spec, regular_transpositions(), CycleType::parse("2^3"),
                       "EMBEDDING-D3x2");
  }
  if (t.count(4) == 1 && only_odd_besides(t, {4}) && has_odd_cycle(t)) {
    return kappa_trick(spec, class_in("4"), CycleType::parse("4"), "EMBEDDING-oct2");
  }
  if (t == CycleType::parse("4^2")) {
    auto target = class_rack(spec, caps.orbit);
    if (!target) return std::nullopt;
    const FiniteRack oct2 = catalog_rack("oct2");
    auto e = find_embedding(oct2, *target);
    if (e.status != SearchStatus::kFound) return std::nullopt;
    std::vector<Permutation> X, Y;
    for (int i = 0; i < 6; ++i) X.push_back(target->elements()[e.map[i]]);
    for (int i = 6; i < 12; ++i) Y.push_back(target->elements()[e.map[i]]);
    auto pr = first_pair(X, Y);
    if (!pr) return std::nullopt;
    TypeDWitness w;
    w.ambient = spec;
    w.R = X;
    w.S = Y;
    w.r = pr->first;
    w.s = pr->second;
    w.provenance = "EMBEDDING-oct2";
    w.note = "embedding found after " + std::to_string(e.nodes) + " search nodes";
    return w;
  }
  return std::nullopt;
}

// (2, j), j > 3 odd.
std::optional<TypeDWitness> step_transposition_cycle(const ConjClassSpec& spec,
                                                     const Caps& caps) {
  auto lens = spec.type.lengths();
  if (lens.size() != 2 || lens[0] != 2 || lens[1] % 2 == 0 || lens[1] < 5) return std::nullopt;
  const Permutation s1 = canonical_representative(spec.type);
  const Permutation h = Permutation::from_cycles(spec.m, {{3, 5}});
  return splitting_pair(spec, s1, conjugate(h, s1), caps.orbit, "STEP-transposition-cycle");
}

TypeDWitness from_evidence(const ConjClassSpec& spec, const QuasiRealEvidence& ev,
                           const std::string& prov, const std::string& note) {
  TypeDWitness w;
  w.ambient = spec;
  w.R = ev.R;
  w.S = ev.S;
  w.r = ev.r;
  w.s = ev.s;
  w.provenance = prov;
  w.note = note;
  return w;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
  return s;
}

// (2, 3^2): the tetrahedron inside the class only meets the quasi-real
// exponent j = 5, which is exceptional for p = 2; a splitting pair is used.
std::optional<TypeDWitness> step_two_three_three(const ConjClassSpec& spec,
                                                 const Caps& caps) {
  if (spec.type != CycleType::parse("2,3^2")) return std::nullopt;
  const int m = 8;
  std::vector<Permutation> tet{P("(1 2 3)(4 5 6)(7 8)", m), P("(1 6 3)(2 4 5)(7 8)", m),
                               P("(1 6 4)(2 3 5)(7 8)", m), P("(1 2 4)(3 5 6)(7 8)", m)};
  const AffineRack a = companion_affine(2, {1, 1, 1});
  const FiniteRack y = FiniteRack::from_elements(tet);
  std::vector<std::string> reasons;
  if (auto iso = find_isomorphism(a.rack(), y)) {
    std::vector<Permutation> psi;
    for (int v = 0; v < a.size(); ++v) psi.push_back(tet[(*iso)[v]]);
    for (int j : quasi_real_types(spec)) {
      auto ev = quasi_real_affine_criterion(a, psi, j, spec);
      if (ev.applies) return from_evidence(spec, ev, "AFFINE", "tetrahedron, j = " + std::to_string(j));
      reasons.push_back("j = " + std::to_string(j) + ": " + join(ev.failed));
    }
  } else {
    reasons.push_back("listed elements do not form a tetrahedron");
  }
  auto w = splitting_pair(spec, P("(1 2)(3 4 5)(6 7 8)", m), P("(1 2 3)(4 5)(6 8 7)", m),
                          caps.orbit, "SPLITTING");
  if (w) w->note += "; tetrahedron route: " + join(reasons);
  return w;
}

std::optional<TypeDWitness> affine_step(const ConjClassSpec& spec, const AffineRack& a,
                                        const std::vector<Permutation>& psi,
                                        const std::string& what) {
  for (int j : quasi_real_types(spec)) {
    auto ev = quasi_real_affine_criterion(a, psi, j, spec);
    if (ev.applies) return from_evidence(spec, ev, "AFFINE", what + ", j = " + std::to_string(j));
  }
  return std::nullopt;
}

// (1,4): F_5 ⋊ F_5^× on {1..5}; (2,4): F_3^2 ⋊ <T>, T^2 = -id, in S_6.
std::optional<TypeDWitness> step_four(const ConjClassSpec& spec) {
  if (spec.type == CycleType::parse("1,4")) {
    const AffineRack a = make_affine(5, 1, FpMatrix(5, 1, {2}));
    const Permutation t = P("(1 2 3 4 5)", 5), sigma = lambda_k(5, 2);
    std::vector<Permutation> psi;
    for (int v = 0; v < 5; ++v) psi.push_back(t.pow(v) * sigma);
    return affine_step(spec, a, psi, "F_5 with T = 2");
  }
  if (spec.type == CycleType::parse("2,4")) {
    const AffineRack a = make_affine(3, 2, FpMatrix(3, 2, {0, 2, 1, 0}));
    const Permutation x = P("(1 3 6)", 6), y = P("(2 4 5)", 6), sigma = P("(1 2)(3 4 6 5)", 6);
    std::vector<Permutation> psi;
    for (int v = 0; v < a.size(); ++v) {
      auto vv = a.vec(v);
      psi.push_back(x.pow(vv[0]) * y.pow(vv[1]) * sigma);
    }
    return affine_step(spec, a, psi, "F_3^2 with T^2 = -id");
  }
  return std::nullopt;
}

struct ExplicitPair {
  const char* type;
  const char* s1;
  const char* s2;
};

constexpr ExplicitPair kPairs[] = {
    {"1^3,2^2", "(4 5)(6 7)", "(1 2)(3 7)"},
    {"1,3^2", "(2 3 4)(5 6 7)", "(1 2 5)(3 4 6)"},
    {"3^3", "(1 2 3)(4 5 6)(7 8 9)", "(1 2 4)(3 5 6)(7 9 8)"},
    {"2^5", "(1 2)(3 4)(5 6)(7 8)(9 10)", "(1 3)(2 4)(5 7)(6 9)(8 10)"},
    {"1,2^3", "(2 3)(4 5)(6 7)", "(1 6)(2 4)(3 5)"},
};

std::optional<TypeDWitness> step_pairs(const ConjClassSpec& spec, const Caps& caps) {
  for (const auto& p : kPairs) {
    if (spec.type != CycleType::parse(p.type)) continue;
    return splitting_pair(spec, P(p.s1, spec.m), P(p.s2, spec.m), caps.orbit, "PAIR");
  }
  return std::nullopt;
}

std::string cache_key(const ConjClassSpec& spec, const Caps& caps) {
  return spec.to_string() + "|" + std::to_string(caps.orbit) + "|" +
         std::to_string(caps.closure);
}

}  // namespace

std::optional<TypeDWitness> mersenne_step(const ConjClassSpec& spec, const Caps& caps) {
  (void)caps;
  const int m = spec.m, p = m - 1;
  if (spec.type.count(1) != 1 || spec.type.count(p) != 1 || !is_prime_int(p)) {
    return std::nullopt;
  }
  int h = 0;
  while ((1 << h) < m) ++h;
  if ((1 << h) != m || h < 3) return std::nullopt;
  const AffineRack a = companion_affine(2, irreducible_polynomials(2, h).front());
  std::vector<Permutation> psi;
  for (int v = 0; v < a.size(); ++v) {
    const auto vv = a.vec(v);
    std::vector<int> images(m);
    for (int x = 0; x < m; ++x) {
      auto tx = a.T.apply(a.vec(x));
      for (int i = 0; i < h; ++i) tx[i] = (tx[i] + vv[i]) % 2;
      images[x] = a.index(tx) + 1;
    }
    psi.push_back(Permutation::from_images(images));
  }
  // Run the criterion in the part that holds psi(0), then move.
  ConjClassSpec home = make_spec(Ambient::kAlt, spec.type, SplitPart::kPlus);
  if (!home.contains(psi[0])) home.split = SplitPart::kMinus;
  auto w = affine_step(home, a, psi, "F_" + std::to_string(m) + " ⋊ F_" + std::to_string(m) + "^×");
  if (!w) return std::nullopt;
  w->provenance = "AFFINE-mersenne";
  return place(*w, spec);
}

std::optional<TypeDWitness> direct_step(const ConjClassSpec& spec_in, const Caps& caps) {
  spec_in.validate();
  const ConjClassSpec spec = simple_spec(spec_in);

  static std::mutex mu;
  static std::map<std::string, std::optional<TypeDWitness>> cache;
  const std::string key = cache_key(spec, caps);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      if (!it->second) return std::nullopt;
      TypeDWitness w = *it->second;
      w.ambient = spec_in;
      return w;
    }
  }

  // Constructions produce a witness in the PLUS part (or the S_m class); the
  // placement below moves it where spec asks.
  const ConjClassSpec plus =
      spec.split ? make_spec(Ambient::kAlt, spec.type, SplitPart::kPlus) : spec;
  std::optional<TypeDWitness> w;
  if (!w) w = step_cycle(plus, caps);
  if (!w) w = step_two_odd_cycles(plus, caps);
  if (!w) w = step_fixed_pair(plus, caps);
  if (!w) w = step_embedding(plus, caps);
  if (!w) w = step_transposition_cycle(plus, caps);
  if (!w) w = step_two_three_three(plus, caps);
  if (!w) w = step_four(plus);
  if (!w) w = step_pairs(plus, caps);
  if (!w) w = mersenne_step(plus, caps);
  if (w) {
    // A step may build its witness in either part of a split class.
    if (spec.split) {
      ConjClassSpec home = plus;
      if (!home.contains(w->r)) home.split = SplitPart::kMinus;
      w->ambient = home;
    }
    w = verified(place(*w, spec));
  }
  {
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, w);
  }
  if (w) w->ambient = spec_in;
  return w;
}

std::optional<TypeDWitness> juxtaposition_step(const ConjClassSpec& spec_in,
                                               const Caps& caps) {
  spec_in.validate();
  const ConjClassSpec spec = simple_spec(spec_in);
  // Sub-multisets by (degree, lengths) order.
  std::vector<std::pair<int, int>> parts(spec.type.counts().begin(), spec.type.counts().end());
  std::vector<CycleType> subs;
  std::vector<int> pick(parts.size(), 0);
  while (true) {
    std::map<int, int> c;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (pick[i] > 0) c[parts[i].first] = pick[i];
    CycleType mu(c);
    if (mu.degree() >= 5 && mu != spec.type) subs.push_back(mu);
    std::size_t i = 0;
    while (i < parts.size() && pick[i] == parts[i].second) pick[i++] = 0;
    if (i == parts.size()) break;
    ++pick[i];
  }
  std::sort(subs.begin(), subs.end(), [](const CycleType& a, const CycleType& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.lengths() < b.lengths();
  });
  for (const auto& mu : subs) {
    const ConjClassSpec inner =
        make_spec(mu.is_even() ? Ambient::kAlt : Ambient::kSym, mu);
    auto w = direct_step(inner, caps);
    if (!w) continue;
    const Permutation tail = canonical_representative(minus(spec.type, mu));
    TypeDWitness out;
    for (const auto& y : w->R) out.R.push_back(y.juxtapose(tail));
    for (const auto& y : w->S) out.S.push_back(y.juxtapose(tail));
    out.r = w->r.juxtapose(tail);
    out.s = w->s.juxtapose(tail);
    out.provenance = "JUXTAPOSITION";
    out.note = w->provenance + " on " + inner.to_string() + " ⊥ " + tail.to_string() +
               (w->note.empty() ? "" : "; " + w->note);
    ConjClassSpec home = spec;
    if (home.split && !home.contains(out.r)) {
      home.split = *home.split == SplitPart::kPlus ? SplitPart::kMinus : SplitPart::kPlus;
    }
    out.ambient = home;
    out = verified(place(out, spec));
    out.ambient = spec_in;
    return out;
  }
  return std::nullopt;
}

std::optional<std::string> exception_list(const CycleType& type) {
  const auto& c = type.counts();
  auto is = [&](const char* s) { return type == CycleType::parse(s); };
  const int n1 = type.count(1);
  if (is("2,3") || is("2^3")) return "a";
  if (c.size() == 2 && type.count(2) == 1 && n1 >= 1) return "a";
  if (is("3^2") || is("2^2,3") || is("2^4") || is("1^2,2^2") || is("1,2^2")) return "b";
  if (c.size() == 2 && type.count(3) == 1 && n1 >= 1) return "b";
  auto lens = type.lengths();
  if (lens.size() == 1 && is_prime_int(lens[0]) && lens[0] >= 5) return "b";
  if (lens.size() == 2 && lens[0] == 1 && is_prime_int(lens[1]) && lens[1] >= 5) return "b";
  return std::nullopt;
}

// ------------------------------------------------------------- classifier

namespace {

// Single cycle (p) or (1, p) with p prime.
std::optional<int> prime_cycle(const CycleType& type) {
  auto lens = type.lengths();
  if (lens.size() == 1 && is_prime_int(lens[0])) return lens[0];
  if (lens.size() == 2 && lens[0] == 1 && is_prime_int(lens[1])) return lens[1];
  return std::nullopt;
}

std::string exhaustion_scope(const SplittingResult& sr, const ConjClassSpec& spec) {
  std::ostringstream os;
  os << "pair reduction over all " << sr.pairs_examined + 1 << " elements of "
     << spec.to_string() << " against the representative; " << sr.candidates
     << " pairs with (rs)^2 != (sr)^2, each conjugate in <r,s>";
  return os.str();
}

}  // namespace

Verdict Classifier::classify(const ConjClassSpec& spec) {
  const std::string key = spec.to_string();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Verdict v = classify_uncached(spec);
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(key, v);
  return v;
}

Verdict Classifier::classify_uncached(const ConjClassSpec& spec) {
  spec.validate();
  Verdict v;
  if (spec.type.is_identity()) {
    v.status = VerdictStatus::kNotTypeD;
    v.scope = "single element";
    return v;
  }
  if (spec.ambient == Ambient::kSym && spec.type.is_even()) {
    Verdict inner = classify(make_spec(Ambient::kAlt, spec.type));
    if (inner.status == VerdictStatus::kTypeD) {
      inner.witness->ambient = spec;
      inner.note = "from the A_m class" + (inner.note.empty() ? "" : "; " + inner.note);
      return inner;
    }
    if (splits_in_Am(spec.type)) {
      v.status = VerdictStatus::kException;
      v.tag = exception_list(spec.type).value_or("");
      v.note = "the S_m class is the union of two A_m classes, hence decomposable and "
               "not a simple rack; A_m class: " + std::string(to_string(inner.status));
      if (!inner.scope.empty()) v.note += " (" + inner.scope + ")";
      return v;
    }
    inner.note = "same rack as the A_m class" + (inner.note.empty() ? "" : "; " + inner.note);
    return inner;
  }

  if (auto w = direct_step(spec, caps_)) {
    v.status = VerdictStatus::kTypeD;
    v.witness = std::move(w);
    return v;
  }
  if (auto w = juxtaposition_step(spec, caps_)) {
    v.status = VerdictStatus::kTypeD;
    v.witness = std::move(w);
    return v;
  }

  const auto tag = exception_list(spec.type);
  const bool enumerable = spec.size() <= caps_.orbit;
  if (tag) {
    v.tag = *tag;
    if (enumerable) {
      auto sr = splitting_search(spec, caps_);
      if (sr.witness) {
        v.status = VerdictStatus::kTypeD;
        v.witness = verified(*sr.witness);
        v.note = "type on exception list (" + *tag + ") but a splitting pair exists";
        return v;
      }
      if (sr.exhaustive()) {
        if (prime_cycle(spec.type)) {
          v.status = VerdictStatus::kNotTypeD;
        } else {
          v.status = VerdictStatus::kException;
        }
        v.scope = exhaustion_scope(sr, spec);
        return v;
      }
    }
    v.status = VerdictStatus::kException;
    if (auto p = prime_cycle(spec.type)) {
      const bool single = spec.type.lengths().size() == 1;
      if (single && (*p == 13 || *p == 17 || *p == 31)) {
        auto sr = splitting_search(spec, caps_);
        if (sr.witness) {
          v.status = VerdictStatus::kTypeD;
          v.witness = verified(*sr.witness);
          return v;
        }
        v.status = VerdictStatus::kUnknown;
        v.note = "type D by the published classification, unverified at this scale (" +
                 std::to_string(sr.pairs_examined) + " candidate pairs, " +
                 std::to_string(sr.capped) + " capped)";
        return v;
      }
      if (*p == 11 || (*p == 5 || *p == 7)) {
        v.note = "not type D by the published classification, unverified at this scale";
      } else {
        v.note = "open: no construction or exhaustion at this scale";
      }
    }
    return v;
  }

  auto sr = splitting_search(spec, caps_);
  if (sr.witness) {
    v.status = VerdictStatus::kTypeD;
    sr.witness->provenance = "SEARCH";
    v.witness = verified(*sr.witness);
    return v;
  }
  if (sr.exhaustive()) {
    v.status = VerdictStatus::kNotTypeD;
    v.scope = exhaustion_scope(sr, spec);
    return v;
  }
  v.status = VerdictStatus::kUnknown;
  v.note = "no step applies; splitting search examined " + std::to_string(sr.pairs_examined) +
           " pairs (" + std::to_string(sr.capped) + " capped)";
  return v;
}

Verdict classify(const ConjClassSpec& spec, const Caps& caps) {
  Classifier c(caps);
  return c.classify(spec);
}

// ------------------------------------------------------- rack exhaustion

bool check_rack_witness(const FiniteRack& x, const RackWitness& w) {
  const int n = x.size();
  std::vector<char> inR(n, 0), inS(n, 0);
  for (int a : w.R) {
    if (a < 0 || a >= n || inR[a]) return false;
    inR[a] = 1;
  }
  for (int a : w.S) {
    if (a < 0 || a >= n || inS[a] || inR[a]) return false;
    inS[a] = 1;
  }
  if (w.R.empty() || w.S.empty() || w.r < 0 || w.r >= n || w.s < 0 || w.s >= n) return false;
  if (!inR[w.r] || !inS[w.s]) return false;
  for (int a : w.R) {
    for (int b : w.R)
      if (!inR[x.op(a, b)]) return false;
    for (int b : w.S)
      if (!inS[x.op(a, b)]) return false;
  }
  for (int a : w.S) {
    for (int b : w.S)
      if (!inS[x.op(a, b)]) return false;
    for (int b : w.R)
      if (!inR[x.op(a, b)]) return false;
  }
  return x.op(w.r, x.op(w.s, x.op(w.r, w.s))) != w.s;
}

namespace {

using Bits = boost::dynamic_bitset<>;

Bits close_bits(const FiniteRack& x, Bits b) {
  std::vector<int> members;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) {
    members.push_back(static_cast<int>(i));
  }
  for (std::size_t k = 0; k < members.size(); ++k) {
    const int z = members[k];
    for (std::size_t i = 0; i < members.size(); ++i) {
      const int w = members[i];
      for (int c : {x.op(z, w), x.op(w, z)}) {
        if (!b[c]) {
          b[c] = true;
          members.push_back(c);
        }
      }
    }
  }
  return b;
}

std::vector<int> to_list(const Bits& b) {
  std::vector<int> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) {
    out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> inner_orbit(const FiniteRack& x, int start, int a, int b) {
  std::vector<char> seen(x.size(), 0);
  std::vector<int> out{start};
  seen[start] = 1;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const int y = out[k];
    for (int z : {x.op(a, y), x.op_inv(a, y), x.op(b, y), x.op_inv(b, y)}) {
      if (!seen[z]) {
        seen[z] = 1;
        out.push_back(z);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ExhaustiveResult enumerate_subrack_pairs(const FiniteRack& x, const Caps& caps) {
  ExhaustiveResult res;
  res.method = "subrack enumeration";
  const int n = x.size();
  std::vector<Bits> subs;
  std::set<Bits> seen;
  for (int a = 0; a < n; ++a) {
    Bits b(n);
    b[a] = true;
    b = close_bits(x, b);
    if (seen.insert(b).second) subs.push_back(b);
  }
  for (std::size_t k = 0; k < subs.size(); ++k) {
    for (int a = 0; a < n; ++a) {
      if (subs[k][a]) continue;
      Bits b = subs[k];
      b[a] = true;
      b = close_bits(x, b);
      if (seen.insert(b).second) {
        subs.push_back(b);
        if (subs.size() > caps.subracks) {
          res.subracks = subs.size();
          res.scope = "subrack enumeration stopped at the cap of " +
                      std::to_string(caps.subracks) + " subracks";
          return res;
        }
      }
    }
  }
  res.subracks = subs.size();
  std::vector<std::vector<int>> lists;
  for (const auto& b : subs) lists.push_back(to_list(b));
  auto stable = [&](std::size_t i, std::size_t j) {
    for (int a : lists[i])
      for (int b : lists[j])
        if (!subs[j][x.op(a, b)]) return false;
    return true;
  };
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t j = i + 1; j < subs.size(); ++j) {
      if (subs[i].intersects(subs[j])) continue;
      if (!stable(i, j) || !stable(j, i)) continue;
      ++res.decomposable_pairs;
      for (auto [ri, si] : {std::pair{i, j}, std::pair{j, i}}) {
        for (int r : lists[ri])
          for (int s : lists[si])
            if (x.op(r, x.op(s, x.op(r, s))) != s) {
              res.status = VerdictStatus::kTypeD;
              res.witness = RackWitness{lists[ri], lists[si], r, s};
              res.scope = "found among " + std::to_string(res.subracks) + " subracks";
              return res;
            }
      }
    }
  }
  res.status = VerdictStatus::kNotTypeD;
  res.scope = "all " + std::to_string(res.subracks) + " subracks and all " +
              std::to_string(res.decomposable_pairs) +
              " disjoint mutually stable pairs checked";
  return res;
}

ExhaustiveResult pair_reduction(const FiniteRack& x) {
  ExhaustiveResult res;
  res.method = "pair reduction";
  std::size_t candidates = 0;
  const auto parts = decompose(x);
  for (const auto& part : parts) {
    const int r = part.front();
    for (int s = 0; s < x.size(); ++s) {
      if (x.op(r, x.op(s, x.op(r, s))) == s) continue;
      ++candidates;
      auto orb_r = inner_orbit(x, r, r, s);
      if (std::binary_search(orb_r.begin(), orb_r.end(), s)) continue;
      res.status = VerdictStatus::kTypeD;
      res.witness = RackWitness{orb_r, inner_orbit(x, s, r, s), r, s};
      res.scope = "pair reduction";
      return res;
    }
  }
  res.status = VerdictStatus::kNotTypeD;
  res.scope = "pair reduction: r over " + std::to_string(parts.size()) +
              " inner-orbit representatives, s over all " + std::to_string(x.size()) +
              " elements; " + std::to_string(candidates) +
              " pairs with the inequality, each with s in the <φ_r, φ_s>-orbit of r";
  return res;
}

ExhaustiveResult exhaustive_not_type_d(const FiniteRack& x, const Caps& caps) {
  auto res = enumerate_subrack_pairs(x, caps);
  if (res.status != VerdictStatus::kUnknown) return res;
  auto pr = pair_reduction(x);
  pr.subracks = res.subracks;
  pr.scope = res.scope + "; " + pr.scope;
  return pr;
}

}  // namespace rackd
