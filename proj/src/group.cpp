#include "rackd/group.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "rackd/error.hpp"

namespace rackd {

std::string_view to_string(Ternary t) noexcept {
  switch (t) {
    case Ternary::kYes: return "YES";
    case Ternary::kNo: return "NO";
    case Ternary::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string_view to_string(Ambient a) noexcept {
  return a == Ambient::kSym ? "S" : "A";
}

std::string_view to_string(SplitPart s) noexcept {
  return s == SplitPart::kPlus ? "plus" : "minus";
}

// ------------------------------------------------------- stabilizer chain

// Incremental Schreier-Sims (Sims/Knuth style). Each level keeps its own
// generators, the basic orbit of its base point and a transversal u_p with
// u_p(base) = p. Every Schreier generator u_{s(p)}^-1 s u_p is sifted into
// the next level as it appears, so when add_generator returns the chain
// below that level is complete for the group its generators span.
struct GeneratedGroup::Chain {
  struct Level {
    int base = 0;  // 0-indexed point
    std::vector<Permutation> gens;
    std::vector<int> orbit;
    std::array<int, kMaxDegree> pos;  // index into orbit, -1 if absent
    std::vector<Permutation> u;
    std::vector<Permutation> u_inv;

    explicit Level(int b, int degree) : base(b) {
      pos.fill(-1);
      pos[b] = 0;
      orbit.push_back(b);
      u.emplace_back(degree);
      u_inv.emplace_back(degree);
    }
  };

  int degree;
  std::vector<Level> levels;
  std::once_flag once;

  explicit Chain(int d) : degree(d) {}

  // Returns (level, residue); level == levels.size() with identity residue
  // means the element is in the group.
  std::pair<std::size_t, Permutation> sift(Permutation g, std::size_t from) const {
    for (std::size_t l = from; l < levels.size(); ++l) {
      const Level& L = levels[l];
      const int p = g.table()[L.base];
      const int idx = L.pos[p];
      if (idx < 0) return {l, g};
      g = L.u_inv[idx] * g;
    }
    return {levels.size(), g};
  }

  void sift_and_add(const Permutation& g, std::size_t from) {
    auto [lvl, h] = sift(g, from);
    if (h.is_identity()) return;
    if (lvl == levels.size()) {
      levels.emplace_back(h.first_moved_point() - 1, degree);
    }
    // h fixes the base points above lvl, so it is a strong generator for
    // every level from `from` down to lvl. Deepest first.
    for (std::size_t k = lvl + 1; k-- > from;) add_generator(k, h);
  }

  void add_generator(std::size_t i, const Permutation& g) {
    levels[i].gens.push_back(g);
    const std::size_t old_size = levels[i].orbit.size();
    // Old points see only the new generator; points discovered from here on
    // see every generator.
    for (std::size_t k = 0; k < old_size; ++k) apply(i, k, g);
    for (std::size_t k = old_size; k < levels[i].orbit.size(); ++k) {
      // Recursion only reaches deeper levels; copy since levels may move.
      const std::size_t ngens = levels[i].gens.size();
      for (std::size_t s = 0; s < ngens; ++s) {
        const Permutation gen = levels[i].gens[s];
        apply(i, k, gen);
      }
    }
  }

  void apply(std::size_t i, std::size_t k, const Permutation& s) {
    const int p = levels[i].orbit[k];
    const int q = s.table()[p];
    const Permutation up = levels[i].u[k];
    if (levels[i].pos[q] < 0) {
      Level& L = levels[i];
      L.pos[q] = static_cast<int>(L.orbit.size());
      L.orbit.push_back(q);
      Permutation uq = s * up;
      L.u_inv.push_back(uq.inverse());
      L.u.push_back(std::move(uq));
      return;
    }
    const Permutation schreier = levels[i].u_inv[levels[i].pos[q]] * s * up;
    if (!schreier.is_identity()) sift_and_add(schreier, i + 1);
  }
};

GeneratedGroup::GeneratedGroup(int degree, std::vector<Permutation> generators)
    : degree_(degree), gens_(std::move(generators)),
      chain_(std::make_shared<Chain>(degree)) {
  if (degree < 0 || degree > kMaxDegree) throw Error("group degree out of range");
  for (const auto& g : gens_) {
    if (g.degree() != degree) {
      throw Error("generator " + g.to_string() + " has degree " +
                  std::to_string(g.degree()) + ", expected " +
                  std::to_string(degree));
    }
  }
}

const GeneratedGroup::Chain& GeneratedGroup::chain() const {
  Chain& c = *chain_;
  std::call_once(c.once, [&] {
    for (const auto& g : gens_) {
      if (!g.is_identity()) c.sift_and_add(g, 0);
    }
  });
  return c;
}

BigInt GeneratedGroup::order() const {
  BigInt n = 1;
  for (const auto& L : chain().levels) n *= L.orbit.size();
  return n;
}

bool GeneratedGroup::contains(const Permutation& x) const {
  if (x.degree() != degree_) return false;
  const Chain& c = chain();
  auto [lvl, h] = c.sift(x, 0);
  return lvl == c.levels.size() && h.is_identity();
}

std::vector<int> GeneratedGroup::base() const {
  std::vector<int> b;
  for (const auto& L : chain().levels) b.push_back(L.base + 1);
  return b;
}

std::vector<std::size_t> GeneratedGroup::orbit_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& L : chain().levels) s.push_back(L.orbit.size());
  return s;
}

std::optional<std::vector<Permutation>> GeneratedGroup::closure(
    std::size_t cap) const {
  if (order() > cap) return std::nullopt;
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> out;
  std::deque<Permutation> queue;
  Permutation id(degree_);
  seen.insert(id);
  out.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Permutation x = queue.front();
    queue.pop_front();
    for (const auto& g : gens_) {
      Permutation y = g * x;
      if (seen.insert(y).second) {
        out.push_back(y);
        queue.push_back(std::move(y));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------------------ orbits

std::optional<std::vector<Permutation>> class_orbit(
    const Permutation& x, const std::vector<Permutation>& gens, std::size_t cap) {
  std::vector<Permutation> inv;
  inv.reserve(gens.size());
  for (const auto& g : gens) inv.push_back(g.inverse());
  std::unordered_set<Permutation, PermutationHash> seen{x};
  std::vector<Permutation> out{x};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Permutation y = conjugate(gens[i], inv[i], out[k]);
      if (seen.insert(y).second) {
        if (out.size() >= cap) return std::nullopt;
        out.push_back(std::move(y));
      }
    }
  }
  return out;
}

std::optional<std::vector<Permutation>> class_orbit(const Permutation& x,
                                                    const GeneratedGroup& g,
                                                    std::size_t cap) {
  return class_orbit(x, g.generators(), cap);
}

Ternary are_conjugate_in(const Permutation& x, const Permutation& y,
                         const GeneratedGroup& g, std::size_t cap) {
  if (x == y) return Ternary::kYes;
  if (cycle_type(x) != cycle_type(y)) return Ternary::kNo;
  auto orb = class_orbit(x, g, cap);
  if (!orb) return Ternary::kUnknown;
  return std::find(orb->begin(), orb->end(), y) != orb->end() ? Ternary::kYes
                                                               : Ternary::kNo;
}

// ---------------------------------------------------------- named groups

GeneratedGroup symmetric_group(int m) {
  std::vector<Permutation> gens;
  if (m >= 2) gens.push_back(Permutation::cycle(m, 1, 2));
  if (m >= 3) gens.push_back(Permutation::cycle(m, 1, m));
  return GeneratedGroup(m, std::move(gens));
}

GeneratedGroup alternating_group(int m) {
  std::vector<Permutation> gens;
  if (m >= 3) gens.push_back(Permutation::cycle(m, 1, 3));
  if (m >= 4) {
    gens.push_back(m % 2 == 1 ? Permutation::cycle(m, 1, m)
                              : Permutation::cycle(m, 2, m - 1));
  }
  return GeneratedGroup(m, std::move(gens));
}

std::vector<Permutation> even_subgroup_generators(
    const std::vector<Permutation>& gens) {
  const Permutation* t = nullptr;
  for (const auto& g : gens) {
    if (!g.is_even()) {
      t = &g;
      break;
    }
  }
  if (t == nullptr) return gens;
  const Permutation t_inv = t->inverse();
  std::vector<Permutation> out;
  auto push = [&](Permutation p) {
    if (p.is_identity()) return;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  };
  for (const auto& s : gens) {
    if (s.is_even()) {
      push(s);
      push(t_inv * s * *t);
    } else {
      push(s * t_inv);   // coset e -> t
      push(t_inv * s);   // coset t -> e
    }
  }
  return out;
}

GeneratedGroup centralizer_in_Sm(const Permutation& x) {
  const int m = x.degree();
  std::map<int, std::vector<std::vector<int>>> by_len;
  for (auto& c : x.cycles()) by_len[static_cast<int>(c.size())].push_back(c);
  for (int i = 1; i <= m; ++i) {
    if (x(i) == i) by_len[1].push_back({i});
  }
  std::vector<Permutation> gens;
  for (const auto& [len, cycles] : by_len) {
    if (len > 1) {
      for (const auto& c : cycles) gens.push_back(Permutation::from_cycles(m, {c}));
    }
    for (std::size_t l = 0; l + 1 < cycles.size(); ++l) {
      std::vector<std::vector<int>> swap;
      for (int k = 0; k < len; ++k) swap.push_back({cycles[l][k], cycles[l + 1][k]});
      gens.push_back(Permutation::from_cycles(m, swap));
    }
  }
  return GeneratedGroup(m, std::move(gens));
}

BigInt centralizer_order(const CycleType& type) {
  BigInt n = 1;
  for (auto [len, count] : type.counts()) {
    for (int k = 0; k < count; ++k) n *= len;
    for (int k = 2; k <= count; ++k) n *= k;
  }
  return n;
}

BigInt class_size_in_Sm(const CycleType& type) {
  BigInt f = 1;
  for (int k = 2; k <= type.degree(); ++k) f *= k;
  return f / centralizer_order(type);
}

std::optional<Permutation> conjugator_in_Sm(const Permutation& x,
                                            const Permutation& y) {
  if (x.degree() != y.degree() || cycle_type(x) != cycle_type(y)) {
    return std::nullopt;
  }
  const int m = x.degree();
  auto cycles_of = [m](const Permutation& p) {
    auto cs = p.cycles();
    for (int i = 1; i <= m; ++i)
      if (p(i) == i) cs.push_back({i});
    std::stable_sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a.front() < b.front();
    });
    return cs;
  };
  auto cx = cycles_of(x);
  auto cy = cycles_of(y);
  std::vector<int> images(m);
  for (std::size_t c = 0; c < cx.size(); ++c) {
    for (std::size_t k = 0; k < cx[c].size(); ++k) images[cx[c][k] - 1] = cy[c][k];
  }
  return Permutation::from_images(images);
}

// ------------------------------------------------------------ class specs

bool splits_in_Am(const CycleType& type) {
  for (auto [len, count] : type.counts()) {
    if (len % 2 == 0 || count > 1) return false;
  }
  return true;
}

Permutation canonical_representative(const CycleType& type) {
  const int m = type.degree();
  std::vector<std::vector<int>> cycles;
  int next = 1 + type.count(1);
  for (auto [len, count] : type.counts()) {
    if (len == 1) continue;
    for (int k = 0; k < count; ++k) {
      std::vector<int> c(len);
      for (int i = 0; i < len; ++i) c[i] = next + i;
      next += len;
      cycles.push_back(std::move(c));
    }
  }
  return Permutation::from_cycles(m, cycles);
}

void ConjClassSpec::validate() const {
  if (m < 1 || m > kMaxDegree) throw Error("class degree out of range");
  if (type.degree() != m) {
    throw Error("cycle type " + type.to_string() + " has degree " +
                std::to_string(type.degree()) + ", not " + std::to_string(m));
  }
  if (ambient == Ambient::kAlt && !type.is_even()) {
    throw Error("type " + type.to_string() + " is odd; no class in A_" +
                std::to_string(m));
  }
  if (split.has_value()) {
    if (ambient != Ambient::kAlt || !splits_in_Am(type) || m < 2) {
      throw Error("split part given for a class that does not split: " +
                  type.to_string());
    }
  } else if (ambient == Ambient::kAlt && splits_in_Am(type) && m >= 2) {
    throw Error("class " + type.to_string() + " splits in A_" +
                std::to_string(m) + "; choose plus or minus");
  }
}

Permutation ConjClassSpec::representative() const {
  Permutation rep = canonical_representative(type);
  if (split == SplitPart::kMinus) {
    rep = conjugate(Permutation::cycle(m, 1, 2), rep);
  }
  return rep;
}

bool ConjClassSpec::contains(const Permutation& x) const {
  if (x.degree() != m || cycle_type(x) != type) return false;
  if (!split) return true;
  auto c = conjugator_in_Sm(canonical_representative(type), x);
  const bool plus = c->is_even();
  return plus == (*split == SplitPart::kPlus);
}

BigInt ConjClassSpec::size() const {
  BigInt n = class_size_in_Sm(type);
  return split ? n / 2 : n;
}

GeneratedGroup ConjClassSpec::ambient_group() const {
  return ambient == Ambient::kSym ? symmetric_group(m) : alternating_group(m);
}

std::string ConjClassSpec::to_string() const {
  std::ostringstream os;
  os << (ambient == Ambient::kSym ? "S_" : "A_") << m << " (" << type.to_string()
     << ")";
  if (split) os << (*split == SplitPart::kPlus ? "+" : "-");
  return os.str();
}

ConjClassSpec make_spec(Ambient ambient, const CycleType& type,
                        std::optional<SplitPart> split) {
  ConjClassSpec s;
  s.m = type.degree();
  s.type = type;
  s.ambient = ambient;
  if (ambient == Ambient::kAlt && splits_in_Am(type) && !split) {
    split = SplitPart::kPlus;
  }
  s.split = split;
  s.validate();
  return s;
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<ConjClassSpec> all_classes(int m, Ambient ambient) {
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions_rec(m, m, cur, parts);
  std::vector<CycleType> types;
  for (const auto& p : parts) {
    std::map<int, int> counts;
    for (int len : p) ++counts[len];
    types.emplace_back(counts);
  }
  std::sort(types.begin(), types.end());
  std::vector<ConjClassSpec> out;
  for (const auto& t : types) {
    if (ambient == Ambient::kAlt && !t.is_even()) continue;
    if (ambient == Ambient::kAlt && splits_in_Am(t)) {
      out.push_back(make_spec(ambient, t, SplitPart::kPlus));
      out.push_back(make_spec(ambient, t, SplitPart::kMinus));
    } else {
      out.push_back(make_spec(ambient, t));
    }
  }
  return out;
}

std::optional<std::vector<Permutation>> class_elements(const ConjClassSpec& spec,
                                                       std::size_t cap) {
  spec.validate();
  if (spec.size() > cap) return std::nullopt;
  auto orb = class_orbit(spec.representative(), spec.ambient_group(), cap);
  if (!orb) return std::nullopt;
  std::sort(orb->begin(), orb->end());
  return orb;
}

}  // namespace rackd
