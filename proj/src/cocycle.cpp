#include "rackd/cocycle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rackd/error.hpp"

namespace rackd {

Cocycle::Cocycle(FiniteRack rack, int n, std::vector<int> part, std::vector<int> degrees,
                 std::vector<CycloMatrix> q)
    : rack_(std::move(rack)), n_(n), part_(std::move(part)), degrees_(std::move(degrees)),
      q_(std::move(q)) {
  const int sz = rack_.size();
  if (static_cast<int>(part_.size()) != sz) throw Error("one part index per rack element");
  if (q_.size() != static_cast<std::size_t>(sz) * sz) throw Error("one value per pair");
  std::vector<char> used(degrees_.size(), 0);
  for (int z = 0; z < sz; ++z) {
    if (part_[z] < 0 || part_[z] >= static_cast<int>(degrees_.size())) {
      throw Error("part index out of range");
    }
    used[part_[z]] = 1;
  }
  if (std::count(used.begin(), used.end(), 0) > 0) throw Error("empty part");
  for (int d : degrees_)
    if (d < 1 || d > 4) throw Error("degrees must lie in 1..4");
  for (int x = 0; x < sz; ++x)
    for (int z = 0; z < sz; ++z) {
      if (part_[rack_.op(x, z)] != part_[z]) {
        throw Error("parts must be stable under the rack action");
      }
      const auto& m = at(x, z);
      if (m.dim() != degree_at(z) || m.order() != n_) {
        throw Error("value q(" + std::to_string(x) + "," + std::to_string(z) +
                    ") has the wrong shape");
      }
    }
}

Cocycle Cocycle::principal(FiniteRack rack, int n, int degree, std::vector<CycloMatrix> q) {
  std::vector<int> part(rack.size(), 0);
  return Cocycle(std::move(rack), n, std::move(part), {degree}, std::move(q));
}

Cocycle Cocycle::non_principal(FiniteRack rack, int n, std::vector<int> part,
                               std::vector<int> degrees, std::vector<CycloMatrix> q) {
  return Cocycle(std::move(rack), n, std::move(part), std::move(degrees), std::move(q));
}

Cocycle Cocycle::constant(FiniteRack rack, int n, int k) {
  const std::size_t sz = static_cast<std::size_t>(rack.size()) * rack.size();
  std::vector<CycloMatrix> q(sz, CycloMatrix::scalar(Cyclotomic::root(n, k), 1));
  return principal(std::move(rack), n, 1, std::move(q));
}

void Cocycle::set(int x, int z, CycloMatrix m) {
  if (m.dim() != degree_at(z) || m.order() != n_) throw Error("value has the wrong shape");
  q_[x * rack_.size() + z] = std::move(m);
}

CocycleCheck validate_cocycle(const Cocycle& q) {
  CocycleCheck c;
  const FiniteRack& X = q.rack();
  const int n = X.size();
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z)
      if (!q.at(x, z).is_invertible()) {
        c.message = "q(" + std::to_string(x) + "," + std::to_string(z) + ") is not invertible";
        return c;
      }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const CycloMatrix lhs = q.at(x, X.op(y, z)) * q.at(y, z);
        const CycloMatrix rhs = q.at(X.op(x, y), X.op(x, z)) * q.at(x, z);
        if (lhs != rhs) {
          c.triple = std::array<int, 3>{x, y, z};
          c.message = "q(x,y▷z) q(y,z) != q(x▷y,x▷z) q(x,z) at (" + X.label(x) + ", " +
                      X.label(y) + ", " + X.label(z) + "): " + lhs.to_string() +
                      " vs " + rhs.to_string();
          return c;
        }
      }
  c.ok = true;
  return c;
}

namespace {

using Key = std::array<int, 3>;
using Tensor = std::map<Key, Cyclotomic>;

struct Basis {
  std::vector<int> offset;  // first basis index of e_x
  std::vector<int> point;   // basis index -> x
  std::vector<int> slot;    // basis index -> coordinate in W
};

Basis make_basis(const Cocycle& q) {
  Basis b;
  for (int x = 0; x < q.rack().size(); ++x) {
    b.offset.push_back(static_cast<int>(b.point.size()));
    for (int a = 0; a < q.degree_at(x); ++a) {
      b.point.push_back(x);
      b.slot.push_back(a);
    }
  }
  return b;
}

void add(Tensor& t, const Key& k, const Cyclotomic& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = t.emplace(k, v);
  if (!fresh) {
    it->second = it->second + v;
    if (it->second.is_zero()) t.erase(it);
  }
}

// c applied to tensor factors (pos, pos + 1).
Tensor apply_c(const Cocycle& q, const Basis& b, const Tensor& in, int pos) {
  Tensor out;
  for (const auto& [k, coef] : in) {
    const int i = k[pos], j = k[pos + 1];
    const int x = b.point[i], y = b.point[j];
    const int xy = q.rack().op(x, y);
    const CycloMatrix& m = q.at(x, y);
    for (int r = 0; r < m.dim(); ++r) {
      const Cyclotomic& e = m.at(r, b.slot[j]);
      if (e.is_zero()) continue;
      Key nk = k;
      nk[pos] = b.offset[xy] + r;
      nk[pos + 1] = i;
      add(out, nk, coef * e);
    }
  }
  return out;
}

std::string tensor_string(const Tensor& t) {
  std::string s;
  for (const auto& [k, v] : t) {
    s += (s.empty() ? "" : " + ") + v.to_string() + "·[" + std::to_string(k[0]) + "," +
         std::to_string(k[1]) + "," + std::to_string(k[2]) + "]";
  }
  return s.empty() ? "0" : s;
}

}  // namespace

BraidCheck braiding_check(const Cocycle& q) {
  BraidCheck c;
  const Basis b = make_basis(q);
  const int d = static_cast<int>(b.point.size());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Tensor t{{Key{i, j, k}, Cyclotomic::one(q.order())}};
        const Tensor lhs = apply_c(q, b, apply_c(q, b, apply_c(q, b, t, 0), 1), 0);
        const Tensor rhs = apply_c(q, b, apply_c(q, b, apply_c(q, b, t, 1), 0), 1);
        if (lhs != rhs) {
          c.basis = std::array<int, 6>{b.point[i], b.slot[i], b.point[j],
                                       b.slot[j], b.point[k], b.slot[k]};
          c.message = "braid equation fails on e_" + std::to_string(b.point[i]) + " ⊗ e_" +
                      std::to_string(b.point[j]) + " ⊗ e_" + std::to_string(b.point[k]) +
                      ": " + tensor_string(lhs) + " vs " + tensor_string(rhs);
          return c;
        }
      }
  c.ok = true;
  return c;
}

namespace {

// Linear map e_y w -> e_{t[y]} b[y] w.
struct BlockMonomial {
  std::vector<int> t;
  std::vector<CycloMatrix> b;
  friend auto operator<=>(const BlockMonomial&, const BlockMonomial&) = default;
};

BlockMonomial g_of(const Cocycle& q, int x) {
  BlockMonomial g;
  for (int y = 0; y < q.rack().size(); ++y) {
    g.t.push_back(q.rack().op(x, y));
    g.b.push_back(q.at(x, y));
  }
  return g;
}

// (g ∘ h)(e_y w) = g(e_{h.t[y]} h.b[y] w).
BlockMonomial after(const BlockMonomial& g, const BlockMonomial& h) {
  BlockMonomial r;
  for (std::size_t y = 0; y < h.t.size(); ++y) {
    r.t.push_back(g.t[h.t[y]]);
    r.b.push_back(g.b[h.t[y]] * h.b[y]);
  }
  return r;
}

}  // namespace

GMapReport g_map(const Cocycle& q, std::size_t group_cap) {
  GMapReport rep;
  const int n = q.rack().size();
  std::vector<BlockMonomial> g;
  for (int x = 0; x < n; ++x) g.push_back(g_of(q, x));
  rep.faithful = std::set<BlockMonomial>(g.begin(), g.end()).size() == g.size();
  rep.morphism = true;
  for (int x = 0; x < n && rep.morphism; ++x)
    for (int y = 0; y < n; ++y)
      if (after(g[q.rack().op(x, y)], g[x]) != after(g[x], g[y])) {
        rep.morphism = false;
        break;
      }
  // Closure of <g_x>; in a finite group the monoid generated is the group.
  std::set<BlockMonomial> seen(g.begin(), g.end());
  std::vector<BlockMonomial> queue(seen.begin(), seen.end());
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (const auto& s : g) {
      BlockMonomial z = after(s, queue[k]);
      if (seen.insert(z).second) {
        if (seen.size() > group_cap) return rep;
        queue.push_back(std::move(z));
      }
    }
  }
  rep.group_order = seen.size();
  return rep;
}

bool g_map_faithful(const Cocycle& q) { return g_map(q, 0).faithful; }

std::vector<Permutation> conjugator_section(const ConjClassSpec& spec, std::size_t cap) {
  auto elems = class_elements(spec, cap);
  if (!elems) throw Error("class " + spec.to_string() + " exceeds the cap");
  const Permutation sigma = spec.representative();
  auto cent = centralizer_in_Sm(sigma).closure(cap);
  if (!cent) throw Error("centralizer of " + sigma.to_string() + " exceeds the cap");
  std::vector<Permutation> out;
  for (const auto& x : *elems) {
    const auto g0 = conjugator_in_Sm(sigma, x);
    if (!g0) throw Error("internal: no conjugator");
    std::optional<Permutation> best;
    for (const auto& c : *cent) {
      Permutation g = *g0 * c;
      if (spec.ambient == Ambient::kAlt && !g.is_even()) continue;
      if (!best || g < *best) best = g;
    }
    if (!best) throw Error("internal: no conjugator in the ambient group");
    out.push_back(*best);
  }
  return out;
}

Cocycle yd_braiding(const ConjClassSpec& spec, const DegreeOneRep& rep, std::size_t cap,
                    const std::vector<Permutation>* section) {
  if (rep.type != spec.type) throw Error("rep and class have different cycle types");
  auto elems = class_elements(spec, cap);
  if (!elems) throw Error("class " + spec.to_string() + " exceeds the cap");
  std::vector<Permutation> own;
  if (!section) {
    own = conjugator_section(spec, cap);
    section = &own;
  }
  if (section->size() != elems->size()) throw Error("section size does not match the class");
  const Permutation sigma = spec.representative();
  FiniteRack X = FiniteRack::from_elements(*elems);
  const int n = X.size(), order = rep.value_order();
  std::vector<Permutation> inv;
  for (const auto& g : *section) inv.push_back(g.inverse());
  std::vector<CycloMatrix> q;
  q.reserve(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int xy = X.op(x, y);
      const Permutation c = inv[xy] * (*elems)[x] * (*section)[y];
      q.push_back(CycloMatrix::scalar(rep_value(rep, sigma, c), 1));
    }
  return Cocycle::principal(std::move(X), order, 1, std::move(q));
}

}  // namespace rackd
