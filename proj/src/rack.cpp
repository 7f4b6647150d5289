#include "rackd/rack.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "rackd/error.hpp"

namespace rackd {

// ------------------------------------------------------------ FiniteRack

FiniteRack FiniteRack::from_table(const std::vector<std::vector<int>>& table,
                                  std::vector<std::string> labels) {
  FiniteRack r;
  r.n_ = static_cast<int>(table.size());
  r.backing_ = Backing::kTable;
  if (!labels.empty() && labels.size() != table.size()) {
    throw Error("label count does not match rack size");
  }
  r.labels_ = std::move(labels);
  const std::size_t n = table.size();
  r.table_.resize(n * n);
  r.inv_table_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (table[x].size() != n) {
      throw Error("rack table row " + std::to_string(x) + " has length " +
                  std::to_string(table[x].size()) + ", expected " +
                  std::to_string(n));
    }
    std::vector<bool> hit(n, false);
    for (std::size_t y = 0; y < n; ++y) {
      const int v = table[x][y];
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw Error("rack table entry out of range at (" + std::to_string(x) +
                    "," + std::to_string(y) + ")");
      }
      r.table_[x * n + y] = static_cast<std::uint32_t>(v);
      if (!hit[v]) r.inv_table_[x * n + v] = static_cast<std::uint32_t>(y);
      hit[v] = true;
    }
  }
  return r;
}

FiniteRack FiniteRack::from_elements(std::vector<Permutation> elements,
                                     std::size_t materialize) {
  FiniteRack r;
  r.n_ = static_cast<int>(elements.size());
  r.backing_ = Backing::kGroupConjugation;
  r.index_ = std::make_shared<std::unordered_map<Permutation, int, PermutationHash>>();
  r.index_->reserve(elements.size() * 2);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i > 0 && elements[i].degree() != elements[0].degree()) {
      throw Error("rack elements have mixed degrees");
    }
    if (!r.index_->emplace(elements[i], static_cast<int>(i)).second) {
      throw Error("duplicate rack element " + elements[i].to_string());
    }
  }
  r.elem_inv_.reserve(elements.size());
  for (const auto& e : elements) r.elem_inv_.push_back(e.inverse());
  r.elems_ = std::move(elements);
  if (static_cast<std::size_t>(r.n_) <= materialize) r.materialize();
  return r;
}

void FiniteRack::materialize() {
  const std::size_t n = static_cast<std::size_t>(n_);
  std::vector<std::uint32_t> t(n * n), ti(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Permutation z = conjugate(elems_[x], elem_inv_[x], elems_[y]);
      auto it = index_->find(z);
      if (it == index_->end()) {
        throw Error("element set not closed under conjugation: " +
                    elems_[x].to_string() + " ▷ " + elems_[y].to_string() +
                    " = " + z.to_string());
      }
      t[x * n + y] = static_cast<std::uint32_t>(it->second);
      ti[x * n + it->second] = static_cast<std::uint32_t>(y);
    }
  }
  table_ = std::move(t);
  inv_table_ = std::move(ti);
}

int FiniteRack::op(int x, int y) const {
  if (!table_.empty()) return static_cast<int>(table_[static_cast<std::size_t>(x) * n_ + y]);
  Permutation z = conjugate(elems_[x], elem_inv_[x], elems_[y]);
  auto it = index_->find(z);
  if (it == index_->end()) {
    throw Error("element set not closed under conjugation: " + z.to_string());
  }
  return it->second;
}

int FiniteRack::op_inv(int x, int y) const {
  if (!inv_table_.empty()) {
    return static_cast<int>(inv_table_[static_cast<std::size_t>(x) * n_ + y]);
  }
  Permutation z = conjugate(elem_inv_[x], elems_[x], elems_[y]);
  auto it = index_->find(z);
  if (it == index_->end()) {
    throw Error("element set not closed under conjugation: " + z.to_string());
  }
  return it->second;
}

std::vector<int> FiniteRack::row(int x) const {
  std::vector<int> out(n_);
  for (int y = 0; y < n_; ++y) out[y] = op(x, y);
  return out;
}

std::optional<int> FiniteRack::index_of(const Permutation& p) const {
  if (!index_) return std::nullopt;
  auto it = index_->find(p);
  if (it == index_->end()) return std::nullopt;
  return it->second;
}

std::string FiniteRack::label(int x) const {
  if (!labels_.empty()) return labels_[x];
  if (!elems_.empty()) return elems_[x].to_string();
  return std::to_string(x);
}

FiniteRack FiniteRack::with_labels(std::vector<std::string> labels) const {
  if (labels.size() != static_cast<std::size_t>(n_)) {
    throw Error("label count does not match rack size");
  }
  FiniteRack r = *this;
  r.labels_ = std::move(labels);
  return r;
}

std::vector<std::vector<int>> FiniteRack::table() const {
  std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y) t[x][y] = op(x, y);
  return t;
}

// ------------------------------------------------------------- validation

RackValidation validate(const FiniteRack& r) {
  RackValidation v;
  const int n = r.size();
  if (n == 0) {
    v.kind = "not a rack";
    v.message = "empty set";
    return v;
  }
  // Bijectivity of every φ_x (closure is implied by op() not throwing).
  try {
    for (int x = 0; x < n; ++x) {
      std::vector<bool> hit(n, false);
      for (int y = 0; y < n; ++y) {
        const int z = r.op(x, y);
        if (hit[z]) {
          v.kind = "not a rack";
          v.message = "φ_" + r.label(x) + " is not injective (value " +
                      r.label(z) + " repeated)";
          return v;
        }
        hit[z] = true;
      }
    }
  } catch (const Error& e) {
    v.kind = "not a rack";
    v.message = e.what();
    return v;
  }
  const bool full_sd = r.backing() == FiniteRack::Backing::kTable || n <= 400;
  v.self_distributivity_checked = full_sd;
  if (full_sd) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        const int xy = r.op(x, y);
        for (int z = 0; z < n; ++z) {
          if (r.op(x, r.op(y, z)) != r.op(xy, r.op(x, z))) {
            v.kind = "not a rack";
            v.message = "self-distributivity fails at (x,y,z) = (" + r.label(x) +
                        ", " + r.label(y) + ", " + r.label(z) + ")";
            return v;
          }
        }
      }
    }
  }
  v.ok = true;
  v.is_quandle = true;
  for (int x = 0; x < n && v.is_quandle; ++x) v.is_quandle = r.op(x, x) == x;
  v.is_crossed_set = v.is_quandle;
  for (int x = 0; x < n && v.is_crossed_set; ++x) {
    for (int y = 0; y < n; ++y) {
      if (r.op(x, y) == y && r.op(y, x) != x) {
        v.is_crossed_set = false;
        break;
      }
    }
  }
  v.kind = v.is_crossed_set ? "crossed set" : v.is_quandle ? "quandle" : "rack";
  return v;
}

// ------------------------------------------------------------- subracks

std::optional<std::vector<int>> subrack_closure(const FiniteRack& r,
                                                const std::vector<int>& seed,
                                                std::size_t cap) {
  if (seed.empty()) throw Error("subrack_closure: empty seed");
  std::vector<char> in(r.size(), 0);
  std::vector<int> members;
  auto add = [&](int z) {
    if (in[z]) return true;
    if (members.size() >= cap) return false;
    in[z] = 1;
    members.push_back(z);
    return true;
  };
  for (int s : seed) {
    if (s < 0 || s >= r.size()) throw Error("subrack_closure: seed out of range");
    if (!add(s)) return std::nullopt;
  }
  // Every ordered pair (a, b) with a, b among the first k members has been
  // multiplied once processed == k.
  for (std::size_t k = 0; k < members.size(); ++k) {
    const int z = members[k];
    for (std::size_t i = 0; i <= k; ++i) {
      const int w = members[i];
      if (!add(r.op(z, w)) || !add(r.op(w, z))) return std::nullopt;
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool is_subrack(const FiniteRack& r, const std::vector<int>& members) {
  std::vector<char> in(r.size(), 0);
  for (int m : members) in[m] = 1;
  for (int a : members)
    for (int b : members)
      if (!in[r.op(a, b)]) return false;
  return true;
}

std::vector<std::vector<int>> decompose(const FiniteRack& r) {
  const int n = r.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> parts;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(parts.size());
    std::vector<int> part{start};
    comp[start] = id;
    for (std::size_t k = 0; k < part.size(); ++k) {
      const int y = part[k];
      for (int x = 0; x < n; ++x) {
        for (int z : {r.op(x, y), r.op_inv(x, y)}) {
          if (comp[z] < 0) {
            comp[z] = id;
            part.push_back(z);
          }
        }
      }
    }
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }
  return parts;
}

bool is_indecomposable(const FiniteRack& r) {
  if (auto h = r.indecomposable_hint()) return *h;
  return decompose(r).size() == 1;
}

FiniteRack induced_subrack(const FiniteRack& r, const std::vector<int>& members) {
  if (r.backing() == FiniteRack::Backing::kGroupConjugation) {
    std::vector<Permutation> elems;
    for (int m : members) elems.push_back(r.elements()[m]);
    FiniteRack s = FiniteRack::from_elements(std::move(elems));
    if (!r.labels().empty()) {
      std::vector<std::string> labels;
      for (int m : members) labels.push_back(r.labels()[m]);
      s = s.with_labels(std::move(labels));
    }
    return s;
  }
  std::vector<int> pos(r.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(members.size(), std::vector<int>(members.size()));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < members.size(); ++i) {
    labels.push_back(r.label(members[i]));
    for (std::size_t j = 0; j < members.size(); ++j) {
      const int z = pos[r.op(members[i], members[j])];
      if (z < 0) throw Error("induced_subrack: members are not a subrack");
      t[i][j] = z;
    }
  }
  return FiniteRack::from_table(t, std::move(labels));
}

// ------------------------------------------------------- constructions

namespace {

// φ_x^j(y) for any nonzero j.
int phi_power(const FiniteRack& r, int x, int j, int y) {
  if (j >= 0) {
    for (int k = 0; k < j; ++k) y = r.op(x, y);
  } else {
    for (int k = 0; k < -j; ++k) y = r.op_inv(x, y);
  }
  return y;
}

std::vector<std::string> suffixed_labels(const FiniteRack& r, const std::string& suffix) {
  std::vector<std::string> out;
  for (int x = 0; x < r.size(); ++x) out.push_back(r.label(x) + suffix);
  return out;
}

}  // namespace

FiniteRack power_rack(const FiniteRack& r, int j) {
  if (j == 0) throw Error("power_rack: j must be nonzero");
  const int n = r.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = phi_power(r, x, j, y);
  return FiniteRack::from_table(t, suffixed_labels(r, "^[" + std::to_string(j) + "]"));
}

FiniteRack amalgam(const FiniteRack& r, int j) {
  if (j == 0) throw Error("amalgam: j must be nonzero");
  const int n = r.size();
  std::vector<std::vector<int>> t(2 * n, std::vector<int>(2 * n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int xy = r.op(x, y);
      const int xjy = phi_power(r, x, j, y);
      t[x][y] = xy;               // X is a subrack
      t[x][n + y] = n + xy;       // x ▷ y^[j] = (x ▷ y)^[j]
      t[n + x][y] = xjy;          // x^[j] ▷ y = φ_x^j(y)
      t[n + x][n + y] = n + xjy;  // X^[j]
    }
  }
  auto labels = suffixed_labels(r, "");
  auto upper = suffixed_labels(r, "^[" + std::to_string(j) + "]");
  labels.insert(labels.end(), upper.begin(), upper.end());
  return FiniteRack::from_table(t, std::move(labels));
}

FiniteRack product(const FiniteRack& a, const FiniteRack& b) {
  const int na = a.size(), nb = b.size();
  const int n = na * nb;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int x = 0; x < n; ++x) {
    labels.push_back("(" + a.label(x / nb) + ", " + b.label(x % nb) + ")");
    for (int y = 0; y < n; ++y) {
      t[x][y] = a.op(x / nb, y / nb) * nb + b.op(x % nb, y % nb);
    }
  }
  return FiniteRack::from_table(t, std::move(labels));
}

bool is_faithful(const FiniteRack& r) {
  std::map<std::vector<int>, int> rows;
  for (int x = 0; x < r.size(); ++x) {
    if (!rows.emplace(r.row(x), x).second) return false;
  }
  return true;
}

bool is_trivial_rack(const FiniteRack& r) {
  for (int x = 0; x < r.size(); ++x)
    for (int y = 0; y < r.size(); ++y)
      if (r.op(x, y) != y) return false;
  return true;
}

// -------------------------------------------------------------- morphisms

std::string_view to_string(SearchStatus s) noexcept {
  switch (s) {
    case SearchStatus::kFound: return "FOUND";
    case SearchStatus::kNotFound: return "NOT_FOUND";
    case SearchStatus::kBudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "NOT_FOUND";
}

bool is_morphism(const FiniteRack& a, const FiniteRack& b,
                 const std::vector<int>& map) {
  if (map.size() != static_cast<std::size_t>(a.size())) return false;
  for (int v : map)
    if (v < 0 || v >= b.size()) return false;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      if (map[a.op(x, y)] != b.op(map[x], map[y])) return false;
  return true;
}

namespace {

// Assignment order for the pattern: generators interleaved with the
// elements they force, each derived element given as a ▷ b.
struct Plan {
  std::vector<int> order;
  std::vector<int> lhs, rhs;  // per step; lhs = -1 marks a generator
};

Plan make_plan(const FiniteRack& p) {
  const int n = p.size();
  Plan plan;
  std::vector<char> in(n, 0);
  std::size_t processed = 0;
  for (int g = 0; g < n; ++g) {
    if (in[g]) continue;
    in[g] = 1;
    plan.order.push_back(g);
    plan.lhs.push_back(-1);
    plan.rhs.push_back(-1);
    for (; processed < plan.order.size(); ++processed) {
      const int z = plan.order[processed];
      for (std::size_t i = 0; i <= processed; ++i) {
        const int w = plan.order[i];
        for (auto [a, b] : {std::pair{z, w}, std::pair{w, z}}) {
          const int c = p.op(a, b);
          if (!in[c]) {
            in[c] = 1;
            plan.order.push_back(c);
            plan.lhs.push_back(a);
            plan.rhs.push_back(b);
          }
        }
      }
    }
  }
  return plan;
}

struct EmbedSearch {
  const FiniteRack& p;
  const FiniteRack& t;
  Plan plan;
  std::vector<int> image;       // pattern -> target, -1 unassigned
  std::vector<int> used_by;     // target -> pattern, -1 free
  std::vector<char> p_fixed;    // x ▷ x == x in the pattern
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool pin_first = false;
  bool exceeded = false;

  EmbedSearch(const FiniteRack& pattern, const FiniteRack& target, std::uint64_t b)
      : p(pattern), t(target), plan(make_plan(pattern)),
        image(pattern.size(), -1), used_by(target.size(), -1),
        p_fixed(pattern.size()), budget(b) {
    for (int x = 0; x < p.size(); ++x) p_fixed[x] = p.op(x, x) == x;
  }

  // Checks every relation between z and already assigned elements.
  bool consistent(int z) const {
    const int fz = image[z];
    if ((t.op(fz, fz) == fz) != static_cast<bool>(p_fixed[z])) return false;
    for (int w = 0; w < p.size(); ++w) {
      if (image[w] < 0 || w == z) continue;
      const int a = p.op(w, z), b = p.op(z, w);
      if (image[a] >= 0 && image[a] != t.op(image[w], fz)) return false;
      if (image[b] >= 0 && image[b] != t.op(fz, image[w])) return false;
    }
    return true;
  }

  bool assign(int x, int v, std::vector<int>& trail) {
    if (used_by[v] >= 0) return false;
    image[x] = v;
    used_by[v] = x;
    trail.push_back(x);
    return consistent(x);
  }

  void undo(std::vector<int>& trail) {
    for (int x : trail) {
      used_by[image[x]] = -1;
      image[x] = -1;
    }
    trail.clear();
  }

  // step indexes plan.order; it always points at a generator.
  bool search(std::size_t step) {
    if (step == plan.order.size()) return true;
    const int g = plan.order[step];
    const int lo = 0, hi = (step == 0 && pin_first) ? 1 : t.size();
    for (int v = lo; v < hi; ++v) {
      if (++nodes > budget) {
        exceeded = true;
        return false;
      }
      std::vector<int> trail;
      bool ok = assign(g, v, trail);
      std::size_t s = step + 1;
      for (; ok && s < plan.order.size() && plan.lhs[s] >= 0; ++s) {
        const int y = plan.order[s];
        const int fy = t.op(image[plan.lhs[s]], image[plan.rhs[s]]);
        ok = assign(y, fy, trail);
      }
      if (ok && search(s)) return true;
      undo(trail);
      if (exceeded) return false;
    }
    return false;
  }
};

}  // namespace

Embedding find_embedding(const FiniteRack& pattern, const FiniteRack& target,
                         std::uint64_t budget) {
  Embedding result;
  if (pattern.size() == 0) {
    result.status = SearchStatus::kFound;
    return result;
  }
  if (pattern.size() > target.size()) return result;
  EmbedSearch s(pattern, target, budget);
  s.pin_first = is_indecomposable(target);
  const bool found = s.search(0);
  result.nodes = s.nodes;
  if (found) {
    if (!is_morphism(pattern, target, s.image)) {
      throw Error("internal: embedding search produced a non-morphism");
    }
    result.status = SearchStatus::kFound;
    result.map = s.image;
  } else {
    result.status = s.exceeded ? SearchStatus::kBudgetExceeded : SearchStatus::kNotFound;
  }
  return result;
}

std::optional<std::vector<int>> find_isomorphism(const FiniteRack& a,
                                                 const FiniteRack& b,
                                                 std::uint64_t budget) {
  if (a.size() != b.size()) return std::nullopt;
  auto e = find_embedding(a, b, budget);
  if (e.status != SearchStatus::kFound) return std::nullopt;
  return e.map;
}

// ---------------------------------------------------------------- catalog

FiniteRack dihedral_rack(int n) {
  if (n < 1) throw Error("dihedral_rack: n must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = ((2 * x - y) % n + n) % n;
  return FiniteRack::from_table(t);
}

FiniteRack trivial_rack(int n) {
  if (n < 1) throw Error("trivial_rack: n must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = y;
  return FiniteRack::from_table(t);
}

FiniteRack permutation_rack(int n) {
  if (n < 1) throw Error("permutation_rack: n must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = (y + 1) % n;
  return FiniteRack::from_table(t);
}

std::optional<FiniteRack> class_rack(const ConjClassSpec& spec, std::size_t cap) {
  auto elems = class_elements(spec, cap);
  if (!elems) return std::nullopt;
  FiniteRack r = FiniteRack::from_elements(std::move(*elems));
  // A class of A_m or S_m (m >= 5) generates a normal subgroup; it is one
  // orbit of it unless it is the S_m class of a split type.
  if (spec.m >= 5) {
    const bool split_sym =
        spec.ambient == Ambient::kSym && spec.type.is_even() && splits_in_Am(spec.type);
    if (!split_sym && !spec.type.is_identity()) r.set_indecomposable_hint(true);
  }
  return r;
}

namespace {

FiniteRack class_rack_or_throw(Ambient a, const char* type, std::optional<SplitPart> s) {
  auto r = class_rack(make_spec(a, CycleType::parse(type), s), 100000);
  return *r;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"D_n", "tetrahedron", "cube", "dodecahedron", "oct", "oct2",
          "trivial:n", "permutation:n"};
}

FiniteRack catalog_rack(const std::string& name) {
  auto number_after = [&](std::size_t prefix) {
    const std::string digits = name.substr(prefix);
    if (digits.empty() || digits.size() > 4 ||
        !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw Error("bad catalog rack name: " + name);
    }
    return std::stoi(digits);
  };
  if (name.rfind("D_", 0) == 0) return dihedral_rack(number_after(2));
  if (name.rfind("trivial:", 0) == 0) return trivial_rack(number_after(8));
  if (name.rfind("permutation:", 0) == 0) return permutation_rack(number_after(12));
  if (name == "tetrahedron") {
    return class_rack_or_throw(Ambient::kAlt, "1,3", SplitPart::kPlus);
  }
  if (name == "cube") return class_rack_or_throw(Ambient::kSym, "1,3", std::nullopt);
  if (name == "dodecahedron") {
    return class_rack_or_throw(Ambient::kAlt, "1^2,3", std::nullopt);
  }
  if (name == "oct") return class_rack_or_throw(Ambient::kSym, "4", std::nullopt);
  if (name == "oct2") return amalgam(catalog_rack("oct"), 1);
  throw Error("unknown catalog rack: " + name);
}

std::string identify_rack(const FiniteRack& r) {
  const int n = r.size();
  if (is_trivial_rack(r)) return "trivial:" + std::to_string(n);
  std::vector<std::string> candidates{"D_" + std::to_string(n)};
  if (n == 4) candidates.push_back("tetrahedron");
  if (n == 6) candidates.push_back("oct");
  if (n == 8) candidates.push_back("cube");
  if (n == 12) candidates.push_back("oct2");
  if (n == 20) candidates.push_back("dodecahedron");
  for (const auto& c : candidates) {
    if (find_isomorphism(r, catalog_rack(c), 1'000'000)) return c;
  }
  return (decompose(r).size() == 1 ? "indecomposable:" : "decomposable:") +
         std::to_string(n);
}

Census two_generated_census(const FiniteRack& r, std::size_t cap) {
  Census c;
  c.rack_size = r.size();
  c.base_point = 0;
  std::map<std::pair<int, std::string>, std::size_t> counts;
  std::map<std::vector<int>, std::string> seen;
  for (int y = 0; y < r.size(); ++y) {
    ++c.pairs;
    auto sub = subrack_closure(r, {0, y}, cap);
    if (!sub) throw Error("two_generated_census: closure exceeded cap");
    if (static_cast<int>(sub->size()) == r.size()) {
      ++c.whole_rack;
      continue;
    }
    auto it = seen.find(*sub);
    std::string name;
    if (it != seen.end()) {
      name = it->second;
    } else {
      name = identify_rack(induced_subrack(r, *sub));
      seen.emplace(*sub, name);
    }
    ++counts[{static_cast<int>(sub->size()), name}];
  }
  for (const auto& [key, count] : counts) {
    c.entries.push_back({key.second, key.first, count});
  }
  return c;
}

}  // namespace rackd
