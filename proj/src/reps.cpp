#include "rackd/reps.hpp"

#include <numeric>

#include "rackd/error.hpp"

namespace rackd {

int DegreeOneRep::value_order() const {
  int n = 2;
  for (auto [len, count] : type.counts()) n = std::lcm(n, len);
  return n;
}

std::string DegreeOneRep::to_string() const {
  std::string s;
  for (auto [len, count] : type.counts()) {
    std::string part;
    const auto m = mu.count(len) ? mu.at(len) : Mu::kEpsilon;
    const std::string ms = m == Mu::kSgn ? "sgn" : "ε";
    if (len == 1) {
      part = "ρ1 = " + ms;
    } else if (count == 1) {
      part = "ρ" + std::to_string(len) + " = χ_" + std::to_string(t.at(len));
    } else {
      part = "ρ" + std::to_string(len) + " = χ⃗_" + std::to_string(t.at(len)) + "⊗" + ms;
    }
    s += (s.empty() ? "" : ", ") + part;
  }
  return s;
}

std::vector<DegreeOneRep> enumerate_degree_one(const CycleType& type) {
  std::vector<DegreeOneRep> out{DegreeOneRep{type, {}, {}}};
  for (auto [len, count] : type.counts()) {
    std::vector<DegreeOneRep> next;
    for (const auto& r : out) {
      for (int t = 0; t < len; ++t) {
        for (Mu m : {Mu::kEpsilon, Mu::kSgn}) {
          if (count < 2 && m == Mu::kSgn) continue;
          DegreeOneRep x = r;
          x.t[len] = t;
          if (count >= 2) x.mu[len] = m;
          next.push_back(std::move(x));
        }
      }
    }
    out = std::move(next);
  }
  return out;
}

Cyclotomic rep_value(const DegreeOneRep& rep, const Permutation& sigma,
                     const Permutation& c) {
  if (cycle_type(sigma) != rep.type) throw Error("σ does not have the rep's cycle type");
  if (c * sigma != sigma * c) throw Error(c.to_string() + " does not centralize σ");
  const int n = rep.value_order();
  Cyclotomic v = Cyclotomic::one(n);
  // c maps the first point of cycle l to the point s_l steps into cycle π(l).
  std::map<int, std::vector<std::vector<int>>> by_len;
  for (const auto& cyc : sigma.cycles()) by_len[static_cast<int>(cyc.size())].push_back(cyc);
  if (rep.type.count(1) > 0) {
    // Fixed points of σ are the 1-cycles.
    std::vector<std::vector<int>> fixed;
    for (int p = 1; p <= sigma.degree(); ++p)
      if (sigma(p) == p) fixed.push_back({p});
    by_len[1] = fixed;
  }
  for (const auto& [len, cycles] : by_len) {
    std::map<int, std::pair<int, int>> where;  // point -> (cycle, offset)
    for (int l = 0; l < static_cast<int>(cycles.size()); ++l)
      for (int i = 0; i < len; ++i) where[cycles[l][i]] = {l, i};
    long long shift = 0;
    std::vector<int> pi(cycles.size());
    for (int l = 0; l < static_cast<int>(cycles.size()); ++l) {
      auto [target, offset] = where.at(c(cycles[l][0]));
      pi[l] = target;
      shift += offset;
    }
    v = v * Cyclotomic::root(n, static_cast<long long>(rep.t.at(len)) * shift * (n / len));
    auto m = rep.mu.find(len);
    if (m != rep.mu.end() && m->second == Mu::kSgn) {
      std::vector<int> img(pi.size());
      for (std::size_t i = 0; i < pi.size(); ++i) img[i] = pi[i] + 1;
      if (!Permutation::from_images(img).is_even()) v = -v;
    }
  }
  return v;
}

Cyclotomic q_sigma_sigma(const CycleType& type, const DegreeOneRep& rep) {
  const int n = rep.value_order();
  Cyclotomic v = Cyclotomic::one(n);
  for (auto [len, count] : type.counts()) {
    v = v * Cyclotomic::root(n, static_cast<long long>(rep.t.at(len)) * count * (n / len));
  }
  return v;
}

}  // namespace rackd
