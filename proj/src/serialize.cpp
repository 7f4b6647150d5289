#include "rackd/serialize.hpp"

#include "rackd/error.hpp"

namespace rackd::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw Error("expected an object holding \"" + std::string(key) + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw Error("missing field \"" + std::string(key) + "\"");
  return *it;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error("field \"" + std::string(key) + "\": " + e.what());
  }
}

Json perm_list(const std::vector<Permutation>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

std::vector<Permutation> perms_from(const Json& j, const char* key, int m) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw Error("field \"" + std::string(key) + "\" must be an array");
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    try {
      out.push_back(perm_from_json(a[i], m));
    } catch (const Error& e) {
      throw Error(std::string(key) + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

Json matrix_json(const CycloMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back(to_json(m.at(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CycloMatrix matrix_from(const Json& j, int n, int dim) {
  if (j.is_number_integer()) {
    if (dim != 1) throw Error("an integer entry needs degree 1");
    return CycloMatrix::scalar(Cyclotomic::root(n, j.get<long long>()), 1);
  }
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw Error("expected " + std::to_string(dim) + " rows");
  std::vector<Cyclotomic> entries;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw Error("expected rows of length " + std::to_string(dim));
    for (const auto& c : row) entries.push_back(cyclotomic_from_json(c, n));
  }
  return CycloMatrix(n, dim, std::move(entries));
}

}  // namespace

Json stamp(const std::string& schema, Json body) {
  body["schema"] = schema;
  body["version"] = kSchemaVersion;
  return body;
}

void expect_schema(const Json& doc, const std::string& schema) {
  if (!doc.is_object()) throw Error("document must be a JSON object");
  const auto s = get<std::string>(doc, "schema");
  if (s != schema) throw Error("expected schema \"" + schema + "\", found \"" + s + "\"");
  const int v = get<int>(doc, "version");
  if (v != kSchemaVersion) throw Error("unsupported " + schema + " version " + std::to_string(v));
}

Json to_json(const ConjClassSpec& spec) {
  Json j{{"m", spec.m},
         {"type", spec.type.to_string()},
         {"group", spec.ambient == Ambient::kSym ? "S" : "A"}};
  if (spec.split) j["split"] = *spec.split == SplitPart::kPlus ? "plus" : "minus";
  return j;
}

ConjClassSpec spec_from_json(const Json& j) {
  ConjClassSpec s;
  s.m = get<int>(j, "m");
  s.type = CycleType::parse(get<std::string>(j, "type"));
  const auto g = get<std::string>(j, "group");
  if (g == "S") s.ambient = Ambient::kSym;
  else if (g == "A") s.ambient = Ambient::kAlt;
  else throw Error("field \"group\" must be \"S\" or \"A\"");
  if (j.contains("split")) {
    const auto p = get<std::string>(j, "split");
    if (p == "plus") s.split = SplitPart::kPlus;
    else if (p == "minus") s.split = SplitPart::kMinus;
    else throw Error("field \"split\" must be \"plus\" or \"minus\"");
  }
  s.validate();
  return s;
}

Json to_json(const Permutation& p) { return p.to_string(); }

Permutation perm_from_json(const Json& j, int degree) {
  if (!j.is_string()) throw Error("a permutation must be a cycle-notation string");
  return Permutation::parse(j.get<std::string>(), degree);
}

Json to_json(const WitnessCheck& c) {
  return Json{{"ok", c.ok},         {"in_class", c.in_class}, {"disjoint", c.disjoint},
              {"closed", c.closed}, {"stable", c.stable},     {"inequality", c.inequality},
              {"violation", c.violation}};
}

Json to_json(const TypeDWitness& w) {
  return Json{{"ambient", to_json(w.ambient)},
              {"provenance", w.provenance},
              {"note", w.note},
              {"R", perm_list(w.R)},
              {"S", perm_list(w.S)},
              {"r", to_json(w.r)},
              {"s", to_json(w.s)},
              {"checks", to_json(check_witness(w))}};
}

TypeDWitness witness_from_json(const Json& j) {
  TypeDWitness w;
  w.ambient = spec_from_json(field(j, "ambient"));
  const int m = w.ambient.m;
  w.provenance = get<std::string>(j, "provenance");
  if (j.contains("note")) w.note = get<std::string>(j, "note");
  w.R = perms_from(j, "R", m);
  w.S = perms_from(j, "S", m);
  w.r = perm_from_json(field(j, "r"), m);
  w.s = perm_from_json(field(j, "s"), m);
  return w;
}

Json to_json(const FiniteRack& r) {
  Json j{{"size", r.size()}, {"table", Json::array()}};
  for (const auto& row : r.table())
    for (int v : row) j["table"].push_back(v);
  if (!r.labels().empty()) j["labels"] = r.labels();
  return j;
}

FiniteRack rack_from_json(const Json& j) {
  if (j.is_string()) return catalog_rack(j.get<std::string>());
  const int n = get<int>(j, "size");
  const auto flat = get<std::vector<int>>(j, "table");
  if (n < 0 || flat.size() != static_cast<std::size_t>(n) * n)
    throw Error("field \"table\" must hold size^2 entries");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) table[x][y] = flat[x * n + y];
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = get<std::vector<std::string>>(j, "labels");
  return FiniteRack::from_table(table, std::move(labels));
}

Json to_json(const Cyclotomic& c) { return c.coefficients(); }

Cyclotomic cyclotomic_from_json(const Json& j, int n) {
  if (j.is_number_integer()) return Cyclotomic(n, j.get<long long>());
  if (!j.is_array()) throw Error("a cyclotomic integer must be a coefficient list");
  return Cyclotomic::from_coefficients(n, j.get<std::vector<long long>>());
}

Json to_json(const Cocycle& q) {
  const int n = q.rack().size();
  Json j{{"rack", to_json(q.rack())}, {"N", q.order()}};
  if (q.is_principal()) {
    j["degree"] = q.degrees()[0];
  } else {
    j["degrees"] = q.degrees();
    j["parts"] = q.parts();
  }
  bool roots = true;
  for (const auto& v : q.values())
    if (v.dim() != 1 || !v.at(0, 0).root_exponent()) roots = false;
  Json rows = Json::array();
  for (int x = 0; x < n; ++x) {
    Json row = Json::array();
    for (int z = 0; z < n; ++z) {
      const auto& v = q.at(x, z);
      if (roots) row.push_back(*v.at(0, 0).root_exponent());
      else row.push_back(matrix_json(v));
    }
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

Cocycle cocycle_from_json(const Json& j) {
  FiniteRack rack = rack_from_json(field(j, "rack"));
  const int n = rack.size();
  const int order = get<int>(j, "N");
  if (order < 1) throw Error("field \"N\" must be positive");
  std::vector<int> part(n, 0), degrees;
  if (j.contains("degrees")) {
    degrees = get<std::vector<int>>(j, "degrees");
    part = get<std::vector<int>>(j, "parts");
  } else {
    degrees = {j.contains("degree") ? get<int>(j, "degree") : 1};
  }
  if (static_cast<int>(part.size()) != n) throw Error("field \"parts\" must have one entry per element");
  for (int p : part)
    if (p < 0 || p >= static_cast<int>(degrees.size())) throw Error("part index out of range");
  const Json& e = field(j, "entries");
  if (!e.is_array() || static_cast<int>(e.size()) != n)
    throw Error("field \"entries\" must have one row per element");
  std::vector<CycloMatrix> values;
  for (int x = 0; x < n; ++x) {
    if (!e[x].is_array() || static_cast<int>(e[x].size()) != n)
      throw Error("entries[" + std::to_string(x) + "] must have one entry per element");
    for (int z = 0; z < n; ++z) {
      try {
        values.push_back(matrix_from(e[x][z], order, degrees[part[z]]));
      } catch (const Error& err) {
        throw Error("entries[" + std::to_string(x) + "][" + std::to_string(z) + "]: " + err.what());
      }
    }
  }
  if (degrees.size() == 1) return Cocycle::principal(std::move(rack), order, degrees[0], std::move(values));
  return Cocycle::non_principal(std::move(rack), order, std::move(part), std::move(degrees),
                                std::move(values));
}

Json to_json(const DegreeOneRep& rep) {
  Json t = Json::object(), mu = Json::object();
  for (auto [len, v] : rep.t) t[std::to_string(len)] = v;
  for (auto [len, v] : rep.mu) mu[std::to_string(len)] = v == Mu::kSgn ? "sgn" : "eps";
  return Json{{"type", rep.type.to_string()}, {"t", t}, {"mu", mu}, {"label", rep.to_string()}};
}

Json to_json(const CommutingTriple& t) {
  const auto c = check_triple(t);
  const auto v = triangle_verdict(t);
  return Json{{"ambient", to_json(t.ambient)},
              {"sigma", perm_list({t.sigma.begin(), t.sigma.end()})},
              {"g2", to_json(t.g2)},
              {"g3", to_json(t.g3)},
              {"h", t.h},
              {"provenance", t.provenance},
              {"checks", Json{{"ok", c.ok},
                              {"commuting", c.commuting},
                              {"conjugators", c.conjugators},
                              {"power", c.power},
                              {"odd", c.odd},
                              {"centralizing", c.centralizing},
                              {"violation", c.violation}}},
              {"diagram", v.diagram.exponent},
              {"verdict", to_string(v.status)},
              {"reason", v.reason}};
}

Json to_json(const Verdict& v) {
  Json j{{"status", to_string(v.status)}};
  if (!v.tag.empty()) j["tag"] = v.tag;
  if (!v.scope.empty()) j["scope"] = v.scope;
  if (!v.note.empty()) j["note"] = v.note;
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

Json to_json(const PairStatus& e) {
  Json j{{"class", to_json(e.spec)},
         {"rep", e.rep ? to_json(*e.rep) : Json(nullptr)},
         {"higher_degree", e.higher_degree},
         {"status", to_string(e.status)},
         {"reason", to_string(e.reason)},
         {"tag", e.tag},
         {"detail", e.detail}};
  if (e.witness) j["witness"] = to_json(*e.witness);
  if (e.triple) j["triple"] = to_json(*e.triple);
  return j;
}

Json to_json(const Census& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries)
    entries.push_back(Json{{"name", e.name}, {"size", e.size}, {"count", e.count}});
  return Json{{"rack_size", c.rack_size},
              {"base_point", c.base_point},
              {"pairs", c.pairs},
              {"whole_rack", c.whole_rack},
              {"entries", entries}};
}

Json to_json(const CocycleCheck& c) {
  Json j{{"ok", c.ok}, {"message", c.message}};
  if (c.triple) j["triple"] = *c.triple;
  return j;
}

Json to_json(const BraidCheck& c) {
  Json j{{"ok", c.ok}, {"message", c.message}};
  if (c.basis) j["basis"] = *c.basis;
  return j;
}

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(source + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace rackd::io
