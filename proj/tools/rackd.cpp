// rackd: classification runs, certificates, censuses, cocycle checks and the
// collapse tables.
//
// Exit codes: 0 success, 1 usage or input error, 2 a certificate or cocycle
// failed verification, 3 a verdict is UNKNOWN.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "rackd/error.hpp"
#include "rackd/serialize.hpp"

using namespace rackd;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kViolation = 2;
constexpr int kUnknown = 3;

enum class Format { kText, kJson };

struct RunConfig {
  Caps caps;
  int threads = 1;
  Format format = Format::kText;
};

struct ClassArgs {
  std::string group = "S";
  int m = 0;
  std::string type;
  std::string split;
};

// "closure=N,orbit=N,subracks=N"; unknown keys are errors.
void apply_caps_env(Caps& caps) {
  const char* env = std::getenv("RACKD_CAPS");
  if (env == nullptr) return;
  std::stringstream in(env);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("RACKD_CAPS: expected key=value, got \"" + item + "\"");
    const std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoull(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error("RACKD_CAPS: bad value in \"" + item + "\"");
    }
    if (key == "closure") caps.closure = value;
    else if (key == "orbit") caps.orbit = value;
    else if (key == "subracks") caps.subracks = value;
    else throw Error("RACKD_CAPS: unknown cap \"" + key + "\"");
  }
}

ConjClassSpec to_spec(const ClassArgs& a) {
  if (a.type.empty()) throw Error("--type is required");
  const CycleType type = CycleType::parse(a.type);
  const int m = a.m == 0 ? type.degree() : a.m;
  if (type.degree() != m) {
    throw Error("type " + type.to_string() + " has degree " + std::to_string(type.degree()) +
                ", not m = " + std::to_string(m));
  }
  Ambient amb;
  if (a.group == "S") amb = Ambient::kSym;
  else if (a.group == "A") amb = Ambient::kAlt;
  else throw Error("--group must be S or A");
  std::optional<SplitPart> split;
  if (a.split == "plus") split = SplitPart::kPlus;
  else if (a.split == "minus") split = SplitPart::kMinus;
  else if (!a.split.empty()) throw Error("--split must be plus or minus");
  if (split && !(amb == Ambient::kAlt && splits_in_Am(type)))
    throw Error("--split applies only to split classes of A_m");
  ConjClassSpec spec = make_spec(amb, type, split);
  spec.validate();
  return spec;
}

Ambient to_ambient(const std::string& g) {
  if (g == "S") return Ambient::kSym;
  if (g == "A") return Ambient::kAlt;
  throw Error("--group must be S or A");
}

// "7" or "5..10".
std::pair<int, int> to_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const int m = std::stoi(text);
      return {m, m};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error("--m must be an integer or a range a..b, got \"" + text + "\"");
  }
}

Json caps_json(const Caps& c) {
  return Json{{"closure", c.closure}, {"orbit", c.orbit}, {"subracks", c.subracks}};
}

void emit(const RunConfig& cfg, const std::string& schema, Json body, const std::string& text) {
  if (cfg.format == Format::kJson) {
    body["caps"] = caps_json(cfg.caps);
    std::cout << io::stamp(schema, std::move(body)).dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

std::string witness_text(const TypeDWitness& w) {
  std::ostringstream o;
  o << "  provenance " << w.provenance << "\n"
    << "  r = " << w.r.to_string() << ", s = " << w.s.to_string() << "\n"
    << "  |R| = " << w.R.size() << ", |S| = " << w.S.size() << "\n";
  if (!w.note.empty()) o << "  " << w.note << "\n";
  return o.str();
}

// Runs classify over specs on a worker pool; results keep the input order.
void warm(Classifier& cl, const std::vector<ConjClassSpec>& specs, int threads) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(specs.size());
  auto work = [&] {
    for (std::size_t i; (i = next++) < specs.size();) {
      try {
        cl.classify(specs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int cmd_classify(const RunConfig& cfg, const ClassArgs& a, const std::string& out) {
  const ConjClassSpec spec = to_spec(a);
  const Verdict v = classify(spec, cfg.caps);
  Json body{{"class", io::to_json(spec)}, {"verdict", io::to_json(v)}};
  std::ostringstream t;
  t << spec.to_string() << ": " << to_string(v.status);
  if (!v.tag.empty()) t << "(" << v.tag << ")";
  t << "\n";
  if (v.witness) t << witness_text(*v.witness);
  if (!v.scope.empty()) t << "  " << v.scope << "\n";
  if (!v.note.empty()) t << "  " << v.note << "\n";
  if (!out.empty()) {
    if (!v.witness) throw Error("--out needs a TYPE_D verdict");
    write_file(out, io::stamp("rackd-witness", io::to_json(*v.witness)));
  }
  emit(cfg, "rackd-classify", std::move(body), t.str());
  return v.status == VerdictStatus::kUnknown ? kUnknown : kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& path) {
  const Json doc = io::parse(read_file(path), path);
  const auto schema = doc.is_object() && doc.contains("schema") ? doc["schema"].get<std::string>() : "";
  bool ok = false;
  Json body;
  std::ostringstream t;
  if (schema == "rackd-witness") {
    io::expect_schema(doc, schema);
    const TypeDWitness w = io::witness_from_json(doc);
    const WitnessCheck c = check_witness(w);
    ok = c.ok;
    body = Json{{"kind", "witness"}, {"class", io::to_json(w.ambient)}, {"checks", io::to_json(c)}};
    t << path << ": type D witness in " << w.ambient.to_string() << ": "
      << (ok ? "verified" : "VIOLATION: " + c.violation) << "\n";
  } else if (schema == "rackd-triple") {
    io::expect_schema(doc, schema);
    CommutingTriple tr;
    tr.ambient = io::spec_from_json(doc.at("ambient"));
    const int m = tr.ambient.m;
    for (int i = 0; i < 3; ++i) tr.sigma[i] = io::perm_from_json(doc.at("sigma").at(i), m);
    tr.g2 = io::perm_from_json(doc.at("g2"), m);
    tr.g3 = io::perm_from_json(doc.at("g3"), m);
    tr.h = doc.at("h").get<int>();
    tr.provenance = doc.value("provenance", "");
    const auto v = triangle_verdict(tr);
    ok = v.status == TriangleStatus::kInfiniteAllReps;
    body = Json{{"kind", "triple"}, {"class", io::to_json(tr.ambient)}, {"verdict", to_string(v.status)},
                {"reason", v.reason}};
    t << path << ": commuting triple in " << tr.ambient.to_string() << ": "
      << (ok ? "verified, " + std::string(to_string(v.status)) : "VIOLATION: " + v.reason) << "\n";
  } else {
    throw Error(path + ": expected schema rackd-witness or rackd-triple");
  }
  body["ok"] = ok;
  emit(cfg, "rackd-verify", std::move(body), t.str());
  return ok ? kOk : kViolation;
}

int cmd_census(const RunConfig& cfg, const ClassArgs& a, const std::string& rack_name) {
  FiniteRack r;
  Json body;
  std::string title;
  if (!rack_name.empty()) {
    r = catalog_rack(rack_name);
    body["rack"] = rack_name;
    title = rack_name;
  } else {
    const ConjClassSpec spec = to_spec(a);
    auto cr = class_rack(spec, cfg.caps.orbit);
    if (!cr) throw Error(spec.to_string() + " exceeds the orbit cap");
    r = std::move(*cr);
    body["class"] = io::to_json(spec);
    title = spec.to_string();
  }
  const Census c = two_generated_census(r, cfg.caps.orbit);
  body["census"] = io::to_json(c);
  std::ostringstream t;
  t << title << ": " << c.rack_size << " elements, " << c.pairs << " pairs from element "
    << c.base_point << ", " << c.whole_rack << " generate everything\n";
  for (const auto& e : c.entries) t << "  " << e.name << " (size " << e.size << "): " << e.count << "\n";
  emit(cfg, "rackd-census", std::move(body), t.str());
  return kOk;
}

std::string entry_text(const PairStatus& e) {
  std::ostringstream o;
  o << "  " << e.spec.to_string() << "  ";
  if (e.rep) o << e.rep->to_string();
  else if (e.higher_degree) o << "deg ρ > 1";
  else o << "every ρ";
  o << "  " << to_string(e.status);
  if (e.status == PairVerdict::kKilled) o << " " << to_string(e.reason);
  if (!e.tag.empty()) o << " " << e.tag;
  if (!e.detail.empty()) o << "  (" << e.detail << ")";
  o << "\n";
  return o.str();
}

int cmd_table(const RunConfig& cfg, const std::string& group, const std::string& range) {
  const Ambient amb = to_ambient(group);
  const auto [lo, hi] = to_range(range);
  if (lo < 5 || hi < lo) throw Error("--m range must satisfy 5 <= a <= b");
  Classifier cl(cfg.caps);
  std::vector<ConjClassSpec> specs;
  for (int m = lo; m <= hi; ++m)
    for (const auto& s : all_classes(m, amb))
      if (!s.type.is_identity()) specs.push_back(s);
  warm(cl, specs, cfg.threads);
  Json tables = Json::array();
  std::ostringstream t;
  bool open = false;
  for (int m = lo; m <= hi; ++m) {
    const auto table = theorem_tables(m, amb, cl);
    Json entries = Json::array();
    t << (amb == Ambient::kSym ? "S_" : "A_") << m << "\n";
    for (const auto& e : table) {
      entries.push_back(io::to_json(e));
      t << entry_text(e);
      if (e.status == PairVerdict::kOpen) open = true;
    }
    const auto surv = survivors(table);
    Json sj = Json::array();
    for (const auto& e : surv) sj.push_back(io::to_json(e));
    t << "  survivors:" << (surv.empty() ? " none" : "") << "\n";
    for (const auto& e : surv) t << "  " << entry_text(e);
    tables.push_back(Json{{"m", m}, {"entries", entries}, {"survivors", sj}});
  }
  emit(cfg, "rackd-table", Json{{"group", group}, {"tables", tables}}, t.str());
  return open ? kUnknown : kOk;
}

int cmd_cocycle_check(const RunConfig& cfg, const std::string& path) {
  const Json doc = io::parse(read_file(path), path);
  io::expect_schema(doc, "rackd-cocycle");
  const Cocycle q = io::cocycle_from_json(doc);
  const auto rv = validate(q.rack());
  if (!rv.ok) throw Error(path + ": not a rack: " + rv.message);
  const CocycleCheck c = validate_cocycle(q);
  const BraidCheck b = braiding_check(q);
  const GMapReport g = g_map(q);
  Json body{{"cocycle", io::to_json(c)},
            {"braid", io::to_json(b)},
            {"agree", c.ok == b.ok},
            {"g_map", Json{{"faithful", g.faithful},
                           {"morphism", g.morphism},
                           {"group_order", g.group_order ? Json(*g.group_order) : Json(nullptr)}}}};
  std::ostringstream t;
  t << path << ": rack of size " << q.rack().size() << ", N = " << q.order() << "\n"
    << "  cocycle condition: " << (c.ok ? "holds" : "fails: " + c.message) << "\n"
    << "  braid equation: " << (b.ok ? "holds" : "fails: " + b.message) << "\n"
    << "  g map: " << (g.faithful ? "faithful" : "not faithful")
    << (g.morphism ? ", morphism" : ", not a morphism");
  if (g.group_order) t << ", |<g_x>| = " << *g.group_order;
  t << "\n";
  emit(cfg, "rackd-cocycle-check", std::move(body), t.str());
  return c.ok && b.ok ? kOk : kViolation;
}

int cmd_reps(const RunConfig& cfg, const ClassArgs& a, const std::string& yd_index,
             const std::string& out) {
  const ConjClassSpec spec = to_spec(a);
  const auto reps = enumerate_degree_one(spec.type);
  Json list = Json::array();
  std::ostringstream t;
  t << spec.to_string() << ": " << reps.size() << " degree-one representations of the centralizer\n";
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const Cyclotomic v = q_sigma_sigma(spec.type, reps[i]);
    Json j = io::to_json(reps[i]);
    j["index"] = i;
    j["q_sigma_sigma"] = v.to_string();
    list.push_back(std::move(j));
    t << "  [" << i << "] " << reps[i].to_string() << "  ρ(σ) = " << v.to_string() << "\n";
  }
  if (!yd_index.empty()) {
    const std::size_t i = std::stoul(yd_index);
    if (i >= reps.size()) throw Error("--yd index out of range");
    const Cocycle q = yd_braiding(spec, reps[i], cfg.caps.orbit);
    const Json doc = io::stamp("rackd-cocycle", io::to_json(q));
    if (out.empty()) throw Error("--yd needs --out");
    write_file(out, doc);
  }
  emit(cfg, "rackd-reps", Json{{"class", io::to_json(spec)}, {"reps", list}}, t.str());
  return kOk;
}

int cmd_triple(const RunConfig& cfg, const ClassArgs& a, const std::string& out) {
  const ConjClassSpec spec = to_spec(a);
  std::optional<CommutingTriple> tr;
  std::string reason;
  try {
    tr = a4xcr_embed(spec);
  } catch (const Error&) {
    auto s = find_triple(spec, cfg.caps.closure);
    tr = s.triple;
    reason = s.reason;
  }
  std::ostringstream t;
  Json body{{"class", io::to_json(spec)}};
  if (!tr) {
    body["triple"] = nullptr;
    body["reason"] = reason;
    t << spec.to_string() << ": no commuting triple (" << reason << ")\n";
    emit(cfg, "rackd-triple-search", std::move(body), t.str());
    return kUnknown;
  }
  const auto v = triangle_verdict(*tr);
  body["triple"] = io::to_json(*tr);
  t << spec.to_string() << ": " << to_string(v.status) << "\n"
    << "  σ1 = " << tr->sigma[0].to_string() << ", σ2 = " << tr->sigma[1].to_string()
    << ", σ3 = " << tr->sigma[2].to_string() << "\n"
    << "  g2 = " << tr->g2.to_string() << ", g3 = " << tr->g3.to_string() << ", h = " << tr->h << "\n";
  if (!out.empty()) write_file(out, io::stamp("rackd-triple", io::to_json(*tr)));
  emit(cfg, "rackd-triple-search", std::move(body), t.str());
  return v.status == TriangleStatus::kInfiniteAllReps ? kOk : kUnknown;
}

void add_class_options(CLI::App* cmd, ClassArgs& a) {
  cmd->add_option("--group", a.group, "S or A")->check(CLI::IsMember({"S", "A"}));
  cmd->add_option("--m", a.m, "degree; defaults to the degree of --type");
  cmd->add_option("--type", a.type, "cycle type, e.g. 1^2,2^2")->required();
  cmd->add_option("--split", a.split, "plus or minus, for split classes of A_m")
      ->check(CLI::IsMember({"plus", "minus"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rackd: type D certificates and collapse tables for S_m and A_m"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string format = "text";
  std::optional<std::size_t> cap_closure, cap_orbit, cap_subracks;
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--cap-closure", cap_closure, "group closure cap");
  app.add_option("--cap-orbit", cap_orbit, "orbit and class size cap");
  app.add_option("--cap-subracks", cap_subracks, "subrack enumeration cap");

  ClassArgs ca;
  std::string out, path, group = "S", range, rack_name, yd;
  auto* classify_cmd = app.add_subcommand("classify", "classify one conjugacy class");
  add_class_options(classify_cmd, ca);
  classify_cmd->add_option("--out", out, "write the witness certificate here");

  auto* verify_cmd = app.add_subcommand("verify", "re-verify a witness or triple certificate");
  verify_cmd->add_option("file", path)->required();

  auto* census_cmd = app.add_subcommand("census", "2-generated subracks of a class or catalog rack");
  census_cmd->add_option("--group", ca.group)->check(CLI::IsMember({"S", "A"}));
  census_cmd->add_option("--m", ca.m);
  census_cmd->add_option("--type", ca.type);
  census_cmd->add_option("--split", ca.split)->check(CLI::IsMember({"plus", "minus"}));
  census_cmd->add_option("--rack", rack_name, "catalog rack name instead of a class");

  auto* table_cmd = app.add_subcommand("table", "collapse table for every class");
  table_cmd->add_option("--group", group)->check(CLI::IsMember({"S", "A"}));
  table_cmd->add_option("--m", range, "degree or range a..b")->required();

  auto* cocycle_cmd = app.add_subcommand("cocycle-check", "check a cocycle file");
  cocycle_cmd->add_option("file", path)->required();

  auto* reps_cmd = app.add_subcommand("reps", "degree-one representations of a centralizer");
  add_class_options(reps_cmd, ca);
  reps_cmd->add_option("--yd", yd, "index of a representation; writes its braiding cocycle");
  reps_cmd->add_option("--out", out, "cocycle output file");

  auto* triple_cmd = app.add_subcommand("triple", "commuting triple for a class");
  add_class_options(triple_cmd, ca);
  triple_cmd->add_option("--out", out, "write the triple certificate here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    apply_caps_env(cfg.caps);
    if (cap_closure) cfg.caps.closure = *cap_closure;
    if (cap_orbit) cfg.caps.orbit = *cap_orbit;
    if (cap_subracks) cfg.caps.subracks = *cap_subracks;
    cfg.format = format == "json" ? Format::kJson : Format::kText;

    if (classify_cmd->parsed()) return cmd_classify(cfg, ca, out);
    if (verify_cmd->parsed()) return cmd_verify(cfg, path);
    if (census_cmd->parsed()) return cmd_census(cfg, ca, rack_name);
    if (table_cmd->parsed()) return cmd_table(cfg, group, range);
    if (cocycle_cmd->parsed()) return cmd_cocycle_check(cfg, path);
    if (reps_cmd->parsed()) return cmd_reps(cfg, ca, yd, out);
    if (triple_cmd->parsed()) return cmd_triple(cfg, ca, out);
  } catch (const Error& e) {
    std::cerr << "rackd: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "rackd: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
