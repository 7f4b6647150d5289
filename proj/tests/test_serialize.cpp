#include "doctest.h"
#include "rackd/error.hpp"
#include "rackd/serialize.hpp"

using namespace rackd;
using io::Json;

namespace {

bool same_values(const Cocycle& a, const Cocycle& b) {
  return a.order() == b.order() && a.degrees() == b.degrees() && a.parts() == b.parts() &&
         a.values() == b.values() && a.rack().table() == b.rack().table();
}

}  // namespace

TEST_CASE("class specs") {
  for (int m = 3; m <= 7; ++m)
    for (auto amb : {Ambient::kSym, Ambient::kAlt})
      for (const auto& s : all_classes(m, amb)) CHECK(io::spec_from_json(io::to_json(s)) == s);
  CHECK_THROWS_AS(io::spec_from_json(Json{{"m", 5}, {"type", "2,4"}, {"group", "S"}}), Error);
  CHECK_THROWS_AS(io::spec_from_json(Json{{"m", 5}, {"type", "5"}, {"group", "B"}}), Error);
  CHECK_THROWS_AS(io::spec_from_json(Json{{"m", 5}, {"group", "S"}}), Error);
}

TEST_CASE("witness round trip") {
  for (const char* type : {"2,4", "1,2,3", "1^2,4"}) {
    auto v = classify(make_spec(Ambient::kSym, CycleType::parse(type)));
    REQUIRE(v.witness);
    const Json doc = io::stamp("rackd-witness", io::to_json(*v.witness));
    CHECK(doc["checks"]["ok"] == true);
    const Json again = io::parse(doc.dump(), "memory");
    io::expect_schema(again, "rackd-witness");
    auto w = io::witness_from_json(again);
    CHECK(w.R == v.witness->R);
    CHECK(w.S == v.witness->S);
    CHECK(w.r == v.witness->r);
    CHECK(check_witness(w).ok);
    CHECK(io::to_json(w).dump() == io::to_json(*v.witness).dump());
  }
  Json bad = io::to_json(*classify(make_spec(Ambient::kSym, CycleType::parse("2,4"))).witness);
  bad["R"][2] = "(1 9)";
  CHECK_THROWS_WITH_AS(io::witness_from_json(bad), doctest::Contains("R[2]"), Error);
  CHECK_THROWS_AS(io::expect_schema(Json{{"schema", "rackd-witness"}, {"version", 2}}, "rackd-witness"),
                  Error);
}

TEST_CASE("racks and cocycles") {
  for (const auto& name : catalog_names()) {
    if (name.find(':') != std::string::npos || name == "D_n") continue;
    auto r = catalog_rack(name);
    CHECK(io::rack_from_json(io::to_json(r)).table() == r.table());
    CHECK(io::rack_from_json(Json(name)).table() == r.table());
  }
  auto spec = make_spec(Ambient::kSym, CycleType::parse("1^2,2"));
  for (const auto& rep : enumerate_degree_one(spec.type)) {
    auto q = yd_braiding(spec, rep);
    const Json j = io::to_json(q);
    CHECK(j["entries"][0][0].is_number_integer());
    CHECK(same_values(io::cocycle_from_json(j), q));
  }
  // Matrix-valued, non-principal.
  auto X = catalog_rack("D_4");
  const auto parts = decompose(X);
  REQUIRE(parts.size() == 2);
  std::vector<int> part(X.size());
  for (int i = 0; i < 2; ++i)
    for (int x : parts[i]) part[x] = i;
  std::vector<CycloMatrix> vals;
  for (int x = 0; x < X.size(); ++x)
    for (int z = 0; z < X.size(); ++z)
      vals.push_back(part[z] == 0 ? CycloMatrix::scalar(Cyclotomic::root(3, x + z), 1)
                                  : CycloMatrix(3, 2, {Cyclotomic(3, 0), Cyclotomic::root(3, 1),
                                                       Cyclotomic(3, 1), Cyclotomic(3, 2)}));
  auto q = Cocycle::non_principal(X, 3, part, {1, 2}, vals);
  const Json j = io::to_json(q);
  CHECK(j["entries"][0][0].is_array());
  CHECK(same_values(io::cocycle_from_json(io::parse(j.dump(), "memory")), q));
  Json bad = j;
  bad["entries"][1].erase(0);
  CHECK_THROWS_WITH_AS(io::cocycle_from_json(bad), doctest::Contains("entries[1]"), Error);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_WITH_AS(io::parse("{\"a\": [1, 2,", "in.json"), doctest::Contains("in.json: byte"),
                       Error);
}

TEST_CASE("coefficient input is reduced") {
  // ζ_3^2 = -1 - ζ_3.
  CHECK(io::cyclotomic_from_json(Json::array({0, 0, 1}), 3) == Cyclotomic::root(3, 2));
  CHECK(io::cyclotomic_from_json(Json(5), 4) == Cyclotomic(4, 5));
}
