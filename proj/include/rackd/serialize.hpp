#pragma once

#include <string>

#include "json.hpp"
#include "rackd/abelian.hpp"
#include "rackd/cocycle.hpp"
#include "rackd/rack.hpp"
#include "rackd/tables.hpp"
#include "rackd/typed.hpp"

namespace rackd::io {

using Json = nlohmann::json;

/// Every top-level document carries {"schema": name, "version": kSchemaVersion}.
/// Objects use sorted keys, so equal inputs give byte-identical output.
inline constexpr int kSchemaVersion = 1;

Json stamp(const std::string& schema, Json body);
// Throws Error unless doc is an object with this schema and a known version.
void expect_schema(const Json& doc, const std::string& schema);

Json to_json(const ConjClassSpec& spec);  // {m, type, group, split?}
ConjClassSpec spec_from_json(const Json& j);

// Cycle notation string, "()" for the identity.
Json to_json(const Permutation& p);
Permutation perm_from_json(const Json& j, int degree);

// {ambient, provenance, note, R, S, r, s, checks}
Json to_json(const TypeDWitness& w);
TypeDWitness witness_from_json(const Json& j);

// {size, table (row-major), labels?}, or a catalog name string.
Json to_json(const FiniteRack& r);
FiniteRack rack_from_json(const Json& j);

// Σ c_k ζ^k as [c_0, c_1, ...].
Json to_json(const Cyclotomic& c);
Cyclotomic cyclotomic_from_json(const Json& j, int n);

// {rack, N, degree | (degrees, parts), entries}. entries[x][z] is an integer
// k (the 1x1 matrix ζ_N^k) or a row-major list of rows of coefficient lists.
Json to_json(const Cocycle& q);
Cocycle cocycle_from_json(const Json& j);

Json to_json(const DegreeOneRep& rep);
Json to_json(const CommutingTriple& t);
Json to_json(const Verdict& v);
Json to_json(const PairStatus& e);
Json to_json(const Census& c);
Json to_json(const CocycleCheck& c);
Json to_json(const BraidCheck& c);
Json to_json(const WitnessCheck& c);

// Parses text, reporting the byte position of syntax errors.
Json parse(const std::string& text, const std::string& source);

}  // namespace rackd::io
