#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "modlie/algebroid.hpp"
#include "modlie/cech.hpp"
#include "modlie/groupoid.hpp"
#include "modlie/quadrature.hpp"

namespace modlie {

using Json = nlohmann::json;

// Parse failures and schema violations throw ParseError; semantic problems in
// well-formed data (bad shapes, inconsistent charts) still throw DomainError.

Json loadJsonFile(const std::string& path);

// Member access that reports missing fields as schema errors.
const Json& jsonField(const Json& j, const char* name);

mpq_class rationalFromJson(const Json& j);       // integer or "p/q" string
Json rationalToJson(const mpq_class& q);

std::vector<mpq_class> pointFromJson(const Json& j);

ChartPtr chartFromJson(const Json& j);           // array of variable names
RatExpr exprFromJson(const ChartPtr& chart, const Json& j);
std::vector<RatExpr> exprListFromJson(const ChartPtr& chart, const Json& j);

// {"chart": [...], "rank": r, "anchor": [[...]...],
//  "brackets": {"a,b": [...coefficients of [e_a, e_b]...]}}   (1-based keys;
// omitted pairs are zero, mirror pairs are filled by antisymmetry)
LieAlgebroid algebroidFromJson(const Json& j);

// {"kind": "pair" | "discrete-action" | "lie-action", "chart": [...], ...}
//   discrete-action: "generators": [{"name", "map": [...], "inverse": [...]}]
//   lie-action: "group": {"coords": [...], "mul": [...], "inv": [...]},
//               "action": [...]; mul uses the "_r" suffix for its right factor
GroupoidModel modelFromJson(const Json& j);

// {"pieces": [{"name", "box": [[lo|null, hi|null] per coordinate] (optional),
//              "basePoints": [[...], ...]}]}
CoverDecl coverFromJson(const ChartPtr& chart, const Json& j);

// {"nodes": ["U", ...], "edges": [[from, to, +1|-1], ...]}
ParityGraph graphFromJson(const Json& j);

// {"m": int, "eps": 0|1} or one of "density", "orientation", "top-dual"
Character characterFromJson(const Json& j);

// [{"generator": name or 1-based index, "groupPoint": [...], "basePoint": [...]}]
std::vector<IsotropyArrow> candidatesFromJson(const GroupoidModel& model, const Json& j);

std::vector<Interval> boxFromJson(const Json& j); // [[lo, hi] per coordinate]

// --- report serialization -------------------------------------------------------

Json toJson(const AlgebroidReport& r);
Json toJson(const Cochain1& omega);
Json toJson(const LogSum& s);
Json toJson(const AdditiveValue& v);
Json toJson(const FormalScalar& s);
Json toJson(const FixedPointCertificate& c);
Json toJson(const ParityGraph& g);
Json toJson(const OrientationDecision& d);
Json toJson(const ModEvidence& e);
Json toJson(const VolumeFormReport& r);

const char* trileanLabel(Trilean t);

} // namespace modlie
