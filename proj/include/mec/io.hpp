#pragma once

#include <string>

#include <json.hpp>

#include "mec/code.hpp"

namespace mec {

// Insertion-ordered JSON keeps output byte-stable across runs.
using json = nlohmann::ordered_json;

json field_to_json(const FieldCtx& K);
FieldRef field_from_json(const json& j);

// Elements serialize as constant-first base-p digit lists.
json elem_to_json(const FieldCtx& K, const Elem& e);
Elem elem_from_json(const FieldCtx& K, const json& j);

// "O" for the point at infinity, {"x": .., "y": ..} otherwise.
json point_to_json(const FieldCtx& K, const Point& P);
Point point_from_json(const FieldCtx& K, const json& j);

json curve_to_json(const Curve& E);
Curve curve_from_json(const json& j);

// Representative coordinates live in GF(q^degree); degree > 1 rebuilds the
// tower on load.
json place_to_json(const Place& pl);
Place place_from_json(const Curve& E, const json& j);

json divisor_to_json(const Divisor& D);
Divisor divisor_from_json(const Curve& E, const json& j);

// Generators are exponent pairs against the table's (gen1, gen2) basis.
json subgroup_to_json(const GroupTable& T, const Subgroup& H);

json bound_to_json(const BoundResult& b);
json verdict_to_json(const Verdict& v, const std::string& mode);
json audit_to_json(const AuditReport& r);

json codespec_to_json(const CodeSpec& s);
CodeSpec codespec_from_json(const json& j);

// CSV: one "# {json}" header line carrying {n, k, field, provenance}, then k
// rows of n colon-joined digit entries.
std::string matrix_to_csv(const GenMatrix& M, const CodeSpec& s);
GenMatrix matrix_from_csv(const std::string& text);

}  // namespace mec
