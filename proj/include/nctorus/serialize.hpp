#ifndef NCTORUS_SERIALIZE_HPP
#define NCTORUS_SERIALIZE_HPP

#include <json.hpp>
#include <string>

#include "nctorus/element.hpp"
#include "nctorus/geometry.hpp"

namespace nct {

using Json = nlohmann::ordered_json;

// {"theta": t, "coeffs": [[m, n, re, im], ...]} sorted lexicographically by
// (m, n); the interchange format for the CLI and golden files.
Json element_to_json(const TorusElement& a);
TorusElement element_from_json(const Json& j);

// Element expression: one of
//   {"coeffs": [[m, n, re, im], ...]}
//   {"circle": {"j": 1, "K": 2, "samples": [positive...]}}
//   {"scalar": x}                       (x * 1)
//   {"inverse_of": <expression>}        (Newton inverse at the given tol)
TorusElement parse_element_expr(const Json& j, double theta, double tol,
                                TruncationPolicy& policy, int oracle_q = 101);

// {"kind": "flat"|"diagonal"|"conformal"|"general", "a1":..., "a2":...,
//  "h":..., "g": [[...4 exprs...]]}
Metric parse_metric_spec(const Json& j, double theta, double tol,
                         TruncationPolicy& policy, int oracle_q = 101);

}  // namespace nct

#endif
