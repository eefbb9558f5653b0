#pragma once

// JSON encodings of orders, decompositions, measures, couplings, operations
// and reports. Every parse function throws std::invalid_argument on
// malformed input.

#include <cstddef>
#include <string>

#include "json.hpp"

#include "dtransport/coupling.hpp"
#include "dtransport/measures.hpp"
#include "dtransport/operations.hpp"
#include "dtransport/report.hpp"
#include "dtransport/verify.hpp"

namespace dtransport::io {

using nlohmann::json;

/// Coordinates are emitted as JSON integers when they fit in 64 bits and as
/// decimal strings otherwise; both forms are accepted.
json to_json(const LatticePoint& x);
LatticePoint parse_point(const json& j);

/// {"dim": n, "perm": [1-based], "signs": [+-1]}.
json to_json(const AdditiveTotalOrder& order);
AdditiveTotalOrder parse_order(const json& j);

/// {"blocks": [{"dim": d, "order": {...}}, ...]}. A block without "order"
/// gets the standard order.
json to_json(const Decomposition& d);
Decomposition parse_decomposition(const json& j);

/// {"dim": n, "atoms": [{"x": [...], "w": "p/q"}, ...]}.
json to_json(const FiniteMeasure& m);
FiniteMeasure parse_measure(const json& j);
ProbabilityMeasure parse_probability(const json& j);

/// {"dim": n, "atoms": [{"x": [...], "y": [...], "w": "p/q"}, ...]}.
json to_json(const Coupling& pi);
Coupling parse_coupling(const json& j);

/// {"kind": "midpoint" | "meet_join", "dim": n}
/// {"kind": "product", "factors": [...]}
/// {"kind": "difference_map", "dim": n, "table": [{"w": [...], "t": [...]}],
///  "default": "floor_half" | "negate" | "identity" | "zero",
///  "decomposition": {...}}   (decomposition optional, coordinatewise by default)
/// `default_dim` is used when "dim" is absent.
LatticeOperation parse_operation(const json& j, std::size_t default_dim = 1);

/// Accepts a JSON object or a bare kind name ("midpoint", "meet_join").
LatticeOperation parse_operation_text(const std::string& text, std::size_t default_dim);

/// {"alpha": "p/q", "beta": ..., "gamma": ..., "delta": ...}; missing entries are 1.
ExponentQuadruple parse_exponents(const json& j);
json to_json(const ExponentQuadruple& e);

/// [{"x": [...], "v": real}, ...].
RealFunction parse_real_function(const json& j);

/// [[...], [...]] list of points.
std::vector<LatticePoint> parse_point_list(const json& j);

json to_json(const VerificationReport& r);

Rational parse_weight(const json& j);

}  // namespace dtransport::io
