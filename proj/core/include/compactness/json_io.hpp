#pragma once

// JSON readers and writers for every module's inputs and reports. Scalars are
// written as strings ("num/den" or "k mod p"); readers also accept integers.
// Every reader throws InvalidInput on malformed documents.

#include <nlohmann/json.hpp>

#include "compactness/combinatorics.hpp"
#include "compactness/convex_geometry.hpp"
#include "compactness/linear_systems.hpp"
#include "compactness/polynomial_finite.hpp"
#include "compactness/sequence_spaces.hpp"

namespace compactness::json_io {

using nlohmann::json;

Scalar scalar_from_json(const json& j, Field field);
json to_json(const Scalar& s);
json to_json(std::span<const Scalar> v);

LinearSystem system_from_json(const json& j);
json to_json(const LinearSystem& s);
json to_json(const Certificate& c);
json to_json(const HellyNumberReport& r);

/// {"ring", "terms"} for one polynomial or {"ring", "polynomials": [{"terms"}]}.
std::vector<FinitePolynomial> polynomials_from_json(const json& j);
json to_json(const FinitePolynomial& f);
json to_json(const RingAssignment& a);
json to_json(const AbianReport& r);
json to_json(const SatisfiabilityReport& r);

/// {"dim": n, "points": [[...], ...]}
PointSet point_set_from_json(const json& j);
json to_json(const RadonPartition& r);
HPolytope polytope_from_json(const json& j);
json to_json(const HPolytope& k);
/// {"dim": n, "family": [polytope, ...]}
std::vector<HPolytope> family_from_json(const json& j, std::size_t& dim);
json to_json(const HellyReport& r);

/// {"p" | "q", "rows", "rhs", "M"?}; at least one exponent is required.
TruncatedSystem truncated_system_from_json(const json& j);
json to_json(const MinNormResult& r);
json to_json(const BlowupRow& r);
json to_json(const BoundedScanReport& r);
/// {"degree", "p" | "q", "M", "coeffs": [[[a_ij1, ...], ...], ...], "rhs"}
SeparablePolySystem separable_from_json(const json& j);
json to_json(const SeparableResult& r);

/// {"vertices": n | [labels], "edges": [[u, v], ...]}; edges name vertices by
/// label when a label list is given.
FiniteGraph graph_from_json(const json& j);
json coloring_to_json(const FiniteGraph& g, const Coloring& c);
/// {"domains": [[int, ...], ...], "choices": [{"subset": [i, ...], "values": [...]}]}
ChoiceInstance choice_instance_from_json(const json& j);
/// {"domains": [[label, ...], ...]}; labels may be strings or integers.
std::vector<std::vector<std::string>> string_domains_from_json(const json& j);
json to_json(const InjectiveChoiceResult& r);

json error_to_json(std::string_view kind, std::string_view message);

}  // namespace compactness::json_io
