#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "km/affine.hpp"
#include "km/geometry.hpp"
#include "km/group.hpp"
#include "km/heisenberg.hpp"
#include "km/tame.hpp"

namespace km::io {

using nlohmann::json;

// Scalars are [re, im]. Exact parts are written as "p/q" strings; on input an
// exact part may be a "p/q" string or a JSON number (converted exactly).
json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, Backend b, const std::string& pointer);

// {"<degree>": [re, im], ...}
json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const json& j, Backend b, const std::string& pointer);

json to_json(const Loop& l);
Loop loop_from_json(const json& j, Backend b, int dim, const std::string& pointer);

// {"loop": [...], "c": Scalar, "d": Scalar}; c and d default to 0.
json to_json(const KMElement& x);
KMElement km_from_json(const json& j, Backend b, int dim, const std::string& pointer);

// {"q": Scalar, "lam": [...], "central": Scalar}
json to_json(const GroupElement& g);
GroupElement group_from_json(const json& j, Backend b, int dim, const std::string& pointer);

// {"dim", "c", "B", "kind", "blocks"}; a string is read as a preset name.
json to_json(const BaseAlgebra& alg);
BaseAlgebra base_algebra_from_json(const json& j, const std::string& pointer);

json to_json(const OsakaReport& r);
json to_json(const MetricIndex& m);
json to_json(const IsoCertificate& c);
json to_json(const L1LinfCertificate& c);
json to_json(const TameFit& f);

/// FNV-1a 64-bit hash, hex encoded with a "fnv1a64:" prefix.
std::string provenance_hash(const std::string& text);

/// One JSON object per line: {"t": t, "g": GroupElement} along the geodesic of x.
std::string trajectory_jsonl(const BaseAlgebra& alg, const KMElement& x,
                             const std::vector<Scalar>& times);

/// Fetches a required member, throwing SchemaError with its pointer.
const json& require(const json& j, const std::string& key, const std::string& pointer);

}  // namespace km::io
