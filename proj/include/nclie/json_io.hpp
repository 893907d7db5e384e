#ifndef NCLIE_JSON_IO_HPP
#define NCLIE_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "nclie/lie_algebra.hpp"
#include "nclie/ncfunc.hpp"
#include "nclie/pbw.hpp"
#include "nclie/reps.hpp"
#include "nclie/sheaf.hpp"

namespace nclie {

using Json = nlohmann::json;

/// Algebra file format:
/// {"dim": m, "mode": "real"|"complex", "basis": [names],
///  "brackets": [{"i":1, "j":2, "c": {"2": "1"}}]}
/// with scalars as rational strings; omitted pairs mean zero bracket.
Json algebra_to_json(const LieAlgebra& L);
LiePtr algebra_from_json(const Json& j);
LiePtr load_algebra(const std::string& path);

/// Element JSON mirror: {"algebra": ..., "terms": [{"exp": [...], "c": "p/q"}]}
Json element_to_json(const UEAElement& a);
UEAElement element_from_json(LiePtr L, const Json& j);

/// Truncated element: {"split": k, "N": n, "terms": [{"beta": [...],
/// "poly": {...} | "opaque"}]}
Json ncelement_to_json(const NCFunctionElement& a);
NCFunctionElement ncelement_from_json(LiePtr L, const Json& j);

Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

/// Representation: {"dim": d, "matrices": [[...row-major rational strings...]],
/// "nilpotent_image": bool, "label": ...}
Json representation_to_json(const Representation& r);

Json region_to_json(const OpenRegion& r);
OpenRegion region_from_json(const Json& j);

Json box_to_json(const CompactBox& b);
CompactBox box_from_json(const Json& j);

}  // namespace nclie

#endif
