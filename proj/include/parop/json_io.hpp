#pragma once

#include <string>

#include <json.hpp>

#include "parop/bundle.hpp"
#include "parop/curve.hpp"
#include "parop/fuchsian.hpp"
#include "parop/orbifold.hpp"

namespace parop {

// Field order is part of the output contract, hence ordered_json throughout.
using Json = nlohmann::ordered_json;

// {"genus": g, "points": [{"label": "x1", "level": 5, "coordinate": [re, im]?}, ...]}
Json curve_to_json(const MarkedCurve& curve);
CurvePtr curve_from_json(const Json& j);

// {"rank": r, "degree": d, "weights": {"x1": ["3/5", "2/5"], ...}} with weights descending
// and points in curve order.
Json bundle_to_json(const LocallyAbelianBundle& v);
LocallyAbelianBundle bundle_from_json(const Json& j, CurvePtr curve);

// {"rank": r, "punctures": [{"coordinate": [re, im], "residue": [[[re, im], ...], ...]}]}
// Residue entries also parse from plain numbers and "a/b" strings.
Json system_to_json(const FuchsianSystem& sys);
FuchsianSystem system_from_json(const Json& j);

// {"order": r, "coefficients": [{"num": ["a/b", ...], "den": [...]}, ...]}, ascending
// polynomial coefficients.
Json operator_to_json(const MonicOperator& op);
MonicOperator operator_from_json(const Json& j);

Json oracle_expr_to_json(const OracleExpr& e);

Json load_json_file(const std::string& path);

} // namespace parop
