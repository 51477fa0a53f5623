#ifndef WEBCURV_REPORT_HPP
#define WEBCURV_REPORT_HPP

#include <json.hpp>

#include "webcurv/equiv.hpp"

namespace webcurv {

// JSON views of the analysis results. Non-finite numbers serialize as null.

/// {"F": text, "K_base": text, "gauge_exponent": 2}
nlohmann::json to_json(const CurvatureReport& r);

/// {"tag": "Flat"|"NonFlat"|"Undetermined", "witness": [x, y], "value": K}
nlohmann::json to_json(const FlatnessVerdict& v);

/// {"verdict": tag, "flat_side": n, "first": ..., "second": ...}
nlohmann::json to_json(const EquivalenceVerdict& v);

/// {"jacobian_ok": bool, "dev": [d1, d2, d3], "tol": t, "verdict": "pass"|"fail"}
nlohmann::json to_json(const DiffeoCheckReport& r);

nlohmann::json to_json(const TransportReport& r);

}  // namespace webcurv

#endif
