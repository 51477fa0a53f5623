#include <cmath>

#include "webcurv/report.hpp"

namespace webcurv {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const CurvatureReport& r) {
    return json{{"F", format(r.F)}, {"K_base", format(r.K_base)}, {"gauge_exponent", r.gauge_exponent}};
}

json to_json(const FlatnessVerdict& v) {
    json j{{"tag", to_string(v.tag)}};
    if (v.witness) {
        j["witness"] = json::array({v.witness->x, v.witness->y});
        j["value"] = number(v.value);
    }
    return j;
}

json to_json(const EquivalenceVerdict& v) {
    json j{{"verdict", to_string(v.tag)}, {"first", to_json(v.first)}, {"second", to_json(v.second)}};
    if (v.tag == Equivalence::not_equivalent) j["flat_side"] = v.flat_side;
    return j;
}

json to_json(const DiffeoCheckReport& r) {
    return json{{"jacobian_ok", r.jacobian_ok},
                {"dev", json::array({number(r.dev[0]), number(r.dev[1]), number(r.dev[2])})},
                {"tol", r.tol},
                {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const TransportReport& r) {
    json orientations = json::array();
    for (const auto& o : r.orientations) {
        json j{{"label", o.label}, {"from", o.from}, {"to", o.to}};
        if (o.report) j["report"] = to_json(*o.report);
        if (!o.error.empty()) j["error"] = o.error;
        orientations.push_back(std::move(j));
    }
    return json{{"orientations", orientations},
                {"inverse_roundtrip_max", number(r.inverse_roundtrip_max)},
                {"jacobian_at_2_1", number(r.jacobian_at_2_1)}};
}

}  // namespace webcurv
