#pragma once

#include <json.hpp>

#include "weightlab/catalog.hpp"
#include "weightlab/norms.hpp"
#include "weightlab/numeric_check.hpp"
#include "weightlab/setting.hpp"

namespace weightlab {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::ordered_json;

inline json to_json(const Setting& s) {
    return json{{"n", s.n()},
                {"alpha", s.alpha().str()},
                {"delta", s.delta().str()},
                {"m", s.m()},
                {"eta", s.eta().str()},
                {"r", s.r().str()},
                {"delta_tilde", s.delta_tilde().str()},
                {"alpha_tilde", s.alpha_tilde().str()},
                {"r_conj", s.r_conj().str()}};
}

inline json to_json(const Weight& w) {
    switch (w.kind()) {
        case Weight::Kind::Zero: return json{{"type", "zero"}};
        case Weight::Kind::Power:
            return json{{"type", "power"}, {"exponent", w.inner_exponent().str()}};
        case Weight::Kind::PiecewisePower:
            return json{{"type", "piecewise_power"},
                        {"inner_exponent", w.inner_exponent().str()},
                        {"outer_exponent", w.outer_exponent().str()},
                        {"break_radius", w.break_radius()}};
        case Weight::Kind::Callable:
            return json{{"type", "callable"}, {"name", w.name()}};
    }
    return json{};
}

inline json to_json(const WeightPair& p) {
    return json{{"w", to_json(p.w)}, {"v", to_json(p.v)}};
}

inline json to_json(const MembershipVerdict& v) {
    json j{{"status", verdict_status_name(v.status)},
           {"method", v.method},
           {"failing_condition", failing_condition_name(v.failing)},
           {"witness", v.witness}};
    if (v.method == "numeric") {
        j["sup_estimate"] = v.sup_estimate;
        j["plan_digest"] = v.plan_digest;
    }
    return j;
}

inline json to_json(const Ball& b) {
    json j{{"radius", b.radius}, {"n", b.n}};
    if (b.n == 1) j["center"] = b.center[0];
    else j["center"] = json::array({b.center[0], b.center[1]});
    return j;
}

inline json to_json(const OscillationReport& r) {
    return json{{"beta", r.beta},
                {"sup", r.sup},
                {"argmax_ball", to_json(r.argmax_ball)},
                {"values", r.values},
                {"plan_digest", r.plan_digest}};
}

/// Membership report as emitted by check-pair.
inline json membership_report(const WeightPair& pair, const Setting& s,
                              const MembershipVerdict& verdict) {
    return json{{"pair", to_json(pair)},
                {"setting", to_json(s)},
                {"method", verdict.method},
                {"status", verdict_status_name(verdict.status)},
                {"failing_condition", failing_condition_name(verdict.failing)},
                {"witness", verdict.witness},
                {"sup_estimate", verdict.sup_estimate},
                {"plan_digest", verdict.plan_digest}};
}

} // namespace weightlab
