#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "heatjet/halfline.hpp"
#include "heatjet/weil.hpp"

namespace heatjet {

using nlohmann::json;

inline json to_json(const MultiIndex& a) { return json(a.exponents()); }

inline json to_json(const TruncatedPoly& p) {
    json terms = json::array();
    for (const auto& [a, v] : p.terms()) terms.push_back({{"alpha", a.exponents()}, {"c", v}});
    return {{"vars", p.vars()}, {"order", p.trunc_order()}, {"terms", terms}};
}

inline TruncatedPoly poly_from_json(const json& j) {
    TruncatedPoly p(j.at("vars").get<int>(), j.at("order").get<int>());
    for (const auto& t : j.at("terms")) {
        MultiIndex a(t.at("alpha").get<std::vector<int>>());
        p.set_coefficient(a, t.at("c").get<double>());
    }
    return p;
}

inline json to_json(const WeilAlgebra& w) {
    json gens = json::array();
    for (const auto& g : w.generators()) gens.push_back(to_json(g));
    json basis = json::array();
    for (const auto& b : w.basis()) basis.push_back({{"alpha", b.exponents()}, {"name", b.str()}});
    json pivots = json::array();
    for (const auto& p : w.pivots()) pivots.push_back({{"alpha", p.exponents()}, {"name", p.str()}});
    json rows = json::array();
    for (const auto& r : w.ideal_rows()) rows.push_back(to_json(r));
    json ops = json::array();
    for (const auto& d : w.dual_ops()) {
        json terms = json::array();
        for (const auto& t : d.terms()) terms.push_back({{"alpha", t.alpha.exponents()}, {"w", t.weight}});
        ops.push_back(terms);
    }
    json table = json::array();
    for (int i = 0; i < w.dim(); ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < w.dim(); ++j2) {
            auto span = w.table(i, j2);
            row.push_back(std::vector<double>(span.begin(), span.end()));
        }
        table.push_back(row);
    }
    return {{"schema", "heatjet/weil-algebra/1"},
            {"vars", w.vars()},
            {"order", w.trunc_order()},
            {"generators", gens},
            {"dimension", w.dim()},
            {"basis", basis},
            {"pivots", pivots},
            {"ideal_rows", rows},
            {"dual_ops", ops},
            {"mult_table", table}};
}

/// Rebuilds the algebra from (vars, order, generators); the construction is
/// deterministic, so derived data is recomputed rather than trusted.
inline std::shared_ptr<const WeilAlgebra> algebra_from_json(const json& j) {
    std::vector<TruncatedPoly> gens;
    for (const auto& g : j.at("generators")) gens.push_back(poly_from_json(g));
    auto w = WeilAlgebra::build(j.at("vars").get<int>(), j.at("order").get<int>(), std::move(gens));
    if (j.contains("dimension") && j.at("dimension").get<int>() != w->dim())
        throw std::runtime_error("algebra_from_json: dimension mismatch against stored value");
    return w;
}

inline json to_json(const WeilElement& e) {
    return {{"schema", "heatjet/weil-element/1"},
            {"vars", e.algebra()->vars()},
            {"order", e.algebra()->trunc_order()},
            {"coords", e.coords()}};
}

inline WeilElement element_from_json(const json& j, std::shared_ptr<const WeilAlgebra> w) {
    if (j.at("vars").get<int>() != w->vars() || j.at("order").get<int>() != w->trunc_order())
        throw std::runtime_error("element_from_json: algebra shape mismatch");
    return WeilElement(std::move(w), j.at("coords").get<std::vector<double>>());
}

inline json to_json(const LimitEstimate& e) {
    return {{"k", e.k},       {"value", e.value},   {"error", e.error},
            {"diverged", e.diverged}, {"ts", e.ts}, {"ladder", e.ladder}};
}

inline json to_json(const SmoothnessReport& r) {
    json seeley = json::array();
    for (const auto& e : r.seeley) seeley.push_back(to_json(e));
    json orders = json::array();
    for (const auto& o : r.square.per_order)
        orders.push_back({{"k", o.k},
                          {"limit", o.limit.limit},
                          {"error", o.limit.error},
                          {"diverged", o.limit.diverged},
                          {"defect", o.defect}});
    return {{"schema", "heatjet/smoothness-report/1"},
            {"order", r.order},
            {"square_smooth", r.square.square_smooth},
            {"max_defect", r.square.max_defect},
            {"eval_failure", r.square.eval_failure},
            {"square_orders", orders},
            {"seeley_smooth", r.is_seeley_smooth},
            {"seeley_limits", seeley},
            {"extended", r.extended},
            {"derivative_crosscheck", r.derivative_crosscheck}};
}

}  // namespace heatjet
