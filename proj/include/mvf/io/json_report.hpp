#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "mvf/arith/interval_sum.hpp"
#include "mvf/asymptotics/prediction.hpp"
#include "mvf/constants/ramanujan.hpp"
#include "mvf/io/format.hpp"
#include "mvf/perron/perron.hpp"
#include "mvf/series/euler_form.hpp"

namespace mvf::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "mvf-report/1";

inline Json rational_json(const Rational& q) {
    return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}, {"value", to_string(q)},
            {"float", to_double(q)}};
}

inline Json discrepancy_json(const Discrepancy& d) {
    return {{"id", d.id}, {"quantity", d.quantity}, {"printed", d.printed}, {"derived", d.derived}, {"note", d.note}};
}

/// The lower end of the admissible h range is stated one way and derived another.
inline Discrepancy threshold_discrepancy() {
    return {"h_threshold_exponent", "h lower bound", "x^alpha exp((ln x)^0.1)", "x^alpha exp(C2 (ln x)^0.8)",
            "stated and derived thresholds differ; both are reported"};
}

/// Exponent flags for every function in the report (deduplicated, in order).
inline Json exponent_flags(const std::vector<MultFn>& fns) {
    Json out = Json::array();
    for (auto fn : fns)
        for (const auto& d : exponent_discrepancies(fn)) out.push_back(discrepancy_json(d));
    return out;
}

inline Json envelope(const std::string& command) { return {{"schema", schema_version}, {"command", command}}; }

inline Json to_json(const IntervalSum& s) {
    return {{"fid", std::string(tag(s.fn))}, {"function", std::string(describe(s.fn))}, {"x", s.x}, {"h", s.h},
            {"exact", rational_json(s.exact)}, {"approx", s.approx}};
}

inline Json to_json(const PiExpansion& e, bool extended) {
    Json pi = Json::array(), k = Json::array();
    for (std::size_t n = 0; n < e.Pi.size(); ++n) {
        if (extended) {
            pi.push_back(format_wide(e.Pi[n]));
            k.push_back(format_wide(e.K[n]));
        } else {
            pi.push_back(to_double(e.Pi[n]));
            k.push_back(to_double(e.K[n]));
        }
    }
    return {{"fid", e.fid}, {"a", to_string(e.a)}, {"b", to_string(e.b)}, {"Pi", pi}, {"K", k},
            {"errorBudget", e.error_budget}, {"imagMax", e.imag_max}, {"nodes", e.nodes}, {"radius", e.radius}};
}

inline Json to_json(const RamanujanA0& r) {
    return {{"product", format_wide(r.product)},
            {"product_bound", r.product_bound},
            {"euler_form", format_wide(r.euler_form)},
            {"euler_form_bound", r.euler_form_bound},
            {"difference", std::abs(to_double(r.product - r.euler_form))},
            {"prime_limit", r.prime_limit}};
}

inline Json thresholds_json(const std::optional<HThreshold>& t) {
    if (!t) return nullptr;
    return {{"theorem", t->theorem}, {"proof", t->proof}};
}

inline Json to_json(const PredictionReport& r, bool timing) {
    Json j = {{"fid", std::string(tag(r.fn))},
              {"x", r.x},
              {"h", r.h},
              {"N", r.N},
              {"exact", rational_json(r.exact)},
              {"prediction", r.prediction.value},
              {"abs_err", r.abs_err},
              {"rel_err", r.rel_err},
              {"budget", r.prediction.remainder},
              {"lagrange", r.prediction.lagrange},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"thresholds", thresholds_json(r.thresholds)}};
    if (timing) j["runtime_ms"] = r.runtime_ms;
    return j;
}

inline Json to_json(const PerronScan& sc) {
    Json rows = Json::array();
    for (const auto& r : sc.rows)
        rows.push_back({{"T", r.T},
                        {"integral", r.integral.re},
                        {"integral_imag", r.integral.im},
                        {"exact", rational_json(r.exact)},
                        {"abs_err", r.abs_err},
                        {"bound", r.bound},
                        {"ratio", r.ratio}});
    return {{"fid", std::string(tag(sc.fn))}, {"x", sc.x},          {"b", sc.b},
            {"slope", sc.slope},              {"C", sc.ratio_max},  {"decay_constant", sc.decay_constant},
            {"tail_bound", sc.tail_bound},    {"panels", sc.panels}, {"refined", sc.refined},
            {"rows", rows}};
}

inline Json to_json(const EulerForm& f, const TailReport& t) {
    Json g = Json::array();
    for (std::size_t n = 1; n <= f.order(); ++n) g.push_back(to_string(f.g[n]));
    return {{"fid", f.name},
            {"a", to_string(f.a)},
            {"b", to_string(f.b)},
            {"g", g},
            {"tail",
             {{"order", t.order},
              {"max_abs_g", t.max_abs_g},
              {"argmax", t.argmax},
              {"max_n_abs_g", t.max_n_abs_g},
              {"decay_rate", t.decay_rate},
              {"bounded_by_one", t.bounded_by_one}}}};
}

/// Two-space indented dump with a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mvf::io
