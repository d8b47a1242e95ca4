#pragma once

// JSON and CSV renderings of the verification reports. Valuations are written
// as strings ("inf", "3/2") so that no value is ever rounded.

#include "dcap/counterexample.hpp"
#include "dcap/io.hpp"
#include "dcap/norms.hpp"
#include "dcap/rapid_decrease.hpp"
#include "dcap/symbol.hpp"

#include "json.hpp"

#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace dcap {

using Json = nlohmann::ordered_json;

inline Json to_json(const Classification& c) {
    Json j;
    j["verdict"] = to_string(c.verdict);
    j["reason"] = c.reason;
    Json a = Json::array();
    for (const auto& cert : c.path_a) a.push_back({{"r", cert.r}, {"M", cert.M.get_str()}, {"threshold", cert.threshold}});
    j["path_a"] = a;
    Json cc = Json::array();
    for (const auto& cert : c.path_c) cc.push_back({{"r", cert.r}, {"infimum", cert.infimum.get_str()}});
    j["path_c"] = cc;
    Json v = Json::array();
    for (const auto& b : c.violations)
        v.push_back({{"index", b.index.str()}, {"actual", b.actual.str()}, {"bound", b.bound.get_str()}});
    j["violations"] = v;
    if (c.witness_r) {
        j["witness_r"] = *c.witness_r;
        Json s = Json::array();
        for (const auto& x : c.witness_sequence) s.push_back(x.str());
        j["witness_sequence"] = s;
    }
    return j;
}

inline Json to_json(const ClaimReport& r) {
    Json j;
    j["scheme"] = r.scheme;
    j["claim"] = r.claim;
    Json params = Json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x;
        x["kind"] = row.kind;
        x["alpha"] = row.alpha;
        if (row.beta) x["beta"] = *row.beta;
        if (row.delta) x["delta"] = *row.delta;
        x["valuation_lhs"] = row.valuation_lhs.str();
        x["valuation_rhs"] = row.valuation_rhs.str();
        x["pass"] = row.pass;
        for (const auto& [k, v] : row.extra) x[k] = v;
        rows.push_back(std::move(x));
    }
    j["rows"] = rows;
    if (r.stabilization_index) j["stabilization_index"] = *r.stabilization_index;
    if (r.constant_C) j["C_valuation"] = r.constant_C->str();
    if (r.classification) j["classification"] = to_json(*r.classification);
    j["pass"] = r.pass;
    return j;
}

template <ValuedField F>
Json to_json(const RoundtripReport<F>& r, bool only_failures = false) {
    Json j;
    j["operator_id"] = r.operator_id;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        if (only_failures && c.pass) continue;
        checks.push_back(
            {{"index", c.index.str()}, {"expected", to_string(c.expected)}, {"got", to_string(c.got)}, {"pass", c.pass}});
    }
    j["checks"] = checks;
    j["check_count"] = r.checks.size();
    j["pass"] = r.pass;
    return j;
}

inline Json to_json(const NormBracket& b) { return {{"lower", b.lower.str()}, {"upper", b.upper.str()}}; }

inline Json to_json(const DecayReport& r) {
    Json j;
    j["n"] = r.n;
    j["operator_norm"] = to_json(r.norm_on_subdisc);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Valuation margin = row.on_subdisc - row.bound;
        rows.push_back({{"index", row.index.str()},
                        {"gauss", row.gauss.str()},
                        {"at_origin", row.at_origin.str()},
                        {"on_subdisc", row.on_subdisc.str()},
                        {"bound", row.bound.str()},
                        {"margin", margin.str()},
                        {"pass", row.pass}});
    }
    j["rows"] = rows;
    j["pass"] = r.pass;
    return j;
}

namespace detail {

inline std::string csv_cell(const Json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline void csv_table(std::ostream& os, const std::string& title, const Json& rows) {
    std::vector<std::string> cols;
    std::set<std::string> seen;
    for (const auto& row : rows)
        for (const auto& [k, v] : row.items())
            if (!v.is_structured() && seen.insert(k).second) cols.push_back(k);
    os << "# " << title << "\n";
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) os << ",";
            if (row.contains(cols[i])) os << csv_cell(row[cols[i]]);
        }
        os << "\n";
    }
}

} // namespace detail

/// Flattens every report in doc["reports"]: reports with a row list become tables, the rest key/value lines.
inline std::string to_csv(const Json& doc) {
    std::ostringstream os;
    std::size_t n = 0;
    for (const auto& rep : doc.at("reports")) {
        std::string title = rep.value("title", "report " + std::to_string(n));
        ++n;
        for (const char* key : {"rows", "checks", "brackets", "families", "failures"})
            if (rep.contains(key) && rep[key].is_array() && !rep[key].empty()) {
                detail::csv_table(os, title + " " + key, rep[key]);
            }
        os << "# " << title << " summary\nkey,value\n";
        for (const auto& [k, v] : rep.items())
            if (!v.is_structured()) os << k << "," << detail::csv_cell(v) << "\n";
    }
    os << "# overall\nkey,value\npass," << (doc.at("pass").get<bool>() ? "true" : "false") << "\n";
    return os.str();
}

} // namespace dcap
