#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "moments.hpp"
#include "types.hpp"

namespace lamlog {

using ordered_json = nlohmann::ordered_json;

inline ordered_json complex_json(cplx v) {
    return ordered_json{{"re", v.real()}, {"im", v.imag()}};
}

inline ordered_json to_json(const identity_report& r) {
    return ordered_json{{"identity", r.id},
                        {"paper_ref", r.ref},
                        {"params", r.params},
                        {"lhs", complex_json(r.lhs)},
                        {"rhs", complex_json(r.rhs)},
                        {"abs_err", r.abs_err},
                        {"rel_err", r.rel_err},
                        {"pass", r.pass},
                        {"terms", r.terms},
                        {"evals", r.evals},
                        {"wall_ms", r.wall_ms}};
}

inline ordered_json to_json(const moment_report& r, const cplx* rotated = nullptr) {
    ordered_json j{{"delta", r.delta},
                   {"t_cap", r.t_cap},
                   {"value", complex_json(r.value)},
                   {"leading", complex_json(r.leading)},
                   {"residual", complex_json(r.residual)},
                   {"evals", r.evals}};
    if (rotated) j["rotated"] = complex_json(*rotated);
    return j;
}

namespace detail {

inline std::string csv_number(const ordered_json& v) {
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    return v.dump();
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline bool is_complex_cell(const ordered_json& v) {
    return v.is_object() && v.size() == 2 && v.contains("re") && v.contains("im");
}

} // namespace detail

// flattened header row: complex cells expand to key_re, key_im
inline std::string csv_header(const ordered_json& row) {
    std::string out;
    for (auto it = row.begin(); it != row.end(); ++it) {
        if (!out.empty()) out += ',';
        if (detail::is_complex_cell(it.value()))
            out += it.key() + "_re," + it.key() + "_im";
        else
            out += it.key();
    }
    return out;
}

inline std::string csv_line(const ordered_json& row) {
    std::string out;
    for (auto it = row.begin(); it != row.end(); ++it) {
        if (!out.empty()) out += ',';
        const ordered_json& v = it.value();
        if (detail::is_complex_cell(v))
            out += detail::csv_number(v["re"]) + ',' + detail::csv_number(v["im"]);
        else if (v.is_string())
            out += detail::csv_quote(v.get<std::string>());
        else
            out += detail::csv_number(v);
    }
    return out;
}

// whole-document rendering; rows must share one shape per document
inline std::string render_rows(const std::vector<ordered_json>& rows, bool as_csv) {
    if (as_csv) {
        std::string out;
        if (!rows.empty()) out = csv_header(rows.front()) + '\n';
        for (const auto& r : rows) out += csv_line(r) + '\n';
        return out;
    }
    ordered_json doc = ordered_json::array();
    for (const auto& r : rows) doc.push_back(r);
    return doc.dump(2) + '\n';
}

} // namespace lamlog
