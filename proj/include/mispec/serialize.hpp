#pragma once

#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "classify.hpp"
#include "lattice.hpp"
#include "mi.hpp"
#include "report.hpp"
#include "topology.hpp"

namespace mispec {

using nlohmann::json;

inline constexpr const char* kSchema = "mispec/1";

// Topological order of the lattice, ties broken by label.
inline std::vector<int> canonical_order(const FiniteLattice& L) {
    const int n = L.size();
    std::vector<int> indeg(n, 0);
    for (auto [a, b] : cover_pairs(L)) ++indeg[b];
    auto by_label = [&](int a, int b) { return L.name(a) > L.name(b); };
    std::priority_queue<int, std::vector<int>, decltype(by_label)> ready(by_label);
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push(i);
    std::vector<int> order;
    const auto covers = cover_pairs(L);
    while (!ready.empty()) {
        const int x = ready.top();
        ready.pop();
        order.push_back(x);
        for (auto [a, b] : covers)
            if (a == x && --indeg[b] == 0) ready.push(b);
    }
    return order;
}

inline MiStructure canonical(const MiStructure& S) {
    const auto order = canonical_order(S.lat());
    const int n = S.size();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::string> names;
    for (int x : order) names.push_back(S.label(x));
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) leq[i][j] = S.leq(order[i], order[j]);
    std::vector<int> comm(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) comm[i * n + j] = pos[S.comm(order[i], order[j])];
    return validate_mi(FiniteLattice::from_order(std::move(names), leq), std::move(comm), S.name());
}

// Canonical form: elements in canonical order, leq as the cover relation.
inline json to_json(const MiStructure& S) {
    const MiStructure C = canonical(S);
    json j;
    j["name"] = C.name();
    j["elements"] = C.lat().names();
    json leq = json::array();
    auto covers = cover_pairs(C.lat());
    std::sort(covers.begin(), covers.end());
    for (auto [a, b] : covers) leq.push_back({C.label(a), C.label(b)});
    j["leq"] = leq;
    json rows = json::array();
    for (int a = 0; a < C.size(); ++a) {
        json row = json::array();
        for (int b = 0; b < C.size(); ++b) row.push_back(C.label(C.comm(a, b)));
        rows.push_back(row);
    }
    j["commutator"] = rows;
    return j;
}

namespace detail {

inline const json& require_field(const json& j, const char* key, json::value_t type, const char* what) {
    if (!j.contains(key)) throw Error(ErrorKind::SchemaError, std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (v.type() != type) throw Error(ErrorKind::SchemaError, std::string("field '") + key + "' must be " + what);
    return v;
}

} // namespace detail

inline MiStructure from_json(const json& j) {
    using detail::require_field;
    if (!j.is_object()) throw Error(ErrorKind::SchemaError, "top level must be an object");
    std::string name = "unnamed";
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw Error(ErrorKind::SchemaError, "field 'name' must be a string");
        name = j.at("name").get<std::string>();
    }
    std::vector<std::string> elements;
    for (const auto& e : require_field(j, "elements", json::value_t::array, "an array of labels")) {
        if (!e.is_string()) throw Error(ErrorKind::SchemaError, "element labels must be strings");
        elements.push_back(e.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    const json& leq = require_field(j, "leq", json::value_t::array, "an array of [a,b] pairs");
    for (std::size_t i = 0; i < leq.size(); ++i) {
        const json& p = leq[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
            throw Error(ErrorKind::SchemaError, "leq entry " + std::to_string(i) + " must be a pair of labels");
        pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    FiniteLattice L = build_lattice(elements, pairs);
    const int n = L.size();

    const json& rows = require_field(j, "commutator", json::value_t::array, "an array of rows");
    if (static_cast<int>(rows.size()) < n)
        throw Error(ErrorKind::SchemaError, "commutator row " + std::to_string(rows.size()) + " ('" +
                                                elements[rows.size()] + "') missing");
    if (static_cast<int>(rows.size()) > n)
        throw Error(ErrorKind::SchemaError, "commutator has " + std::to_string(rows.size()) + " rows, expected " +
                                                std::to_string(n));
    std::vector<int> comm(n * n);
    for (int a = 0; a < n; ++a) {
        const json& row = rows[a];
        const std::string where = "commutator row " + std::to_string(a) + " ('" + elements[a] + "')";
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw Error(ErrorKind::SchemaError, where + " must list " + std::to_string(n) + " labels");
        for (int b = 0; b < n; ++b) {
            if (!row[b].is_string()) throw Error(ErrorKind::SchemaError, where + " has a non-string entry");
            const auto idx = L.index_of(row[b].get<std::string>());
            if (!idx) throw Error(ErrorKind::UnknownLabel, "'" + row[b].get<std::string>() + "' in " + where);
            comm[a * n + b] = *idx;
        }
    }
    return canonical(validate_mi(std::move(L), std::move(comm), name));
}

// text_name labels parse errors, e.g. with the file path.
inline MiStructure parse_structure(const std::string& text, const std::string& text_name = "<input>") {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, text_name + ": " + e.what());
    }
    return from_json(j);
}

inline MiStructure load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_structure(ss.str(), path);
}

inline void save(const MiStructure& S, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::SchemaError, path + ": cannot write file");
    out << to_json(S).dump(2) << "\n";
}

// ---- dumps ----

inline json labels_json(const MiStructure& S, ElemSet s) {
    json a = json::array();
    for_each_bit(s, [&](int x) { a.push_back(S.label(x)); });
    return a;
}

// Points by label, opens as sorted label lists.
inline json topology_json(const FiniteTopology& T, const std::vector<std::string>& point_labels) {
    json pts = json::array();
    for (int p : T.points) pts.push_back(point_labels.at(p));
    std::vector<std::vector<std::string>> opens;
    for (ElemSet o : T.opens) {
        std::vector<std::string> v;
        for_each_bit(o, [&](int i) { v.push_back(point_labels.at(T.points[i])); });
        std::sort(v.begin(), v.end());
        opens.push_back(v);
    }
    std::sort(opens.begin(), opens.end());
    return json{{"points", pts}, {"opens", opens}};
}

inline json report_json(const Report& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"id", c.id}, {"status", to_string(c.status)}, {"cases", c.cases}, {"detail", c.detail}});
    return json{{"subject", r.subject}, {"ok", r.ok()}, {"checks", checks}};
}

inline json theorem_row_json(const TheoremRow& row) {
    json conds = json::array();
    for (const auto& c : row.conditions) {
        json cj{{"label", c.label}, {"value", c.value}};
        if (c.finitely_trivial) cj["finitely_trivial"] = true;
        conds.push_back(cj);
    }
    json j{{"id", row.id}, {"title", row.title}, {"agreement", row.agreement}, {"conditions", conds}};
    if (row.skipped) j["skip_reason"] = row.skip_reason;
    if (!row.unasserted.empty()) j["unasserted"] = row.unasserted;
    if (!row.agreement) j["failed"] = row.failed;
    return j;
}

inline json class_report_json(const ClassReport& rep) {
    json verdicts = json::object();
    for (const auto& [k, v] : rep.verdicts) verdicts[k] = v;
    json rows = json::array();
    for (const auto& r : rep.theorems) rows.push_back(theorem_row_json(r));
    return json{{"instance", rep.instance}, {"agreement", rep.agreement()}, {"classes", verdicts}, {"theorems", rows}};
}

} // namespace mispec
