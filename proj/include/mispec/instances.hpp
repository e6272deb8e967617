#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "generators.hpp"
#include "mi.hpp"

namespace mispec {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Drops one pair of parentheses enclosing the whole string.
inline std::string unwrap(const std::string& s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return s;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
        if (depth == 0 && i + 1 < s.size()) return s;
    }
    return trim(s.substr(1, s.size() - 2));
}

// Position of the first (or last) occurrence of c outside parentheses, npos if none.
inline std::size_t find_top_level(const std::string& s, char c, bool last, const std::string& whole) {
    int depth = 0;
    std::size_t hit = std::string::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')' && --depth < 0)
            throw Error(ErrorKind::ParseError, "unbalanced ')' in '" + whole + "'");
        if (depth == 0 && s[i] == c) {
            hit = i;
            if (!last) return hit;
        }
    }
    if (depth != 0) throw Error(ErrorKind::ParseError, "unbalanced '(' in '" + whole + "'");
    return hit;
}

inline int parse_count(const std::string& arg, const std::string& whole) {
    if (arg.empty() || arg.size() > 6)
        throw Error(ErrorKind::ParseError, "expected a small non-negative integer in '" + whole + "'");
    for (char ch : arg)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw Error(ErrorKind::ParseError, "expected a non-negative integer, got '" + arg + "' in '" + whole + "'");
    return std::stoi(arg);
}

inline MiStructure parse_instance_rec(const std::string& raw) {
    const std::string s = unwrap(trim(raw));
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "expected kind:args, got '" + s + "'");
    const std::string kind = s.substr(0, colon);
    const std::string arg = trim(s.substr(colon + 1));
    if (kind == "zn") {
        const int n = parse_count(arg, s);
        if (n < 1) throw Error(ErrorKind::ParseError, "zn needs n >= 1 in '" + s + "'");
        return zn_structure(n);
    }
    if (kind == "chain") {
        const int k = parse_count(arg, s);
        if (k < 1) throw Error(ErrorKind::ParseError, "chain needs length >= 1 in '" + s + "'");
        return chain_frame(k);
    }
    if (kind == "boolean" || kind == "boolean_frame") return boolean_frame(parse_count(arg, s));
    if (kind == "product") {
        const std::size_t comma = find_top_level(arg, ',', false, s);
        if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "product needs two operands in '" + s + "'");
        return product(parse_instance_rec(arg.substr(0, comma)), parse_instance_rec(arg.substr(comma + 1)));
    }
    if (kind == "quotient") {
        const std::size_t at = find_top_level(arg, '@', true, s);
        if (at == std::string::npos) throw Error(ErrorKind::ParseError, "quotient needs INSTANCE@label in '" + s + "'");
        const MiStructure base = parse_instance_rec(arg.substr(0, at));
        const std::string label = trim(arg.substr(at + 1));
        const auto t = base.lat().index_of(label);
        if (!t) throw Error(ErrorKind::UnknownLabel, "'" + label + "' in " + base.name());
        return quotient(base, *t).structure;
    }
    throw Error(ErrorKind::ParseError, "unknown instance kind '" + kind + "'");
}

} // namespace detail

// Builtin instances: zn:N, chain:K, boolean:K, product:A,B and quotient:A@label.
// Operands may be parenthesised, e.g. product:(product:zn:2,zn:3),chain:2.
inline MiStructure parse_instance(const std::string& text) {
    return detail::parse_instance_rec(text).renamed(detail::trim(text));
}

inline std::vector<std::string> bundled_instance_names() {
    std::vector<std::string> names;
    for (int n : {1, 4, 8, 12, 30, 36}) names.push_back("zn:" + std::to_string(n));
    for (int k = 1; k <= 4; ++k) names.push_back("chain:" + std::to_string(k));
    for (int k = 1; k <= 3; ++k) names.push_back("boolean:" + std::to_string(k));
    names.push_back("product:chain:3,chain:3");
    for (int d : {1, 2, 3, 4, 6, 12}) names.push_back("quotient:zn:12@" + std::to_string(d));
    return names;
}

inline std::vector<MiStructure> bundled_instances() {
    std::vector<MiStructure> out;
    for (const auto& n : bundled_instance_names()) out.push_back(parse_instance(n));
    return out;
}

} // namespace mispec
