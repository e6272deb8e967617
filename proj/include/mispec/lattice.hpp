#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace mispec {

// Finite bounded lattice over dense indices 0..n-1. Labels are metadata.
class FiniteLattice {
public:
    FiniteLattice() = default;

    // Builds from a complete order table. leq[i][j] means i <= j.
    static FiniteLattice from_order(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq);

    int size() const { return n_; }
    int bot() const { return bot_; }
    int top() const { return top_; }
    const std::string& name(int x) const { return names_[x]; }
    const std::vector<std::string>& names() const { return names_; }

    bool leq(int a, int b) const { return has(up_[a], b); }
    bool lt(int a, int b) const { return a != b && leq(a, b); }
    int join(int a, int b) const { return join_[a * n_ + b]; }
    int meet(int a, int b) const { return meet_[a * n_ + b]; }
    ElemSet down(int a) const { return down_[a]; }
    ElemSet up(int a) const { return up_[a]; }
    ElemSet all() const { return all_of(n_); }

    std::optional<int> index_of(const std::string& label) const {
        for (int i = 0; i < n_; ++i)
            if (names_[i] == label) return i;
        return std::nullopt;
    }

    int join_all(ElemSet s) const {
        int r = bot_;
        for_each_bit(s, [&](int x) { r = join(r, x); });
        return r;
    }
    int meet_all(ElemSet s) const {
        int r = top_;
        for_each_bit(s, [&](int x) { r = meet(r, x); });
        return r;
    }

    // Height of the longest chain, counted in covers.
    int height() const;

private:
    int n_ = 0;
    int bot_ = 0;
    int top_ = 0;
    std::vector<std::string> names_;
    std::vector<ElemSet> down_, up_;
    std::vector<int> join_, meet_;
};

inline FiniteLattice FiniteLattice::from_order(std::vector<std::string> names,
                                               const std::vector<std::vector<bool>>& leq) {
    const int n = static_cast<int>(names.size());
    if (n == 0) throw Error(ErrorKind::NotBounded, "empty carrier");
    if (n > kMaxElements) throw Error(ErrorKind::TooLarge, std::to_string(n) + " elements (limit 64)");
    for (int i = 0; i < n; ++i)
        if (!leq[i][i]) throw Error(ErrorKind::InternalInvariantFailure, "order table not reflexive");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (leq[i][j] && leq[j][i])
                throw Error(ErrorKind::CycleDetected, "'" + names[i] + "' and '" + names[j] + "' are mutually below",
                            {i, j});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (leq[i][j] && leq[j][k] && !leq[i][k])
                    throw Error(ErrorKind::InternalInvariantFailure, "order table not transitive");

    FiniteLattice L;
    L.n_ = n;
    L.names_ = std::move(names);
    L.down_.assign(n, 0);
    L.up_.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (leq[i][j]) {
                L.up_[i] |= bit(j);
                L.down_[j] |= bit(i);
            }

    int bot = -1, top = -1;
    for (int i = 0; i < n; ++i) {
        if (L.up_[i] == L.all()) bot = i;
        if (L.down_[i] == L.all()) top = i;
    }
    if (bot < 0 || top < 0) throw Error(ErrorKind::NotBounded, bot < 0 ? "no least element" : "no greatest element");
    L.bot_ = bot;
    L.top_ = top;

    L.join_.assign(n * n, -1);
    L.meet_.assign(n * n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ElemSet ub = L.up_[a] & L.up_[b];
            ElemSet lb = L.down_[a] & L.down_[b];
            int lub = -1, glb = -1;
            for_each_bit(ub, [&](int c) {
                if (subset(ub, L.up_[c])) lub = c;
            });
            for_each_bit(lb, [&](int c) {
                if (subset(lb, L.down_[c])) glb = c;
            });
            if (lub < 0 || glb < 0)
                throw Error(ErrorKind::NotALattice,
                            std::string(lub < 0 ? "no least upper bound" : "no greatest lower bound") + " for '" +
                                L.names_[a] + "' and '" + L.names_[b] + "'",
                            {a, b});
            L.join_[a * n + b] = lub;
            L.meet_[a * n + b] = glb;
        }
    return L;
}

inline int FiniteLattice::height() const {
    // longest chain from bot, by dynamic programming over a linear extension
    std::vector<int> order(n_);
    for (int i = 0; i < n_; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return count(down_[a]) < count(down_[b]); });
    std::vector<int> h(n_, 0);
    for (int x : order)
        for_each_bit(down_[x] & ~bit(x), [&](int y) { h[x] = std::max(h[x], h[y] + 1); });
    return h[top_];
}

// Reflexive-transitive closure of the given pairs, then lattice construction.
inline FiniteLattice build_lattice(std::vector<std::string> names,
                                   const std::vector<std::pair<std::string, std::string>>& pairs) {
    const int n = static_cast<int>(names.size());
    if (n > kMaxElements) throw Error(ErrorKind::TooLarge, std::to_string(n) + " elements (limit 64)");
    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i)
        if (!idx.emplace(names[i], i).second) throw Error(ErrorKind::SchemaError, "duplicate label '" + names[i] + "'");
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) leq[i][i] = true;
    for (const auto& [a, b] : pairs) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end()) throw Error(ErrorKind::UnknownLabel, "'" + a + "'");
        if (ib == idx.end()) throw Error(ErrorKind::UnknownLabel, "'" + b + "'");
        leq[ia->second][ib->second] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (leq[i][k])
                for (int j = 0; j < n; ++j)
                    if (leq[k][j]) leq[i][j] = true;
    return FiniteLattice::from_order(std::move(names), leq);
}

// Triple (x,y,z) with x <= z and x v (y ^ z) != (x v y) ^ z.
inline std::optional<std::array<int, 3>> modularity_violation(const FiniteLattice& L) {
    const int n = L.size();
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
            if (!L.leq(x, z)) continue;
            for (int y = 0; y < n; ++y)
                if (L.join(x, L.meet(y, z)) != L.meet(L.join(x, y), z)) return std::array<int, 3>{x, y, z};
        }
    return std::nullopt;
}

inline bool is_modular(const FiniteLattice& L) { return !modularity_violation(L); }

// Triple (x,y,z) with x ^ (y v z) != (x ^ y) v (x ^ z).
inline std::optional<std::array<int, 3>> distributivity_violation(const FiniteLattice& L) {
    const int n = L.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))) return std::array<int, 3>{x, y, z};
    return std::nullopt;
}

inline bool is_distributive(const FiniteLattice& L) { return !distributivity_violation(L); }

inline void require_distributive(const FiniteLattice& L) {
    if (auto w = distributivity_violation(L))
        throw Error(ErrorKind::NotDistributive,
                    "witness (" + L.name((*w)[0]) + "," + L.name((*w)[1]) + "," + L.name((*w)[2]) + ")",
                    {(*w)[0], (*w)[1], (*w)[2]});
}

// ---- ideals ----

inline ElemSet principal_ideal(const FiniteLattice& L, int x) { return L.down(x); }

inline bool is_ideal(const FiniteLattice& L, ElemSet s) {
    if (!has(s, L.bot())) return false;
    bool ok = true;
    for_each_bit(s, [&](int x) {
        if (!subset(L.down(x), s)) ok = false;
        for_each_bit(s, [&](int y) {
            if (!has(s, L.join(x, y))) ok = false;
        });
    });
    return ok;
}

// Every ideal of a finite lattice is the principal ideal of its join.
inline std::vector<ElemSet> lattice_ideals(const FiniteLattice& L) {
    std::vector<ElemSet> out;
    for (int x = 0; x < L.size(); ++x) out.push_back(L.down(x));
    std::sort(out.begin(), out.end());
    return out;
}

inline int ideal_generator(const FiniteLattice& L, ElemSet ideal) { return L.join_all(ideal); }

inline ElemSet ideal_join(const FiniteLattice& L, ElemSet a, ElemSet b) {
    return L.down(L.join(L.join_all(a), L.join_all(b)));
}

inline bool is_prime_ideal(const FiniteLattice& L, ElemSet I) {
    if (!is_ideal(L, I) || I == L.all()) return false;
    for (int x = 0; x < L.size(); ++x)
        for (int y = 0; y < L.size(); ++y)
            if (has(I, L.meet(x, y)) && !has(I, x) && !has(I, y)) return false;
    return true;
}

inline std::vector<ElemSet> prime_ideals(const FiniteLattice& L) {
    std::vector<ElemSet> out;
    for (ElemSet I : lattice_ideals(L))
        if (is_prime_ideal(L, I)) out.push_back(I);
    return out;
}

inline std::vector<ElemSet> minimal_prime_ideals(const FiniteLattice& L) {
    auto ps = prime_ideals(L);
    std::vector<ElemSet> out;
    for (ElemSet p : ps) {
        bool minimal = true;
        for (ElemSet q : ps)
            if (q != p && subset(q, p)) minimal = false;
        if (minimal) out.push_back(p);
    }
    return out;
}

// Ann(x) = {y : x ^ y = 0}
inline ElemSet lattice_ann(const FiniteLattice& L, int x) {
    ElemSet s = 0;
    for (int y = 0; y < L.size(); ++y)
        if (L.meet(x, y) == L.bot()) s |= bit(y);
    return s;
}

inline ElemSet lattice_ann_ideal(const FiniteLattice& L, ElemSet I) {
    ElemSet s = L.all();
    for_each_bit(I, [&](int x) { s &= lattice_ann(L, x); });
    return s;
}

// ---- complements ----

struct LatticeCenter {
    ElemSet members = 0;
    std::vector<int> complement; // -1 when uncomplemented; first complement otherwise
    ElemSet ambiguous = 0;       // elements with more than one complement
    bool has_ambiguity() const { return ambiguous != 0; }
};

inline LatticeCenter lattice_boolean_center(const FiniteLattice& L) {
    LatticeCenter c;
    c.complement.assign(L.size(), -1);
    for (int x = 0; x < L.size(); ++x) {
        int found = 0;
        for (int y = 0; y < L.size(); ++y)
            if (L.join(x, y) == L.top() && L.meet(x, y) == L.bot()) {
                if (found++ == 0) c.complement[x] = y;
            }
        if (found > 0) c.members |= bit(x);
        if (found > 1) c.ambiguous |= bit(x);
    }
    return c;
}

inline bool is_boolean_lattice(const FiniteLattice& L) {
    return is_distributive(L) && lattice_boolean_center(L).members == L.all();
}

inline ElemSet join_irreducibles(const FiniteLattice& L) {
    ElemSet s = 0;
    for (int x = 0; x < L.size(); ++x) {
        if (x == L.bot()) continue;
        ElemSet below = L.down(x) & ~bit(x);
        if (L.join_all(below) != x) s |= bit(x);
    }
    return s;
}

// ---- Hasse diagram ----

inline std::vector<std::pair<int, int>> cover_pairs(const FiniteLattice& L) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < L.size(); ++a)
        for (int b = 0; b < L.size(); ++b) {
            if (!L.lt(a, b)) continue;
            bool cover = true;
            for_each_bit(L.up(a) & L.down(b) & ~bit(a) & ~bit(b), [&](int) { cover = false; });
            if (cover) out.emplace_back(a, b);
        }
    return out;
}

inline std::string dot_escape(const std::string& s) {
    std::string r;
    for (char c : s) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
    }
    return r;
}

inline std::string export_hasse(const FiniteLattice& L, const std::string& graph_name = "lattice") {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(graph_name) << "\" {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    for (int i = 0; i < L.size(); ++i) os << "  n" << i << " [label=\"" << dot_escape(L.name(i)) << "\"];\n";
    for (auto [a, b] : cover_pairs(L)) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

// ---- isomorphism search ----

// Order isomorphism L1 -> L2; extra(map) can veto complete candidates.
inline std::optional<std::vector<int>>
find_lattice_isomorphism(const FiniteLattice& A, const FiniteLattice& B,
                         const std::function<bool(const std::vector<int>&)>& extra = {}) {
    const int n = A.size();
    if (n != B.size()) return std::nullopt;
    auto sig = [](const FiniteLattice& L, int x) { return std::pair{count(L.down(x)), count(L.up(x))}; };
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> go = [&](int i) -> bool {
        if (i == n) return !extra || extra(map);
        for (int y = 0; y < n; ++y) {
            if (used[y] || sig(A, i) != sig(B, y)) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                ok = A.leq(i, j) == B.leq(y, map[j]) && A.leq(j, i) == B.leq(map[j], y);
            if (!ok) continue;
            map[i] = y;
            used[y] = true;
            if (go(i + 1)) return true;
            used[y] = false;
        }
        map[i] = -1;
        return false;
    };
    if (go(0)) return map;
    return std::nullopt;
}

} // namespace mispec
