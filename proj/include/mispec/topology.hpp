#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bits.hpp"

namespace mispec {

// A topology on a finite point set. Opens are bit masks over point positions.
struct FiniteTopology {
    std::vector<int> points; // carrier ids of the points, by position
    std::vector<ElemSet> opens; // sorted, contains 0 and full()

    int size() const { return static_cast<int>(points.size()); }
    ElemSet full() const { return all_of(size()); }
    bool is_open(ElemSet s) const { return std::binary_search(opens.begin(), opens.end(), s); }
    bool is_closed(ElemSet s) const { return is_open(full() & ~s); }
    bool is_clopen(ElemSet s) const { return is_open(s) && is_closed(s); }

    int position(int id) const {
        for (int i = 0; i < size(); ++i)
            if (points[i] == id) return i;
        return -1;
    }
};

// Topology generated by a subbasis: finite intersections, then unions.
inline FiniteTopology topology_from_subbasis(std::vector<int> points, const std::vector<ElemSet>& subbasis) {
    FiniteTopology T;
    T.points = std::move(points);
    const ElemSet full = T.full();
    std::set<ElemSet> basis{full};
    for (ElemSet s : subbasis) {
        std::vector<ElemSet> add;
        for (ElemSet b : basis) add.push_back(b & s & full);
        basis.insert(add.begin(), add.end());
    }
    std::set<ElemSet> opens{0};
    for (ElemSet b : basis) {
        std::vector<ElemSet> add;
        for (ElemSet o : opens) add.push_back(o | b);
        opens.insert(add.begin(), add.end());
    }
    T.opens.assign(opens.begin(), opens.end());
    return T;
}

inline std::vector<ElemSet> closed_sets(const FiniteTopology& T) {
    std::vector<ElemSet> out;
    for (ElemSet o : T.opens) out.push_back(T.full() & ~o);
    std::sort(out.begin(), out.end());
    return out;
}

inline ElemSet closure(const FiniteTopology& T, ElemSet s) {
    ElemSet outside = 0;
    for (ElemSet o : T.opens)
        if ((o & s) == 0) outside |= o;
    return T.full() & ~outside;
}

inline ElemSet interior(const FiniteTopology& T, ElemSet s) {
    ElemSet in = 0;
    for (ElemSet o : T.opens)
        if (subset(o, s)) in |= o;
    return in;
}

// Smallest open set containing s.
inline ElemSet open_hull(const FiniteTopology& T, ElemSet s) {
    ElemSet h = T.full();
    for (ElemSet o : T.opens)
        if (subset(s, o)) h &= o;
    return h;
}

inline std::vector<ElemSet> clopens(const FiniteTopology& T) {
    std::vector<ElemSet> out;
    for (ElemSet o : T.opens)
        if (T.is_closed(o)) out.push_back(o);
    return out;
}

// Subspace on the positions in mask; points keep their carrier ids.
inline FiniteTopology subspace(const FiniteTopology& T, ElemSet mask) {
    std::vector<int> pos = members(mask & T.full());
    auto compress = [&](ElemSet s) {
        ElemSet r = 0;
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (has(s, pos[i])) r |= bit(static_cast<int>(i));
        return r;
    };
    FiniteTopology S;
    for (int p : pos) S.points.push_back(T.points[p]);
    std::set<ElemSet> opens;
    for (ElemSet o : T.opens) opens.insert(compress(o));
    S.opens.assign(opens.begin(), opens.end());
    return S;
}

// ---- separation and dimension predicates ----

inline std::optional<std::pair<int, int>> hausdorff_violation(const FiniteTopology& T) {
    for (int x = 0; x < T.size(); ++x)
        for (int y = x + 1; y < T.size(); ++y)
            if (open_hull(T, bit(x)) & open_hull(T, bit(y))) return std::pair{x, y};
    return std::nullopt;
}

inline bool is_hausdorff(const FiniteTopology& T) { return !hausdorff_violation(T); }

inline bool is_t1(const FiniteTopology& T) {
    for (int x = 0; x < T.size(); ++x)
        if (!T.is_closed(bit(x))) return false;
    return true;
}

inline bool is_discrete(const FiniteTopology& T) {
    for (int x = 0; x < T.size(); ++x)
        if (!T.is_open(bit(x))) return false;
    return true;
}

// Disjoint closed sets have disjoint open neighbourhoods.
inline bool is_normal_space(const FiniteTopology& T) {
    auto cl = closed_sets(T);
    for (ElemSet a : cl)
        for (ElemSet b : cl)
            if ((a & b) == 0 && (open_hull(T, a) & open_hull(T, b))) return false;
    return true;
}

// Clopen sets form a basis.
inline bool is_zero_dimensional(const FiniteTopology& T) {
    auto cs = clopens(T);
    for (ElemSet o : T.opens) {
        ElemSet u = 0;
        for (ElemSet c : cs)
            if (subset(c, o)) u |= c;
        if (u != o) return false;
    }
    return true;
}

// Components of a finite space are its minimal clopen sets.
inline ElemSet component_of(const FiniteTopology& T, int x) {
    ElemSet k = T.full();
    for (ElemSet c : clopens(T))
        if (has(c, x)) k &= c;
    return k;
}

inline bool is_totally_disconnected(const FiniteTopology& T) {
    for (int x = 0; x < T.size(); ++x)
        if (component_of(T, x) != bit(x)) return false;
    return true;
}

// Any closed T inside an open V admits a clopen U with T <= U <= V.
inline bool is_strongly_zero_dimensional(const FiniteTopology& T) {
    auto cs = clopens(T);
    for (ElemSet c : closed_sets(T))
        for (ElemSet v : T.opens) {
            if (!subset(c, v)) continue;
            bool found = false;
            for (ElemSet u : cs)
                if (subset(c, u) && subset(u, v)) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
    return true;
}

// Cover form: X = U u V with U,V open yields a clopen partition C <= U, D <= V.
inline bool is_strongly_zero_dimensional_cover_form(const FiniteTopology& T) {
    auto cs = clopens(T);
    for (ElemSet u : T.opens)
        for (ElemSet v : T.opens) {
            if ((u | v) != T.full()) continue;
            bool found = false;
            for (ElemSet c : cs)
                if (subset(c, u) && subset(T.full() & ~c, v)) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
    return true;
}

// Finite spaces are compact, so a Boolean space is a Hausdorff zero-dimensional one.
inline bool is_boolean_space(const FiniteTopology& T) { return is_hausdorff(T) && is_zero_dimensional(T); }

enum class SpacePredicate { Hausdorff, T1, Normal, ZeroDimensional, TotallyDisconnected, Discrete, StronglyZeroDimensional };

inline bool space_predicate(const FiniteTopology& T, SpacePredicate which) {
    switch (which) {
    case SpacePredicate::Hausdorff: return is_hausdorff(T);
    case SpacePredicate::T1: return is_t1(T);
    case SpacePredicate::Normal: return is_normal_space(T);
    case SpacePredicate::ZeroDimensional: return is_zero_dimensional(T);
    case SpacePredicate::TotallyDisconnected: return is_totally_disconnected(T);
    case SpacePredicate::Discrete: return is_discrete(T);
    case SpacePredicate::StronglyZeroDimensional: return is_strongly_zero_dimensional(T);
    }
    return false;
}

// ---- maps ----

// f maps positions of A to positions of B.
inline ElemSet preimage(const std::vector<int>& f, ElemSet s) {
    ElemSet r = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] >= 0 && has(s, f[i])) r |= bit(static_cast<int>(i));
    return r;
}

inline ElemSet image(const std::vector<int>& f, ElemSet s) {
    ElemSet r = 0;
    for_each_bit(s, [&](int i) { r |= bit(f[i]); });
    return r;
}

inline bool is_continuous(const FiniteTopology& A, const FiniteTopology& B, const std::vector<int>& f) {
    for (ElemSet o : B.opens)
        if (!A.is_open(preimage(f, o))) return false;
    return true;
}

inline bool is_homeomorphism(const FiniteTopology& A, const FiniteTopology& B, const std::vector<int>& f) {
    if (A.size() != B.size()) return false;
    ElemSet hit = 0;
    for (int x : f) {
        if (x < 0 || has(hit, x)) return false;
        hit |= bit(x);
    }
    if (!is_continuous(A, B, f)) return false;
    for (ElemSet o : A.opens)
        if (!B.is_open(image(f, o))) return false;
    return true;
}

// Continuous r : T -> sub with r(x) = x on sub, searched exhaustively.
inline std::optional<std::vector<int>> continuous_retraction(const FiniteTopology& T, ElemSet sub) {
    FiniteTopology S = subspace(T, sub);
    std::vector<int> sub_pos = members(sub & T.full());
    std::vector<int> r(T.size(), -1);
    std::vector<int> free;
    for (int x = 0; x < T.size(); ++x) {
        auto it = std::find(sub_pos.begin(), sub_pos.end(), x);
        if (it != sub_pos.end())
            r[x] = static_cast<int>(it - sub_pos.begin());
        else
            free.push_back(x);
    }
    if (S.size() == 0) {
        if (T.size() == 0) return r;
        return std::nullopt;
    }
    std::vector<int> choice(free.size(), 0);
    for (;;) {
        for (std::size_t i = 0; i < free.size(); ++i) r[free[i]] = choice[i];
        if (is_continuous(T, S, r)) return r;
        std::size_t i = 0;
        while (i < free.size() && ++choice[i] == S.size()) choice[i++] = 0;
        if (i == free.size()) return std::nullopt;
    }
}

} // namespace mispec
