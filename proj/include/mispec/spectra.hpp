#pragma once

#include <vector>

#include "mi.hpp"
#include "purity.hpp"
#include "topology.hpp"

namespace mispec {

// Points of every spectrum topology are the primes, in index order.
inline std::vector<int> spec_points(const MiStructure& S) { return members(S.primes()); }

// D(t) = {phi prime : t not below phi}, as positions in spec_points.
inline ElemSet D_set(const MiStructure& S, int t) {
    ElemSet r = 0;
    auto pts = spec_points(S);
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!S.leq(t, pts[i])) r |= bit(static_cast<int>(i));
    return r;
}

inline ElemSet V_set(const MiStructure& S, int t) { return all_of(count(S.primes())) & ~D_set(S, t); }

// Positions of the given primes.
inline ElemSet spec_positions(const MiStructure& S, ElemSet elems) {
    ElemSet r = 0;
    auto pts = spec_points(S);
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (has(elems, pts[i])) r |= bit(static_cast<int>(i));
    return r;
}

inline ElemSet spec_elements(const MiStructure& S, ElemSet positions) {
    ElemSet r = 0;
    auto pts = spec_points(S);
    for_each_bit(positions, [&](int i) { r |= bit(pts[i]); });
    return r;
}

inline FiniteTopology zariski(const MiStructure& S) {
    std::vector<ElemSet> basis;
    for (int a = 0; a < S.size(); ++a) basis.push_back(D_set(S, a));
    return topology_from_subbasis(spec_points(S), basis);
}

inline FiniteTopology patch(const MiStructure& S) {
    std::vector<ElemSet> basis;
    for (int a = 0; a < S.size(); ++a)
        for (int b = 0; b < S.size(); ++b) basis.push_back(D_set(S, a) & V_set(S, b));
    return topology_from_subbasis(spec_points(S), basis);
}

inline FiniteTopology flat(const MiStructure& S) {
    std::vector<ElemSet> basis;
    for (int b = 0; b < S.size(); ++b) basis.push_back(V_set(S, b));
    return topology_from_subbasis(spec_points(S), basis);
}

// Lambda(phi): primes below phi, as positions.
inline ElemSet lambda_set(const MiStructure& S, int phi) { return spec_positions(S, S.lat().down(phi) & S.primes()); }

inline FiniteTopology max_space(const FiniteTopology& spec_topology, const MiStructure& S) {
    return subspace(spec_topology, spec_positions(S, S.maximals()));
}

inline FiniteTopology min_space(const FiniteTopology& spec_topology, const MiStructure& S) {
    return subspace(spec_topology, spec_positions(S, S.minimal_primes()));
}

// Meet of the maximal elements above t.
inline int jacobson(const MiStructure& S, int t) { return S.lat().meet_all(S.lat().up(t) & S.maximals()); }

// ---- Pierce spectrum ----

inline bool is_regular(const MiStructure& S, int t, ElemSet center) {
    return S.lat().join_all(S.lat().down(t) & center) == t;
}

struct PierceSpectrum {
    ElemSet center = 0;
    ElemSet regulars = 0;
    ElemSet max_regulars = 0;   // Sp
    FiniteTopology topology;    // on max_regulars, basis U(alpha)
};

inline PierceSpectrum pierce(const MiStructure& S) {
    PierceSpectrum P;
    P.center = center_set(S);
    for (int t = 0; t < S.size(); ++t)
        if (is_regular(S, t, P.center)) P.regulars |= bit(t);
    const ElemSet proper = P.regulars & ~bit(S.top());
    for_each_bit(proper, [&](int t) {
        if ((S.lat().up(t) & proper) == bit(t)) P.max_regulars |= bit(t);
    });
    std::vector<int> pts = members(P.max_regulars);
    std::vector<ElemSet> basis;
    for_each_bit(P.center, [&](int a) {
        ElemSet u = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!S.leq(a, pts[i])) u |= bit(static_cast<int>(i));
        basis.push_back(u);
    });
    P.topology = topology_from_subbasis(pts, basis);
    return P;
}

// Join of the center elements below phi.
inline int s_map(const MiStructure& S, int phi) {
    if (!is_prime(S, phi)) throw Error(ErrorKind::NotPrime, "'" + S.label(phi) + "' is not prime", {phi});
    return S.lat().join_all(S.lat().down(phi) & center_set(S));
}

inline int t_map(const MiStructure& S, int phi) {
    if (!has(purely_prime(S), phi))
        throw Error(ErrorKind::NotPrime, "'" + S.label(phi) + "' is not purely prime", {phi});
    return S.lat().join_all(S.lat().down(phi) & center_set(S));
}

// Spectrum of the frame of pure elements, opens D(theta) for pure theta.
inline FiniteTopology pure_spectrum(const MiStructure& S) {
    const ElemSet pure = pure_elements(S);
    std::vector<int> pts = members(purely_prime(S));
    std::vector<ElemSet> basis;
    for_each_bit(pure, [&](int th) {
        ElemSet u = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!S.leq(th, pts[i])) u |= bit(static_cast<int>(i));
        basis.push_back(u);
    });
    return topology_from_subbasis(pts, basis);
}

// ---- lattice side, ideals named by their generators ----

// Stone topology on the prime ideals of L; points are ideal generators.
inline FiniteTopology stone_spectrum(const FiniteLattice& L) {
    std::vector<int> pts;
    for (ElemSet P : prime_ideals(L)) pts.push_back(L.join_all(P));
    std::sort(pts.begin(), pts.end());
    std::vector<ElemSet> basis;
    for (int x = 0; x < L.size(); ++x) {
        ElemSet u = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!L.leq(x, pts[i])) u |= bit(static_cast<int>(i));
        basis.push_back(u);
    }
    return topology_from_subbasis(pts, basis);
}

// Flat (inverse) topology on the prime ideals of L.
inline FiniteTopology stone_spectrum_flat(const FiniteLattice& L) {
    FiniteTopology Z = stone_spectrum(L);
    std::vector<ElemSet> basis;
    for (int x = 0; x < L.size(); ++x) {
        ElemSet v = 0;
        for (int i = 0; i < Z.size(); ++i)
            if (L.leq(x, Z.points[i])) v |= bit(i);
        basis.push_back(v);
    }
    return topology_from_subbasis(Z.points, basis);
}

struct LatticePierce {
    ElemSet regular_generators = 0; // x with (x] regular
    ElemSet max_regular_generators = 0;
    FiniteTopology topology;
};

inline LatticePierce lattice_pierce(const FiniteLattice& L) {
    LatticePierce P;
    const ElemSet B = lattice_boolean_center(L).members;
    for (int x = 0; x < L.size(); ++x)
        if (L.join_all(L.down(x) & B) == x) P.regular_generators |= bit(x);
    const ElemSet proper = P.regular_generators & ~bit(L.top());
    for_each_bit(proper, [&](int x) {
        if ((L.up(x) & proper) == bit(x)) P.max_regular_generators |= bit(x);
    });
    std::vector<int> pts = members(P.max_regular_generators);
    std::vector<ElemSet> basis;
    for_each_bit(B, [&](int e) {
        ElemSet u = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!L.leq(e, pts[i])) u |= bit(static_cast<int>(i));
        basis.push_back(u);
    });
    P.topology = topology_from_subbasis(pts, basis);
    return P;
}

} // namespace mispec
