#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "mi.hpp"
#include "report.hpp"
#include "spectra.hpp"

namespace mispec {

// L(A): elements of the source grouped by radical, ordered by radical inclusion.
struct Reticulation {
    MiStructure source;
    FiniteLattice lat;
    std::vector<int> lambda;       // source element -> lattice element
    std::vector<ElemSet> classes;  // lattice element -> source elements
    std::vector<int> rep;          // lattice element -> its radical value in the source
};

// Empty string when every structural invariant holds.
inline std::string reticulation_defect(const Reticulation& R) {
    const MiStructure& S = R.source;
    const FiniteLattice& L = R.lat;
    if (!is_distributive(L)) return "lattice is not distributive";
    const int r0 = rho0(S);
    for (int a = 0; a < S.size(); ++a) {
        for (int b = 0; b < S.size(); ++b) {
            if ((R.lambda[a] == R.lambda[b]) != (S.radical(a) == S.radical(b)))
                return "classes disagree with radicals at (" + S.label(a) + "," + S.label(b) + ")";
            if (R.lambda[S.join(a, b)] != L.join(R.lambda[a], R.lambda[b]))
                return "join not preserved at (" + S.label(a) + "," + S.label(b) + ")";
            if (R.lambda[S.comm(a, b)] != L.meet(R.lambda[a], R.lambda[b]))
                return "commutator not sent to meet at (" + S.label(a) + "," + S.label(b) + ")";
        }
        if ((R.lambda[a] == L.top()) != (a == S.top())) return "top fibre wrong at " + S.label(a);
        if ((R.lambda[a] == L.bot()) != S.leq(a, r0)) return "bottom fibre wrong at " + S.label(a);
    }
    return {};
}

inline Reticulation reticulate(const MiStructure& S) {
    Reticulation R;
    R.source = S;
    std::set<int> reps;
    for (int a = 0; a < S.size(); ++a) reps.insert(S.radical(a));
    R.rep.assign(reps.begin(), reps.end());
    const int m = static_cast<int>(R.rep.size());
    std::vector<std::string> names;
    for (int r : R.rep) names.push_back(S.label(r));
    std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) leq[i][j] = S.leq(R.rep[i], R.rep[j]);
    R.lat = FiniteLattice::from_order(std::move(names), leq);
    R.lambda.resize(S.size());
    R.classes.assign(m, 0);
    for (int a = 0; a < S.size(); ++a) {
        int i = static_cast<int>(std::lower_bound(R.rep.begin(), R.rep.end(), S.radical(a)) - R.rep.begin());
        R.lambda[a] = i;
        R.classes[i] |= bit(a);
    }
    if (auto d = reticulation_defect(R); !d.empty()) throw Error(ErrorKind::InternalInvariantFailure, d);
    return R;
}

// t* = {lambda(a) : a <= t}
inline ElemSet star_up(const Reticulation& R, int t) {
    ElemSet s = 0;
    for_each_bit(R.source.lat().down(t), [&](int a) { s |= bit(R.lambda[a]); });
    return s;
}

// I_* = join of a with lambda(a) in I
inline int star_down(const Reticulation& R, ElemSet I) {
    int r = R.source.bot();
    for (int a = 0; a < R.source.size(); ++a)
        if (has(I, R.lambda[a])) r = R.source.join(r, a);
    return r;
}

inline std::string ideal_label(const FiniteLattice& L, ElemSet I) { return "(" + L.name(L.join_all(I)) + "]"; }

inline Report check_spec_homeomorphism(const Reticulation& R) {
    const MiStructure& S = R.source;
    const FiniteLattice& L = R.lat;
    Report rep{"spectral homeomorphism " + S.name(), {}};
    FiniteTopology Z = zariski(S);
    FiniteTopology St = stone_spectrum(L);

    CheckBuilder u_prime("u sends primes to prime ideals");
    CheckBuilder v_prime("v sends prime ideals to primes");
    CheckBuilder inverse("u and v are inverse");
    CheckBuilder opens("u matches the open families");

    std::vector<int> f(Z.size(), -1);
    for (int i = 0; i < Z.size(); ++i) {
        const int phi = Z.points[i];
        const ElemSet P = star_up(R, phi);
        if (u_prime.expect_lazy(is_prime_ideal(L, P), [&] { return "u(" + S.label(phi) + ") not prime"; }))
            f[i] = St.position(L.join_all(P));
        inverse.expect_lazy(star_down(R, P) == phi, [&] { return "v(u(" + S.label(phi) + ")) differs"; });
    }
    for (int g : St.points) {
        const int t = star_down(R, L.down(g));
        v_prime.expect_lazy(is_prime(S, t), [&] { return "v((" + L.name(g) + "]) not prime"; });
        inverse.expect_lazy(star_up(R, t) == L.down(g), [&] { return "u(v((" + L.name(g) + "])) differs"; });
    }
    bool bijective = Z.size() == St.size();
    ElemSet hit = 0;
    for (int x : f) {
        if (x < 0 || has(hit, x)) bijective = false;
        if (x >= 0) hit |= bit(x);
    }
    inverse.expect(bijective, "u is not a bijection");
    if (bijective) {
        std::set<ElemSet> images;
        for (ElemSet o : Z.opens) images.insert(image(f, o));
        std::set<ElemSet> stone(St.opens.begin(), St.opens.end());
        std::size_t mismatches = 0;
        for (ElemSet o : images) mismatches += !stone.count(o);
        for (ElemSet o : stone) mismatches += !images.count(o);
        opens.expect_lazy(mismatches == 0, [&] { return std::to_string(mismatches) + " open sets unmatched"; });
    } else {
        opens.expect(false, "no bijection to compare opens");
    }
    u_prime.into(rep);
    v_prime.into(rep);
    inverse.into(rep);
    opens.into(rep);
    return rep;
}

// Radical elements against ideals of L(A).
inline Report check_frame_iso(const Reticulation& R) {
    const MiStructure& S = R.source;
    const FiniteLattice& L = R.lat;
    Report rep{"radical elements vs ideals " + S.name(), {}};
    CheckBuilder bij("star-up is a bijection from radical elements onto ideals");
    CheckBuilder meets("star-up preserves meets");
    CheckBuilder joins("star-up sends radical joins to ideal joins");
    CheckBuilder inv("star-down inverts star-up");

    std::vector<int> rcon;
    for (int t = 0; t < S.size(); ++t)
        if (S.radical(t) == t) rcon.push_back(t);
    std::set<ElemSet> imgs;
    for (int t : rcon) imgs.insert(star_up(R, t));
    auto ideals = lattice_ideals(L);
    bij.expect(imgs.size() == rcon.size() && imgs == std::set<ElemSet>(ideals.begin(), ideals.end()),
               std::to_string(rcon.size()) + " radical elements vs " + std::to_string(ideals.size()) + " ideals");
    for (int t : rcon) {
        inv.expect_lazy(star_down(R, star_up(R, t)) == t, [&] { return "at " + S.label(t); });
        for (int c : rcon) {
            meets.expect_lazy(star_up(R, S.meet(t, c)) == (star_up(R, t) & star_up(R, c)),
                              [&] { return "at (" + S.label(t) + "," + S.label(c) + ")"; });
            joins.expect_lazy(star_up(R, S.radical(S.join(t, c))) == ideal_join(L, star_up(R, t), star_up(R, c)),
                              [&] { return "at (" + S.label(t) + "," + S.label(c) + ")"; });
        }
    }
    for (auto* c : {&bij, &meets, &joins, &inv}) c->into(rep);
    return rep;
}

// lambda restricted to the center is a Boolean isomorphism onto B(L(A)).
inline Report check_boolean_iso(const Reticulation& R) {
    const MiStructure& S = R.source;
    if (!satisfies_star(S)) throw Error(ErrorKind::PreconditionStarFailed, S.name());
    const FiniteLattice& L = R.lat;
    Report rep{"center isomorphism " + S.name(), {}};
    const Center C = boolean_center_mi(S);
    const LatticeCenter LC = lattice_boolean_center(L);
    CheckBuilder bij("lambda maps the center bijectively onto B(L)");
    CheckBuilder ops("lambda preserves join, meet and complement on the center");
    ElemSet img = 0;
    bool injective = true;
    for_each_bit(C.members, [&](int a) {
        if (has(img, R.lambda[a])) injective = false;
        img |= bit(R.lambda[a]);
    });
    bij.expect(injective && img == LC.members,
               std::to_string(count(C.members)) + " center elements, " + std::to_string(count(LC.members)) +
                   " complemented lattice elements");
    for_each_bit(C.members, [&](int a) {
        ops.expect_lazy(R.lambda[C.complement[a]] == LC.complement[R.lambda[a]],
                        [&] { return "complement at " + S.label(a); });
        for_each_bit(C.members, [&](int b) {
            ops.expect_lazy(R.lambda[S.join(a, b)] == L.join(R.lambda[a], R.lambda[b]) &&
                                R.lambda[S.meet(a, b)] == L.meet(R.lambda[a], R.lambda[b]),
                            [&] { return "at (" + S.label(a) + "," + S.label(b) + ")"; });
        });
    });
    bij.into(rep);
    ops.into(rep);
    return rep;
}

// Annihilator transfer in both directions.
inline Report ann_transfer(const Reticulation& R) {
    const MiStructure& S = R.source;
    const FiniteLattice& L = R.lat;
    const int r0 = rho0(S);
    Report rep{"annihilator transfer " + S.name(), {}};

    CheckBuilder up("Ann(t*) = (t -> rho(bot))*");
    for (int t = 0; t < S.size(); ++t)
        up.expect_lazy(lattice_ann_ideal(L, star_up(R, t)) == star_up(R, residuum(S, t, r0)),
                       [&] { return "at t = " + S.label(t); });
    up.into(rep);

    if (satisfies_star(S)) {
        CheckBuilder down("(Ann I)_* = I_* -> rho(bot)");
        for (ElemSet I : lattice_ideals(L))
            down.expect_lazy(star_down(R, lattice_ann_ideal(L, I)) == residuum(S, star_down(R, I), r0),
                             [&] { return "at I = " + ideal_label(L, I); });
        down.into(rep);
    } else {
        rep.skip("(Ann I)_* = I_* -> rho(bot)", "condition (star) fails");
    }

    if (is_semiprime(S)) {
        CheckBuilder sp("Ann(t*) = (t^perp)* when semiprime");
        for (int t = 0; t < S.size(); ++t)
            sp.expect_lazy(lattice_ann_ideal(L, star_up(R, t)) == star_up(R, S.annihilator(t)),
                           [&] { return "at t = " + S.label(t); });
        sp.into(rep);
    } else {
        rep.skip("Ann(t*) = (t^perp)* when semiprime", "not semiprime");
    }
    return rep;
}

// ---- induced lattice maps ----

struct InducedMorphism {
    Reticulation src, dst;
    std::vector<int> map; // L(src) -> L(dst)
};

inline InducedMorphism induced_lattice_morphism(const StructureMorphism& m) {
    if (!is_admissible(m)) throw Error(ErrorKind::NotAdmissible, m.src.name() + " -> " + m.dst.name());
    InducedMorphism f{reticulate(m.src), reticulate(m.dst), {}};
    f.map.assign(f.src.lat.size(), -1);
    for (int a = 0; a < m.src.size(); ++a) {
        int x = f.src.lambda[a], y = f.dst.lambda[m.fwd[a]];
        if (f.map[x] >= 0 && f.map[x] != y)
            throw Error(ErrorKind::NotWellDefined, "class of '" + m.src.label(a) + "' has two images", {a});
        f.map[x] = y;
    }
    return f;
}

inline bool is_lattice_morphism(const FiniteLattice& A, const FiniteLattice& B, const std::vector<int>& f) {
    if (f[A.bot()] != B.bot() || f[A.top()] != B.top()) return false;
    for (int x = 0; x < A.size(); ++x)
        for (int y = 0; y < A.size(); ++y)
            if (f[A.join(x, y)] != B.join(f[x], f[y]) || f[A.meet(x, y)] != B.meet(f[x], f[y])) return false;
    return true;
}

// Ann(a) = Ann(b) implies Ann(f a) = Ann(f b).
inline bool is_stone_morphism(const FiniteLattice& A, const FiniteLattice& B, const std::vector<int>& f) {
    for (int x = 0; x < A.size(); ++x)
        for (int y = 0; y < A.size(); ++y)
            if (lattice_ann(A, x) == lattice_ann(A, y) && lattice_ann(B, f[x]) != lattice_ann(B, f[y])) return false;
    return true;
}

} // namespace mispec
