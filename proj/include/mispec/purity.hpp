#pragma once

#include <vector>

#include "mi.hpp"

namespace mispec {

// t is pure when t v a^perp = top for every a <= t.
inline bool is_pure(const MiStructure& S, int t) {
    bool ok = true;
    for_each_bit(S.lat().down(t), [&](int a) {
        if (S.join(t, S.annihilator(a)) != S.top()) ok = false;
    });
    return ok;
}

inline ElemSet pure_elements(const MiStructure& S) {
    ElemSet s = 0;
    for (int t = 0; t < S.size(); ++t)
        if (is_pure(S, t)) s |= bit(t);
    return s;
}

// Same as purity with a^perp replaced by a -> rho(bot).
inline bool is_w_pure(const MiStructure& S, int t) {
    const int r0 = rho0(S);
    bool ok = true;
    for_each_bit(S.lat().down(t), [&](int a) {
        if (S.join(t, residuum(S, a, r0)) != S.top()) ok = false;
    });
    return ok;
}

inline ElemSet w_pure_elements(const MiStructure& S) {
    ElemSet s = 0;
    for (int t = 0; t < S.size(); ++t)
        if (is_w_pure(S, t)) s |= bit(t);
    return s;
}

// O(t): join of a with [a,b] = bot for some b not below t.
inline int op_O(const MiStructure& S, int t) {
    int r = S.bot();
    for (int a = 0; a < S.size(); ++a)
        for (int b = 0; b < S.size(); ++b)
            if (!S.leq(b, t) && S.comm(a, b) == S.bot()) {
                r = S.join(r, a);
                break;
            }
    return r;
}

inline int op_Ker(const MiStructure& S, int t) {
    int r = S.bot();
    for_each_bit(S.lat().down(t), [&](int a) {
        if (S.join(t, S.annihilator(a)) == S.top()) r = S.join(r, a);
    });
    return r;
}

inline int op_Vir(const MiStructure& S, int t) { return S.lat().join_all(S.lat().down(t) & pure_elements(S)); }

inline int op_Ker_w(const MiStructure& S, int t) {
    const int r0 = rho0(S);
    int r = S.bot();
    for (int a = 0; a < S.size(); ++a)
        if (S.join(t, residuum(S, a, r0)) == S.top()) r = S.join(r, a);
    return r;
}

// Defined on primes: join of a <= phi with a -> rho(bot) not below phi.
inline int op_O_w(const MiStructure& S, int phi) {
    const int r0 = rho0(S);
    int r = S.bot();
    for_each_bit(S.lat().down(phi), [&](int a) {
        if (!S.leq(residuum(S, a, r0), phi)) r = S.join(r, a);
    });
    return r;
}

struct PurityTables {
    ElemSet pure = 0;
    ElemSet w_pure = 0;
    std::vector<int> O, Ker, Vir, Ker_w;
    std::vector<int> O_w; // -1 off the spectrum
};

inline PurityTables operators(const MiStructure& S) {
    PurityTables P;
    P.pure = pure_elements(S);
    P.w_pure = w_pure_elements(S);
    for (int t = 0; t < S.size(); ++t) {
        P.O.push_back(op_O(S, t));
        P.Ker.push_back(op_Ker(S, t));
        P.Vir.push_back(S.lat().join_all(S.lat().down(t) & P.pure));
        P.Ker_w.push_back(op_Ker_w(S, t));
        P.O_w.push_back(is_prime(S, t) ? op_O_w(S, t) : -1);
    }
    return P;
}

// Primes of the frame of pure elements.
inline ElemSet purely_prime(const MiStructure& S) {
    const ElemSet pure = pure_elements(S);
    ElemSet out = 0;
    for_each_bit(pure, [&](int p) {
        if (p == S.top()) return;
        bool prime = true;
        for_each_bit(pure, [&](int x) {
            for_each_bit(pure, [&](int y) {
                if (S.leq(S.comm(x, y), p) && !S.leq(x, p) && !S.leq(y, p)) prime = false;
            });
        });
        if (prime) out |= bit(p);
    });
    return out;
}

// ---- lattice side ----

// I v Ann(x) = L for every x in I.
inline bool is_sigma_ideal(const FiniteLattice& L, ElemSet I) {
    bool ok = true;
    for_each_bit(I, [&](int x) {
        if (ideal_join(L, I, lattice_ann(L, x)) != L.all()) ok = false;
    });
    return ok;
}

inline std::vector<ElemSet> sigma_ideals(const FiniteLattice& L) {
    require_distributive(L);
    std::vector<ElemSet> out;
    for (ElemSet I : lattice_ideals(L))
        if (is_sigma_ideal(L, I)) out.push_back(I);
    return out;
}

inline ElemSet sigma_of(const FiniteLattice& L, ElemSet I) {
    ElemSet s = 0;
    for (int x = 0; x < L.size(); ++x)
        if (ideal_join(L, I, lattice_ann(L, x)) == L.all()) s |= bit(x);
    return s;
}

// O(P) = {x : Ann(x) not inside P}
inline ElemSet O_ideal(const FiniteLattice& L, ElemSet P) {
    ElemSet s = 0;
    for (int x = 0; x < L.size(); ++x)
        if (!subset(lattice_ann(L, x), P)) s |= bit(x);
    return s;
}

} // namespace mispec
