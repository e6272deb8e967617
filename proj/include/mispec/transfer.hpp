#pragma once

#include <set>
#include <string>
#include <vector>

#include "purity.hpp"
#include "reticulation.hpp"
#include "spectra.hpp"

namespace mispec {

// Pure elements against sigma-ideals, w-purity, Ker/O transfers and annihilators.
inline Report transfer_checks(const Reticulation& R) {
    const MiStructure& S = R.source;
    const FiniteLattice& L = R.lat;
    const bool star = satisfies_star(S);
    const bool semiprime = is_semiprime(S);
    const PurityTables P = operators(S);
    Report rep{"transfer " + S.name(), {}};
    auto at = [&](int t) { return "at " + S.label(t); };
    auto at_ideal = [&](ElemSet I) { return "at " + ideal_label(L, I); };

    // pure elements and sigma-ideals
    {
        CheckBuilder sigma("pure elements go to sigma-ideals");
        CheckBuilder inj("pure-to-sigma map is injective");
        CheckBuilder frame("pure-to-sigma map preserves joins and meets");
        std::set<ElemSet> imgs;
        const auto pure = members(P.pure);
        for (int t : pure) {
            sigma.expect_lazy(is_sigma_ideal(L, star_up(R, t)), [&] { return at(t); });
            imgs.insert(star_up(R, t));
            for (int c : pure)
                frame.expect_lazy(star_up(R, S.join(t, c)) == ideal_join(L, star_up(R, t), star_up(R, c)) &&
                                      star_up(R, S.meet(t, c)) == (star_up(R, t) & star_up(R, c)),
                                  [&] { return "at (" + S.label(t) + "," + S.label(c) + ")"; });
        }
        inj.expect(imgs.size() == pure.size(), "two pure elements share an image");
        for (auto* c : {&sigma, &inj, &frame}) c->into(rep);
        if (star || semiprime) {
            CheckBuilder onto(star ? "pure-to-sigma map is onto, under (star)" : "pure-to-sigma map is onto, semiprime");
            auto sig = sigma_ideals(L);
            onto.expect(std::set<ElemSet>(sig.begin(), sig.end()) == imgs,
                        std::to_string(sig.size()) + " sigma-ideals, " + std::to_string(imgs.size()) + " images");
            onto.into(rep);
        } else {
            rep.skip("pure-to-sigma map is onto", "neither (star) nor semiprime");
        }
    }

    // w-purity
    {
        CheckBuilder up("w-pure elements go to sigma-ideals");
        for_each_bit(P.w_pure, [&](int t) { up.expect_lazy(is_sigma_ideal(L, star_up(R, t)), [&] { return at(t); }); });
        CheckBuilder down("sigma-ideals come down to w-pure elements");
        for (ElemSet J : sigma_ideals(L))
            down.expect_lazy(has(P.w_pure, star_down(R, J)), [&] { return at_ideal(J); });
        up.into(rep);
        down.into(rep);
    }

    // Ker and sigma
    {
        CheckBuilder a("(Ker~ t)* = sigma(t*)");
        for (int t = 0; t < S.size(); ++t)
            a.expect_lazy(star_up(R, P.Ker_w[t]) == sigma_of(L, star_up(R, t)), [&] { return at(t); });
        CheckBuilder b("sigma(I)_* = Ker~(I_*)");
        for (ElemSet I : lattice_ideals(L))
            b.expect_lazy(star_down(R, sigma_of(L, I)) == P.Ker_w[star_down(R, I)], [&] { return at_ideal(I); });
        a.into(rep);
        b.into(rep);
        if (semiprime) {
            CheckBuilder c("(Ker t)* = sigma(t*) and sigma(I)_* = Ker(I_*), semiprime");
            for (int t = 0; t < S.size(); ++t)
                c.expect_lazy(star_up(R, P.Ker[t]) == sigma_of(L, star_up(R, t)), [&] { return at(t); });
            for (ElemSet I : lattice_ideals(L))
                c.expect_lazy(star_down(R, sigma_of(L, I)) == P.Ker[star_down(R, I)], [&] { return at_ideal(I); });
            c.into(rep);
        } else {
            rep.skip("(Ker t)* = sigma(t*) and sigma(I)_* = Ker(I_*), semiprime", "not semiprime");
        }
    }

    // O operators on primes
    {
        CheckBuilder a("O(phi*) = (O~ phi)*");
        for_each_bit(S.primes(), [&](int phi) {
            a.expect_lazy(O_ideal(L, star_up(R, phi)) == star_up(R, P.O_w[phi]), [&] { return at(phi); });
        });
        CheckBuilder b("O(P)_* = O~(P_*)");
        for (ElemSet Q : prime_ideals(L))
            b.expect_lazy(star_down(R, O_ideal(L, Q)) == P.O_w[star_down(R, Q)], [&] { return at_ideal(Q); });
        a.into(rep);
        b.into(rep);
        if (semiprime) {
            CheckBuilder c("O(phi*) = (O phi)* and O(P)_* = O(P_*), semiprime");
            for_each_bit(S.primes(), [&](int phi) {
                c.expect_lazy(O_ideal(L, star_up(R, phi)) == star_up(R, P.O[phi]), [&] { return at(phi); });
            });
            for (ElemSet Q : prime_ideals(L))
                c.expect_lazy(star_down(R, O_ideal(L, Q)) == P.O[star_down(R, Q)], [&] { return at_ideal(Q); });
            c.into(rep);
        } else {
            rep.skip("O(phi*) = (O phi)* and O(P)_* = O(P_*), semiprime", "not semiprime");
        }
    }

    // O(P) as an intersection of primes below, lattice side
    {
        CheckBuilder c("O(P) = meet of the prime ideals inside P");
        auto primes = prime_ideals(L);
        for (ElemSet Q : primes) {
            ElemSet inter = L.all();
            for (ElemSet Q2 : primes)
                if (subset(Q2, Q)) inter &= Q2;
            c.expect_lazy(O_ideal(L, Q) == inter, [&] { return at_ideal(Q); });
        }
        c.into(rep);
    }

    if (semiprime) {
        CheckBuilder c("O(phi) = meet of the primes below phi, semiprime");
        for_each_bit(S.primes(), [&](int phi) {
            c.expect_lazy(P.O[phi] == S.lat().meet_all(S.lat().down(phi) & S.primes()), [&] { return at(phi); });
        });
        c.into(rep);
    } else {
        rep.skip("O(phi) = meet of the primes below phi, semiprime", "not semiprime");
    }
    rep.append(ann_transfer(R));
    return rep;
}

// For every t: p_t flat iff t pure, when the commutator is associative.
inline Report flat_quotient_check(const MiStructure& S) {
    Report rep{"flat quotients " + S.name(), {}};
    CheckBuilder crit("flat projection iff residual criterion");
    for (int t = 0; t < S.size(); ++t) {
        bool criterion = true;
        for (int a = 0; a < S.size() && criterion; ++a)
            for (int chi = 0; chi < S.size() && criterion; ++chi)
                criterion = S.leq(residuum(S, a, S.join(chi, t)), S.join(residuum(S, a, chi), t));
        crit.expect_lazy(is_flat(canonical_projection(S, t)) == criterion, [&] { return "at " + S.label(t); });
    }
    crit.into(rep);
    if (!is_associative(S)) {
        rep.skip("flat projection iff pure", "commutator is not associative");
        return rep;
    }
    CheckBuilder c("flat projection iff pure");
    for (int t = 0; t < S.size(); ++t)
        c.expect_lazy(is_flat(canonical_projection(S, t)) == is_pure(S, t), [&] { return "at " + S.label(t); });
    c.into(rep);
    return rep;
}

// Pierce spectra on both sides, for semiprime structures.
inline Report pierce_transfer_check(const Reticulation& R) {
    const MiStructure& S = R.source;
    if (!is_semiprime(S)) throw Error(ErrorKind::PreconditionSemiprimeFailed, S.name());
    const FiniteLattice& L = R.lat;
    Report rep{"Pierce transfer " + S.name(), {}};
    const PierceSpectrum PS = pierce(S);
    const LatticePierce PL = lattice_pierce(L);

    CheckBuilder reg("regular iff star-up is a regular ideal");
    CheckBuilder fixed("regular elements are radical");
    for (int t = 0; t < S.size(); ++t) {
        reg.expect_lazy(has(PS.regulars, t) == has(PL.regular_generators, L.join_all(star_up(R, t))),
                        [&] { return "at " + S.label(t); });
        if (has(PS.regulars, t)) fixed.expect_lazy(S.radical(t) == t, [&] { return "at " + S.label(t); });
    }
    CheckBuilder down("regular ideals come down to regular elements");
    for_each_bit(PL.regular_generators, [&](int g) {
        down.expect_lazy(has(PS.regulars, star_down(R, L.down(g))), [&] { return "at (" + L.name(g) + "]"; });
    });

    CheckBuilder homeo("star-up is a homeomorphism of Pierce spectra");
    std::vector<int> f;
    for (int x : PS.topology.points) f.push_back(PL.topology.position(L.join_all(star_up(R, x))));
    homeo.expect(is_homeomorphism(PS.topology, PL.topology, f),
                 std::to_string(PS.topology.size()) + " vs " + std::to_string(PL.topology.size()) + " points");
    for (int g : PL.topology.points) {
        int t = star_down(R, L.down(g));
        homeo.expect_lazy(has(PS.max_regulars, t) && L.join_all(star_up(R, t)) == g,
                          [&] { return "inverse fails at (" + L.name(g) + "]"; });
    }
    for (auto* c : {&reg, &fixed, &down, &homeo}) c->into(rep);
    return rep;
}

} // namespace mispec
