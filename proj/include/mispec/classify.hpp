#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "generators.hpp"
#include "mi.hpp"
#include "purity.hpp"
#include "reticulation.hpp"
#include "spectra.hpp"
#include "topology.hpp"

namespace mispec {

// ---- lattice classes ----

enum class LatticeClass { Normal, Conormal, BNormal, Stone };

inline const char* to_string(LatticeClass c) {
    switch (c) {
    case LatticeClass::Normal: return "normal";
    case LatticeClass::Conormal: return "conormal";
    case LatticeClass::BNormal: return "b-normal";
    case LatticeClass::Stone: return "stone";
    }
    return "?";
}

inline bool lattice_class(const FiniteLattice& L, LatticeClass which) {
    require_distributive(L);
    const int n = L.size();
    const ElemSet B = lattice_boolean_center(L).members;
    auto normal_over = [&](ElemSet pool) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (L.join(a, b) != L.top()) continue;
                bool found = false;
                for_each_bit(pool, [&](int e) {
                    if (found || L.join(a, e) != L.top()) return;
                    for_each_bit(pool, [&](int f) {
                        if (!found && L.join(b, f) == L.top() && L.meet(e, f) == L.bot()) found = true;
                    });
                });
                if (!found) return false;
            }
        return true;
    };
    switch (which) {
    case LatticeClass::Normal: return normal_over(L.all());
    case LatticeClass::BNormal: return normal_over(B);
    case LatticeClass::Conormal:
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (L.meet(a, b) != L.bot()) continue;
                bool found = false;
                for (int x = 0; x < n && !found; ++x)
                    if (L.meet(a, x) == L.bot())
                        for (int y = 0; y < n && !found; ++y)
                            found = L.meet(b, y) == L.bot() && L.join(x, y) == L.top();
                if (!found) return false;
            }
        return true;
    case LatticeClass::Stone:
        // Ann(x) = (e] for some complemented e
        for (int x = 0; x < n; ++x) {
            const ElemSet ann = lattice_ann(L, x);
            bool found = false;
            for_each_bit(B, [&](int e) { found = found || L.down(e) == ann; });
            if (!found) return false;
        }
        return true;
    }
    return false;
}

// Every complemented element of [x,1] has the form e v x with e complemented in L.
inline bool lattice_id_cblp(const FiniteLattice& L) {
    require_distributive(L);
    const ElemSet B = lattice_boolean_center(L).members;
    for (int x = 0; x < L.size(); ++x) {
        const ElemSet interval = L.up(x);
        bool ok = true;
        for_each_bit(interval, [&](int c) {
            bool complemented = false;
            for_each_bit(interval, [&](int d) {
                complemented = complemented || (L.join(c, d) == L.top() && L.meet(c, d) == x);
            });
            if (!complemented) return;
            bool lifted = false;
            for_each_bit(B, [&](int e) { lifted = lifted || L.join(e, x) == c; });
            ok = ok && lifted;
        });
        if (!ok) return false;
    }
    return true;
}

// ---- algebra classes ----

inline bool is_hyperarchimedean(const MiStructure& S) {
    const ElemSet B = center_set(S);
    bool ok = true;
    for_each_bit(join_irreducibles(S.lat()), [&](int a) {
        bool hit = false;
        int x = a;
        for (;;) {
            const int next = S.comm(x, x);
            if (has(B, next)) {
                hit = true;
                break;
            }
            if (next == x) break;
            x = next;
        }
        ok = ok && hit;
    });
    return ok;
}

// t v v = top admits a, b from pool with t v a = v v b = top and [a,b] = bot.
inline bool covers_separated(const MiStructure& S, ElemSet pool) {
    const int n = S.size();
    std::vector<ElemSet> covering(n, 0);
    for (int t = 0; t < n; ++t)
        for_each_bit(pool, [&](int a) {
            if (S.join(t, a) == S.top()) covering[t] |= bit(a);
        });
    for (int t = 0; t < n; ++t)
        for (int v = t; v < n; ++v) {
            if (S.join(t, v) != S.top()) continue;
            bool found = false;
            for_each_bit(covering[t], [&](int a) {
                if (found) return;
                for_each_bit(covering[v], [&](int b) { found = found || S.comm(a, b) == S.bot(); });
            });
            if (!found) return false;
        }
    return true;
}

inline bool is_congruence_normal(const MiStructure& S) { return covers_separated(S, S.all()); }
inline bool is_congruence_bnormal(const MiStructure& S) { return covers_separated(S, center_set(S)); }

// Every quotient map is onto on Boolean centers.
inline bool has_cblp(const MiStructure& S) {
    const ElemSet B = center_set(S);
    for (int t = 0; t < S.size(); ++t) {
        const Quotient q = quotient(S, t);
        ElemSet img = 0;
        for_each_bit(B, [&](int a) { img |= bit(q.proj[a]); });
        if (!subset(center_set(q.structure), img)) return false;
    }
    return true;
}

inline bool is_mp(const MiStructure& S) {
    bool ok = true;
    for_each_bit(S.primes(), [&](int p) { ok = ok && count(S.lat().down(p) & S.minimal_primes()) == 1; });
    return ok;
}

inline bool is_pf(const MiStructure& S) {
    bool ok = true;
    for_each_bit(join_irreducibles(S.lat()), [&](int a) { ok = ok && is_pure(S, S.annihilator(a)); });
    return ok;
}

inline bool is_pf_all_elements(const MiStructure& S) {
    for (int a = 0; a < S.size(); ++a)
        if (!is_pure(S, S.annihilator(a))) return false;
    return true;
}

inline bool is_purified(const MiStructure& S) {
    const ElemSet B = center_set(S);
    const auto mins = members(S.minimal_primes());
    for (int phi : mins)
        for (int psi : mins) {
            if (phi == psi) continue;
            bool found = false;
            for_each_bit(B, [&](int a) { found = found || (S.leq(a, phi) && S.leq(S.annihilator(a), psi)); });
            if (!found) return false;
        }
    return true;
}

inline bool is_pp(const MiStructure& S) {
    const ElemSet B = center_set(S);
    bool ok = true;
    for_each_bit(join_irreducibles(S.lat()), [&](int a) { ok = ok && has(B, S.annihilator(a)); });
    return ok;
}

inline bool is_pp_all_elements(const MiStructure& S) {
    const ElemSet B = center_set(S);
    for (int a = 0; a < S.size(); ++a)
        if (!has(B, S.annihilator(a))) return false;
    return true;
}

// ---- evaluation context with cached derived data ----

class ClassContext {
public:
    explicit ClassContext(MiStructure s) : S(std::move(s)) {}

    const MiStructure S;

    bool memo(const std::string& key, const std::function<bool()>& f) {
        auto it = flags_.find(key);
        if (it != flags_.end()) return it->second;
        const bool v = f();
        flags_.emplace(key, v);
        return v;
    }

    const Reticulation& ret() { return lazy(ret_, [&] { return reticulate(S); }); }
    const PurityTables& ops() { return lazy(ops_, [&] { return operators(S); }); }
    const FiniteTopology& zar() { return lazy(zar_, [&] { return zariski(S); }); }
    const FiniteTopology& flat_top() { return lazy(flat_, [&] { return flat(S); }); }
    const FiniteTopology& patch_top() { return lazy(patch_, [&] { return patch(S); }); }
    const FiniteTopology& max_z() { return lazy(max_z_, [&] { return max_space(zar(), S); }); }
    const FiniteTopology& min_z() { return lazy(min_z_, [&] { return min_space(zar(), S); }); }
    const FiniteTopology& min_f() { return lazy(min_f_, [&] { return min_space(flat_top(), S); }); }
    const PierceSpectrum& pierce_sp() { return lazy(pierce_, [&] { return pierce(S); }); }
    const MiStructure& rho0_quotient() { return lazy(rho0_q_, [&] { return quotient(S, rho0(S)).structure; }); }
    ElemSet center() { return pierce_sp().center; }
    int r0() { return rho0(S); }

    bool star() { return memo("star", [&] { return satisfies_star(S); }); }
    bool semiprime() { return is_semiprime(S); }
    bool normal() { return memo("normal", [&] { return is_congruence_normal(S); }); }
    bool bnormal() { return memo("b-normal", [&] { return is_congruence_bnormal(S); }); }
    bool mp() { return memo("mp", [&] { return is_mp(S); }); }
    bool pf() { return memo("pf", [&] { return is_pf(S); }); }
    bool purified() { return memo("purified", [&] { return is_purified(S); }); }
    bool pp() { return memo("pp", [&] { return is_pp(S); }); }
    bool hyperarchimedean() { return memo("hyperarchimedean", [&] { return is_hyperarchimedean(S); }); }

private:
    template <class T, class F>
    const T& lazy(std::optional<T>& slot, F&& make) {
        if (!slot) slot.emplace(make());
        return *slot;
    }

    std::map<std::string, bool> flags_;
    std::optional<Reticulation> ret_;
    std::optional<PurityTables> ops_;
    std::optional<FiniteTopology> zar_, flat_, patch_, max_z_, min_z_, min_f_;
    std::optional<PierceSpectrum> pierce_;
    std::optional<MiStructure> rho0_q_;
};

// ---- condition evaluators ----

using Evaluator = std::function<bool(ClassContext&)>;

namespace detail {

template <class P>
bool all_distinct_pairs(ElemSet s, P&& pred) {
    const auto v = members(s);
    for (int x : v)
        for (int y : v)
            if (x != y && !pred(x, y)) return false;
    return true;
}

template <class P>
bool all_elements(const MiStructure& S, P&& pred) {
    for (int a = 0; a < S.size(); ++a)
        if (!pred(a)) return false;
    return true;
}

template <class P>
bool all_pairs(const MiStructure& S, P&& pred) {
    for (int a = 0; a < S.size(); ++a)
        for (int b = 0; b < S.size(); ++b)
            if (!pred(a, b)) return false;
    return true;
}

// Every open set is a union of family members contained in it, and members are open.
inline bool is_basis(const FiniteTopology& T, const std::vector<ElemSet>& family) {
    for (ElemSet u : family)
        if (!T.is_open(u)) return false;
    for (ElemSet o : T.opens) {
        ElemSet cover = 0;
        for (ElemSet u : family)
            if (subset(u, o)) cover |= u;
        if (cover != o) return false;
    }
    return true;
}

inline ElemSet positions_of(const FiniteTopology& T, ElemSet carrier) {
    ElemSet r = 0;
    for (int i = 0; i < T.size(); ++i)
        if (has(carrier, T.points[i])) r |= bit(i);
    return r;
}

inline bool product_purified_agrees(ClassContext& c, const MiStructure& T) {
    const MiStructure P = product(c.S, T);
    return is_purified(P) == (c.purified() && is_purified(T));
}

} // namespace detail

inline const std::map<std::string, Evaluator>& evaluators() {
    using namespace detail;
    static const std::map<std::string, Evaluator> table = [] {
        std::map<std::string, Evaluator> m;
        // classes
        m["semiprime"] = [](ClassContext& c) { return c.semiprime(); };
        m["star"] = [](ClassContext& c) { return c.star(); };
        m["hyperarchimedean"] = [](ClassContext& c) { return c.hyperarchimedean(); };
        m["normal"] = [](ClassContext& c) { return c.normal(); };
        m["b-normal"] = [](ClassContext& c) { return c.bnormal(); };
        m["cblp"] = [](ClassContext& c) { return c.memo("cblp", [&] { return has_cblp(c.S); }); };
        m["mp"] = [](ClassContext& c) { return c.mp(); };
        m["pf"] = [](ClassContext& c) { return c.pf(); };
        m["pf-all-elements"] = [](ClassContext& c) { return is_pf_all_elements(c.S); };
        m["purified"] = [](ClassContext& c) { return c.purified(); };
        m["pp"] = [](ClassContext& c) { return c.pp(); };
        m["pp-all-elements"] = [](ClassContext& c) { return is_pp_all_elements(c.S); };
        m["semiprime-and-mp"] = [](ClassContext& c) { return c.semiprime() && c.mp(); };
        m["quotient-rho0-hyperarchimedean"] = [](ClassContext& c) { return is_hyperarchimedean(c.rho0_quotient()); };
        m["quotient-rho0-mp"] = [](ClassContext& c) { return is_mp(c.rho0_quotient()); };
        m["quotient-rho0-purified"] = [](ClassContext& c) { return is_purified(c.rho0_quotient()); };
        m["quotient-jacobson-hyperarchimedean"] = [](ClassContext& c) {
            return is_hyperarchimedean(quotient(c.S, jacobson(c.S, c.S.bot())).structure);
        };

        // reticulation side
        m["lattice-boolean"] = [](ClassContext& c) { return is_boolean_lattice(c.ret().lat); };
        m["lattice-normal"] = [](ClassContext& c) { return lattice_class(c.ret().lat, LatticeClass::Normal); };
        m["lattice-b-normal"] = [](ClassContext& c) { return lattice_class(c.ret().lat, LatticeClass::BNormal); };
        m["lattice-conormal"] = [](ClassContext& c) { return lattice_class(c.ret().lat, LatticeClass::Conormal); };
        m["lattice-stone"] = [](ClassContext& c) { return lattice_class(c.ret().lat, LatticeClass::Stone); };
        m["lattice-id-cblp"] = [](ClassContext& c) { return lattice_id_cblp(c.ret().lat); };
        m["lattice-min-retraction"] = [](ClassContext& c) {
            const FiniteLattice& L = c.ret().lat;
            const FiniteTopology St = stone_spectrum(L);
            ElemSet gens = 0;
            for (ElemSet P : minimal_prime_ideals(L)) gens |= bit(L.join_all(P));
            return continuous_retraction(St, positions_of(St, gens)).has_value();
        };

        // spectra
        m["spec-equals-max"] = [](ClassContext& c) { return c.S.primes() == c.S.maximals(); };
        m["prime-separation-rho0"] = [](ClassContext& c) {
            const ElemSet J = join_irreducibles(c.S.lat());
            const int r0 = c.r0();
            return all_distinct_pairs(c.S.primes(), [&](int phi, int psi) {
                bool found = false;
                for_each_bit(J, [&](int a) {
                    if (found || c.S.leq(a, phi)) return;
                    for_each_bit(J, [&](int b) {
                        found = found || (!c.S.leq(b, psi) && c.S.leq(c.S.comm(a, b), r0));
                    });
                });
                return found;
            });
        };
        m["zariski-hausdorff"] = [](ClassContext& c) { return is_hausdorff(c.zar()); };
        m["zariski-boolean"] = [](ClassContext& c) { return is_boolean_space(c.zar()); };
        m["zariski-equals-patch"] = [](ClassContext& c) { return c.zar().opens == c.patch_top().opens; };
        m["flat-hausdorff"] = [](ClassContext& c) { return is_hausdorff(c.flat_top()); };
        m["flat-boolean"] = [](ClassContext& c) { return is_boolean_space(c.flat_top()); };
        m["zariski-equals-flat"] = [](ClassContext& c) { return c.zar().opens == c.flat_top().opens; };
        m["zariski-normal-space"] = [](ClassContext& c) { return is_normal_space(c.zar()); };
        m["zariski-strongly-zero-dimensional"] = [](ClassContext& c) {
            return is_strongly_zero_dimensional(c.zar());
        };
        m["zariski-strongly-zero-dimensional-cover-form"] = [](ClassContext& c) {
            return is_strongly_zero_dimensional_cover_form(c.zar());
        };
        m["flat-normal-space"] = [](ClassContext& c) { return is_normal_space(c.flat_top()); };
        m["finitely-trivial"] = [](ClassContext&) { return true; };

        // maximal elements
        m["unique-max-above-prime"] = [](ClassContext& c) {
            bool ok = true;
            for_each_bit(c.S.primes(), [&](int p) { ok = ok && count(c.S.lat().up(p) & c.S.maximals()) == 1; });
            return ok;
        };
        m["max-separation"] = [](ClassContext& c) {
            return all_distinct_pairs(c.S.maximals(), [&](int phi, int psi) {
                for (int a = 0; a < c.S.size(); ++a)
                    if (!c.S.leq(a, phi))
                        for (int b = 0; b < c.S.size(); ++b)
                            if (!c.S.leq(b, psi) && c.S.comm(a, b) == c.S.bot()) return true;
                return false;
            });
        };
        m["max-hausdorff-embedding"] = [](ClassContext& c) {
            const FiniteTopology& Z = c.zar();
            return all_distinct_pairs(c.S.maximals(), [&](int phi, int psi) {
                return (open_hull(Z, bit(Z.position(phi))) & open_hull(Z, bit(Z.position(psi)))) == 0;
            });
        };
        m["max-retraction"] = [](ClassContext& c) {
            return continuous_retraction(c.zar(), spec_positions(c.S, c.S.maximals())).has_value();
        };
        m["lambda-closed-max"] = [](ClassContext& c) {
            bool ok = true;
            for_each_bit(c.S.maximals(), [&](int phi) { ok = ok && c.zar().is_closed(lambda_set(c.S, phi)); });
            return ok;
        };
        m["vir-max-covers"] = [](ClassContext& c) {
            return all_distinct_pairs(c.S.maximals(), [&](int phi, int psi) {
                return c.S.join(c.ops().Vir[phi], c.ops().Vir[psi]) == c.S.top();
            });
        };
        m["vir-reflects-max"] = [](ClassContext& c) {
            return all_elements(c.S, [&](int t) {
                bool ok = true;
                for_each_bit(c.S.maximals(), [&](int phi) {
                    ok = ok && (!c.S.leq(c.ops().Vir[t], phi) || c.S.leq(t, phi));
                });
                return ok;
            });
        };
        m["max-v-vir"] = [](ClassContext& c) {
            return all_elements(c.S, [&](int t) {
                return (c.S.lat().up(t) & c.S.maximals()) == (c.S.lat().up(c.ops().Vir[t]) & c.S.maximals());
            });
        };
        m["rad-vir"] = [](ClassContext& c) {
            return all_elements(c.S, [&](int t) { return jacobson(c.S, t) == jacobson(c.S, c.ops().Vir[t]); });
        };
        m["eta-homeomorphism"] = [](ClassContext& c) {
            const FiniteTopology& M = c.max_z();
            const FiniteTopology P = pure_spectrum(c.S);
            std::vector<int> f;
            for (int phi : M.points) f.push_back(P.position(c.ops().Vir[phi]));
            return is_homeomorphism(M, P, f);
        };
        m["max-zero-dimensional"] = [](ClassContext& c) { return is_zero_dimensional(c.max_z()); };
        m["max-strongly-zero-dimensional"] = [](ClassContext& c) {
            return is_strongly_zero_dimensional(c.max_z());
        };
        m["max-normal-space"] = [](ClassContext& c) { return is_normal_space(c.max_z()); };
        m["max-boolean"] = [](ClassContext& c) { return is_boolean_space(c.max_z()); };
        m["normal-and-max-zero-dimensional"] = [](ClassContext& c) {
            return c.normal() && is_zero_dimensional(c.max_z());
        };
        m["normal-and-max-boolean"] = [](ClassContext& c) { return c.normal() && is_boolean_space(c.max_z()); };
        m["normal-and-max-totally-disconnected"] = [](ClassContext& c) {
            return c.normal() && is_totally_disconnected(c.max_z());
        };
        m["max-center-separation"] = [](ClassContext& c) {
            return all_distinct_pairs(c.S.maximals(), [&](int phi, int psi) {
                bool found = false;
                for_each_bit(c.center(), [&](int a) {
                    found = found || (c.S.leq(a, phi) && c.S.leq(c.S.annihilator(a), psi));
                });
                return found;
            });
        };
        m["max-center-separation-o"] = [](ClassContext& c) {
            return all_distinct_pairs(c.S.maximals(), [&](int phi, int psi) {
                bool found = false;
                for_each_bit(c.center(), [&](int a) {
                    found = found || (c.S.leq(a, c.ops().O[phi]) && c.S.leq(c.S.annihilator(a), c.ops().O[psi]));
                });
                return found;
            });
        };
        m["max-center-basis"] = [](ClassContext& c) {
            const FiniteTopology& M = c.max_z();
            std::vector<ElemSet> family;
            for_each_bit(c.center(), [&](int a) {
                ElemSet u = 0;
                for (int i = 0; i < M.size(); ++i)
                    if (!c.S.leq(a, M.points[i])) u |= bit(i);
                family.push_back(u);
            });
            return is_basis(M, family);
        };
        m["s-max-homeomorphism"] = [](ClassContext& c) {
            const FiniteTopology& M = c.max_z();
            const FiniteTopology& P = c.pierce_sp().topology;
            std::vector<int> f;
            for (int phi : M.points) f.push_back(P.position(s_map(c.S, phi)));
            return is_homeomorphism(M, P, f);
        };

        // operators on maximal elements
        m["o-max-unique"] = [](ClassContext& c) {
            bool ok = true;
            for_each_bit(c.S.maximals(), [&](int phi) {
                ok = ok && (c.S.lat().up(c.ops().O[phi]) & c.S.maximals()) == bit(phi);
            });
            return ok;
        };
        m["ker-max-above-literal"] = [](ClassContext& c) {
            bool ok = true;
            for_each_bit(c.S.maximals(), [&](int phi) {
                ok = ok && c.S.lat().up(c.ops().Ker[phi]) == (bit(phi) | bit(c.S.top()));
            });
            return ok;
        };
        m["ker-max-above-maximal"] = [](ClassContext& c) {
            bool ok = true;
            for_each_bit(c.S.maximals(), [&](int phi) {
                ok = ok && (c.S.lat().up(c.ops().Ker[phi]) & c.S.maximals()) == bit(phi);
            });
            return ok;
        };
        m["ker-below-max"] = [](ClassContext& c) {
            return all_elements(c.S, [&](int t) {
                bool ok = true;
                for_each_bit(c.S.maximals(), [&](int phi) {
                    ok = ok && c.S.leq(c.ops().Ker[t], phi) == c.S.leq(t, phi);
                });
                return ok;
            });
        };
        m["vir-equals-ker"] = [](ClassContext& c) {
            return all_elements(c.S, [&](int t) { return c.ops().Vir[t] == c.ops().Ker[t]; });
        };
        m["vir-below-max"] = [](ClassContext& c) {
            return all_elements(c.S, [&](int t) {
                bool ok = true;
                for_each_bit(c.S.maximals(), [&](int phi) {
                    ok = ok && c.S.leq(c.ops().Vir[t], phi) == c.S.leq(t, phi);
                });
                return ok;
            });
        };
        m["vir-preserves-joins"] = [](ClassContext& c) {
            const auto& V = c.ops().Vir;
            return V[c.S.bot()] == c.S.bot() &&
                   all_pairs(c.S, [&](int a, int b) { return V[c.S.join(a, b)] == c.S.join(V[a], V[b]); });
        };
        m["vir-preserves-covers"] = [](ClassContext& c) {
            const auto& V = c.ops().Vir;
            return all_pairs(c.S, [&](int a, int b) {
                return c.S.join(a, b) != c.S.top() || c.S.join(V[a], V[b]) == c.S.top();
            });
        };

        // minimal primes
        m["min-primes-cover"] = [](ClassContext& c) {
            return all_distinct_pairs(c.S.minimal_primes(),
                                      [&](int phi, int psi) { return c.S.join(phi, psi) == c.S.top(); });
        };
        m["flat-min-retraction"] = [](ClassContext& c) {
            return continuous_retraction(c.flat_top(), spec_positions(c.S, c.S.minimal_primes())).has_value();
        };
        m["min-retraction"] = [](ClassContext& c) {
            return continuous_retraction(c.zar(), spec_positions(c.S, c.S.minimal_primes())).has_value();
        };
        m["min-v-flat-closed"] = [](ClassContext& c) {
            bool ok = true;
            for_each_bit(c.S.minimal_primes(), [&](int phi) {
                ok = ok && c.flat_top().is_closed(spec_positions(c.S, c.S.lat().up(phi) & c.S.primes()));
            });
            return ok;
        };
        m["min-primes-w-pure"] = [](ClassContext& c) { return subset(c.S.minimal_primes(), c.ops().w_pure); };
        m["min-primes-pure"] = [](ClassContext& c) { return subset(c.S.minimal_primes(), c.ops().pure); };
        m["min-iff-radical-o"] = [](ClassContext& c) {
            bool ok = true;
            for_each_bit(c.S.primes(), [&](int phi) {
                ok = ok && has(c.S.minimal_primes(), phi) == (c.S.radical(c.ops().O[phi]) == phi);
            });
            return ok;
        };
        m["min-o-covers"] = [](ClassContext& c) {
            return all_distinct_pairs(c.S.minimal_primes(), [&](int phi, int psi) {
                return c.S.join(c.ops().O[phi], c.ops().O[psi]) == c.S.top();
            });
        };
        m["mp-and-min-flat-totally-disconnected"] = [](ClassContext& c) {
            return c.mp() && is_totally_disconnected(c.min_f());
        };
        m["min-center-basis-flat"] = [](ClassContext& c) {
            const FiniteTopology& M = c.min_f();
            std::vector<ElemSet> family;
            for_each_bit(c.center(), [&](int a) {
                ElemSet u = 0;
                for (int i = 0; i < M.size(); ++i)
                    if (c.S.leq(a, M.points[i])) u |= bit(i);
                family.push_back(u);
            });
            return is_basis(M, family);
        };
        m["min-primes-regular"] = [](ClassContext& c) {
            return subset(c.S.minimal_primes(), c.pierce_sp().regulars);
        };
        m["min-equals-sp"] = [](ClassContext& c) { return c.S.minimal_primes() == c.pierce_sp().max_regulars; };
        m["mp-and-pure-regular"] = [](ClassContext& c) {
            return c.mp() && subset(c.ops().pure, c.pierce_sp().regulars);
        };

        // residuals and annihilators
        m["rho0-residual-covers"] = [](ClassContext& c) {
            const int r0 = c.r0();
            return all_pairs(c.S, [&](int a, int b) {
                return !c.S.leq(c.S.comm(a, b), r0) ||
                       c.S.join(residuum(c.S, a, r0), residuum(c.S, b, r0)) == c.S.top();
            });
        };
        m["rho0-residual-join"] = [](ClassContext& c) {
            const int r0 = c.r0();
            return all_pairs(c.S, [&](int a, int b) {
                return c.S.join(residuum(c.S, a, r0), residuum(c.S, b, r0)) == residuum(c.S, c.S.comm(a, b), r0);
            });
        };
        m["rho0-residual-w-pure"] = [](ClassContext& c) {
            return all_elements(c.S, [&](int a) { return has(c.ops().w_pure, residuum(c.S, a, c.r0())); });
        };
        m["ann-covers"] = [](ClassContext& c) {
            return all_pairs(c.S, [&](int a, int b) {
                return c.S.comm(a, b) != c.S.bot() ||
                       c.S.join(c.S.annihilator(a), c.S.annihilator(b)) == c.S.top();
            });
        };
        m["ann-join"] = [](ClassContext& c) {
            return all_pairs(c.S, [&](int a, int b) {
                return c.S.join(c.S.annihilator(a), c.S.annihilator(b)) == c.S.annihilator(c.S.comm(a, b));
            });
        };
        m["ann-radical-invariant"] = [](ClassContext& c) {
            return all_elements(c.S, [&](int a) { return c.S.annihilator(a) == c.S.annihilator(c.S.radical(a)); });
        };
        m["o-prime-spec"] = [](ClassContext& c) {
            bool ok = true;
            for_each_bit(c.S.primes(), [&](int phi) { ok = ok && is_prime(c.S, c.ops().O[phi]); });
            return ok;
        };
        m["o-prime-max"] = [](ClassContext& c) {
            bool ok = true;
            for_each_bit(c.S.maximals(), [&](int phi) { ok = ok && is_prime(c.S, c.ops().O[phi]); });
            return ok;
        };
        m["o-constant-on-chains"] = [](ClassContext& c) {
            return all_distinct_pairs(c.S.primes(), [&](int phi, int psi) {
                return !c.S.leq(phi, psi) || c.ops().O[phi] == c.ops().O[psi];
            });
        };

        // products with small semiprime purified factors
        m["product-purified-c2"] = [](ClassContext& c) { return product_purified_agrees(c, chain_frame(2)); };
        m["product-purified-c3"] = [](ClassContext& c) { return product_purified_agrees(c, chain_frame(3)); };
        m["product-purified-b4"] = [](ClassContext& c) { return product_purified_agrees(c, boolean_frame(2)); };
        return m;
    }();
    return table;
}

// ---- theorem catalog ----

enum class Guard { None, Star, Semiprime, PF, ProductFits };

inline const char* to_string(Guard g) {
    switch (g) {
    case Guard::None: return "none";
    case Guard::Star: return "condition (star)";
    case Guard::Semiprime: return "semiprime";
    case Guard::PF: return "PF";
    case Guard::ProductFits: return "semiprime with products within 64 elements";
    }
    return "?";
}

inline bool guard_holds(ClassContext& c, Guard g) {
    switch (g) {
    case Guard::None: return true;
    case Guard::Star: return c.star();
    case Guard::Semiprime: return c.semiprime();
    case Guard::PF: return c.pf();
    case Guard::ProductFits: return c.semiprime() && c.S.size() * 4 <= kMaxElements;
    }
    return false;
}

struct ConditionSpec {
    std::string label;
    std::string evaluator;
    bool finitely_trivial = false;
};

// Holds asserts `from` alone; Implies and Iff relate two conditions.
struct Relation {
    enum class Kind { Holds, Implies, Iff } kind;
    int from = 0;
    int to = 0;
    Guard guard = Guard::None;
};

struct TheoremSpec {
    std::string id;
    std::string title;
    Guard precondition = Guard::None;
    std::vector<ConditionSpec> conditions;
    std::vector<Relation> relations;
};

namespace detail {

inline std::vector<Relation> all_equivalent(int n, Guard g = Guard::None) {
    std::vector<Relation> r;
    for (int i = 1; i < n; ++i) r.push_back({Relation::Kind::Iff, 0, i, g});
    return r;
}

inline Relation implies(int a, int b, Guard g = Guard::None) { return {Relation::Kind::Implies, a, b, g}; }

// 0 implies the rest; 1..n-1 are mutually equivalent; back to 0 only under g.
inline std::vector<Relation> equivalent_but_first(int n, Guard g) {
    std::vector<Relation> r{{Relation::Kind::Implies, 0, 1, Guard::None}, {Relation::Kind::Implies, 1, 0, g}};
    for (int i = 2; i < n; ++i) r.push_back({Relation::Kind::Iff, 1, i, Guard::None});
    return r;
}
inline Relation iff(int a, int b, Guard g = Guard::None) { return {Relation::Kind::Iff, a, b, g}; }
inline Relation holds(int a) { return {Relation::Kind::Holds, a, 0, Guard::None}; }

} // namespace detail

inline const std::vector<TheoremSpec>& theorem_catalog() {
    using namespace detail;
    static const std::vector<TheoremSpec> cat = [] {
        std::vector<TheoremSpec> c;
        c.push_back({"boolean-reticulation",
                     "hyperarchimedean iff the reticulation is Boolean; converse needs (star)",
                     Guard::None,
                     {{"hyperarchimedean", "hyperarchimedean"},
                      {"S/rho(bot) hyperarchimedean", "quotient-rho0-hyperarchimedean"},
                      {"Spec = Max", "spec-equals-max"},
                      {"L(S) Boolean", "lattice-boolean"}},
                     equivalent_but_first(4, Guard::Star)});
        c.push_back({"zariski-hausdorff",
                     "hyperarchimedean iff the Zariski spectrum is Hausdorff; converse needs (star)",
                     Guard::None,
                     {{"hyperarchimedean", "hyperarchimedean"},
                      {"distinct primes separated modulo rho(bot)", "prime-separation-rho0"},
                      {"Spec_Z Hausdorff", "zariski-hausdorff"},
                      {"Spec_Z Boolean", "zariski-boolean"},
                      {"Zariski = patch", "zariski-equals-patch"},
                      {"Spec_F Hausdorff", "flat-hausdorff"},
                      {"Spec_F Boolean", "flat-boolean"},
                      {"Zariski = flat", "zariski-equals-flat"}},
                     equivalent_but_first(8, Guard::Star)});
        c.push_back({"max-flat-compact",
                     "Max_F compact iff S/Rad hyperarchimedean",
                     Guard::None,
                     {{"Max_F compact", "finitely-trivial", true},
                      {"S/Rad(S) hyperarchimedean", "quotient-jacobson-hyperarchimedean"}},
                     all_equivalent(2)});
        c.push_back({"normal-reticulation",
                     "normal implies L(S) normal; equivalence under (star)",
                     Guard::None,
                     {{"normal", "normal"}, {"L(S) normal", "lattice-normal"}},
                     {implies(0, 1), iff(0, 1, Guard::Star)}});
        c.push_back({"normal-maximal-properties",
                     "consequences of normality at maximal elements",
                     Guard::None,
                     {{"normal", "normal"},
                      {"phi the only maximal above O(phi)", "o-max-unique"},
                      {"the maximals above Ker(phi) are phi alone", "ker-max-above-maximal"},
                      {"Ker(theta) <= phi iff theta <= phi", "ker-below-max"},
                      {"Vir = Ker", "vir-equals-ker"},
                      {"Vir(theta) <= phi iff theta <= phi", "vir-below-max"}},
                     {implies(0, 1), implies(0, 2), implies(0, 3), implies(0, 4), implies(0, 5)}});
        c.push_back({"normal-virtual-joins",
                     "normal iff Vir preserves joins",
                     Guard::None,
                     {{"normal", "normal"},
                      {"Vir preserves joins", "vir-preserves-joins"},
                      {"Vir preserves covers of top", "vir-preserves-covers"}},
                     all_equivalent(3)});
        c.push_back({"normal-maximal-separation",
                     "normal, separated maximals, Hausdorff embedding, unique maximal above primes",
                     Guard::None,
                     {{"normal", "normal"},
                      {"distinct maximals separated by annihilating pairs", "max-separation"},
                      {"Max has disjoint Zariski neighbourhoods in Spec", "max-hausdorff-embedding"},
                      {"unique maximal above each prime", "unique-max-above-prime"}},
                     {implies(0, 1), implies(1, 2), implies(2, 3), implies(3, 0, Guard::Star)}});
        c.push_back({"normal-characterization",
                     "normality through the Zariski spectrum and Vir",
                     Guard::Star,
                     {{"normal", "normal"},
                      {"Spec_Z normal space", "zariski-normal-space"},
                      {"continuous retraction Spec_Z -> Max_Z", "max-retraction"},
                      {"Lambda(phi) closed for maximal phi", "lambda-closed-max"},
                      {"Vir(phi) v Vir(psi) = top for distinct maximals", "vir-max-covers"},
                      {"Vir(theta) <= phi implies theta <= phi", "vir-reflects-max"},
                      {"Max meets V(theta) and V(Vir theta) equally", "max-v-vir"},
                      {"Rad(theta) = Rad(Vir theta)", "rad-vir"},
                      {"phi -> Vir(phi) homeomorphism onto the pure spectrum", "eta-homeomorphism"}},
                     all_equivalent(9)});
        c.push_back({"bnormal-reticulation",
                     "B-normal implies L(S) B-normal; equivalence under (star)",
                     Guard::None,
                     {{"B-normal", "b-normal"}, {"L(S) B-normal", "lattice-b-normal"}},
                     {implies(0, 1), iff(0, 1, Guard::Star)}});
        c.push_back({"cblp-characterization",
                     "CBLP, Id-CBLP, B-normality and strong zero-dimensionality",
                     Guard::Star,
                     {{"CBLP", "cblp"},
                      {"L(S) Id-CBLP", "lattice-id-cblp"},
                      {"L(S) B-normal", "lattice-b-normal"},
                      {"B-normal", "b-normal"},
                      {"Spec_Z strongly zero-dimensional", "zariski-strongly-zero-dimensional"},
                      {"Spec_Z strongly zero-dimensional, cover form", "zariski-strongly-zero-dimensional-cover-form"}},
                     all_equivalent(6)});
        c.push_back({"max-space-dimension",
                     "Max_Z zero-dimensional, strongly zero-dimensional, normal and Boolean agree",
                     Guard::None,
                     {{"Max_Z zero-dimensional", "max-zero-dimensional"},
                      {"Max_Z strongly zero-dimensional", "max-strongly-zero-dimensional"},
                      {"Max_Z normal", "max-normal-space"},
                      {"Max_Z Boolean", "max-boolean"}},
                     all_equivalent(4)});
        c.push_back({"bnormal-characterization",
                     "B-normality through maximal elements and the Pierce spectrum",
                     Guard::Star,
                     {{"B-normal", "b-normal"},
                      {"distinct maximals separated by a complemented element", "max-center-separation"},
                      {"normal and Max_Z zero-dimensional", "normal-and-max-zero-dimensional"},
                      {"normal and Max_Z Boolean", "normal-and-max-boolean"},
                      {"D(alpha) on Max, alpha complemented, is a basis", "max-center-basis"},
                      {"s restricted to Max is a homeomorphism onto Sp", "s-max-homeomorphism"},
                      {"normal and Max_Z totally disconnected", "normal-and-max-totally-disconnected"},
                      {"separation inside O(phi), O(psi)", "max-center-separation-o"}},
                     all_equivalent(8)});
        c.push_back({"mp-reticulation",
                     "mp iff L(S) conormal",
                     Guard::None,
                     {{"mp", "mp"}, {"L(S) conormal", "lattice-conormal"}},
                     all_equivalent(2)});
        c.push_back({"mp-characterization",
                     "mp through minimal primes and the flat topology",
                     Guard::None,
                     {{"mp", "mp"},
                      {"distinct minimal primes join to top", "min-primes-cover"},
                      {"S/rho(bot) mp", "quotient-rho0-mp"},
                      {"continuous flat retraction Spec -> Min", "flat-min-retraction"},
                      {"Spec_F normal space", "flat-normal-space"},
                      {"V(phi) flat-closed for minimal phi", "min-v-flat-closed"}},
                     all_equivalent(6)});
        c.push_back({"mp-w-pure-minimal",
                     "mp iff minimal primes are w-pure",
                     Guard::None,
                     {{"mp", "mp"}, {"minimal primes w-pure", "min-primes-w-pure"}},
                     all_equivalent(2)});
        c.push_back({"mp-residual",
                     "mp through residuals into rho(bot)",
                     Guard::None,
                     {{"mp", "mp"},
                      {"[a,b] <= rho(bot) gives covering residuals", "rho0-residual-covers"},
                      {"residuals of a and b join to the residual of [a,b]", "rho0-residual-join"},
                      {"a -> rho(bot) w-pure", "rho0-residual-w-pure"}},
                     all_equivalent(4)});
        c.push_back({"minimal-prime-radical-o",
                     "a prime is minimal iff rho(O(phi)) = phi",
                     Guard::Star,
                     {{"minimal iff rho(O(phi)) = phi, for every prime", "min-iff-radical-o"}},
                     {holds(0)}});
        c.push_back({"mp-o-operator",
                     "mp iff O separates minimal primes",
                     Guard::Star,
                     {{"mp", "mp"}, {"O(phi) v O(psi) = top for distinct minimal primes", "min-o-covers"}},
                     all_equivalent(2)});
        c.push_back({"pf-semiprime-mp",
                     "PF iff semiprime and mp",
                     Guard::None,
                     {{"PF", "pf"}, {"semiprime and mp", "semiprime-and-mp"}},
                     all_equivalent(2)});
        c.push_back({"pf-minimal-pure",
                     "for semiprime S, PF iff minimal primes are pure",
                     Guard::Semiprime,
                     {{"PF", "pf"}, {"minimal primes pure", "min-primes-pure"}},
                     all_equivalent(2)});
        c.push_back({"pf-annihilator",
                     "PF through annihilators",
                     Guard::None,
                     {{"PF", "pf"},
                      {"[a,b] = bot gives a^perp v b^perp = top", "ann-covers"},
                      {"a^perp v b^perp = [a,b]^perp", "ann-join"},
                      {"a^perp pure for every a", "pf-all-elements"}},
                     all_equivalent(4)});
        // The last condition only comes back to PF through semiprimeness; zn:4 shows it cannot alone.
        c.push_back({"pf-o-prime",
                     "PF iff O sends primes to primes",
                     Guard::None,
                     {{"PF", "pf"},
                      {"O(phi) prime for every prime", "o-prime-spec"},
                      {"O(phi) prime for every maximal", "o-prime-max"},
                      {"phi <= psi primes give O(phi) = O(psi)", "o-constant-on-chains"}},
                     {iff(0, 1), iff(0, 2), implies(0, 3), implies(3, 0, Guard::Semiprime)}});
        c.push_back({"purified-radical-quotient",
                     "purified iff S/rho(bot) purified",
                     Guard::Star,
                     {{"purified", "purified"}, {"S/rho(bot) purified", "quotient-rho0-purified"}},
                     all_equivalent(2)});
        c.push_back({"purified-characterization",
                     "purified through minimal primes, Pierce spectrum and regular elements",
                     Guard::Semiprime,
                     {{"purified", "purified"},
                      {"mp and Min_F totally disconnected", "mp-and-min-flat-totally-disconnected"},
                      {"V(alpha) on Min, alpha complemented, is a basis of Min_F", "min-center-basis-flat"},
                      {"minimal primes regular", "min-primes-regular"},
                      {"Min = Sp", "min-equals-sp"},
                      {"mp and pure elements regular", "mp-and-pure-regular"}},
                     all_equivalent(6)});
        c.push_back({"purified-product",
                     "a product of semiprime factors is purified iff each factor is",
                     Guard::ProductFits,
                     {{"agreement with C2", "product-purified-c2"},
                      {"agreement with C3", "product-purified-c3"},
                      {"agreement with B4", "product-purified-b4"}},
                     {holds(0), holds(1), holds(2)}});
        c.push_back({"pp-definition-forms",
                     "PP over join-irreducibles iff over all elements",
                     Guard::None,
                     {{"PP", "pp"}, {"a^perp complemented for every a", "pp-all-elements"}},
                     all_equivalent(2)});
        c.push_back({"pp-stone",
                     "PP implies L(S) Stone; equivalence when semiprime",
                     Guard::None,
                     {{"PP", "pp"}, {"L(S) Stone", "lattice-stone"}},
                     {implies(0, 1), iff(0, 1, Guard::Semiprime)}});
        c.push_back({"ann-radical",
                     "a^perp = rho(a)^perp when semiprime",
                     Guard::Semiprime,
                     {{"a^perp = rho(a)^perp for every a", "ann-radical-invariant"}},
                     {holds(0)}});
        c.push_back({"pp-characterization",
                     "for semiprime S: PP, Stone, conormal, mp and PF agree",
                     Guard::Semiprime,
                     {{"PP", "pp"},
                      {"L(S) Stone", "lattice-stone"},
                      {"L(S) conormal and Min_Id,Z compact", "lattice-conormal"},
                      {"mp and Min_Z compact", "mp"},
                      {"PF and Min_Z compact", "pf"}},
                     all_equivalent(5)});
        c.push_back({"pp-retraction",
                     "for PF S: PP, Stone and continuous retractions onto Min",
                     Guard::PF,
                     {{"PP", "pp"},
                      {"L(S) Stone", "lattice-stone"},
                      {"retraction Spec_Id,Z(L) -> Min_Id,Z(L)", "lattice-min-retraction"},
                      {"retraction Spec_Z -> Min_Z", "min-retraction"},
                      {"Min_Z compact", "finitely-trivial", true}},
                     all_equivalent(5)});
        c.push_back({"class-implications",
                     "implications between the algebra classes",
                     Guard::None,
                     {{"B-normal", "b-normal"},
                      {"normal", "normal"},
                      {"PP", "pp"},
                      {"semiprime", "semiprime"},
                      {"purified", "purified"},
                      {"hyperarchimedean", "hyperarchimedean"},
                      {"PF", "pf"},
                      {"semiprime and mp", "semiprime-and-mp"},
                      {"mp", "mp"},
                      {"PF and Min_Z compact", "pf"}},
                     {implies(0, 1), implies(2, 3), implies(2, 4), implies(5, 4), iff(6, 7), implies(4, 8),
                      implies(9, 4)}});
        return c;
    }();
    return cat;
}

inline const TheoremSpec& find_theorem(const std::string& id) {
    for (const auto& t : theorem_catalog())
        if (t.id == id) return t;
    throw Error(ErrorKind::UnknownTheorem, "'" + id + "'");
}

// ---- verification ----

struct ConditionValue {
    std::string label;
    bool value = false;
    bool finitely_trivial = false;
};

struct TheoremRow {
    std::string id;
    std::string title;
    std::vector<ConditionValue> conditions;
    bool agreement = true;
    bool skipped = false;
    std::string skip_reason;
    std::vector<std::string> unasserted; // relations whose guard failed
    std::string failed;                  // first failing relation
};

inline std::string describe(const TheoremSpec& t, const Relation& r) {
    const auto& a = t.conditions[r.from].label;
    switch (r.kind) {
    case Relation::Kind::Holds: return a;
    case Relation::Kind::Implies: return a + " => " + t.conditions[r.to].label;
    case Relation::Kind::Iff: return a + " <=> " + t.conditions[r.to].label;
    }
    return {};
}

inline TheoremRow verify_theorem(ClassContext& c, const TheoremSpec& t) {
    TheoremRow row{t.id, t.title, {}, true, false, {}, {}, {}};
    if (!guard_holds(c, t.precondition)) {
        row.skipped = true;
        row.skip_reason = std::string("needs ") + to_string(t.precondition);
        return row;
    }
    const auto& ev = evaluators();
    for (const auto& cs : t.conditions) {
        auto it = ev.find(cs.evaluator);
        if (it == ev.end()) throw Error(ErrorKind::InternalInvariantFailure, "no evaluator '" + cs.evaluator + "'");
        row.conditions.push_back({cs.label, it->second(c), cs.finitely_trivial});
    }
    for (const auto& r : t.relations) {
        if (!guard_holds(c, r.guard)) {
            row.unasserted.push_back(describe(t, r) + " (needs " + to_string(r.guard) + ")");
            continue;
        }
        const bool a = row.conditions[r.from].value;
        bool ok = a;
        if (r.kind == Relation::Kind::Implies) ok = !a || row.conditions[r.to].value;
        if (r.kind == Relation::Kind::Iff) ok = a == row.conditions[r.to].value;
        if (!ok && row.agreement) {
            row.agreement = false;
            row.failed = describe(t, r);
        }
    }
    return row;
}

inline TheoremRow verify_theorem(const MiStructure& S, const std::string& id) {
    ClassContext c(S);
    return verify_theorem(c, find_theorem(id));
}

struct ClassReport {
    std::string instance;
    std::vector<std::pair<std::string, bool>> verdicts;
    std::vector<TheoremRow> theorems;

    bool agreement() const {
        for (const auto& r : theorems)
            if (!r.agreement) return false;
        return true;
    }
};

inline std::vector<std::pair<std::string, bool>> class_verdicts(ClassContext& c) {
    return {{"hyperarchimedean", c.hyperarchimedean()},
            {"normal", c.normal()},
            {"b-normal", c.bnormal()},
            {"cblp", evaluators().at("cblp")(c)},
            {"mp", c.mp()},
            {"pf", c.pf()},
            {"purified", c.purified()},
            {"pp", c.pp()},
            {"semiprime", c.semiprime()},
            {"star", c.star()}};
}

// Empty filter means the whole catalog.
inline ClassReport classify(const MiStructure& S, const std::vector<std::string>& theorem_ids = {}) {
    ClassContext c(S);
    ClassReport rep{S.name(), class_verdicts(c), {}};
    if (theorem_ids.empty()) {
        for (const auto& t : theorem_catalog()) rep.theorems.push_back(verify_theorem(c, t));
    } else {
        for (const auto& id : theorem_ids) rep.theorems.push_back(verify_theorem(c, find_theorem(id)));
    }
    return rep;
}

// Worker count from MI_SPECTRA_THREADS, else hardware concurrency.
inline unsigned harness_threads() {
    if (const char* env = std::getenv("MI_SPECTRA_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Reports come back in input order whatever the thread count.
inline std::vector<ClassReport> classify_many(const std::vector<MiStructure>& xs,
                                              const std::vector<std::string>& theorem_ids = {},
                                              unsigned threads = harness_threads()) {
    std::vector<ClassReport> out(xs.size());
    std::vector<std::exception_ptr> errors(xs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < xs.size();) {
            try {
                out[i] = classify(xs[i], theorem_ids);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(xs.size()));
    if (n <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < n; ++k) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace mispec
