// Property tests over a seeded random corpus: random distributive frames, random
// commutator tables on small lattices, and products/quotients of builtin atoms.

#include <doctest.h>

#include <map>
#include <random>

#include "mispec/classify.hpp"
#include "mispec/instances.hpp"
#include "mispec/serialize.hpp"
#include "mispec/transfer.hpp"
#include "oracles.hpp"

using namespace mispec;

namespace {

// lattice of down-sets of a random poset on k points
FiniteLattice random_distributive(std::mt19937& g, int k) {
    std::vector<std::vector<bool>> lt(k, std::vector<bool>(k, false));
    std::bernoulli_distribution coin(0.35);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) lt[i][j] = coin(g);
    for (int m = 0; m < k; ++m)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (lt[i][m] && lt[m][j]) lt[i][j] = true;
    std::vector<unsigned> downs;
    for (unsigned s = 0; s < (1u << k); ++s) {
        bool ok = true;
        for (int j = 0; j < k; ++j)
            if (s >> j & 1)
                for (int i = 0; i < k; ++i)
                    if (lt[i][j] && !(s >> i & 1)) ok = false;
        if (ok) downs.push_back(s);
    }
    const int n = static_cast<int>(downs.size());
    std::vector<std::string> names;
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i) {
        names.push_back("d" + std::to_string(downs[i]));
        for (int j = 0; j < n; ++j) leq[i][j] = (downs[i] & downs[j]) == downs[i];
    }
    return FiniteLattice::from_order(std::move(names), leq);
}

// Random values on pairs of join-irreducibles, extended by joins; nullopt if invalid.
std::optional<MiStructure> random_commutator(std::mt19937& g, const FiniteLattice& L, const std::string& name) {
    const auto J = members(join_irreducibles(L));
    std::map<std::pair<int, int>, int> t;
    for (std::size_t i = 0; i < J.size(); ++i)
        for (std::size_t j = i; j < J.size(); ++j) {
            const auto below = members(L.down(L.meet(J[i], J[j])));
            // lean towards the meet so the unit law has a chance
            std::uniform_int_distribution<std::size_t> pick(0, below.size() + 1);
            const std::size_t k = pick(g);
            const int v = k < below.size() ? below[k] : L.meet(J[i], J[j]);
            t[{J[i], J[j]}] = t[{J[j], J[i]}] = v;
        }
    const int n = L.size();
    std::vector<int> comm(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int r = L.bot();
            for (int x : J)
                if (L.leq(x, a))
                    for (int y : J)
                        if (L.leq(y, b)) r = L.join(r, t[{x, y}]);
            comm[a * n + b] = r;
        }
    try {
        return validate_mi(L, comm, name);
    } catch (const Error&) {
        return std::nullopt;
    }
}

const std::vector<MiStructure>& corpus() {
    static const std::vector<MiStructure> xs = [] {
        std::vector<MiStructure> out;
        std::mt19937 g(20261015);
        for (int i = 0; i < 60; ++i) {
            const FiniteLattice L = random_distributive(g, 2 + i % 4);
            out.push_back(frame_from_lattice(L, "frame#" + std::to_string(i)));
            for (int tries = 0; tries < 40; ++tries)
                if (auto S = random_commutator(g, L, "table#" + std::to_string(i))) {
                    out.push_back(*S);
                    break;
                }
        }
        // a few non-distributive modular lattices with tables
        const FiniteLattice M3 = build_lattice({"0", "a", "b", "c", "1"},
                                               {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
        const FiniteLattice M3p = build_lattice({"0", "a", "b", "c", "m", "1"},
                                                {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "m"}, {"b", "m"}, {"c", "m"}, {"m", "1"}});
        const FiniteLattice B4p = build_lattice({"0", "z", "a", "b", "m", "1"},
                                                {{"0", "z"}, {"z", "a"}, {"z", "b"}, {"a", "m"}, {"b", "m"}, {"m", "1"}});
        const FiniteLattice OneB4 =
            build_lattice({"0", "c", "a", "b", "1"}, {{"0", "c"}, {"c", "a"}, {"c", "b"}, {"a", "1"}, {"b", "1"}});
        for (const auto* L : {&M3, &M3p, &B4p, &OneB4})
            for (int tries = 0; tries < 400; ++tries)
                if (auto S = random_commutator(g, *L, "modular#" + std::to_string(tries))) out.push_back(*S);
        const std::vector<std::string> atoms = {"zn:2", "zn:4", "zn:8", "zn:9", "zn:6", "chain:2", "chain:3", "boolean:1"};
        std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
        for (int i = 0; i < 25; ++i) {
            const std::string s = "product:" + atoms[pick(g)] + "," + atoms[pick(g)];
            const MiStructure P = parse_instance(s);
            out.push_back(P);
            std::uniform_int_distribution<int> el(0, P.size() - 1);
            out.push_back(quotient(P, el(g)).structure);
        }
        for (const auto& S : bundled_instances()) out.push_back(S);
        return out;
    }();
    return xs;
}

template <class F>
void for_corpus(F&& f) {
    for (const auto& S : corpus()) {
        CAPTURE(S.name());
        f(S);
    }
}

} // namespace

TEST_CASE("corpus is non-trivial") {
    CHECK(corpus().size() > 150);
    int nonassoc = 0;
    for (const auto& S : corpus()) nonassoc += !is_associative(S);
    CHECK(nonassoc > 0);
}

TEST_CASE("lattice rebuilt from cover pairs has the same tables") {
    for_corpus([](const MiStructure& S) {
        const FiniteLattice& L = S.lat();
        std::vector<std::pair<std::string, std::string>> covers;
        for (auto [a, b] : cover_pairs(L)) covers.emplace_back(L.name(a), L.name(b));
        const FiniteLattice M = build_lattice(L.names(), covers);
        for (int a = 0; a < L.size(); ++a)
            for (int b = 0; b < L.size(); ++b) {
                CHECK(M.join(a, b) == L.join(a, b));
                CHECK(M.meet(a, b) == L.meet(a, b));
            }
    });
}

TEST_CASE("complements are unique in distributive lattices") {
    for_corpus([](const MiStructure& S) {
        if (is_distributive(S.lat())) CHECK_FALSE(lattice_boolean_center(S.lat()).has_ambiguity());
    });
}

TEST_CASE("radical: library, brute force and iterates agree") {
    for_corpus([](const MiStructure& S) {
        for (int t = 0; t < S.size(); ++t) {
            CHECK(S.radical(t) == oracle::radical_bf(S, t));
            CHECK(radical_via_iterates(S, t) == S.radical(t));
        }
        ElemSet P = 0;
        for (int p : oracle::primes_bf(S)) P |= bit(p);
        CHECK(S.primes() == P);
        CHECK(subset(S.maximals(), S.primes()));
    });
}

TEST_CASE("commutator and radical laws") {
    for_corpus([](const MiStructure& S) {
        const int h = S.lat().height();
        for (int a = 0; a < S.size(); ++a)
            for (int b = 0; b < S.size(); ++b) {
                const int ra = S.radical(a), rb = S.radical(b);
                if (S.join(a, b) == S.top()) CHECK(S.comm(a, b) == S.meet(a, b));
                CHECK(S.radical(S.meet(a, b)) == S.meet(ra, rb));
                CHECK(S.radical(S.comm(a, b)) == S.meet(ra, rb));
                CHECK((S.join(ra, rb) == S.top()) == (S.join(a, b) == S.top()));
                if (S.join(a, b) == S.top() && S.comm(a, b) == S.bot()) {
                    CHECK(has(center_set(S), a));
                    CHECK(has(center_set(S), b));
                }
                const int j = S.join(a, b);
                for (int n = 1; n <= h; ++n)
                    CHECK(S.leq(comm_iterate(S, j, n * n), S.join(comm_iterate(S, a, n), comm_iterate(S, b, n))));
            }
    });
}

TEST_CASE("residuation law") {
    for_corpus([](const MiStructure& S) {
        for (int a = 0; a < S.size(); ++a)
            for (int b = 0; b < S.size(); ++b) {
                const int r = residuum(S, a, b);
                for (int x = 0; x < S.size(); ++x) CHECK(S.leq(x, r) == S.leq(S.comm(x, a), b));
            }
    });
}

TEST_CASE("reticulation invariants") {
    for_corpus([](const MiStructure& S) {
        const Reticulation R = reticulate(S);
        CHECK(is_distributive(R.lat));
        CHECK(reticulation_defect(R).empty());
        for (int t = 0; t < S.size(); ++t) {
            CHECK(star_down(R, star_up(R, t)) == S.radical(t));
            if (is_prime(S, t)) CHECK(is_prime_ideal(R.lat, star_up(R, t)));
            for (int c = 0; c < S.size(); ++c) {
                CHECK(star_up(R, S.comm(t, c)) == (star_up(R, t) & star_up(R, c)));
                CHECK(star_up(R, S.meet(t, c)) == (star_up(R, t) & star_up(R, c)));
            }
        }
        for (ElemSet I : lattice_ideals(R.lat)) {
            CHECK(star_up(R, star_down(R, I)) == I);
            if (is_prime_ideal(R.lat, I)) CHECK(is_prime(S, star_down(R, I)));
            for (ElemSet J : lattice_ideals(R.lat))
                CHECK(star_down(R, ideal_join(R.lat, I, J)) ==
                      S.radical(S.join(star_down(R, I), star_down(R, J))));
        }
    });
}

TEST_CASE("a distributive meet-frame is its own reticulation") {
    for_corpus([](const MiStructure& S) {
        const Reticulation R = reticulate(S);
        const MiStructure F = frame_from_lattice(R.lat, "L");
        const Reticulation RF = reticulate(F);
        CHECK(RF.lat.size() == F.size());
        CHECK(find_lattice_isomorphism(RF.lat, R.lat));
    });
}

TEST_CASE("structural and transfer reports") {
    for_corpus([](const MiStructure& S) {
        const Reticulation R = reticulate(S);
        for (const Report& rep : {check_spec_homeomorphism(R), check_frame_iso(R), ann_transfer(R), transfer_checks(R),
                                  flat_quotient_check(S)}) {
            for (const auto& c : rep.checks) {
                CAPTURE(c.id);
                CAPTURE(c.detail);
                CHECK(c.status != Status::Fail);
            }
        }
        if (satisfies_star(S)) CHECK(check_boolean_iso(R).ok());
        if (is_semiprime(S)) CHECK(pierce_transfer_check(R).ok());
    });
}

TEST_CASE("theorem catalog agrees") {
    const auto reps = classify_many(corpus());
    for (const auto& r : reps)
        for (const auto& t : r.theorems) {
            CAPTURE(r.instance);
            CAPTURE(t.id);
            CAPTURE(t.failed);
            CHECK(t.agreement);
        }
}

TEST_CASE("spectral closures") {
    for_corpus([](const MiStructure& S) {
        const FiniteTopology Z = zariski(S), F = flat(S), P = patch(S);
        for (ElemSet o : Z.opens) CHECK(P.is_open(o));
        for (ElemSet o : F.opens) CHECK(P.is_open(o));
        CHECK(is_discrete(P));
        for (int i = 0; i < Z.size(); ++i) {
            const int phi = Z.points[i];
            CHECK(closure(F, bit(i)) == lambda_set(S, phi));
            CHECK(closure(Z, bit(i)) == spec_positions(S, S.lat().up(phi) & S.primes()));
        }
        // any subset: flat closure is the union of the Lambda sets
        for (ElemSet s = 0; s <= Z.full() && Z.size() <= 8; ++s) {
            ElemSet u = 0;
            for_each_bit(s, [&](int i) { u |= lambda_set(S, Z.points[i]); });
            CHECK(closure(F, s) == u);
        }
    });
}

TEST_CASE("Pierce: s_map onto Sp and continuous") {
    for_corpus([](const MiStructure& S) {
        const PierceSpectrum Pc = pierce(S);
        const FiniteTopology Z = zariski(S), F = flat(S);
        std::vector<int> f;
        ElemSet hit = 0;
        for (int phi : Z.points) {
            const int s = s_map(S, phi);
            CHECK(has(Pc.max_regulars, s));
            f.push_back(Pc.topology.position(s));
            hit |= bit(s);
        }
        CHECK(hit == Pc.max_regulars);
        CHECK(is_continuous(Z, Pc.topology, f));
        CHECK(is_continuous(F, Pc.topology, f));
        const ElemSet pure = pure_elements(S);
        for_each_bit(Pc.regulars, [&](int t) {
            CHECK(has(pure, t));
            if (is_semiprime(S)) CHECK(S.radical(t) == t);
        });
    });
}

TEST_CASE("regular elements need not be radical without semiprimeness") {
    // bot is an empty join of center elements, and rho(bot) = 2 in zn:4
    const MiStructure S = zn_structure(4);
    CHECK(has(pierce(S).regulars, S.bot()));
    CHECK(S.radical(S.bot()) != S.bot());
}

TEST_CASE("purity laws") {
    for_corpus([](const MiStructure& S) {
        const ElemSet pure = pure_elements(S), wpure = w_pure_elements(S);
        const int r0 = rho0(S);
        for_each_bit(pure, [&](int c) {
            for (int t = 0; t < S.size(); ++t) CHECK(S.comm(t, c) == S.meet(t, c));
            if (is_semiprime(S)) CHECK(S.radical(c) == c);
        });
        for (int t = 0; t < S.size(); ++t) {
            const int ker = op_Ker(S, t), kerw = op_Ker_w(S, t);
            for_each_bit(S.lat().down(t), [&](int a) {
                CHECK(S.leq(a, ker) == (S.join(t, S.annihilator(a)) == S.top()));
                CHECK(S.leq(a, kerw) == (S.join(t, residuum(S, a, r0)) == S.top()));
            });
        }
        for_each_bit(wpure, [&](int a) {
            for_each_bit(wpure, [&](int b) {
                CHECK(has(wpure, S.comm(a, b)));
                CHECK(has(wpure, S.meet(a, b)));
                CHECK(has(wpure, S.join(a, b)));
            });
        });
    });
}

TEST_CASE("quotients keep (star)") {
    // tested, not assumed
    for_corpus([](const MiStructure& S) {
        if (!satisfies_star(S)) return;
        for (int t = 0; t < S.size(); ++t) {
            CAPTURE(S.label(t));
            CHECK(satisfies_star(quotient(S, t).structure));
        }
    });
}

TEST_CASE("quotient maps between semiprime structures keep pure elements pure") {
    for_corpus([](const MiStructure& S) {
        if (!is_semiprime(S)) return;
        for (int t = 0; t < S.size(); ++t) {
            const Quotient q = quotient(S, t);
            if (!is_semiprime(q.structure)) continue;
            const ElemSet pq = pure_elements(q.structure);
            for_each_bit(pure_elements(S), [&](int c) { CHECK(has(pq, q.proj[c])); });
        }
    });
}

TEST_CASE("morphism adjunction law") {
    for_corpus([](const MiStructure& S) {
        for (int t = 0; t < S.size(); ++t) {
            const auto m = canonical_projection(S, t);
            for (int a = 0; a < S.size(); ++a)
                for (int b = 0; b < m.dst.size(); ++b) CHECK(m.dst.leq(m.fwd[a], b) == S.leq(a, m.adj[b]));
            CHECK(is_admissible(m));
        }
    });
}

TEST_CASE("JSON round trip on the corpus") {
    for_corpus([](const MiStructure& S) {
        const json j = to_json(S);
        CHECK(to_json(from_json(j)) == j);
        CHECK(find_isomorphism(from_json(j), S));
    });
}
