#include <doctest.h>

#include "mispec/generators.hpp"
#include "mispec/instances.hpp"
#include "mispec/mi.hpp"
#include "oracles.hpp"

using namespace mispec;

namespace {

int at(const MiStructure& S, int d) { return *S.lat().index_of(std::to_string(d)); }
int div_of(const MiStructure& S, int x) { return std::stoi(S.label(x)); }

// generator of {x in Z_n : x*a in bZ_n}
int colon_zn(int a, int b, int n) {
    int g = n;
    for (int x = 0; x < n; ++x)
        if ((x * a) % n % b == 0) g = std::gcd(g, x);
    return g;
}

// generator of the ideal spanned by products of aZ_n and bZ_n
int product_zn(int a, int b, int n) {
    int g = n;
    for (int x = 0; x < n; x += a)
        for (int y = 0; y < n; y += b) g = std::gcd(g, x * y % n);
    return g;
}

ViolationKind rejection(const FiniteLattice& L, const std::vector<int>& comm) {
    try {
        validate_mi(L, comm, "bad");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::ValidationError);
        REQUIRE_FALSE(e.violations().empty());
        return e.violations().front().kind;
    }
    FAIL("table accepted");
    return ViolationKind::NotModular;
}

std::vector<int> meet_table(const FiniteLattice& L) {
    std::vector<int> t(L.size() * L.size());
    for (int a = 0; a < L.size(); ++a)
        for (int b = 0; b < L.size(); ++b) t[a * L.size() + b] = L.meet(a, b);
    return t;
}

const int kZn[] = {1, 2, 4, 8, 12, 18, 30, 36, 60};

} // namespace

TEST_CASE("Z_n commutator is the ideal product") {
    for (int n : kZn) {
        const MiStructure S = zn_structure(n);
        for (int a = 0; a < S.size(); ++a)
            for (int b = 0; b < S.size(); ++b)
                CHECK(div_of(S, S.comm(a, b)) == product_zn(div_of(S, a), div_of(S, b), n));
    }
}

TEST_CASE("Z_n residuum and annihilator match ideal quotients") {
    for (int n : kZn) {
        const MiStructure S = zn_structure(n);
        for (int a = 0; a < S.size(); ++a) {
            for (int b = 0; b < S.size(); ++b)
                CHECK(div_of(S, residuum(S, a, b)) == colon_zn(div_of(S, a), div_of(S, b), n));
            CHECK(div_of(S, annihilator(S, a)) == n / div_of(S, a));
        }
    }
}

TEST_CASE("Z_n spectrum and radicals") {
    for (int n : kZn) {
        const MiStructure S = zn_structure(n);
        ElemSet P = 0;
        for (int p : oracle::prime_ideals_zn(n)) P |= bit(at(S, p));
        CHECK(S.primes() == P);
        // Z_n is zero-dimensional: every prime is maximal and minimal
        CHECK(S.maximals() == P);
        CHECK(S.minimal_primes() == P);
        CHECK(div_of(S, rho0(S)) == oracle::nilradical_zn(n));
        for (int t = 0; t < S.size(); ++t) {
            CHECK(S.radical(t) == oracle::radical_bf(S, t));
            CHECK(radical_via_iterates(S, t) == S.radical(t));
        }
        ElemSet C = 0;
        for (int e : oracle::idempotent_ideals_zn(n)) C |= bit(at(S, e));
        CHECK(center_set(S) == C);
        CHECK(boolean_center_mi(S).boolean_sublattice);
        CHECK(satisfies_star(S));
        CHECK(is_associative(S));
    }
}

TEST_CASE("prime spectrum of frames") {
    const MiStructure C = chain_frame(4);
    // every element below top is prime in a chain
    CHECK(count(C.primes()) == 3);
    const MiStructure B = boolean_frame(3);
    CHECK(count(B.primes()) == 3);
    CHECK(B.primes() == B.maximals());
    CHECK(is_semiprime(B));
    CHECK(is_semiprime(C));
}

TEST_CASE("commutator iterates stabilize") {
    const MiStructure S = zn_structure(8);
    const auto s = comm_stabilize(S, at(S, 2));
    CHECK(div_of(S, s.value) == 8);
    CHECK(s.index == 2);
    CHECK(div_of(S, comm_iterate(S, at(S, 2), 1)) == 4);
    CHECK(comm_stabilize(S, at(S, 1)).index == 0);
}

TEST_CASE("validation rejects each axiom separately") {
    const FiniteLattice M3 =
        build_lattice({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
    CHECK(rejection(M3, meet_table(M3)) == ViolationKind::NotJoinDistributive);

    const FiniteLattice N5 =
        build_lattice({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}});
    CHECK(rejection(N5, meet_table(N5)) == ViolationKind::NotModular);

    const MiStructure Z = zn_structure(12);
    const int n = Z.size();
    auto comm = Z.comm_table();
    comm[at(Z, 2) * n + at(Z, 2)] = at(Z, 1);
    CHECK(rejection(Z.lat(), comm) == ViolationKind::ExceedsMeet);

    comm = Z.comm_table();
    comm[at(Z, 2) * n + at(Z, 3)] = at(Z, 12);
    comm[at(Z, 3) * n + at(Z, 2)] = at(Z, 6);
    CHECK(rejection(Z.lat(), comm) == ViolationKind::NotCommutative);

    // [a,top] must give a back
    const FiniteLattice C3 = chain_frame(3).lat();
    std::vector<int> zero(9, C3.bot());
    CHECK(rejection(C3, zero) == ViolationKind::NotSemidegenerate);
}

TEST_CASE("every violation carries a witness and labels") {
    const FiniteLattice C3 = chain_frame(3).lat();
    try {
        validate_mi(C3, std::vector<int>(9, C3.bot()), "zero");
        FAIL("accepted");
    } catch (const Error& e) {
        for (const auto& v : e.violations()) {
            CHECK_FALSE(v.witness.empty());
            CHECK(v.labels.size() == v.witness.size());
        }
    }
}

TEST_CASE("quotients of Z_n are Z_d") {
    for (int n : {12, 30, 36}) {
        const MiStructure S = zn_structure(n);
        for (int d : oracle::divisors(n)) {
            const Quotient q = quotient(S, at(S, d));
            CHECK(find_isomorphism(q.structure, zn_structure(d)));
            for (int a = 0; a < S.size(); ++a) CHECK(q.orig[q.proj[a]] == S.join(a, at(S, d)));
        }
    }
}

TEST_CASE("products: CRT and spectrum") {
    CHECK(find_isomorphism(product(zn_structure(4), zn_structure(3)), zn_structure(12)));
    CHECK(find_isomorphism(product(zn_structure(2), zn_structure(15)), zn_structure(30)));
    CHECK_FALSE(find_isomorphism(product(zn_structure(2), zn_structure(2)), zn_structure(4)));
    const MiStructure A = zn_structure(8), B = chain_frame(3);
    const MiStructure P = product(A, B);
    CHECK(count(P.primes()) == count(A.primes()) + count(B.primes()));
    CHECK(rho0(P) == rho0(A) * B.size() + rho0(B));
    CHECK_THROWS_AS(product(zn_structure(36), zn_structure(36)), Error);
}

TEST_CASE("morphisms") {
    const MiStructure S = zn_structure(12);
    const auto id = identity_morphism(S);
    CHECK(is_admissible(id));
    CHECK(is_flat(id));
    CHECK(preserves_commutator(id));
    CHECK(is_pp_morphism(id));
    const auto pi = canonical_projection(S, at(S, 4));
    CHECK(is_admissible(pi));
    CHECK(preserves_commutator(pi));
    for (int b = 0; b < pi.dst.size(); ++b)
        for (int a = 0; a < S.size(); ++a) CHECK(pi.dst.leq(pi.fwd[a], b) == S.leq(a, pi.adj[b]));
    std::vector<int> constant(S.size(), S.top());
    try {
        make_morphism(S, S, constant);
        FAIL("constant top map accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotJoinPreserving);
    }
}

TEST_CASE("a valid table that breaks (star)") {
    // [a,a] = a and [b,b] = b keep [[a,a]^m,[b,b]^m] at c, while [[a,b],[a,b]] = 0
    const FiniteLattice L =
        build_lattice({"0", "c", "a", "b", "1"}, {{"0", "c"}, {"c", "a"}, {"c", "b"}, {"a", "1"}, {"b", "1"}});
    auto i = [&](const char* s) { return *L.index_of(s); };
    const int o = i("0"), c = i("c"), a = i("a"), b = i("b"), t = i("1");
    std::vector<int> comm(25, o);
    auto set = [&](int x, int y, int v) { comm[x * 5 + y] = comm[y * 5 + x] = v; };
    set(c, b, c);
    set(c, t, c);
    set(a, a, a);
    set(a, b, c);
    set(a, t, a);
    set(b, b, b);
    set(b, t, b);
    set(t, t, t);
    const MiStructure S = validate_mi(L, comm, "star-fails");
    CHECK_FALSE(is_associative(S));
    REQUIRE(star_violation(S));
    const auto w = *star_violation(S);
    CHECK(S.comm(w[0], w[1]) == c);
}
