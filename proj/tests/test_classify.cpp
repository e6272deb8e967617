#include <doctest.h>

#include <set>

#include "mispec/classify.hpp"
#include "mispec/instances.hpp"
#include "mispec/serialize.hpp"
#include "oracles.hpp"

using namespace mispec;

namespace {

bool eval(const MiStructure& S, const std::string& name) {
    ClassContext c(S);
    return evaluators().at(name)(c);
}

bool verdict(const ClassReport& r, const std::string& k) {
    for (const auto& [name, v] : r.verdicts)
        if (name == k) return v;
    FAIL("no verdict " << k);
    return false;
}

// ring-level checks on Z_n, all over residues
std::vector<int> ann_residues(int x, int n) {
    std::vector<int> out;
    for (int y = 0; y < n; ++y)
        if (x * y % n == 0) out.push_back(y);
    return out;
}

bool ideal_pure(const std::vector<int>& I, int n) {
    for (int x : I) {
        bool ok = false;
        for (int y : I) ok = ok || x * y % n == x;
        if (!ok) return false;
    }
    return true;
}

bool ideal_has_unit_idempotent(const std::vector<int>& I, int n) {
    // generated by an idempotent e: e*e = e and every member is a multiple of e
    for (int e : I) {
        if (e * e % n != e) continue;
        bool gen = true;
        for (int x : I) gen = gen && x * e % n == x;
        if (gen) return true;
    }
    return false;
}

bool pf_zn(int n) {
    for (int x = 0; x < n; ++x)
        if (!ideal_pure(ann_residues(x, n), n)) return false;
    return true;
}

bool pp_zn(int n) {
    for (int x = 0; x < n; ++x)
        if (!ideal_has_unit_idempotent(ann_residues(x, n), n)) return false;
    return true;
}

// I + J = R gives x, y with I + xR = J + yR = R and xy = 0
bool normal_zn(int n) {
    for (int d : oracle::divisors(n))
        for (int e : oracle::divisors(n)) {
            if (std::gcd(d, e) != 1) continue;
            bool found = false;
            for (int x = 0; x < n && !found; ++x)
                for (int y = 0; y < n && !found; ++y)
                    found = std::gcd(d, x) == 1 && std::gcd(e, y) == 1 && x * y % n == 0;
            if (!found) return false;
        }
    return true;
}

MiStructure star_fails() {
    return parse_structure(R"({"name":"star-fails","elements":["0","c","a","b","1"],
        "leq":[["0","c"],["c","a"],["c","b"],["a","1"],["b","1"]],
        "commutator":[["0","0","0","0","0"],["0","0","0","c","c"],["0","0","a","c","a"],
                      ["0","c","c","b","b"],["0","c","a","b","1"]]})");
}

} // namespace

TEST_CASE("class verdicts on Z_n against ring-level checks") {
    for (int n : {1, 2, 4, 6, 8, 9, 12, 18, 30, 36}) {
        const ClassReport r = classify(zn_structure(n));
        CHECK(verdict(r, "hyperarchimedean") == oracle::hyperarchimedean_zn(n));
        CHECK(verdict(r, "pf") == pf_zn(n));
        CHECK(verdict(r, "pp") == pp_zn(n));
        CHECK(verdict(r, "normal") == normal_zn(n));
        CHECK(verdict(r, "semiprime") == (oracle::nilradical_zn(n) == n));
        CHECK(verdict(r, "mp"));
        CHECK(verdict(r, "purified"));
        CHECK(verdict(r, "star"));
        CHECK(r.agreement());
    }
}

TEST_CASE("frames: chains are PP but not hyperarchimedean") {
    const ClassReport r = classify(chain_frame(3));
    CHECK(verdict(r, "pp"));
    CHECK(verdict(r, "pf"));
    CHECK(verdict(r, "normal"));
    CHECK_FALSE(verdict(r, "hyperarchimedean"));
    CHECK(r.agreement());
    CHECK(verdict(classify(boolean_frame(3)), "hyperarchimedean"));
}

TEST_CASE("lattice classes") {
    const FiniteLattice B4 = boolean_frame(2).lat();
    for (auto k : {LatticeClass::Normal, LatticeClass::Conormal, LatticeClass::BNormal, LatticeClass::Stone})
        CHECK(lattice_class(B4, k));
    // 0 < a,b < c < 1: a ^ b = 0 but nothing disjoint from them joins to 1
    const FiniteLattice L = build_lattice({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"b", "c"}, {"c", "1"}});
    CHECK(lattice_class(L, LatticeClass::Normal));
    CHECK_FALSE(lattice_class(L, LatticeClass::Conormal));
    CHECK_FALSE(lattice_class(L, LatticeClass::Stone));
    const FiniteLattice C3 = chain_frame(3).lat();
    CHECK(lattice_class(C3, LatticeClass::Stone));
    CHECK(lattice_id_cblp(C3));
    const FiniteLattice M3 =
        build_lattice({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
    CHECK_THROWS_AS(lattice_class(M3, LatticeClass::Normal), Error);
}

TEST_CASE("zn:4: O constant on prime chains without PF") {
    const MiStructure S = zn_structure(4);
    CHECK(eval(S, "o-constant-on-chains"));
    CHECK_FALSE(eval(S, "pf"));
    const TheoremRow row = verify_theorem(S, "pf-o-prime");
    CHECK(row.agreement);
    REQUIRE(row.unasserted.size() == 1);
    CHECK(row.unasserted[0].find("semiprime") != std::string::npos);
}

TEST_CASE("zn:4: annihilators change under the radical") {
    const MiStructure S = zn_structure(4);
    CHECK_FALSE(eval(S, "ann-radical-invariant"));
    const TheoremRow row = verify_theorem(S, "ann-radical");
    CHECK(row.skipped);
    CHECK_FALSE(row.skip_reason.empty());
    CHECK(verify_theorem(zn_structure(6), "ann-radical").agreement);
}

TEST_CASE("three-element chain: a non-maximal prime lies above Ker of the maximal") {
    // Ker(1) = 0, and the prime 0 is above it as well as 1
    const MiStructure S = chain_frame(3);
    CHECK_FALSE(eval(S, "ker-max-above-literal"));
    CHECK(eval(S, "ker-max-above-maximal"));
    CHECK(verify_theorem(S, "normal-maximal-properties").agreement);
}

TEST_CASE("without (star) a Boolean reticulation need not be hyperarchimedean") {
    const MiStructure S = star_fails();
    CHECK_FALSE(satisfies_star(S));
    CHECK_FALSE(eval(S, "hyperarchimedean"));
    CHECK(eval(S, "lattice-boolean"));
    CHECK(eval(S, "spec-equals-max"));
    for (const char* id : {"boolean-reticulation", "zariski-hausdorff"}) {
        const TheoremRow row = verify_theorem(S, id);
        CHECK(row.agreement);
        CHECK_FALSE(row.unasserted.empty());
    }
    CHECK(classify(S).agreement());
}

TEST_CASE("catalog is well formed") {
    std::set<std::string> ids;
    for (const auto& t : theorem_catalog()) {
        CHECK(ids.insert(t.id).second);
        CHECK_FALSE(t.conditions.empty());
        for (const auto& c : t.conditions) CHECK(evaluators().count(c.evaluator));
        for (const auto& r : t.relations) {
            CHECK(r.from < static_cast<int>(t.conditions.size()));
            CHECK(r.to < static_cast<int>(t.conditions.size()));
        }
    }
    CHECK(ids.size() == 31);
}

TEST_CASE("unknown theorem ids are rejected") {
    try {
        find_theorem("no-such-theorem");
        FAIL("found");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownTheorem);
    }
    CHECK_THROWS_AS(classify(zn_structure(4), {"boolean-reticulation", "nope"}), Error);
}

TEST_CASE("theorem filter keeps the requested order") {
    const ClassReport r = classify(zn_structure(12), {"pp-stone", "boolean-reticulation"});
    REQUIRE(r.theorems.size() == 2);
    CHECK(r.theorems[0].id == "pp-stone");
    CHECK(r.theorems[1].id == "boolean-reticulation");
}

TEST_CASE("classify_many is deterministic across thread counts") {
    const auto xs = bundled_instances();
    const auto one = classify_many(xs, {}, 1);
    const auto many = classify_many(xs, {}, 4);
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(class_report_json(one[i]) == class_report_json(many[i]));
    for (const auto& r : one) CHECK(r.agreement());
}

TEST_CASE("classify_many rethrows worker errors") {
    CHECK_THROWS_AS(classify_many({zn_structure(4)}, {"nope"}, 2), Error);
}
