#include <doctest.h>

#include <filesystem>

#include "mispec/instances.hpp"
#include "mispec/serialize.hpp"

using namespace mispec;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error");
    return ErrorKind::InternalInvariantFailure;
}

} // namespace

TEST_CASE("instance mini-language") {
    CHECK(parse_instance("zn:12").size() == 6);
    CHECK(parse_instance(" chain:4 ").name() == "chain:4");
    CHECK(parse_instance("boolean:3").size() == 8);
    CHECK(parse_instance("boolean_frame:2").size() == 4);
    CHECK(parse_instance("product:chain:3,chain:3").size() == 9);
    CHECK(parse_instance("product:(product:zn:2,zn:3),chain:2").size() == 8);
    CHECK(parse_instance("product:zn:2,(product:zn:3,zn:5)").size() == 8);
    CHECK(parse_instance("quotient:zn:12@6").size() == 4);
    CHECK(parse_instance("quotient:(product:zn:4,zn:3)@(2,1)").size() == 2);
}

TEST_CASE("instance parse errors") {
    CHECK(kind_of([] { parse_instance("zn:0"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_instance("zn:x"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_instance("zn"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_instance("torus:3"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_instance("product:zn:2"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_instance("product:(zn:2,zn:3"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_instance("quotient:zn:12"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_instance("quotient:zn:12@5"); }) == ErrorKind::UnknownLabel);
    CHECK(kind_of([] { parse_instance("product:zn:36,zn:36"); }) == ErrorKind::TooLarge);
    CHECK(kind_of([] { parse_instance("boolean:7"); }) == ErrorKind::TooLarge);
}

TEST_CASE("bundled instances") {
    const auto names = bundled_instance_names();
    CHECK(names.size() == 20);
    const auto xs = bundled_instances();
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(xs[i].name() == names[i]);
}

TEST_CASE("JSON round trip is the identity on canonical forms") {
    for (const auto& S : bundled_instances()) {
        const json j = to_json(S);
        CHECK(j["elements"].size() == static_cast<std::size_t>(S.size()));
        const MiStructure back = from_json(j);
        CHECK(to_json(back) == j);
        CHECK(find_isomorphism(S, back));
        CHECK(to_json(from_json(json::parse(j.dump()))) == j);
    }
}

TEST_CASE("canonical order is topological") {
    const MiStructure S = canonical(parse_instance("product:zn:4,chain:3"));
    for (int a = 0; a < S.size(); ++a)
        for (int b = 0; b < S.size(); ++b)
            if (S.leq(a, b) && a != b) CHECK(a < b);
}

TEST_CASE("save and load through a file") {
    const auto path = (std::filesystem::temp_directory_path() / "mispec_test_instances.json").string();
    const MiStructure S = parse_instance("zn:36");
    save(S, path);
    const MiStructure back = load(path);
    std::filesystem::remove(path);
    CHECK(to_json(back) == to_json(S));
    CHECK(kind_of([] { load("/nonexistent/dir/x.json"); }) == ErrorKind::ParseError);
}

TEST_CASE("schema errors") {
    const std::string good_head = R"({"elements":["0","1"],"leq":[["0","1"]],)";
    CHECK(kind_of([] { parse_structure("[]"); }) == ErrorKind::SchemaError);
    CHECK(kind_of([] { parse_structure(R"({"leq":[],"commutator":[]})"); }) == ErrorKind::SchemaError);
    CHECK(kind_of([] { parse_structure(R"({"elements":"01","leq":[],"commutator":[]})"); }) == ErrorKind::SchemaError);
    CHECK(kind_of([&] { parse_structure(good_head + R"("commutator":[["0","0"]]})"); }) == ErrorKind::SchemaError);
    CHECK(kind_of([&] { parse_structure(good_head + R"("commutator":[["0","0"],["0"]]})"); }) == ErrorKind::SchemaError);
    CHECK(kind_of([&] { parse_structure(good_head + R"("commutator":[["0","0"],["0","z"]]})"); }) ==
          ErrorKind::UnknownLabel);
    CHECK(kind_of([&] { parse_structure(R"({"elements":["0","1"],"leq":[["0"]],"commutator":[]})"); }) ==
          ErrorKind::SchemaError);
    CHECK(parse_structure(good_head + R"("commutator":[["0","0"],["0","1"]]})").size() == 2);
}

TEST_CASE("missing commutator row names the row") {
    try {
        parse_structure(R"({"elements":["0","1","2"],"leq":[["0","1"],["1","2"]],
                            "commutator":[["0","0","0"],["0","1","1"]]})");
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SchemaError);
        CHECK(std::string(e.what()).find("row 2 ('2') missing") != std::string::npos);
    }
}

TEST_CASE("malformed JSON reports a position") {
    try {
        parse_structure("{\n  \"elements\": [\"0\",\n}", "in.json");
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        const std::string w = e.what();
        CHECK(w.find("in.json") != std::string::npos);
        CHECK(w.find("line 3") != std::string::npos);
    }
}

TEST_CASE("invalid tables from JSON are validation errors") {
    try {
        parse_structure(R"({"elements":["0","1","2"],"leq":[["0","1"],["1","2"]],
            "commutator":[["0","0","0"],["0","0","0"],["0","0","2"]]})");
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ValidationError);
        CHECK(e.violations().front().kind == ViolationKind::NotSemidegenerate);
    }
}

TEST_CASE("Chinese remainder isomorphisms") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{4, 3}, {4, 9}, {2, 15}, {3, 5}, {8, 3}}) {
        const auto P = parse_instance("product:zn:" + std::to_string(m) + ",zn:" + std::to_string(n));
        CHECK(find_isomorphism(P, zn_structure(m * n)));
    }
    CHECK_FALSE(find_isomorphism(parse_instance("product:zn:2,zn:6"), zn_structure(12)));
}

TEST_CASE("quotients of Z_12 by a divisor d are Z_d") {
    for (int d : {1, 2, 3, 4, 6, 12})
        CHECK(find_isomorphism(parse_instance("quotient:zn:12@" + std::to_string(d)), zn_structure(d)));
}
