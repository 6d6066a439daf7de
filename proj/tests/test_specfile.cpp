#include <doctest.h>

#include "growthforge/specfile.hpp"

using namespace growthforge;

TEST_CASE("split extension specs parse with default labels") {
    GroupSpec spec = parse_group_spec(R"({"kind":"split_extension","matrix":[[2,1],[1,1]]})");
    REQUIRE(spec.is_split());
    CHECK(spec.split().t_label == "t");
    CHECK(spec.split().basis_labels == std::vector<std::string>{"e1", "e2"});
    CHECK(spec.split().action == IntMatrix{{2, 1}, {1, 1}});
}

TEST_CASE("matrix group specs parse in declared order") {
    GroupSpec spec = parse_group_spec(
        R"({"kind":"matrix_group","degree":2,"generators":{"g":[[1,1],[0,1]],"h":[[1,0],[1,1]]}})");
    REQUIRE_FALSE(spec.is_split());
    CHECK(spec.base_labels() == std::vector<std::string>{"g", "h"});
}

TEST_CASE("large entries round-trip through decimal strings") {
    std::string big = "123456789012345678901234567890";
    GroupSpec spec = parse_group_spec(
        R"({"kind":"split_extension","matrix":[["1",")" + big + R"("],["0","1"]]})");
    CHECK(spec.split().action.at(0, 1) == Int(big));
    std::string serialized = serialize_group_spec(spec);
    CHECK(serialized.find('"' + big + '"') != std::string::npos);
    GroupSpec again = parse_group_spec(serialized);
    CHECK(again.split().action == spec.split().action);
}

TEST_CASE("parse then serialize is canonical") {
    std::string messy = R"({
        "kind": "split_extension",
        "matrix": [[2, 1], [1, 1]]
    })";
    GroupSpec spec = parse_group_spec(messy);
    std::string canonical = serialize_group_spec(spec);
    CHECK(serialize_group_spec(parse_group_spec(canonical)) == canonical);
}

TEST_CASE("parse errors carry line and column positions") {
    try {
        parse_group_spec("{\n  \"kind\": oops\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }
}

TEST_CASE("validation failures are explicit") {
    CHECK_THROWS_AS(
        parse_group_spec(R"({"kind":"split_extension","matrix":[[2,0],[0,1]]})"),
        ValidationError);
    CHECK_THROWS_AS(parse_group_spec(R"({"kind":"nonsense"})"), ParseError);
    CHECK_THROWS_AS(parse_group_spec(R"({"kind":"split_extension","matrix":[[1.5]]})"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_group_spec(
            R"({"kind":"split_extension","matrix":[[1,0],[0,1]],"basis_labels":["t","x"]})"),
        ValidationError);
}
