#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "privopt/instances.hpp"

using namespace privopt;

namespace {

std::string tsp_doc(const std::string& coords, const std::string& weight_type = "EUC_2D", bool eof = true)
{
    std::string s = "NAME: tiny\nTYPE: TSP\nCOMMENT: fixture\nDIMENSION: " +
                    std::to_string(std::count(coords.begin(), coords.end(), '\n')) +
                    "\nEDGE_WEIGHT_TYPE: " + weight_type + "\nNODE_COORD_SECTION\n" + coords;
    if (eof) s += "EOF\n";
    return s;
}

} // namespace

TEST_CASE("AP generation is deterministic and in range")
{
    const auto a = generate_ap_instance(7, 100, 100, 1, 0, 1000);
    const auto b = generate_ap_instance(7, 100, 100, 1, 0, 1000);
    CHECK(a.objectives == b.objectives);
    for (auto w : a.objectives[0].entries()) {
        CHECK(w >= 0);
        CHECK(w <= 1000);
    }
    CHECK(a.objectives != generate_ap_instance(8, 100, 100, 1, 0, 1000).objectives);
}

TEST_CASE("MOAP generation draws two different matrices")
{
    const auto m = generate_ap_instance(7, 100, 100, 2, 0, 1000);
    REQUIRE(m.objective_count() == 2);
    CHECK(m.kind == ProblemKind::MOAP);
    CHECK(m.objectives[0] != m.objectives[1]);
}

TEST_CASE("degenerate weight range")
{
    const auto d = generate_ap_instance(1, 3, 3, 1, 5, 5);
    for (auto w : d.objectives[0].entries()) CHECK(w == 5);
}

TEST_CASE("TSPLIB: 3-4-5 triangle and rounding")
{
    const auto t = parse_tsplib(tsp_doc("1 0 0\n2 3 4\n"));
    CHECK(t.kind == ProblemKind::TSP);
    CHECK(t.objectives[0](0, 1) == 5);
    CHECK(t.objectives[0](1, 0) == 5);
    CHECK(t.direction(0) == Direction::Minimize);

    const auto r = parse_tsplib(tsp_doc("1 0 0\n2 0 1.4\n"));
    CHECK(r.objectives[0](0, 1) == 1);
    CHECK(euc2d_distance({0, 0}, {0, 1.5}) == 2);
}

TEST_CASE("TSPLIB errors name the line")
{
    try {
        parse_tsplib(tsp_doc("1 0 0\n2 3 4\n", "GEO"));
        FAIL("GEO accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
    }
    try {
        parse_tsplib(tsp_doc("1 0 0\n2 x 4\n"));
        FAIL("bad coordinate accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 8);
    }
    CHECK_THROWS_AS(parse_tsplib(tsp_doc("1 0 0\n2 3 4\n", "EUC_2D", false)), ParseError);
}

TEST_CASE("TSPLIB registry")
{
    CHECK(tsplib_known_optimum("kroD100") == 21294);
    CHECK(tsplib_known_optimum("berlin52") == 7542);
    CHECK_FALSE(tsplib_known_optimum("nonexistent").has_value());
}

TEST_CASE("parse and serialize are byte-for-byte deterministic")
{
    const auto text = tsp_doc("1 0 0\n2 3 4\n3 10 2\n4 7 7\n");
    CHECK(serialize_instance(parse_tsplib(text)) == serialize_instance(parse_tsplib(text)));
}

TEST_CASE("instance JSON round trip")
{
    auto inst = generate_ap_instance(4, 6, 6, 2, 0, 50);
    inst.known_optimum = std::vector<double>{12, 13};
    GroundTruthSet gt;
    gt.points = {{10.5, 3}, {4, 9}};
    gt.refresh_bounds();
    inst.ground_truth = gt;
    const auto back = deserialize_instance(serialize_instance(inst));
    CHECK(back.objectives == inst.objectives);
    CHECK(back.name == inst.name);
    CHECK(back.known_optimum == inst.known_optimum);
    REQUIRE(back.ground_truth.has_value());
    CHECK(back.ground_truth->points == gt.points);
    CHECK(back.ground_truth->ideal == gt.ideal);
    CHECK(serialize_instance(back) == serialize_instance(inst));
    CHECK_THROWS_AS(deserialize_instance("{\"kind\": \"AP\"}"), std::invalid_argument);
}
