#include <doctest.h>

#include <vicheck/io.hh>
#include <vicheck/oracle.hh>
#include <vicheck/problems.hh>

#include "generators.hh"

#include <unistd.h>

using namespace vicheck;
using vicheck::testing::Rng;

namespace
{
    auto scratch(const std::string & name) -> std::filesystem::path
    {
        auto dir = std::filesystem::temp_directory_path() / ("vicheck_io_" + std::to_string(::getpid())) / name;
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
        return dir;
    }
}

TEST_CASE("graph JSON examples")
{
    auto g = graph_from_json(Json::parse(R"({"n": 3, "edges": [[0, 1], [1, 2]], "colors": [[2], []]})"));
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent(1, 2));
    CHECK(g.color_count() == 2);
    CHECK(g.in_color(2, 0));
    CHECK(g.color(1).count() == 0);
    CHECK(graph_from_json(Json::parse(R"({"n": 0})")).vertex_count() == 0);

    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2, "edges": [[0, 2]]})")), FormatError);
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2, "edges": [[1, 1]]})")), FormatError);
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2, "edges": [[0, 1], [1, 0]]})")), FormatError);
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2, "colors": [[5]]})")), FormatError);
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"edges": []})")), FormatError);
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": -1})")), FormatError);
}

TEST_CASE("graph JSON round-trips")
{
    Rng rng(111);
    for (int round = 0 ; round < 50 ; ++round) {
        auto g = testing::random_graph(rng, static_cast<int>(rng() % 9), 0.4, static_cast<int>(rng() % 3));
        CHECK(graph_from_json(Json::parse(graph_to_json(g).dump())) == g);
    }
}

TEST_CASE("sidecar locals use -1 for n")
{
    auto g = graph_from_json(Json::parse(R"({"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]})"));
    auto sidecar = sidecar_from_json(Json::parse(R"({
        "free": ["X1", "X2"],
        "globals": [{"coeffs": [1, -1], "bound": 0}],
        "locals": [{"var": "X1", "default": [0, -1], "overrides": {"3": [1, 2]}},
                   {"var": "X2", "default": [1, 1]}]})"));
    auto inst = build_instance(g, "R1 & forall x. (x in X1 -> ~(x in X2))", sidecar);
    CHECK(inst.formula.free_count() == 2);
    REQUIRE(inst.globals.size() == 1);
    CHECK(inst.globals[0].coeffs == std::vector<std::int64_t>{ 1, -1 });
    CHECK(inst.locals.at(0, 0) == Interval{ 0, 4 });
    CHECK(inst.locals.at(0, 3) == Interval{ 1, 2 });
    CHECK(inst.locals.at(1, 2) == Interval{ 1, 1 });

    CHECK_THROWS_AS(build_instance(g, "true", sidecar_from_json(Json::parse(R"({"free": ["X1"], "globals": [{"coeffs": [1, 1], "bound": 0}]})"))), FormatError);
    CHECK_THROWS_AS(build_instance(g, "true", sidecar_from_json(Json::parse(R"({"free": ["X1"], "locals": [{"var": "Z"}]})"))), FormatError);
    CHECK_THROWS_AS(build_instance(g, "true", sidecar_from_json(Json::parse(R"({"free": ["X1"], "locals": [{"var": "X1", "overrides": {"9": [0, 1]}}]})"))), FormatError);
    CHECK_THROWS_AS(build_instance(g, "true", sidecar_from_json(Json::parse(R"({"free": ["X1"], "locals": [{"var": "X1", "default": [0, 7]}]})"))), FormatError);
    CHECK_THROWS_AS(build_instance(g, "x in X1", sidecar_from_json(Json::parse(R"({"free": ["X1"]})"))), ParseError);
}

TEST_CASE("witness JSON names edges by endpoints")
{
    auto g = ColoredGraph::from_edges(3, { { 0, 1 }, { 1, 2 } });
    std::vector<Variable> free{ declare("X1", Sort::VertexSet), declare("Y1", Sort::EdgeSet) };
    auto f = parse("true", free, ParseOptions{ true });
    Assignment a{ VertexSet::from_members(3, { 2, 0 }), VertexSet::from_members(2, { 1 }) };
    auto j = witness_to_json(g, f, a);
    CHECK(j.dump() == R"({"satisfiable":true,"assignment":{"X1":[0,2],"Y1_edges":[[1,2]]}})");
    CHECK(witness_from_json(g, f, j) == a);
    CHECK(witness_to_json(g, f, std::nullopt).dump() == R"({"satisfiable":false})");
    CHECK_FALSE(witness_from_json(g, f, Json::parse(R"({"satisfiable": false})")));
    CHECK_THROWS_AS(witness_from_json(g, f, Json::parse(R"({"satisfiable": true, "assignment": {"X1": [], "Y1_edges": [[0, 2]]}})")), FormatError);
}

TEST_CASE("instance directories round-trip")
{
    Rng rng(112);
    auto dir = scratch("roundtrip");
    for (int round = 0 ; round < 30 ; ++round) {
        int n = 1 + static_cast<int>(rng() % 5);
        auto g = testing::random_graph(rng, n, 0.4, static_cast<int>(rng() % 2));
        auto inst = testing::random_instance(rng, g, 1 + static_cast<int>(rng() % 2), 2, static_cast<int>(rng() % 2), round % 2 == 1, 0.4);
        write_instance_dir(dir, g, inst);
        auto loaded = read_instance_dir(dir);
        CHECK(loaded.graph == g);
        CHECK(print(loaded.instance.formula) == print(inst.formula));
        CHECK(loaded.instance.globals.size() == inst.globals.size());
        CHECK(effective_locals(g, loaded.instance) == effective_locals(g, inst));
        auto a = brute_force_gsogl(g, inst), b = brute_force_gsogl(loaded.graph, loaded.instance);
        CHECK(a.count == b.count);
    }

    auto encoded = encode(Alliance{ AllianceKind::Defensive, 0, false, 2 }, ColoredGraph::from_edges(3, { { 0, 1 }, { 1, 2 } }));
    write_instance_dir(dir, encoded.graph, encoded.instance);
    auto loaded = read_instance_dir(dir);
    CHECK(loaded.graph == encoded.graph);
    CHECK(effective_locals(loaded.graph, loaded.instance) == effective_locals(encoded.graph, encoded.instance));

    CHECK_THROWS_AS(read_json(dir / "missing.json"), IoError);
    write_text(dir / "broken.json", "{");
    CHECK_THROWS_AS(read_json(dir / "broken.json"), FormatError);
    std::filesystem::remove_all(dir.parent_path());
}
