#include <doctest.h>

#include <vicheck/cli.hh>
#include <vicheck/io.hh>
#include <vicheck/oracle.hh>

#include "generators.hh"

#include <sstream>
#include <unistd.h>

using namespace vicheck;
using vicheck::testing::Rng;

namespace
{
    struct Run
    {
        int code;
        std::string out, err;
    };

    auto run(std::vector<std::string> args) -> Run
    {
        args.insert(args.begin(), "vicheck");
        std::vector<const char *> argv;
        for (auto & a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return Run{ code, out.str(), err.str() };
    }

    class Workspace
    {
        private:
            std::filesystem::path _dir;

        public:
            Workspace()
            {
                _dir = std::filesystem::temp_directory_path() / ("vicheck_cli_" + std::to_string(::getpid()));
                std::filesystem::remove_all(_dir);
                std::filesystem::create_directories(_dir);
            }

            ~Workspace() { std::filesystem::remove_all(_dir); }

            auto file(const std::string & name, const std::string & text) const -> std::string
            {
                write_text(_dir / name, text);
                return (_dir / name).string();
            }

            auto path(const std::string & name) const -> std::string { return (_dir / name).string(); }
    };
}

TEST_CASE("cli examples")
{
    Workspace ws;
    auto star = ws.file("star13.json", R"({"n": 4, "edges": [[0, 1], [0, 2], [0, 3]]})");
    auto pretty = run({ "vi", "--graph", star, "--pretty" });
    CHECK(pretty.code == 0);
    CHECK(pretty.out == "vi=2, S=[0]\n");
    CHECK(run({ "vi", "--graph", star }).out == "{\"vi\":2,\"S\":[0]}\n");

    auto k2 = ws.file("k2.json", R"({"n": 2, "edges": [[0, 1]]})");
    auto f = ws.file("f.mso", "exists x. exists y. E(x,y)");
    auto c = ws.file("c.json", "{}");
    CHECK(run({ "check", "--graph", k2, "--formula", f, "--constraints", c }).code == 0);
    CHECK(run({ "check", "--graph", ws.file("e2.json", R"({"n": 2})"), "--formula", f }).code == 1);

    auto ecp = run({ "gen", "ecp", "--t", "2", "--items", "1,1,2", "--out", ws.path("inst") });
    CHECK(ecp.code == 0);
    CHECK(graph_from_json(read_json(ws.path("inst") + "/graph.json")).vertex_count() == 12);
}

TEST_CASE("exit codes follow the error class")
{
    Workspace ws;
    auto k2 = ws.file("k2.json", R"({"n": 2, "edges": [[0, 1]]})");
    auto c = ws.file("c.json", R"({"free": ["X1"]})");
    CHECK(run({ "check", "--graph", k2, "--formula", ws.file("bad.mso", "exists x. (x in X1"), "--constraints", c }).code == 2);
    CHECK(run({ "check", "--graph", ws.path("missing.json"), "--formula", ws.file("t.mso", "true") }).code == 4);
    CHECK(run({ "check", "--graph", ws.file("loop.json", R"({"n": 1, "edges": [[0, 0]]})"), "--formula", ws.path("t.mso") }).code == 2);
    CHECK(run({ "frobnicate" }).code == 2);
    CHECK(run({}).code == 2);

    auto big = ws.file("big.json", graph_to_json(ColoredGraph(30)).dump());
    CHECK(run({ "oracle", "check", "--graph", big, "--formula", ws.file("x.mso", "true"), "--constraints", c }).code == 3);
    auto path6 = ws.file("p6.json", R"({"n": 6, "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5]]})");
    auto tight = run({ "check", "--graph", path6, "--formula", ws.file("h.mso", "exists x. (x in X1 & ~(x in X1))"), "--constraints", c, "--budget", "1" });
    CHECK(tight.code == 3);
}

TEST_CASE("check witnesses re-verify and outputs are deterministic")
{
    Workspace ws;
    Rng rng(121);
    int sat = 0;
    for (int round = 0 ; round < 30 ; ++round) {
        int n = 1 + static_cast<int>(rng() % 5);
        auto g = testing::random_graph(rng, n, 0.4);
        bool mso2 = round % 3 == 2;
        auto inst = testing::random_instance(rng, g, 1, 2, static_cast<int>(rng() % 2), mso2, 0.3);
        write_instance_dir(ws.path("case"), g, inst);
        std::vector<std::string> args{ "check", "--graph", ws.path("case/graph.json"), "--formula", ws.path("case/formula.mso"),
                                       "--constraints", ws.path("case/constraints.json") };
        auto first = run(args), second = run(args);
        CHECK(first.out == second.out);
        CHECK(first.code == second.code);
        auto oracle = run({ "oracle", "check", "--graph", ws.path("case/graph.json"), "--formula", ws.path("case/formula.mso"),
                            "--constraints", ws.path("case/constraints.json") });
        CHECK(first.code == oracle.code);
        if (first.code == 0) {
            ++sat;
            ws.file("w.json", first.out);
            auto verify = run({ "oracle", "check", "--graph", ws.path("case/graph.json"), "--formula", ws.path("case/formula.mso"),
                                "--constraints", ws.path("case/constraints.json"), "--verify", ws.path("w.json") });
            CHECK(verify.code == 0);
            CHECK(verify.out == "{\"verified\":true}\n");
        }
    }
    CHECK(sat > 3);
    CHECK(sat < 27);
}

TEST_CASE("encode writes instances that check understands")
{
    Workspace ws;
    auto star = ws.file("star.json", R"({"n": 4, "edges": [[0, 1], [0, 2], [0, 3]]})");
    CHECK(run({ "encode", "fair-vc", "--graph", star, "--size", "1", "--fairness", "3", "--out", ws.path("fvc") }).code == 0);
    auto verdict = run({ "check", "--graph", ws.path("fvc/graph.json"), "--formula", ws.path("fvc/formula.mso"), "--constraints", ws.path("fvc/constraints.json") });
    CHECK(verdict.code == 0);
    CHECK(verdict.out == "{\"satisfiable\":true,\"assignment\":{\"X1\":[0]}}\n");

    CHECK(run({ "encode", "capacitated-vc", "--graph", star, "--capacities", "3,1,1,1", "--size", "1", "--out", ws.path("cvc") }).code == 0);
    CHECK(run({ "encode", "capacitated-vc", "--graph", star, "--capacities", "3,x", "--out", ws.path("cvc") }).code == 2);
    CHECK(run({ "encode", "nonsense", "--graph", star, "--out", ws.path("n") }).code == 2);

    auto g1 = run({ "gen", "random", "--n", "6", "--seed", "7" }), g2 = run({ "gen", "random", "--n", "6", "--seed", "7" });
    CHECK(g1.out == g2.out);
    CHECK(graph_from_json(Json::parse(g1.out)).vertex_count() == 6);
    auto kernel = run({ "kernel", "--graph", star, "--q", "1" });
    CHECK(kernel.code == 0);
    CHECK(graph_from_json(Json::parse(kernel.out)).vertex_count() <= 4);
}
