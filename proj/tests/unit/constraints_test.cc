#include <doctest.h>

#include <vicheck/constraints.hh>
#include <vicheck/ilp.hh>
#include <vicheck/shapes.hh>

#include "generators.hh"

#include <map>

using namespace vicheck;
using vicheck::testing::Rng;

namespace
{
    auto star(int leaves) -> ColoredGraph
    {
        ColoredGraph g(leaves + 1);
        for (int i = 1 ; i <= leaves ; ++i)
            g.add_edge(0, i);
        return g;
    }

    auto all_assignments(int n, int s) -> std::vector<Assignment>
    {
        std::vector<Assignment> result;
        for (long code = 0 ; code < (1L << (n * s)) ; ++code) {
            Assignment a;
            for (int i = 0 ; i < s ; ++i) {
                VertexSet x(n);
                for (int v = 0 ; v < n ; ++v)
                    if ((code >> (i * n + v)) & 1)
                        x.set(v);
                a.push_back(x);
            }
            result.push_back(a);
        }
        return result;
    }

    auto random_table(Rng & rng, const ColoredGraph & g, int s) -> LocalTable
    {
        int n = g.vertex_count();
        LocalTable table(n, s);
        for (int i = 0 ; i < s ; ++i)
            for (int v = 0 ; v < n ; ++v)
                if (rng() % 2) {
                    int lo = static_cast<int>(rng() % (n + 1)), hi = static_cast<int>(rng() % (n + 1));
                    table.set(i, v, Interval{ std::min(lo, hi), std::max(lo, hi) });
                }
        return table;
    }

    // Direct count of |X_i cap N(v)|.
    auto neighbours_in(const ColoredGraph & g, const VertexSet & x, Vertex v) -> int
    {
        int c = 0;
        for (int u = 0 ; u < g.vertex_count() ; ++u)
            if (g.adjacent(u, v) && x.test(u))
                ++c;
        return c;
    }
}

TEST_CASE("obeys_at examples")
{
    auto k2 = ColoredGraph::from_edges(2, { { 0, 1 } });
    LocalTable open(2, 1);
    Assignment x{ VertexSet::from_members(2, { 0 }) };
    CHECK(obeys_at(k2, x, open, k2.all_vertices()));

    LocalTable exact(2, 1);
    exact.set(0, 1, Interval{ 1, 1 });
    CHECK(obeys_at(k2, x, exact, k2.all_vertices()));
    exact.set(0, 1, Interval{ 0, 0 });
    CHECK_FALSE(obeys_at(k2, x, exact, k2.all_vertices()));

    auto g = star(3);
    LocalTable table(4, 1);
    for (int leaf = 1 ; leaf <= 3 ; ++leaf)
        table.set(0, leaf, Interval{ 1, 1 });
    table.set(0, 0, Interval{ 0, 0 });
    CHECK(obeys_at(g, { VertexSet::from_members(4, { 0 }) }, table, g.all_vertices()));
}

TEST_CASE("obeys_at matches a direct count")
{
    Rng rng(51);
    for (int round = 0 ; round < 300 ; ++round) {
        int n = 1 + static_cast<int>(rng() % 7);
        auto g = testing::random_graph(rng, n, 0.4);
        int s = 1 + static_cast<int>(rng() % 2);
        auto table = random_table(rng, g, s);
        auto x = testing::random_assignment(rng, n, s);
        bool expected = true;
        for (int i = 0 ; i < s ; ++i)
            for (int v = 0 ; v < n ; ++v)
                if (! table.at(i, v).contains(neighbours_in(g, x[i], v)))
                    expected = false;
        CHECK(obeys_at(g, x, table, g.all_vertices()) == expected);
    }
}

TEST_CASE("degree restriction examples")
{
    LocalTable table(5, 1);
    table.set(0, 0, Interval{ 0, 1 });
    auto s = VertexSet::from_members(5, { 0 });
    auto restricted = restrict_to_small_degrees(table, s, 3);
    CHECK(restricted.at(0, 1) == Interval{ 0, 2 });
    CHECK(restricted.at(0, 0) == Interval{ 0, 1 });

    LocalTable high(5, 1);
    high.set(0, 2, Interval{ 4, 5 });
    auto emptied = restrict_to_small_degrees(high, s, 3);
    CHECK(emptied.at(0, 2).is_empty());
    CHECK(has_empty_interval(emptied, VertexSet::from_members(5, { 2 })));
    CHECK_FALSE(has_empty_interval(emptied, VertexSet::from_members(5, { 1, 3 })));
}

TEST_CASE("degree restriction preserves obedience")
{
    Rng rng(52);
    for (int round = 0 ; round < 60 ; ++round) {
        int n = 1 + static_cast<int>(rng() % 6);
        auto g = testing::random_graph(rng, n, 0.35);
        int s = 1 + static_cast<int>(rng() % 2);
        if (n * s > 10)
            s = 1;
        int k = vertex_integrity(g) + static_cast<int>(rng() % 2);
        auto vi = *find_vi_set(g, k);
        auto table = random_table(rng, g, s);
        auto restricted = restrict_to_small_degrees(table, vi.members, vi.k);
        for (auto & a : all_assignments(n, s))
            CHECK(obeys_at(g, a, table, g.all_vertices()) == obeys_at(g, a, restricted, g.all_vertices()));
    }
}

TEST_CASE("uniformize examples")
{
    ColoredGraph two(2);
    LocalTable same(2, 1);
    same.set(0, 0, Interval{ 0, 0 });
    same.set(0, 1, Interval{ 0, 0 });
    auto u = uniformize(two, {}, same);
    CHECK(u.graph.color_count() == 1);
    CHECK(type_census(u.graph, {}).size() == 1);

    LocalTable different(2, 1);
    different.set(0, 0, Interval{ 0, 0 });
    different.set(0, 1, Interval{ 0, 1 });
    auto d = uniformize(two, {}, different);
    CHECK(d.graph.color_count() == 2);
    CHECK(type_census(d.graph, {}).size() == 2);
    CHECK(d.registry.size() == 2);
    CHECK(d.first_new_color == 0);

    LocalTable empty(2, 1);
    empty.set(0, 1, Interval::empty());
    CHECK_THROWS_AS(uniformize(two, {}, empty), ConstraintError);
}

TEST_CASE("uniformize keeps the graph and adds few colors")
{
    Rng rng(53);
    for (int round = 0 ; round < 100 ; ++round) {
        int n = 1 + static_cast<int>(rng() % 8);
        auto g = testing::random_graph(rng, n, 0.3, static_cast<int>(rng() % 2));
        int s = 1 + static_cast<int>(rng() % 2);
        auto vi = *find_vi_set(g, vertex_integrity(g));
        auto restricted = restrict_to_small_degrees(random_table(rng, g, s), vi.members, vi.k);
        auto outside = g.all_vertices();
        outside.subtract(vi.members);
        if (has_empty_interval(restricted, outside))
            continue;
        auto u = uniformize(g, vi.members.members(), restricted);
        CHECK(u.graph.vertex_count() == n);
        CHECK(u.graph.edges() == g.edges());
        for (int c = 0 ; c < g.color_count() ; ++c)
            CHECK(u.graph.color(c) == g.color(c));
        CHECK(static_cast<int>(u.registry.size()) <= s * vi.k * vi.k);
        for (int v : outside.members())
            for (int i = 0 ; i < s ; ++i) {
                int carried = 0;
                for (std::size_t j = 0 ; j < u.registry.size() ; ++j)
                    if (u.registry[j].variable == i && u.graph.in_color(v, u.first_new_color + static_cast<int>(j))) {
                        ++carried;
                        CHECK(u.registry[j].interval == restricted.at(i, v));
                    }
                CHECK(carried == 1);
            }
    }
}

TEST_CASE("same-shape assignments obey the same uniform constraints")
{
    Rng rng(54);
    for (int round = 0 ; round < 60 ; ++round) {
        auto g = testing::random_low_vi_graph(rng, 1, 2 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2));
        int n = g.vertex_count();
        if (n > 6)
            continue;
        int s = n <= 5 ? 2 : 1;
        auto vi = *find_vi_set(g, vertex_integrity(g));
        auto restricted = restrict_to_small_degrees(random_table(rng, g, s), vi.members, vi.k);
        auto outside = g.all_vertices();
        outside.subtract(vi.members);
        if (has_empty_interval(restricted, outside))
            continue;
        auto u = uniformize(g, vi.members.members(), restricted);
        ShapeSpace space(u.graph, vi.members.members(), vi.k, s, 1);
        std::map<Shape, std::vector<bool>> verdicts;
        for (auto & a : all_assignments(n, s))
            verdicts[space.shape_of(a)].push_back(obeys_at(g, a, restricted, outside));
        for (auto & [shape, values] : verdicts)
            for (auto v : values)
                CHECK(v == values.front());
    }
}

TEST_CASE("gamma inequalities examples")
{
    std::vector<GlobalConstraint> r{ GlobalConstraint{ { 1, -1 }, 0 } };
    auto yes = gamma_inequalities(r, { true }, 2, 5);
    REQUIRE(yes.rows.size() == 1);
    CHECK(yes.rows[0].coeffs == std::vector<std::int64_t>{ 1, -1 });
    CHECK(yes.rows[0].bound == 0);

    auto no = gamma_inequalities(r, { false }, 2, 5);
    REQUIRE(no.rows.size() == 1);
    CHECK(no.rows[0].coeffs == std::vector<std::int64_t>{ -1, 1 });
    CHECK(no.rows[0].bound == -1);

    auto none = gamma_inequalities({}, {}, 2, 5);
    CHECK(none.rows.empty());
}

TEST_CASE("gamma inequalities realise exactly the guessed truth values")
{
    Rng rng(55);
    for (int round = 0 ; round < 100 ; ++round) {
        int s = 1 + static_cast<int>(rng() % 2);
        int g_count = 1 + static_cast<int>(rng() % 2);
        int n = 4;
        std::vector<GlobalConstraint> globals;
        for (int r = 0 ; r < g_count ; ++r) {
            GlobalConstraint c;
            for (int i = 0 ; i < s ; ++i)
                c.coeffs.push_back(static_cast<int>(rng() % 5) - 2);
            c.bound = static_cast<int>(rng() % 7) - 2;
            globals.push_back(c);
        }
        for (auto & gamma : enumerate_pre_evaluations(g_count)) {
            auto sys = gamma_inequalities(globals, gamma, s, n);
            std::vector<std::int64_t> y(static_cast<std::size_t>(s), 0);
            for (int code = 0 ; code < (s == 1 ? n + 1 : (n + 1) * (n + 1)) ; ++code) {
                y[0] = code % (n + 1);
                if (s == 2)
                    y[1] = code / (n + 1);
                bool expected = true;
                for (int r = 0 ; r < g_count ; ++r) {
                    std::int64_t total = 0;
                    for (int i = 0 ; i < s ; ++i)
                        total += globals[r].coeffs[i] * y[i];
                    if ((total <= globals[r].bound) != gamma[r])
                        expected = false;
                }
                CHECK(satisfies(sys, y) == expected);
            }
        }
    }
}
