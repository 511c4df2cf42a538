#include <doctest.h>

#include <vicheck/graph.hh>
#include <vicheck/oracle.hh>

#include "generators.hh"

using namespace vicheck;
using vicheck::testing::Rng;

namespace
{
    auto path(int n) -> ColoredGraph
    {
        ColoredGraph g(n);
        for (int i = 0 ; i + 1 < n ; ++i)
            g.add_edge(i, i + 1);
        return g;
    }

    auto cycle(int n) -> ColoredGraph
    {
        auto g = path(n);
        g.add_edge(n - 1, 0);
        return g;
    }

    auto clique(int n) -> ColoredGraph
    {
        ColoredGraph g(n);
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                g.add_edge(u, v);
        return g;
    }

    auto star(int leaves) -> ColoredGraph
    {
        ColoredGraph g(leaves + 1);
        for (int i = 1 ; i <= leaves ; ++i)
            g.add_edge(0, i);
        return g;
    }

    auto set_of(int n, std::vector<Vertex> members) -> VertexSet
    {
        return VertexSet::from_members(n, members);
    }

    auto connected_within(const ColoredGraph & g, const VertexSet & c) -> bool
    {
        auto members = c.members();
        VertexSet seen(g.vertex_count());
        std::vector<Vertex> stack{ members.front() };
        seen.set(members.front());
        while (! stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto u : members)
                if (g.adjacent(u, v) && ! seen.test(u)) {
                    seen.set(u);
                    stack.push_back(u);
                }
        }
        return seen.count() == c.count();
    }
}

TEST_CASE("construction rejects malformed graphs")
{
    CHECK_THROWS_AS(ColoredGraph::from_edges(3, { { 0, 0 } }), GraphError);
    CHECK_THROWS_AS(ColoredGraph::from_edges(3, { { 0, 1 }, { 1, 0 } }), GraphError);
    CHECK_THROWS_AS(ColoredGraph::from_edges(3, { { 0, 3 } }), GraphError);
    CHECK_THROWS_AS(ColoredGraph::from_edges(3, {}, { { 5 } }), GraphError);
    auto g = ColoredGraph::from_edges(3, { { 0, 1 } }, { { 0, 2 } });
    CHECK(g.in_color(0, 0));
    CHECK_FALSE(g.in_color(1, 0));
    CHECK(g.adjacent(1, 0));
}

TEST_CASE("components examples")
{
    auto p3 = components(path(3), set_of(3, { 1 }));
    REQUIRE(p3.size() == 2);
    CHECK(p3[0] == set_of(3, { 0 }));
    CHECK(p3[1] == set_of(3, { 2 }));

    auto k3 = components(clique(3), VertexSet(3));
    REQUIRE(k3.size() == 1);
    CHECK(k3[0] == VertexSet::full(3));

    auto edgeless = components(ColoredGraph(4), set_of(4, { 0 }));
    REQUIRE(edgeless.size() == 3);
    CHECK(edgeless[0] == set_of(4, { 1 }));
    CHECK(edgeless[2] == set_of(4, { 3 }));
}

TEST_CASE("components partition V minus S into maximal connected pieces")
{
    Rng rng(11);
    for (int round = 0 ; round < 200 ; ++round) {
        int n = 1 + static_cast<int>(rng() % 10);
        auto g = testing::random_graph(rng, n, 0.3);
        VertexSet s(n);
        for (int v = 0 ; v < n ; ++v)
            if (rng() % 4 == 0)
                s.set(v);
        auto comps = components(g, s);
        VertexSet covered(n);
        Vertex last_min = -1;
        for (auto & c : comps) {
            CHECK_FALSE(c.intersects(covered));
            CHECK_FALSE(c.intersects(s));
            CHECK(connected_within(g, c));
            CHECK(c.first() > last_min);
            last_min = c.first();
            covered |= c;
            for (auto v : c.members())
                for (int u = 0 ; u < n ; ++u)
                    if (g.adjacent(u, v) && ! s.test(u))
                        CHECK(c.test(u));
        }
        covered |= s;
        CHECK(covered == VertexSet::full(n));
    }
}

TEST_CASE("find_vi_set examples")
{
    auto star_set = find_vi_set(star(3), 2);
    REQUIRE(star_set);
    CHECK(star_set->members == set_of(4, { 0 }));

    auto edgeless = find_vi_set(ColoredGraph(5), 1);
    REQUIRE(edgeless);
    CHECK(edgeless->members.empty());

    CHECK_FALSE(find_vi_set(clique(4), 3));
}

TEST_CASE("vertex integrity examples")
{
    CHECK(vertex_integrity(ColoredGraph(5)) == 1);
    for (int n = 1 ; n <= 6 ; ++n)
        CHECK(vertex_integrity(clique(n)) == n);
    CHECK(vertex_integrity(cycle(6)) == 4);
    CHECK(vertex_integrity(ColoredGraph(0)) == 0);
    auto empty = find_vi_set(ColoredGraph(0), 0);
    REQUIRE(empty);
    CHECK(empty->members.empty());
}

TEST_CASE("find_vi_set agrees with brute-force minimisation")
{
    Rng rng(12);
    for (int round = 0 ; round < 150 ; ++round) {
        int n = 1 + static_cast<int>(rng() % 12);
        auto g = testing::random_graph(rng, n, 0.15 + 0.1 * (round % 5));
        int vi = brute_force_vi(g);
        CHECK(vertex_integrity(g) == vi);
        for (int k = 1 ; k <= n ; ++k) {
            auto found = find_vi_set(g, k);
            CHECK(found.has_value() == (vi <= k));
            if (found) {
                CHECK(found->members.count() <= k);
                for (auto & c : components(g, found->members))
                    CHECK(c.count() <= k - found->members.count());
            }
        }
    }
}

TEST_CASE("canonical type examples")
{
    ColoredGraph two(2);
    auto a = canonical_type(two, {}, set_of(2, { 0 }));
    auto b = canonical_type(two, {}, set_of(2, { 1 }));
    CHECK(a.type == b.type);

    auto colored = ColoredGraph::from_edges(2, {}, { { 0 } });
    CHECK(canonical_type(colored, {}, set_of(2, { 0 })).type != canonical_type(colored, {}, set_of(2, { 1 })).type);

    CHECK_THROWS(canonical_type(path(3), {}, set_of(3, { 0, 1 })));
    CHECK_THROWS(canonical_type(path(3), { 1 }, set_of(3, { 0, 2 })));
}

TEST_CASE("type census examples")
{
    auto isolated = type_census(ColoredGraph(3), {});
    REQUIRE(isolated.size() == 1);
    CHECK(isolated.begin()->second == 3);

    auto leaves = type_census(star(3), { 0 });
    REQUIRE(leaves.size() == 1);
    CHECK(leaves.begin()->second == 3);

    auto ends = type_census(path(3), { 1 });
    REQUIRE(ends.size() == 1);
    CHECK(ends.begin()->second == 2);
}

TEST_CASE("equal encodings come with a type isomorphism fixing S")
{
    Rng rng(13);
    for (int round = 0 ; round < 200 ; ++round) {
        auto g = testing::random_low_vi_graph(rng, 2, 4, 1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 2));
        std::vector<Vertex> s_order{ 0, 1 };
        auto c = census(g, s_order);
        int total = 0;
        for (auto & cls : c.classes) {
            total += static_cast<int>(cls.members.size());
            auto & first = cls.members[0];
            for (auto & other : cls.members) {
                REQUIRE(first.order.size() == other.order.size());
                std::size_t m = first.order.size();
                for (std::size_t i = 0 ; i < m ; ++i) {
                    auto x = first.order[i], y = other.order[i];
                    for (std::size_t j = 0 ; j < m ; ++j)
                        CHECK(g.adjacent(x, first.order[j]) == g.adjacent(y, other.order[j]));
                    for (auto sv : s_order)
                        CHECK(g.adjacent(x, sv) == g.adjacent(y, sv));
                    for (int col = 0 ; col < g.color_count() ; ++col)
                        CHECK(g.in_color(x, col) == g.in_color(y, col));
                }
            }
        }
        CHECK(total == static_cast<int>(components(g, VertexSet::from_members(g.vertex_count(), s_order)).size()));
    }
}

TEST_CASE("census is invariant under relabelling outside S")
{
    Rng rng(14);
    for (int round = 0 ; round < 100 ; ++round) {
        auto g = testing::random_low_vi_graph(rng, 2, 5, 1 + static_cast<int>(rng() % 3), 1);
        int n = g.vertex_count();
        auto perm = testing::random_permutation(rng, n - 2);
        std::vector<Vertex> full{ 0, 1 };
        for (auto p : perm)
            full.push_back(p + 2);
        auto h = testing::relabel(g, full);
        CHECK(type_census(g, { 0, 1 }) == type_census(h, { 0, 1 }));
    }
}

TEST_CASE("canonical type is invariant under relabelling the component")
{
    Rng rng(15);
    for (int round = 0 ; round < 100 ; ++round) {
        int n = 2 + static_cast<int>(rng() % 6);
        auto g = testing::random_graph(rng, n, 0.6, 2);
        auto perm = testing::random_permutation(rng, n);
        auto h = testing::relabel(g, perm);
        auto gc = components(g, VertexSet(n));
        for (auto & c : gc) {
            VertexSet image(n);
            c.for_each([&] (Vertex v) { image.set(perm[v]); });
            CHECK(canonical_type(g, {}, c).type == canonical_type(h, {}, image).type);
        }
    }
}
