#include <vicheck/graph.hh>

#include <algorithm>
#include <deque>
#include <set>
#include <string>

using std::optional;
using std::vector;

namespace vicheck
{
    ColoredGraph::ColoredGraph(int n) :
        _n(n),
        _adjacency(static_cast<std::size_t>(n), VertexSet(n))
    {
        if (n < 0)
            throw GraphError{ "negative vertex count" };
    }

    auto ColoredGraph::from_edges(int n, const vector<Edge> & edges, const vector<vector<Vertex>> & colors) -> ColoredGraph
    {
        ColoredGraph result(n);
        for (auto & [u, v] : edges)
            result.add_edge(u, v);
        for (auto & members : colors) {
            VertexSet c(n);
            for (auto v : members) {
                if (v < 0 || v >= n)
                    throw GraphError{ "color member " + std::to_string(v) + " out of range" };
                c.set(v);
            }
            result.add_color(std::move(c));
        }
        return result;
    }

    auto ColoredGraph::add_edge(Vertex u, Vertex v) -> void
    {
        if (u < 0 || u >= _n || v < 0 || v >= _n)
            throw GraphError{ "edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range" };
        if (u == v)
            throw GraphError{ "self-loop at vertex " + std::to_string(u) };
        if (_adjacency[u].test(v))
            throw GraphError{ "duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}" };
        _adjacency[u].set(v);
        _adjacency[v].set(u);
        Edge e{ std::min(u, v), std::max(u, v) };
        _edges.insert(std::lower_bound(_edges.begin(), _edges.end(), e), e);
    }

    auto ColoredGraph::add_color(VertexSet members) -> int
    {
        if (members.universe_size() != _n)
            throw GraphError{ "color universe does not match vertex count" };
        _colors.push_back(std::move(members));
        return color_count() - 1;
    }

    auto ColoredGraph::set_color(int index, VertexSet members) -> void
    {
        if (members.universe_size() != _n)
            throw GraphError{ "color universe does not match vertex count" };
        _colors.at(static_cast<std::size_t>(index)) = std::move(members);
    }

    auto ColoredGraph::edge_index(Vertex u, Vertex v) const -> int
    {
        Edge e{ std::min(u, v), std::max(u, v) };
        auto it = std::lower_bound(_edges.begin(), _edges.end(), e);
        if (it == _edges.end() || *it != e)
            return -1;
        return static_cast<int>(it - _edges.begin());
    }

    auto ColoredGraph::induced(const VertexSet & keep) const -> ColoredGraph
    {
        vector<int> new_id(static_cast<std::size_t>(_n), -1);
        int next = 0;
        keep.for_each([&] (Vertex v) { new_id[v] = next++; });

        ColoredGraph result(next);
        for (auto & [u, v] : _edges)
            if (new_id[u] >= 0 && new_id[v] >= 0)
                result.add_edge(new_id[u], new_id[v]);
        for (auto & c : _colors) {
            VertexSet nc(next);
            c.for_each([&] (Vertex v) {
                if (new_id[v] >= 0)
                    nc.set(new_id[v]);
            });
            result.add_color(std::move(nc));
        }
        return result;
    }

    auto ColoredGraph::with_extra_colors(const vector<VertexSet> & extra) const -> ColoredGraph
    {
        ColoredGraph result = *this;
        for (auto & c : extra)
            result.add_color(c);
        return result;
    }

    auto ColoredGraph::with_color_prefix(int count) const -> ColoredGraph
    {
        ColoredGraph result = *this;
        result._colors.resize(static_cast<std::size_t>(count), VertexSet(_n));
        return result;
    }

    auto sorted_members(const VertexSet & s) -> vector<Vertex>
    {
        return s.members();
    }

    auto components(const ColoredGraph & g, const VertexSet & s) -> vector<VertexSet>
    {
        int n = g.vertex_count();
        vector<VertexSet> result;
        VertexSet seen = s;
        vector<Vertex> stack;
        for (Vertex start = 0 ; start < n ; ++start) {
            if (seen.test(start))
                continue;
            VertexSet component(n);
            stack.push_back(start);
            seen.set(start);
            while (! stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                component.set(v);
                g.neighbours(v).for_each([&] (Vertex w) {
                    if (! seen.test(w)) {
                        seen.set(w);
                        stack.push_back(w);
                    }
                });
            }
            result.push_back(std::move(component));
        }
        return result;
    }

    namespace
    {
        // First `count` vertices of a BFS inside `component` from its smallest vertex.
        auto connected_prefix(const ColoredGraph & g, const VertexSet & component, int count) -> vector<Vertex>
        {
            vector<Vertex> order;
            VertexSet seen(g.vertex_count());
            std::deque<Vertex> queue{ component.first() };
            seen.set(component.first());
            while (! queue.empty() && static_cast<int>(order.size()) < count) {
                auto v = queue.front();
                queue.pop_front();
                order.push_back(v);
                g.neighbours(v).for_each([&] (Vertex w) {
                    if (component.test(w) && ! seen.test(w)) {
                        seen.set(w);
                        queue.push_back(w);
                    }
                });
            }
            return order;
        }

        auto oversized_component(const ColoredGraph & g, const VertexSet & s, int budget) -> optional<VertexSet>
        {
            int n = g.vertex_count();
            VertexSet seen = s;
            vector<Vertex> stack, members;
            for (Vertex start = 0 ; start < n ; ++start) {
                if (seen.test(start))
                    continue;
                members.clear();
                stack.push_back(start);
                seen.set(start);
                while (! stack.empty()) {
                    auto v = stack.back();
                    stack.pop_back();
                    members.push_back(v);
                    g.neighbours(v).for_each([&] (Vertex w) {
                        if (! seen.test(w)) {
                            seen.set(w);
                            stack.push_back(w);
                        }
                    });
                }
                if (static_cast<int>(members.size()) > budget)
                    return VertexSet::from_members(n, members);
            }
            return std::nullopt;
        }

        auto search_vi_set(const ColoredGraph & g, const VertexSet & s, int k, std::set<VertexSet> & failed) -> optional<VertexSet>
        {
            if (failed.contains(s))
                return std::nullopt;

            int budget = k - s.count();
            if (budget < 0)
                return std::nullopt;

            auto oversized = oversized_component(g, s, budget);
            if (! oversized)
                return s;

            if (budget > 0) {
                // any solution extending s hits this connected set of budget + 1 vertices
                for (auto v : connected_prefix(g, *oversized, budget + 1)) {
                    auto next = s;
                    next.set(v);
                    if (auto found = search_vi_set(g, next, k, failed))
                        return found;
                }
            }

            failed.insert(s);
            return std::nullopt;
        }
    }

    auto find_vi_set(const ColoredGraph & g, int k) -> optional<ViSet>
    {
        if (k < 0)
            return std::nullopt;
        std::set<VertexSet> failed;
        if (auto s = search_vi_set(g, VertexSet(g.vertex_count()), k, failed))
            return ViSet{ *s, k };
        return std::nullopt;
    }

    auto minimum_vi_set(const ColoredGraph & g) -> ViSet
    {
        for (int k = 0 ; ; ++k)
            if (auto s = find_vi_set(g, k))
                return *s;
    }

    auto vertex_integrity(const ColoredGraph & g) -> int
    {
        return minimum_vi_set(g).k;
    }
}
