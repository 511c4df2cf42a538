#include <vicheck/graph.hh>

#include <algorithm>

using std::string;
using std::vector;

namespace vicheck
{
    ComponentStructure::ComponentStructure(const ColoredGraph & g, const vector<Vertex> & s_order, const VertexSet & a) :
        _vertices(a.members()),
        _s_size(static_cast<int>(s_order.size())),
        _base_colors(g.color_count())
    {
        int m = size();
        if (m == 0)
            throw GraphError{ "empty component" };
        if (m > max_canonical_component_size)
            throw GraphError{ "component of size " + std::to_string(m) + " exceeds the canonicalisation limit" };

        _adjacency.assign(static_cast<std::size_t>(m * m), 0);
        for (int i = 0 ; i < m ; ++i)
            for (int j = 0 ; j < m ; ++j)
                _adjacency[static_cast<std::size_t>(i * m + j)] = g.adjacent(_vertices[i], _vertices[j]) ? 1 : 0;

        _s_adjacency.assign(static_cast<std::size_t>(m * _s_size), 0);
        for (int i = 0 ; i < m ; ++i)
            for (int j = 0 ; j < _s_size ; ++j)
                _s_adjacency[static_cast<std::size_t>(i * _s_size + j)] = g.adjacent(_vertices[i], s_order[j]) ? 1 : 0;

        _base_color_bits.assign(static_cast<std::size_t>(m), vector<bool>(static_cast<std::size_t>(_base_colors), false));
        for (int i = 0 ; i < m ; ++i)
            for (int c = 0 ; c < _base_colors ; ++c)
                _base_color_bits[i][c] = g.in_color(_vertices[i], c);

        // depth-first search over orderings, pruned on the adjacency prefix
        string best_adjacency, best_s_adjacency;
        bool have_best = false;
        vector<int> order;
        vector<bool> used(static_cast<std::size_t>(m), false);
        string adjacency_prefix;

        auto leaf = [&] () {
            string s_part;
            for (int pos = 0 ; pos < m ; ++pos)
                for (int j = 0 ; j < _s_size ; ++j)
                    s_part.push_back(static_cast<char>(_s_adjacency[static_cast<std::size_t>(order[pos] * _s_size + j)]));
            if (! have_best || adjacency_prefix < best_adjacency
                    || (adjacency_prefix == best_adjacency && s_part < best_s_adjacency)) {
                have_best = true;
                best_adjacency = adjacency_prefix;
                best_s_adjacency = s_part;
                _structural_orderings.clear();
                _structural_orderings.push_back(order);
            }
            else if (adjacency_prefix == best_adjacency && s_part == best_s_adjacency)
                _structural_orderings.push_back(order);
        };

        auto recurse = [&] (auto & self, int depth) -> void {
            if (depth == m) {
                leaf();
                return;
            }
            for (int v = 0 ; v < m ; ++v) {
                if (used[v])
                    continue;
                auto old_length = adjacency_prefix.size();
                for (int j = 0 ; j < depth ; ++j)
                    adjacency_prefix.push_back(static_cast<char>(_adjacency[static_cast<std::size_t>(order[j] * m + v)]));

                bool prune = false;
                if (have_best) {
                    auto cmp = adjacency_prefix.compare(0, adjacency_prefix.size(), best_adjacency, 0, adjacency_prefix.size());
                    prune = cmp > 0;
                }

                if (! prune) {
                    used[v] = true;
                    order.push_back(v);
                    self(self, depth + 1);
                    order.pop_back();
                    used[v] = false;
                }
                adjacency_prefix.resize(old_length);
            }
        };
        recurse(recurse, 0);

        _structural_prefix.push_back(static_cast<char>(m));
        _structural_prefix.push_back(static_cast<char>(_s_size & 0xff));
        _structural_prefix.push_back(static_cast<char>((_s_size >> 8) & 0xff));
        _structural_prefix += best_adjacency;
        _structural_prefix += best_s_adjacency;
    }

    auto ComponentStructure::adjacent_local(int i, int j) const -> bool
    {
        return _adjacency[static_cast<std::size_t>(i * size() + j)];
    }

    auto ComponentStructure::adjacent_to_s(int i, int s_index) const -> bool
    {
        return _s_adjacency[static_cast<std::size_t>(i * _s_size + s_index)];
    }

    auto ComponentStructure::canonical(const vector<std::uint32_t> & extra, int s_extra) const -> CanonicalForm
    {
        int m = size();
        int total_colors = _base_colors + s_extra;
        auto bytes_per_vertex = static_cast<std::size_t>((total_colors + 7) / 8);

        vector<string> vertex_bytes(static_cast<std::size_t>(m), string(bytes_per_vertex, '\0'));
        for (int i = 0 ; i < m ; ++i) {
            auto & bytes = vertex_bytes[i];
            for (int c = 0 ; c < total_colors ; ++c) {
                bool on = c < _base_colors ? _base_color_bits[i][c] : ((extra.at(static_cast<std::size_t>(i)) >> (c - _base_colors)) & 1u);
                if (on)
                    bytes[static_cast<std::size_t>(c / 8)] = static_cast<char>(bytes[static_cast<std::size_t>(c / 8)] | (1 << (c % 8)));
            }
        }

        const vector<int> * best = nullptr;
        string best_colors;
        for (auto & ordering : _structural_orderings) {
            string colors;
            colors.reserve(bytes_per_vertex * static_cast<std::size_t>(m));
            for (auto i : ordering)
                colors += vertex_bytes[i];
            if (! best || colors < best_colors) {
                best = &ordering;
                best_colors = std::move(colors);
            }
        }

        CanonicalForm result;
        result.type.code = _structural_prefix;
        result.type.code.insert(3, string{ static_cast<char>(total_colors & 0xff), static_cast<char>((total_colors >> 8) & 0xff) });
        result.type.code += best_colors;
        for (auto i : *best)
            result.order.push_back(_vertices[i]);
        return result;
    }

    auto ComponentStructure::canonical() const -> CanonicalForm
    {
        return canonical(vector<std::uint32_t>(static_cast<std::size_t>(size()), 0), 0);
    }

    auto canonical_type(const ColoredGraph & g, const vector<Vertex> & s_order, const VertexSet & a) -> CanonicalForm
    {
        VertexSet s(g.vertex_count());
        for (auto v : s_order)
            s.set(v);
        if (a.empty() || a.intersects(s))
            throw GraphError{ "not a component of G - S" };
        bool is_component = false;
        for (auto & c : components(g, s))
            if (c == a)
                is_component = true;
        if (! is_component)
            throw GraphError{ "not a component of G - S" };
        return ComponentStructure(g, s_order, a).canonical();
    }

    auto TypeCensus::component_count() const -> int
    {
        int result = 0;
        for (auto & c : classes)
            result += static_cast<int>(c.members.size());
        return result;
    }

    auto TypeCensus::find(const ComponentType & t) const -> int
    {
        auto it = std::lower_bound(classes.begin(), classes.end(), t, [] (const TypeClass & c, const ComponentType & x) { return c.type < x; });
        if (it == classes.end() || it->type != t)
            return -1;
        return static_cast<int>(it - classes.begin());
    }

    namespace
    {
        auto raw_key(const ColoredGraph & g, const vector<Vertex> & s_order, const vector<Vertex> & vertices) -> string
        {
            string key;
            key.push_back(static_cast<char>(vertices.size()));
            for (auto u : vertices) {
                for (auto v : vertices)
                    key.push_back(g.adjacent(u, v) ? '1' : '0');
                for (auto v : s_order)
                    key.push_back(g.adjacent(u, v) ? '1' : '0');
                for (int c = 0 ; c < g.color_count() ; ++c)
                    key.push_back(g.in_color(u, c) ? '1' : '0');
            }
            return key;
        }
    }

    auto census(const ColoredGraph & g, const vector<Vertex> & s_order) -> TypeCensus
    {
        VertexSet s(g.vertex_count());
        for (auto v : s_order)
            s.set(v);

        std::map<ComponentType, vector<TypeMember>> by_type;
        std::map<string, std::pair<ComponentType, vector<int>>> seen;
        vector<Vertex> vertices;
        for (auto & c : components(g, s)) {
            vertices.clear();
            c.for_each([&] (Vertex v) { vertices.push_back(v); });
            auto key = raw_key(g, s_order, vertices);
            auto it = seen.find(key);
            if (it == seen.end()) {
                auto form = ComponentStructure(g, s_order, c).canonical();
                vector<int> local;
                for (auto v : form.order)
                    local.push_back(static_cast<int>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin()));
                it = seen.emplace(std::move(key), std::pair{ form.type, std::move(local) }).first;
            }
            vector<Vertex> order;
            order.reserve(vertices.size());
            for (auto i : it->second.second)
                order.push_back(vertices[i]);
            by_type[it->second.first].push_back(TypeMember{ std::move(c), std::move(order) });
        }

        TypeCensus result;
        for (auto & [type, members] : by_type)
            result.classes.push_back(TypeClass{ type, std::move(members) });
        return result;
    }

    auto type_census(const ColoredGraph & g, const vector<Vertex> & s_order) -> std::map<ComponentType, int>
    {
        std::map<ComponentType, int> result;
        for (auto & c : census(g, s_order).classes)
            result.emplace(c.type, static_cast<int>(c.members.size()));
        return result;
    }
}
