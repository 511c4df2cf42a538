#pragma once

#include <vicheck/vertex_set.hh>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vicheck
{
    class GraphError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    using Edge = std::pair<Vertex, Vertex>;

    /// Simple undirected graph with an ordered list of vertex-subset colors.
    /// Colors are 0-based internally; the text formats call color i "C(i+1)".
    class ColoredGraph
    {
        private:
            int _n = 0;
            std::vector<VertexSet> _adjacency;
            std::vector<Edge> _edges;
            std::vector<VertexSet> _colors;

        public:
            ColoredGraph() = default;
            explicit ColoredGraph(int n);

            /// Throws GraphError on out-of-range ids, self-loops and duplicate edges.
            static auto from_edges(int n, const std::vector<Edge> & edges,
                    const std::vector<std::vector<Vertex>> & colors = {}) -> ColoredGraph;

            auto add_edge(Vertex u, Vertex v) -> void;
            auto add_color(VertexSet members) -> int;
            auto set_color(int index, VertexSet members) -> void;

            auto vertex_count() const -> int { return _n; }
            auto edge_count() const -> int { return static_cast<int>(_edges.size()); }
            /// Edges as (u, v) with u < v, sorted lexicographically.
            auto edges() const -> const std::vector<Edge> & { return _edges; }
            auto adjacent(Vertex u, Vertex v) const -> bool { return _adjacency[u].test(v); }
            auto neighbours(Vertex v) const -> const VertexSet & { return _adjacency[v]; }
            auto degree(Vertex v) const -> int { return _adjacency[v].count(); }
            auto edge_index(Vertex u, Vertex v) const -> int;

            auto color_count() const -> int { return static_cast<int>(_colors.size()); }
            auto color(int index) const -> const VertexSet & { return _colors[index]; }
            auto in_color(Vertex v, int index) const -> bool { return _colors[index].test(v); }
            auto colors() const -> const std::vector<VertexSet> & { return _colors; }

            auto all_vertices() const -> VertexSet { return VertexSet::full(_n); }

            /// Subgraph induced by keep, vertices renumbered in ascending id order.
            auto induced(const VertexSet & keep) const -> ColoredGraph;

            /// Same graph with extra colors appended after the existing ones.
            auto with_extra_colors(const std::vector<VertexSet> & extra) const -> ColoredGraph;

            /// Same graph keeping only the first count colors.
            auto with_color_prefix(int count) const -> ColoredGraph;

            friend auto operator==(const ColoredGraph &, const ColoredGraph &) -> bool = default;
    };

    /// Vertices sorted ascending.
    auto sorted_members(const VertexSet & s) -> std::vector<Vertex>;

    /// Connected components of g - s, ascending by smallest vertex id.
    auto components(const ColoredGraph & g, const VertexSet & s) -> std::vector<VertexSet>;

    struct ViSet
    {
        VertexSet members;
        int k = 0;
    };

    /// Some S such that every component of g - S has at most k - |S| vertices.
    auto find_vi_set(const ColoredGraph & g, int k) -> std::optional<ViSet>;

    auto vertex_integrity(const ColoredGraph & g) -> int;

    /// Smallest k together with a witnessing vi(k)-set.
    auto minimum_vi_set(const ColoredGraph & g) -> ViSet;

    /// Canonical encoding of a (G,S)-type. Byte layout: |A|, |S| and the
    /// color count, then A-internal adjacency in row-major lower-triangular
    /// order, then A x S adjacency, then the color bitset of each position.
    struct ComponentType
    {
        std::string code;

        auto size() const -> int { return static_cast<unsigned char>(code.at(0)); }

        friend auto operator<=>(const ComponentType &, const ComponentType &) = default;
    };

    /// A type together with the witness ordering: order[position] = vertex.
    struct CanonicalForm
    {
        ComponentType type;
        std::vector<Vertex> order;
    };

    /// Largest component handled by the permutation search.
    constexpr int max_canonical_component_size = 12;

    /// Structural data of one component A of g - S. Caches the orderings that
    /// minimise the adjacency and S-adjacency part of the encoding, so that
    /// recolorings of the same component canonicalise quickly.
    class ComponentStructure
    {
        private:
            std::vector<Vertex> _vertices;
            int _s_size = 0;
            int _base_colors = 0;
            std::vector<std::uint8_t> _adjacency;
            std::vector<std::uint8_t> _s_adjacency;
            std::vector<std::vector<bool>> _base_color_bits;
            std::string _structural_prefix;
            std::vector<std::vector<int>> _structural_orderings;

        public:
            ComponentStructure(const ColoredGraph & g, const std::vector<Vertex> & s_order, const VertexSet & a);

            /// Vertices of A ascending; "local index" below means position in this list.
            auto vertices() const -> const std::vector<Vertex> & { return _vertices; }
            auto size() const -> int { return static_cast<int>(_vertices.size()); }
            auto adjacent_local(int i, int j) const -> bool;
            auto adjacent_to_s(int i, int s_index) const -> bool;

            /// Canonical form with s_extra additional colors; extra[i] holds
            /// the extra color bits (bit j = extra color j) of local vertex i.
            auto canonical(const std::vector<std::uint32_t> & extra, int s_extra) const -> CanonicalForm;
            auto canonical() const -> CanonicalForm;

            /// Orderings (as local indices) achieving the minimal structural prefix.
            auto structural_orderings() const -> const std::vector<std::vector<int>> & { return _structural_orderings; }
    };

    /// Rejects a when it is not a component of g - set(s_order).
    auto canonical_type(const ColoredGraph & g, const std::vector<Vertex> & s_order, const VertexSet & a) -> CanonicalForm;

    struct TypeMember
    {
        VertexSet vertices;
        std::vector<Vertex> order;
    };

    struct TypeClass
    {
        ComponentType type;
        /// Ascending by smallest vertex id.
        std::vector<TypeMember> members;
    };

    struct TypeCensus
    {
        /// Sorted by type.
        std::vector<TypeClass> classes;

        auto component_count() const -> int;
        auto find(const ComponentType & t) const -> int;
    };

    auto census(const ColoredGraph & g, const std::vector<Vertex> & s_order) -> TypeCensus;

    auto type_census(const ColoredGraph & g, const std::vector<Vertex> & s_order) -> std::map<ComponentType, int>;
}
