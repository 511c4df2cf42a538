#pragma once

#include <vicheck/graph.hh>

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vicheck
{
    class ShapeError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /// An extended type: a base type together with a coloring by the s
    /// assignment colors, up to type isomorphism.
    struct ExtendedType
    {
        ComponentType code;
        int base = 0;
        /// pattern[pos] = assignment bits of the vertex at canonical position
        /// pos of the base type.
        std::vector<std::uint32_t> pattern;
        /// counts[i] = vertices in X_i.
        std::vector<int> counts;
        /// s_neighbours[j][i] = neighbours of the j-th S vertex inside one
        /// such component that lie in X_i.
        std::vector<std::vector<int>> s_neighbours;
    };

    struct Shape
    {
        static constexpr std::int64_t top = -1;

        /// s_masks[j] = bit i set when the j-th S vertex is in X_i.
        std::vector<std::uint32_t> s_masks;
        /// Indexed like ShapeSpace::types(); top means above the threshold.
        std::vector<std::int64_t> sigma;

        friend auto operator==(const Shape &, const Shape &) -> bool = default;
        friend auto operator<=>(const Shape &, const Shape &) = default;
    };

    auto to_string(const Shape & shape) -> std::string;

    struct Realization
    {
        Assignment assignment;
        /// S plus, per extended type, the first min(count, threshold) components.
        VertexSet kernel;
    };

    class ShapeSpace
    {
        private:
            const ColoredGraph * _g;
            std::vector<Vertex> _s_order;
            VertexSet _s_set;
            int _k, _s, _q;
            std::int64_t _threshold;
            TypeCensus _census;
            std::vector<ComponentStructure> _structures;
            std::vector<ExtendedType> _types;
            std::vector<std::pair<int, int>> _ranges;
            std::map<ComponentType, int> _index;

            auto realize_parts(const std::vector<std::uint32_t> & s_masks, const std::vector<std::int64_t> & counts, bool kernel_only) const -> Realization;

        public:
            /// g must outlive the space; set(s_order) must be a vi(k)-set.
            ShapeSpace(const ColoredGraph & g, std::vector<Vertex> s_order, int k, int s, int q);

            auto graph() const -> const ColoredGraph & { return *_g; }
            auto s_order() const -> const std::vector<Vertex> & { return _s_order; }
            auto s_set() const -> const VertexSet & { return _s_set; }
            auto k() const -> int { return _k; }
            auto s() const -> int { return _s; }
            auto q() const -> int { return _q; }
            auto threshold() const -> std::int64_t { return _threshold; }
            auto census() const -> const TypeCensus & { return _census; }

            /// Ordered by base type, then by code.
            auto types() const -> const std::vector<ExtendedType> & { return _types; }
            /// [begin, end) of the extended types of base type t.
            auto range_of(int base) const -> std::pair<int, int> { return _ranges[base]; }
            auto base_count(int base) const -> int { return static_cast<int>(_census.classes[base].members.size()); }
            auto find(const ComponentType & code) const -> int;

            auto shape_of(const Assignment & assignment) const -> Shape;

            auto is_valid(const Shape & shape) const -> bool;

            /// Calls fn on each valid shape until it returns true; returns
            /// whether it stopped early.
            auto for_each_valid_shape(const std::function<auto (const Shape &) -> bool> & fn) const -> bool;
            auto valid_shapes() const -> std::vector<Shape>;

            /// Exact component counts per extended type that a representative
            /// of shape uses.
            auto representative_counts(const Shape & shape) const -> std::vector<std::int64_t>;

            auto representative(const Shape & shape) const -> Assignment;

            /// Assignment with S colored by s_masks and exactly counts[t'] components
            /// of each extended type t', filled lowest id first.
            auto realize(const std::vector<std::uint32_t> & s_masks, const std::vector<std::int64_t> & counts) const -> Realization;

            /// As realize, but only the kernel components receive their patterns.
            auto realize_kernel(const std::vector<std::uint32_t> & s_masks, const std::vector<std::int64_t> & counts) const -> Realization;
    };

    /// Restricts each set to keep, renumbered like ColoredGraph::induced.
    auto restrict_assignment(const Assignment & assignment, const VertexSet & keep) -> Assignment;
}
