#pragma once

#include <vicheck/formula.hh>
#include <vicheck/graph.hh>
#include <vicheck/ilp.hh>

#include <cstdint>
#include <string>
#include <vector>

namespace vicheck
{
    class ConstraintError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /// Closed integer interval; lo > hi denotes the empty interval.
    struct Interval
    {
        int lo = 0;
        int hi = -1;

        static auto empty() -> Interval { return Interval{ 0, -1 }; }

        auto is_empty() const -> bool { return lo > hi; }
        auto contains(int x) const -> bool { return lo <= x && x <= hi; }
        auto intersect(Interval other) const -> Interval;

        friend auto operator==(const Interval & a, const Interval & b) -> bool;
        friend auto operator<(const Interval & a, const Interval & b) -> bool;
    };

    auto to_string(Interval i) -> std::string;

    /// a . (|X_1|, ..., |X_s|) <= bound
    struct GlobalConstraint
    {
        std::vector<std::int64_t> coeffs;
        std::int64_t bound = 0;

        auto holds(const std::vector<std::int64_t> & sizes) const -> bool;
    };

    /// For each free variable i and vertex v, the allowed range of |X_i cap N(v)|.
    class LocalTable
    {
        private:
            int _n = 0;
            std::vector<std::vector<Interval>> _intervals;

        public:
            LocalTable() = default;

            /// Every interval [0, n].
            LocalTable(int n, int s);

            auto vertex_count() const -> int { return _n; }
            auto variable_count() const -> int { return static_cast<int>(_intervals.size()); }
            auto at(int i, Vertex v) const -> Interval { return _intervals.at(i).at(v); }
            auto set(int i, Vertex v, Interval interval) -> void;

            /// Appends unconstrained rows for one more variable.
            auto add_variable() -> void;

            /// True when some interval is narrower than [0, n].
            auto restricts_anything() const -> bool;

            friend auto operator==(const LocalTable &, const LocalTable &) -> bool = default;
    };

    auto obeys_at(const ColoredGraph & g, const Assignment & assignment, const LocalTable & table, const VertexSet & where) -> bool;

    /// Intersects the intervals of vertices outside s_set with [0, k-1].
    auto restrict_to_small_degrees(const LocalTable & table, const VertexSet & s_set, int k) -> LocalTable;

    struct UniformColor
    {
        int variable;
        Interval interval;
    };

    struct UniformizationResult
    {
        ColoredGraph graph;
        /// registry[j] describes color first_new_color + j.
        std::vector<UniformColor> registry;
        int first_new_color = 0;
    };

    /// Throws ConstraintError when an empty interval occurs outside S; callers
    /// check for that first, since it makes the instance unsatisfiable.
    auto uniformize(const ColoredGraph & g, const std::vector<Vertex> & s_order, const LocalTable & table) -> UniformizationResult;

    /// Some vertex outside s_set has an empty interval.
    auto has_empty_interval(const LocalTable & table, const VertexSet & where) -> bool;

    /// System over s size variables in [0, max_size] realising exactly the
    /// truth values gamma assigns to the global constraints.
    auto gamma_inequalities(const std::vector<GlobalConstraint> & globals, const PreEvaluation & gamma, int s, std::int64_t max_size) -> LinearSystem;

    auto set_sizes(const Assignment & assignment) -> std::vector<std::int64_t>;
}
