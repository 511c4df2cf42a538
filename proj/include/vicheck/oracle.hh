#pragma once

#include <vicheck/graph.hh>
#include <vicheck/instance.hh>
#include <vicheck/problem_kinds.hh>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace vicheck
{
    class OracleLimit : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    struct OracleVerdict
    {
        bool satisfiable = false;
        /// Vertex sets over [0, n), edge sets over edge indices [0, m).
        std::optional<Assignment> witness;
        std::int64_t count = 0;
    };

    struct OracleOptions
    {
        /// Stop at the first satisfying assignment (count is then 0 or 1).
        bool first_only = false;
        /// Upper bound on the total number of assignment bits.
        int max_bits = 24;
    };

    /// Native MSO1/MSO2 semantics with R_i read from the actual set sizes.
    /// Edge-sorted values are edge indices of g.
    auto oracle_holds(const ColoredGraph & g, const Instance & inst, const Assignment & assignment) -> bool;

    /// Formula, globals and locals all satisfied.
    auto oracle_accepts(const ColoredGraph & g, const Instance & inst, const Assignment & assignment) -> bool;

    auto brute_force_msogl(const ColoredGraph & g, const Instance & inst, OracleOptions options = {}) -> OracleVerdict;
    auto brute_force_gsogl(const ColoredGraph & g, const Instance & inst, OracleOptions options = {}) -> OracleVerdict;

    auto brute_force_vi(const ColoredGraph & g) -> int;

    /// Exact treedepth by memoised recursion over vertex subsets (n <= 20).
    auto brute_force_treedepth(const ColoredGraph & g) -> int;

    /// Exact decision td(g) <= depth for graphs up to 64 vertices; searches
    /// elimination roots by decreasing degree with memoisation.
    auto treedepth_at_most(const ColoredGraph & g, int depth) -> bool;

    /// Direct checkers for the encoded problems.
    auto fair_vertex_cover_exists(const ColoredGraph & g, int size_bound, int fairness) -> bool;
    auto defective_coloring_exists(const ColoredGraph & g, int colors, int defect) -> bool;
    auto alliance_exists(const ColoredGraph & g, AllianceKind kind, int r, bool global, int size_bound) -> bool;
    auto equitable_partition_exists(const ColoredGraph & g, int parts, PartProperty property) -> bool;
    auto capacitated_vertex_cover_exists(const ColoredGraph & g, const std::vector<int> & capacities, int size_bound) -> bool;
    auto capacitated_dominating_set_exists(const ColoredGraph & g, const std::vector<int> & capacities, int size_bound) -> bool;
    auto bounded_degree_deletion_exists(const ColoredGraph & g, int budget, int degree) -> bool;
    /// phi has free A (vertex set) and B (edge set).
    auto capacitated_mso2_exists(const ColoredGraph & g, const Formula & phi, const std::vector<int> & capacities, int size_bound) -> bool;
}
