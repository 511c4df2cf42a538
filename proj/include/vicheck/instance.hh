#pragma once

#include <vicheck/constraints.hh>
#include <vicheck/formula.hh>
#include <vicheck/graph.hh>

#include <stdexcept>
#include <vector>

namespace vicheck
{
    class InstanceError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /// A formula with free set variables X_1..X_s, global constraints R_1..R_g
    /// over their sizes and local constraints per vertex of the input graph.
    /// For MSO2 formulas, edge-set variables are counted by incident edges.
    struct Instance
    {
        Formula formula;
        std::vector<GlobalConstraint> globals;
        /// An empty table (no variables) means unconstrained.
        LocalTable locals;
    };

    /// Checks arities against g; returns the local table with defaults filled in.
    auto effective_locals(const ColoredGraph & g, const Instance & inst) -> LocalTable;

    /// Truth vector of the global constraints for the given set sizes.
    auto global_truth(const std::vector<GlobalConstraint> & globals, const std::vector<std::int64_t> & sizes) -> PreEvaluation;
}
