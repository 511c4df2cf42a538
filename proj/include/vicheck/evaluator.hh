#pragma once

#include <vicheck/formula.hh>
#include <vicheck/graph.hh>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vicheck
{
    class BudgetExceeded : public std::runtime_error
    {
        public:
            BudgetExceeded() : std::runtime_error("evaluation budget exceeded") { }
            explicit BudgetExceeded(const std::string & what) : std::runtime_error(what) { }
    };

    class EvaluationError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    struct EvaluationOptions
    {
        /// Maximum number of formula nodes visited.
        std::uint64_t budget = 100'000'000;
    };

    /// Truth of a closed MSO1 formula.
    auto evaluate(const ColoredGraph & g, const Formula & f, EvaluationOptions options = {}) -> bool;

    /// Truth of f with its free set variables bound to assignment.
    auto holds(const ColoredGraph & g, const Formula & f, const Assignment & assignment, EvaluationOptions options = {}) -> bool;

    /// 2^(kq), saturating.
    auto kernel_threshold(int k, int q) -> std::int64_t;

    /// Vertices kept when surplus same-type components are deleted.
    auto kernel_vertices(const ColoredGraph & g, const VertexSet & s, int q, int k) -> VertexSet;

    auto kernelize(const ColoredGraph & g, const VertexSet & s, int q, int k) -> ColoredGraph;

    /// As above with k = |S| plus the largest component of g - S.
    auto kernelize(const ColoredGraph & g, const VertexSet & s, int q) -> ColoredGraph;
}
