#pragma once

#include <vicheck/constraints.hh>
#include <vicheck/evaluator.hh>
#include <vicheck/ilp.hh>
#include <vicheck/instance.hh>
#include <vicheck/shapes.hh>

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vicheck
{
    struct SolveOptions
    {
        /// Use this k instead of vi(G); the instance is rejected when no
        /// vi(k)-set exists.
        std::optional<int> k;
        EvaluationOptions evaluation;
        /// Maximum number of shapes examined before BudgetExceeded; 0 means no limit.
        std::int64_t shape_budget = 0;
        /// Re-verify every witness against the original instance.
        bool self_check = false;
        std::ostream * explain = nullptr;
        int threads = 1;
    };

    struct SolveStatistics
    {
        std::int64_t shapes = 0;
        std::int64_t ilp_calls = 0;
        std::int64_t evaluations = 0;
        std::int64_t memo_hits = 0;
    };

    struct SolveResult
    {
        std::optional<Assignment> witness;
        int k = 0;
        VertexSet s;
        SolveStatistics statistics;

        auto satisfiable() const -> bool { return witness.has_value(); }
    };

    class SelfCheckFailure : public std::logic_error
    {
        public:
            using std::logic_error::logic_error;
    };

    /// Everything the shape checks need, computed once per solve.
    class SolveContext
    {
        private:
            ColoredGraph _h;
            int _first_uniform_color;
            LocalTable _locals;
            std::vector<GlobalConstraint> _globals;
            Formula _formula;
            int _q;
            ShapeSpace _space;
            std::vector<std::vector<std::uint32_t>> _s_adjacent;

        public:
            /// locals must already be restricted to small degrees and free of
            /// empty intervals outside S.
            SolveContext(const ColoredGraph & g, const Formula & formula, std::vector<GlobalConstraint> globals,
                    const LocalTable & locals, std::vector<Vertex> s_order, int k);

            SolveContext(const SolveContext &) = delete;
            auto operator=(const SolveContext &) -> SolveContext & = delete;

            /// The uniformized graph.
            auto graph() const -> const ColoredGraph & { return _h; }
            auto space() const -> const ShapeSpace & { return _space; }
            auto locals() const -> const LocalTable & { return _locals; }
            auto globals() const -> const std::vector<GlobalConstraint> & { return _globals; }
            auto formula() const -> const Formula & { return _formula; }
            auto q() const -> int { return _q; }
            auto s() const -> int { return _space.s(); }
            auto k() const -> int { return _space.k(); }

            /// Number of S-neighbours of the j-th S vertex in X_i under s_masks.
            auto s_side_neighbours(const std::vector<std::uint32_t> & s_masks, std::size_t j, int i) const -> std::int64_t;
    };

    auto build_ilp(const SolveContext & ctx, const Shape & shape, const PreEvaluation & gamma) -> LinearSystem;

    auto witness_from_counts(const SolveContext & ctx, const Shape & shape, const std::vector<std::int64_t> & counts) -> Assignment;

    /// Step 1 results keyed by (S masks, sigma capped at the threshold, gamma).
    class KernelMemo
    {
        private:
            std::map<std::pair<Shape, PreEvaluation>, bool> _results;

        public:
            auto lookup(const Shape & capped, const PreEvaluation & gamma) const -> std::optional<bool>;
            auto insert(const Shape & capped, const PreEvaluation & gamma, bool value) -> void;
    };

    auto check_shape(const SolveContext & ctx, const Shape & shape, const PreEvaluation & gamma,
            KernelMemo * memo = nullptr, SolveStatistics * statistics = nullptr, EvaluationOptions evaluation = {}) -> std::optional<Assignment>;

    /// MSO1 instances only.
    auto model_check(const ColoredGraph & g, const Instance & inst, const SolveOptions & options = {}) -> SolveResult;

    /// Independent verification of a witness against the original instance.
    auto verify_witness(const ColoredGraph & g, const Instance & inst, const Assignment & witness, EvaluationOptions evaluation = {}) -> bool;
}
