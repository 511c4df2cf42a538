#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vicheck
{
    enum class Sort
    {
        Vertex,
        VertexSet,
        Edge,
        EdgeSet
    };

    auto is_set_sort(Sort s) -> bool;
    auto is_edge_sort(Sort s) -> bool;
    auto element_sort_of(Sort set_sort) -> Sort;
    auto sort_name(Sort s) -> std::string_view;

    struct Variable
    {
        std::string name;
        Sort sort = Sort::Vertex;

        friend auto operator==(const Variable &, const Variable &) -> bool = default;
    };

    enum class NodeKind
    {
        True,
        False,
        Adjacent,   // E(x,y)
        Incident,   // I(x,e)
        Equal,      // x = y
        InSet,      // x in X
        InColor,    // x in Ci
        Global,     // Ri
        Not,
        And,
        Or,
        Exists,
        Forall
    };

    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    /// Immutable formula node. Variables are referred to by slot: slots
    /// [0, free_count) are the free set variables in declaration order, the
    /// remaining slots are bound by exactly one quantifier each.
    struct Node
    {
        NodeKind kind;
        /// Variable slots for atoms (first, second); the bound slot of a
        /// quantifier is `first`. For InColor `second` is the 0-based color;
        /// for Global `first` is the 0-based constraint index.
        int first = -1;
        int second = -1;
        NodePtr left;
        NodePtr right;
    };

    auto make_constant(bool value) -> NodePtr;
    auto make_atom(NodeKind kind, int first, int second = -1) -> NodePtr;
    auto make_not(NodePtr f) -> NodePtr;
    auto make_and(NodePtr a, NodePtr b) -> NodePtr;
    auto make_or(NodePtr a, NodePtr b) -> NodePtr;
    auto make_quantifier(NodeKind kind, int slot, NodePtr body) -> NodePtr;

    auto structurally_equal(const NodePtr & a, const NodePtr & b) -> bool;

    /// A well-sorted formula together with its variable table.
    class Formula
    {
        private:
            NodePtr _root;
            std::vector<Variable> _variables;
            int _free_count = 0;
            bool _mso2 = false;

        public:
            Formula() = default;
            Formula(NodePtr root, std::vector<Variable> variables, int free_count, bool mso2);

            auto root() const -> const NodePtr & { return _root; }
            auto variables() const -> const std::vector<Variable> & { return _variables; }
            auto variable(int slot) const -> const Variable & { return _variables.at(static_cast<std::size_t>(slot)); }
            auto free_count() const -> int { return _free_count; }
            auto free_variables() const -> std::vector<Variable>;
            auto is_closed() const -> bool { return _free_count == 0; }
            auto is_mso2() const -> bool { return _mso2; }
            /// True when some variable has an edge sort or an Incident atom occurs.
            auto uses_edge_sorts() const -> bool;

            /// Largest Global index referenced plus one (0 when none).
            auto global_atom_bound() const -> int;
            /// Largest color index referenced plus one (0 when none).
            auto color_bound() const -> int;

            auto with_root(NodePtr root) const -> Formula;

            friend auto operator==(const Formula & a, const Formula & b) -> bool;
    };

    class FormulaError : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    class ParseError : public FormulaError
    {
        private:
            std::size_t _position;

        public:
            ParseError(const std::string & message, std::size_t position);
            auto position() const -> std::size_t { return _position; }
    };

    struct ParseOptions
    {
        /// Permit edge sorts and I(x,e).
        bool mso2 = false;
    };

    /// Free variable declaration. Set sorts only.
    auto declare(std::string name, Sort sort) -> Variable;

    auto parse(std::string_view text, const std::vector<Variable> & free_variables, ParseOptions options = {}) -> Formula;

    /// Deterministic printer; parse(print(f)) reproduces f.
    auto print(const Formula & f) -> std::string;

    auto quantifier_count(const Formula & f) -> int;
    auto quantifier_count(const NodePtr & f) -> int;

    /// Number of nodes, used as the formula length.
    auto formula_size(const Formula & f) -> int;

    using PreEvaluation = std::vector<bool>;

    /// Replaces every Global atom by the constant gamma assigns to it.
    auto pre_evaluate(const Formula & f, const PreEvaluation & gamma) -> Formula;

    /// All 2^g total mappings, binary counting with R_1 least significant.
    /// Truth value when it is forced on every graph, including graphs with
    /// no vertices or edges; absent otherwise.
    auto known_value(const Formula & f) -> std::optional<bool>;

    auto enumerate_pre_evaluations(int g) -> std::vector<PreEvaluation>;
}
