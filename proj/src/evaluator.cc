#include <vicheck/evaluator.hh>

#include <algorithm>

using std::vector;

namespace vicheck
{
    namespace
    {
        enum class Domain
        {
            All,
            InColor,
            OutColor
        };

        struct Guarded
        {
            Domain domain = Domain::All;
            int color = -1;
            const Node * body = nullptr;
        };

        auto color_literal(const Node & n, int slot, Domain & domain, int & color) -> bool
        {
            if (n.kind == NodeKind::InColor && n.first == slot) {
                domain = Domain::InColor;
                color = n.second;
                return true;
            }
            if (n.kind == NodeKind::Not && n.left->kind == NodeKind::InColor && n.left->first == slot) {
                domain = Domain::OutColor;
                color = n.left->second;
                return true;
            }
            return false;
        }

        // forall y. (~(y in Y) | [~](y in Ci))
        auto subset_guard(const Node & n, int set_slot, Domain & domain, int & color) -> bool
        {
            if (n.kind != NodeKind::Forall || n.left->kind != NodeKind::Or)
                return false;
            int y = n.first;
            auto & lhs = *n.left->left;
            if (! (lhs.kind == NodeKind::Not && lhs.left->kind == NodeKind::InSet && lhs.left->first == y && lhs.left->second == set_slot))
                return false;
            return color_literal(*n.left->right, y, domain, color);
        }

        auto flip(Domain d) -> Domain
        {
            return d == Domain::InColor ? Domain::OutColor : Domain::InColor;
        }

        // Recognises quantifier bodies whose first conjunct (or negated first
        // disjunct) pins the variable to a color or its complement.
        auto guarded(const Node & q, bool set_sort) -> Guarded
        {
            Guarded result;
            result.body = q.left.get();
            auto & b = *q.left;
            int slot = q.first;
            Domain d;
            int c;
            if (! set_sort) {
                if (q.kind == NodeKind::Exists && b.kind == NodeKind::And && color_literal(*b.left, slot, d, c))
                    return Guarded{ d, c, b.right.get() };
                if (q.kind == NodeKind::Forall && b.kind == NodeKind::Or && color_literal(*b.left, slot, d, c))
                    return Guarded{ flip(d), c, b.right.get() };
            }
            else {
                if (q.kind == NodeKind::Exists && b.kind == NodeKind::And && subset_guard(*b.left, slot, d, c))
                    return Guarded{ d, c, b.right.get() };
                if (q.kind == NodeKind::Forall && b.kind == NodeKind::Or && b.left->kind == NodeKind::Not
                        && subset_guard(*b.left->left, slot, d, c))
                    return Guarded{ d, c, b.right.get() };
            }
            return result;
        }

        class Evaluator
        {
            private:
                const ColoredGraph & _g;
                const Formula & _f;
                vector<Vertex> _elements;
                vector<VertexSet> _sets;
                std::uint64_t _remaining;

                auto domain_members(Domain d, int color) const -> vector<Vertex>
                {
                    switch (d) {
                        case Domain::All: return _g.all_vertices().members();
                        case Domain::InColor: return _g.color(color).members();
                        case Domain::OutColor: return _g.color(color).complement().members();
                    }
                    return {};
                }

                auto quantify_element(const Node & n, bool is_exists) -> bool
                {
                    auto guard = guarded(n, false);
                    for (auto v : domain_members(guard.domain, guard.color)) {
                        _elements[n.first] = v;
                        if (eval(*guard.body) == is_exists)
                            return is_exists;
                    }
                    return ! is_exists;
                }

                auto quantify_set(const Node & n, bool is_exists) -> bool
                {
                    auto guard = guarded(n, true);
                    auto domain = domain_members(guard.domain, guard.color);
                    if (domain.size() >= 63)
                        throw BudgetExceeded{};
                    auto & x = _sets[n.first];
                    x = VertexSet(_g.vertex_count());
                    std::uint64_t limit = std::uint64_t{1} << domain.size();
                    for (std::uint64_t bits = 0 ; bits < limit ; ++bits) {
                        if (bits != 0) {
                            // binary increment: flip the trailing ones and the next zero
                            for (std::size_t i = 0 ; i < domain.size() ; ++i) {
                                if (x.test(domain[i]))
                                    x.reset(domain[i]);
                                else {
                                    x.set(domain[i]);
                                    break;
                                }
                            }
                        }
                        if (eval(*guard.body) == is_exists)
                            return is_exists;
                    }
                    return ! is_exists;
                }

            public:
                Evaluator(const ColoredGraph & g, const Formula & f, std::uint64_t budget) :
                    _g(g),
                    _f(f),
                    _elements(f.variables().size(), -1),
                    _sets(f.variables().size()),
                    _remaining(budget)
                {
                }

                auto bind(int slot, const VertexSet & value) -> void
                {
                    _sets[slot] = value;
                }

                auto eval(const Node & n) -> bool
                {
                    if (_remaining == 0)
                        throw BudgetExceeded{};
                    --_remaining;

                    switch (n.kind) {
                        case NodeKind::True: return true;
                        case NodeKind::False: return false;
                        case NodeKind::Adjacent: return _g.adjacent(_elements[n.first], _elements[n.second]);
                        case NodeKind::Equal: return _elements[n.first] == _elements[n.second];
                        case NodeKind::InSet: return _sets[n.second].test(_elements[n.first]);
                        case NodeKind::InColor: return _g.in_color(_elements[n.first], n.second);
                        case NodeKind::Not: return ! eval(*n.left);
                        case NodeKind::And: return eval(*n.left) && eval(*n.right);
                        case NodeKind::Or: return eval(*n.left) || eval(*n.right);
                        case NodeKind::Incident:
                        case NodeKind::Global:
                            throw EvaluationError{ "formula must be pre-evaluated MSO1" };
                        case NodeKind::Exists:
                        case NodeKind::Forall: {
                            bool is_exists = n.kind == NodeKind::Exists;
                            return is_set_sort(sort_of_slot(n.first)) ? quantify_set(n, is_exists) : quantify_element(n, is_exists);
                        }
                    }
                    return false;
                }

                auto sort_of_slot(int slot) const -> Sort { return _f.variable(slot).sort; }
        };

        auto validate(const ColoredGraph & g, const Formula & f) -> void
        {
            if (f.uses_edge_sorts())
                throw EvaluationError{ "MSO2 formulas must be rewritten before evaluation" };
            if (f.global_atom_bound() > 0)
                throw EvaluationError{ "formula still contains global constraint atoms" };
            if (f.color_bound() > g.color_count())
                throw EvaluationError{ "formula refers to color C" + std::to_string(f.color_bound()) + " but the graph has "
                        + std::to_string(g.color_count()) + " colors" };
        }
    }

    auto evaluate(const ColoredGraph & g, const Formula & f, EvaluationOptions options) -> bool
    {
        if (! f.is_closed())
            throw EvaluationError{ "evaluate needs a closed formula" };
        return holds(g, f, {}, options);
    }

    auto holds(const ColoredGraph & g, const Formula & f, const Assignment & assignment, EvaluationOptions options) -> bool
    {
        validate(g, f);
        if (static_cast<int>(assignment.size()) != f.free_count())
            throw EvaluationError{ "assignment has " + std::to_string(assignment.size()) + " sets but the formula has "
                    + std::to_string(f.free_count()) + " free variables" };

        Evaluator e(g, f, options.budget);
        for (int i = 0 ; i < f.free_count() ; ++i) {
            if (assignment[i].universe_size() != g.vertex_count())
                throw EvaluationError{ "assignment universe does not match the graph" };
            e.bind(i, assignment[i]);
        }
        return e.eval(*f.root());
    }

    auto kernel_threshold(int k, int q) -> std::int64_t
    {
        long long exponent = static_cast<long long>(k) * q;
        if (exponent >= 62)
            return std::int64_t{1} << 62;
        return std::int64_t{1} << exponent;
    }

    auto kernel_vertices(const ColoredGraph & g, const VertexSet & s, int q, int k) -> VertexSet
    {
        auto threshold = kernel_threshold(k, q);
        VertexSet keep = s;
        for (auto & c : census(g, s.members()).classes) {
            auto limit = std::min<std::int64_t>(threshold, static_cast<std::int64_t>(c.members.size()));
            for (std::int64_t i = 0 ; i < limit ; ++i)
                keep |= c.members[static_cast<std::size_t>(i)].vertices;
        }
        return keep;
    }

    auto kernelize(const ColoredGraph & g, const VertexSet & s, int q, int k) -> ColoredGraph
    {
        return g.induced(kernel_vertices(g, s, q, k));
    }

    auto kernelize(const ColoredGraph & g, const VertexSet & s, int q) -> ColoredGraph
    {
        int largest = 0;
        for (auto & c : components(g, s))
            largest = std::max(largest, c.count());
        return kernelize(g, s, q, s.count() + largest);
    }
}
