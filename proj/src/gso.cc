#include <vicheck/gso.hh>

#include <cctype>

using std::vector;

namespace vicheck
{
    auto subdivide(const ColoredGraph & g) -> SubdivisionMap
    {
        SubdivisionMap result;
        int n = g.vertex_count(), m = g.edge_count();
        result.original_vertices = n;
        result.edges = g.edges();
        result.graph = ColoredGraph(n + m);
        for (auto & [u, v] : g.edges())
            result.graph.add_edge(u, v);
        for (int e = 0 ; e < m ; ++e) {
            result.graph.add_edge(result.edges[e].first, n + e);
            result.graph.add_edge(result.edges[e].second, n + e);
        }
        for (auto & c : g.colors()) {
            VertexSet lifted(n + m);
            c.for_each([&] (Vertex v) { lifted.set(v); });
            result.graph.add_color(std::move(lifted));
        }
        VertexSet ce(n + m);
        for (int e = 0 ; e < m ; ++e)
            ce.set(n + e);
        result.edge_color = result.graph.add_color(std::move(ce));
        return result;
    }

    namespace
    {
        class Rewriter
        {
            private:
                vector<Variable> _variables;
                int _ce;
                int _fresh = 0;

                auto fresh_guard_slot() -> int
                {
                    _variables.push_back(Variable{ "_g" + std::to_string(++_fresh), Sort::Vertex });
                    return static_cast<int>(_variables.size()) - 1;
                }

                auto in_ce(int slot) const -> NodePtr
                {
                    return make_atom(NodeKind::InColor, slot, _ce);
                }

            public:
                Rewriter(const Formula & f, int ce) :
                    _variables(f.variables()),
                    _ce(ce)
                {
                }

                // forall y. (~(y in Y) | [~](y in C_E))
                auto set_guard(int slot, Sort original) -> NodePtr
                {
                    int y = fresh_guard_slot();
                    NodePtr member = in_ce(y);
                    if (original == Sort::VertexSet)
                        member = make_not(member);
                    return make_quantifier(NodeKind::Forall, y, make_or(make_not(make_atom(NodeKind::InSet, y, slot)), member));
                }

                auto rewrite(const NodePtr & n, const vector<Sort> & sorts) -> NodePtr
                {
                    switch (n->kind) {
                        case NodeKind::Incident:
                            return make_atom(NodeKind::Adjacent, n->first, n->second);
                        case NodeKind::Not:
                            return make_not(rewrite(n->left, sorts));
                        case NodeKind::And:
                            return make_and(rewrite(n->left, sorts), rewrite(n->right, sorts));
                        case NodeKind::Or:
                            return make_or(rewrite(n->left, sorts), rewrite(n->right, sorts));
                        case NodeKind::Exists:
                        case NodeKind::Forall: {
                            bool exists = n->kind == NodeKind::Exists;
                            int slot = n->first;
                            auto body = rewrite(n->left, sorts);
                            NodePtr guard;
                            switch (sorts[slot]) {
                                case Sort::Edge: guard = in_ce(slot); break;
                                case Sort::Vertex: guard = make_not(in_ce(slot)); break;
                                default: guard = set_guard(slot, sorts[slot]); break;
                            }
                            if (exists)
                                return make_quantifier(n->kind, slot, make_and(guard, body));
                            if (guard->kind == NodeKind::Not)
                                return make_quantifier(n->kind, slot, make_or(guard->left, body));
                            return make_quantifier(n->kind, slot, make_or(make_not(guard), body));
                        }
                        default:
                            return n;
                    }
                }

                auto finish(NodePtr root, int free_count) -> Formula
                {
                    for (auto & v : _variables) {
                        bool upper = std::isupper(static_cast<unsigned char>(v.name[0]));
                        if (is_set_sort(v.sort) && ! upper)
                            v.name = "S" + v.name;
                        else if (! is_set_sort(v.sort) && upper)
                            v.name = "v" + v.name;
                        v.sort = is_set_sort(v.sort) ? Sort::VertexSet : Sort::Vertex;
                    }
                    return Formula{ std::move(root), _variables, free_count, false };
                }

                auto variables() const -> const vector<Variable> & { return _variables; }
        };
    }

    auto rewrite_formula(const Formula & f, int edge_color) -> Formula
    {
        Rewriter r(f, edge_color);
        vector<Sort> sorts;
        for (auto & v : f.variables())
            sorts.push_back(v.sort);
        auto body = r.rewrite(f.root(), sorts);
        for (int i = f.free_count() ; i-- > 0 ; )
            body = make_and(r.set_guard(i, sorts[i]), body);
        return r.finish(std::move(body), f.free_count());
    }

    auto lift_constraints(const ColoredGraph & g, const Instance & inst, const SubdivisionMap & map) -> Instance
    {
        auto locals = effective_locals(g, inst);
        int lifted_n = map.graph.vertex_count();
        Instance result{ rewrite_formula(inst.formula, map.edge_color), inst.globals, LocalTable(lifted_n, inst.formula.free_count()) };
        for (int i = 0 ; i < locals.variable_count() ; ++i)
            for (Vertex v = 0 ; v < g.vertex_count() ; ++v) {
                auto interval = locals.at(i, v);
                if (interval.is_empty() || interval.lo > 0 || interval.hi < g.vertex_count())
                    result.locals.set(i, v, interval);
            }
        return result;
    }

    auto lift_assignment(const Formula & f, const SubdivisionMap & map, const Assignment & native) -> Assignment
    {
        Assignment result;
        int lifted_n = map.graph.vertex_count();
        for (int i = 0 ; i < f.free_count() ; ++i) {
            VertexSet x(lifted_n);
            bool edges = f.variable(i).sort == Sort::EdgeSet;
            native.at(i).for_each([&] (Vertex v) { x.set(edges ? map.vertex_of_edge(v) : v); });
            result.push_back(std::move(x));
        }
        return result;
    }

    auto lower_assignment(const Formula & f, const SubdivisionMap & map, const Assignment & lifted) -> Assignment
    {
        Assignment result;
        int m = static_cast<int>(map.edges.size());
        for (int i = 0 ; i < f.free_count() ; ++i) {
            bool edges = f.variable(i).sort == Sort::EdgeSet;
            VertexSet x(edges ? m : map.original_vertices);
            lifted.at(i).for_each([&] (Vertex v) {
                int e = map.edge_of_vertex(v);
                if (edges && e >= 0)
                    x.set(e);
                else if (! edges && e < 0)
                    x.set(v);
            });
            result.push_back(std::move(x));
        }
        return result;
    }

    auto gso_model_check(const ColoredGraph & g, const Instance & inst, const SolveOptions & options) -> GsoResult
    {
        auto map = subdivide(g);
        auto lifted = lift_constraints(g, inst, map);
        GsoResult result{ model_check(map.graph, lifted, options), std::nullopt };
        if (result.lifted.witness)
            result.witness = lower_assignment(inst.formula, map, *result.lifted.witness);
        return result;
    }
}
