#include <vicheck/problems.hh>
#include <vicheck/gso.hh>

#include <algorithm>
#include <functional>
#include <numeric>

using std::int64_t;
using std::string;
using std::vector;

namespace vicheck
{
    namespace
    {
        auto color_name(int index) -> string
        {
            return "C" + std::to_string(index + 1);
        }

        auto joined(const vector<string> & parts, const string & op, const string & empty) -> string
        {
            if (parts.empty())
                return empty;
            string result;
            for (std::size_t i = 0 ; i < parts.size() ; ++i)
                result += (i ? " " + op + " " : "") + "(" + parts[i] + ")";
            return result;
        }

        auto conjunction(const vector<string> & parts) -> string
        {
            return joined(parts, "&", "true");
        }

        auto disjunction(const vector<string> & parts) -> string
        {
            return joined(parts, "|", "false");
        }

        auto floor_half(int64_t x) -> int64_t
        {
            return x >= 0 ? x / 2 : -((-x + 1) / 2);
        }

        auto require(bool condition, const string & message) -> void
        {
            if (! condition)
                throw ProblemError{ message };
        }

        auto extend(const VertexSet & x, int size) -> VertexSet
        {
            VertexSet result(size);
            x.for_each([&] (Vertex v) { result.set(v); });
            return result;
        }

        auto free_sets(const vector<string> & names) -> vector<Variable>
        {
            vector<Variable> result;
            for (auto & name : names)
                result.push_back(declare(name, Sort::VertexSet));
            return result;
        }

        auto size_row(int s, int index, int64_t sign) -> vector<int64_t>
        {
            vector<int64_t> row(static_cast<std::size_t>(s), 0);
            row[index] = sign;
            return row;
        }

        // X1..Xk cover V and are pairwise disjoint.
        auto partition_text(const vector<string> & parts) -> vector<string>
        {
            vector<string> result;
            vector<string> any;
            for (auto & p : parts)
                any.push_back("x in " + p);
            result.push_back("forall x. " + disjunction(any));
            for (std::size_t i = 0 ; i < parts.size() ; ++i)
                for (std::size_t j = i + 1 ; j < parts.size() ; ++j)
                    result.push_back("forall x. ~(x in " + parts[i] + " & x in " + parts[j] + ")");
            return result;
        }

        auto encode_fair_vc(const FairVertexCover & spec, const ColoredGraph & g) -> EncodedInstance
        {
            require(spec.size_bound >= 0 && spec.fairness >= 0, "fair vertex cover parameters must be nonnegative");
            auto f = parse("(forall x. forall y. (E(x,y) -> (x in X1 | y in X1))) & R1", free_sets({ "X1" }));
            LocalTable locals(g.vertex_count(), 1);
            for (int v = 0 ; v < g.vertex_count() ; ++v)
                locals.set(0, v, Interval{ 0, spec.fairness });
            return EncodedInstance{ g, Instance{ f, { GlobalConstraint{ { 1 }, spec.size_bound } }, locals } };
        }

        auto encode_defective(const DefectiveColoring & spec, const ColoredGraph & g) -> EncodedInstance
        {
            require(spec.colors >= 1 && spec.defect >= 0, "defective coloring needs at least one color and a nonnegative defect");
            vector<string> parts;
            for (int i = 1 ; i <= spec.colors ; ++i)
                parts.push_back("X" + std::to_string(i));
            auto text = partition_text(parts);
            for (auto & p : parts)
                text.push_back("forall x. forall y. ((E(x,y) & x in " + p + " & y in " + p
                        + ") -> exists e:z. (z in D & I(x,z) & I(y,z)))");

            auto free = free_sets(parts);
            free.push_back(declare("D", Sort::EdgeSet));
            auto f = parse(conjunction(text), free, ParseOptions{ true });
            LocalTable locals(g.vertex_count(), spec.colors + 1);
            for (int v = 0 ; v < g.vertex_count() ; ++v)
                locals.set(spec.colors, v, Interval{ 0, spec.defect });
            return EncodedInstance{ g, Instance{ f, {}, locals } };
        }

        auto encode_equitable(const EquitablePartition & spec, const ColoredGraph & g) -> EncodedInstance
        {
            require(spec.parts >= 1, "equitable partition needs at least one part");
            int r = spec.parts;
            int n = g.vertex_count();
            vector<string> parts;
            for (int i = 1 ; i <= r ; ++i)
                parts.push_back("X" + std::to_string(i));
            auto text = partition_text(parts);
            for (auto & p : parts) {
                if (spec.property == PartProperty::Independent)
                    text.push_back("forall x. forall y. (E(x,y) -> ~(x in " + p + " & y in " + p + "))");
                else
                    text.push_back("forall Z. (((exists z. z in Z) & (forall z. (z in Z -> z in " + p + ")) & (exists z. (z in "
                            + p + " & ~(z in Z)))) -> exists a. exists b. (a in Z & b in " + p + " & ~(b in Z) & E(a,b)))");
            }
            vector<GlobalConstraint> globals;
            for (int i = 0 ; i < r ; ++i) {
                globals.push_back(GlobalConstraint{ size_row(r, i, 1), (n + r - 1) / r });
                globals.push_back(GlobalConstraint{ size_row(r, i, -1), -(n / r) });
                text.push_back("R" + std::to_string(2 * i + 1) + " & R" + std::to_string(2 * i + 2));
            }
            return EncodedInstance{ g, Instance{ parse(conjunction(text), free_sets(parts)), globals, {} } };
        }

        auto encode_alliance(const Alliance & spec, const ColoredGraph & g) -> EncodedInstance
        {
            require(spec.size_bound >= 0, "alliance size bound must be nonnegative");
            auto h = half_edge_graph(g, true);
            int n = g.vertex_count();
            int p = g.color_count();
            auto w = color_name(h.half_color);
            auto zdef = color_name(p + 1), zoff = color_name(p + 2);
            VertexSet forbid_def(h.graph.vertex_count()), forbid_off(h.graph.vertex_count());

            bool defensive = spec.kind != AllianceKind::Offensive;
            bool offensive = spec.kind != AllianceKind::Defensive;
            vector<string> names{ "X", "Y" };
            if (spec.kind == AllianceKind::Powerful)
                names.push_back("Q");
            string off_set = names.back();

            LocalTable locals(h.graph.vertex_count(), static_cast<int>(names.size()));
            for (int v = 0 ; v < n ; ++v) {
                int64_t degree = g.degree(v);
                if (defensive) {
                    auto cap = floor_half(degree + 1 - spec.r);
                    if (cap < 0)
                        forbid_def.set(v);
                    else
                        locals.set(1, v, Interval{ 0, static_cast<int>(std::min<int64_t>(cap, h.graph.vertex_count())) });
                }
                if (offensive) {
                    auto cap = floor_half(degree - 1 - spec.r);
                    if (cap < 0)
                        forbid_off.set(v);
                    else
                        locals.set(static_cast<int>(names.size()) - 1, v,
                                Interval{ 0, static_cast<int>(std::min<int64_t>(cap, h.graph.vertex_count())) });
                }
            }
            h.graph.add_color(forbid_def);
            h.graph.add_color(forbid_off);

            // h is a half at v whose edge leads to the original vertex u
            auto leads_out = [&] (const string & v) {
                return "forall h. (~(h in " + w + ") | ~E(" + v + ",h) | forall u. (u in " + w + " | u in X | ~(exists g. (g in "
                    + w + " & E(h,g) & E(g,u)))) | h in ";
            };
            auto has_x_neighbour = [] (const string & v) { return "exists y. (y in X & E(" + v + ",y))"; };

            vector<string> text{ "exists x. x in X", "forall x. (x in X -> ~(x in " + w + "))" };
            for (std::size_t i = 1 ; i < names.size() ; ++i)
                text.push_back("forall h. (h in " + names[i] + " -> h in " + w + ")");
            if (defensive) {
                text.push_back("forall x. (x in " + w + " | ~(x in X) | " + leads_out("x") + "Y))");
                text.push_back("forall x. (x in " + zdef + " -> ~(x in X))");
            }
            if (offensive) {
                text.push_back("forall v. (v in " + w + " | v in X | ~(" + has_x_neighbour("v") + ") | " + leads_out("v") + off_set + "))");
                text.push_back("forall v. ((v in " + zoff + " & ~(v in X)) -> ~(" + has_x_neighbour("v") + "))");
            }
            if (spec.global)
                text.push_back("forall v. (v in " + w + " | v in X | " + has_x_neighbour("v") + ")");
            text.push_back("R1");

            auto f = parse(conjunction(text), free_sets(names));
            vector<GlobalConstraint> globals{ GlobalConstraint{ size_row(static_cast<int>(names.size()), 0, 1), spec.size_bound } };
            return EncodedInstance{ std::move(h.graph), Instance{ f, globals, locals } };
        }

        auto check_capacities(const ColoredGraph & g, const vector<int> & capacities) -> void
        {
            require(static_cast<int>(capacities.size()) == g.vertex_count(), "one capacity per vertex is required");
            for (int v = 0 ; v < g.vertex_count() ; ++v)
                require(capacities[v] >= 0 && capacities[v] <= g.degree(v),
                        "capacity of vertex " + std::to_string(v) + " must lie in [0, deg(v)]");
        }

        auto encode_capacitated(const Capacitated & spec, const ColoredGraph & g) -> EncodedInstance
        {
            require(spec.size_bound >= 0, "size bound must be nonnegative");
            check_capacities(g, spec.capacities);
            auto h = half_edge_graph(g, false);
            auto w = color_name(h.half_color);

            vector<string> text{
                "forall x. (x in X -> ~(x in " + w + "))",
                "forall h. (h in Y -> (h in " + w + " & exists x. (x in X & E(h,x))))"
            };
            if (spec.kind == CapacitatedKind::VertexCover)
                text.push_back("forall h. (~(h in " + w + ") | forall g. (~(g in " + w + ") | ~E(h,g) | h in Y | g in Y))");
            else
                text.push_back("forall v. (v in " + w + " | v in X | exists g. (g in " + w + " & E(v,g) & exists h. (h in Y & E(g,h))))");
            text.push_back("R1");

            LocalTable locals(h.graph.vertex_count(), 2);
            for (int v = 0 ; v < g.vertex_count() ; ++v)
                locals.set(1, v, Interval{ 0, spec.capacities[v] });
            auto f = parse(conjunction(text), free_sets({ "X", "Y" }));
            return EncodedInstance{ std::move(h.graph), Instance{ f, { GlobalConstraint{ { 1, 0 }, spec.size_bound } }, locals } };
        }

        auto encode_bdd(const BoundedDegreeDeletion & spec, const ColoredGraph & g) -> EncodedInstance
        {
            require(spec.budget >= 0 && spec.degree >= 0, "bounded-degree deletion parameters must be nonnegative");
            auto h = half_edge_graph(g, false);
            auto w = color_name(h.half_color);
            vector<string> text{
                "forall x. (x in X -> ~(x in " + w + "))",
                "forall h. (h in Y -> h in " + w + ")",
                "forall v. (v in " + w + " | ~(v in X) | forall h. (~(h in " + w + ") | ~E(v,h) | forall g. (~(g in " + w
                    + ") | ~E(h,g) | forall u. (u in " + w + " | ~(u in X) | ~E(g,u) | h in Y))))",
                "R1"
            };
            LocalTable locals(h.graph.vertex_count(), 2);
            for (int v = 0 ; v < g.vertex_count() ; ++v)
                locals.set(1, v, Interval{ 0, spec.degree });
            auto f = parse(conjunction(text), free_sets({ "X", "Y" }));
            GlobalConstraint kept{ { -1, 0 }, int64_t{ spec.budget } - g.vertex_count() };
            return EncodedInstance{ std::move(h.graph), Instance{ f, { kept }, locals } };
        }

        // Rewrites an MSO2 formula over G into MSO1 over the half-edge graph,
        // an edge being represented by its first half.
        class HalfEdgeTranslator
        {
            private:
                const Formula & _f;
                string _w;
                string _first;
                int _fresh = 0;

                auto fresh() -> string
                {
                    return "_w" + std::to_string(++_fresh);
                }

                auto name(int slot) const -> string
                {
                    if (slot == 0)
                        return "A";
                    if (slot == 1)
                        return "B";
                    return (is_set_sort(_f.variable(slot).sort) ? "S_" : "x_") + std::to_string(slot);
                }

                auto domain_literal(Sort sort, const string & v) const -> string
                {
                    return is_edge_sort(sort) ? "(" + v + " in " + _first + ")" : "~(" + v + " in " + _w + ")";
                }

            public:
                HalfEdgeTranslator(const Formula & f, int half_color, int first_half_color) :
                    _f(f),
                    _w(color_name(half_color)),
                    _first(color_name(first_half_color))
                {
                }

                auto incident(const string & x, const string & e) -> string
                {
                    auto b = fresh();
                    return "(E(" + x + "," + e + ") | exists " + b + ". (" + b + " in " + _w + " & E(" + e + "," + b + ") & E(" + b + "," + x + ")))";
                }

                auto translate(const Node & n) -> string
                {
                    switch (n.kind) {
                        case NodeKind::True: return "true";
                        case NodeKind::False: return "false";
                        case NodeKind::Adjacent: {
                            auto a = fresh(), b = fresh();
                            return "(exists " + a + ". (" + a + " in " + _w + " & E(" + name(n.first) + "," + a + ") & exists " + b + ". (" + b
                                + " in " + _w + " & E(" + a + "," + b + ") & E(" + b + "," + name(n.second) + "))))";
                        }
                        case NodeKind::Incident: return incident(name(n.first), name(n.second));
                        case NodeKind::Equal: return "(" + name(n.first) + " = " + name(n.second) + ")";
                        case NodeKind::InSet: return "(" + name(n.first) + " in " + name(n.second) + ")";
                        case NodeKind::InColor: return "(" + name(n.first) + " in " + color_name(n.second) + ")";
                        case NodeKind::Global: throw ProblemError{ "the capacitated formula may not use global constraint atoms" };
                        case NodeKind::Not: return "~" + translate(*n.left);
                        case NodeKind::And: return "(" + translate(*n.left) + " & " + translate(*n.right) + ")";
                        case NodeKind::Or: return "(" + translate(*n.left) + " | " + translate(*n.right) + ")";
                        case NodeKind::Exists:
                        case NodeKind::Forall: {
                            bool exists = n.kind == NodeKind::Exists;
                            auto sort = _f.variable(n.first).sort;
                            auto v = name(n.first);
                            string guard;
                            if (is_set_sort(sort)) {
                                auto y = fresh();
                                guard = "(forall " + y + ". (~(" + y + " in " + v + ") | " + domain_literal(element_sort_of(sort), y) + "))";
                            }
                            else
                                guard = domain_literal(sort, v);
                            auto body = translate(*n.left);
                            if (exists)
                                return "(exists " + v + ". (" + guard + " & " + body + "))";
                            if (! is_set_sort(sort) && ! is_edge_sort(sort))
                                return "(forall " + v + ". (" + v + " in " + _w + " | " + body + "))";
                            return "(forall " + v + ". (~" + guard + " | " + body + "))";
                        }
                    }
                    return "false";
                }
        };

        auto encode_capacitated_mso2(const CapacitatedMso2 & spec, const ColoredGraph & g) -> EncodedInstance
        {
            require(spec.size_bound >= 0, "size bound must be nonnegative");
            check_capacities(g, spec.capacities);
            auto & phi = spec.phi;
            require(phi.free_count() == 2 && phi.variable(0).sort == Sort::VertexSet && phi.variable(1).sort == Sort::EdgeSet,
                    "the capacitated formula needs free variables A (vertex set) and B (edge set)");

            auto h = half_edge_graph(g, false);
            int hd = h.graph.color_count();
            VertexSet first_halves(h.graph.vertex_count());
            for (int e = 0 ; e < static_cast<int>(h.edges.size()) ; ++e)
                first_halves.set(h.half(e, 0));
            h.graph.add_color(first_halves);
            auto w = color_name(h.half_color), first = color_name(hd);

            HalfEdgeTranslator translator(phi, h.half_color, hd);
            vector<string> text{
                translator.translate(*phi.root()),
                "forall x. (x in A -> ~(x in " + w + "))",
                "forall x. (x in B -> x in " + first + ")",
                "forall h. (~(h in " + first + ") | ~(h in B) | exists x. (~(x in " + w + ") & x in A & " + translator.incident("x", "h") + "))",
                "forall h. (h in Yc -> (h in " + w + " & exists x. (x in A & E(h,x))))",
                "forall u. (u in " + w + " | ~(u in A) | forall h. (~(h in " + w + ") | ~E(u,h) | ~(h in B | exists b. (b in B & E(h,b))) | h in Yc))",
                "R1"
            };
            LocalTable locals(h.graph.vertex_count(), 3);
            for (int v = 0 ; v < g.vertex_count() ; ++v)
                locals.set(2, v, Interval{ 0, spec.capacities[v] });
            auto f = parse(conjunction(text), free_sets({ "A", "B", "Yc" }));
            return EncodedInstance{ std::move(h.graph), Instance{ f, { GlobalConstraint{ { 1, 0, 0 }, spec.size_bound } }, locals } };
        }

        template <class... Fns_>
        struct Overloaded : Fns_...
        {
            using Fns_::operator()...;
        };
    }

    auto problem_name(const ProblemSpec & spec) -> string
    {
        return std::visit(Overloaded{
            [] (const FairVertexCover &) -> string { return "fair-vc"; },
            [] (const DefectiveColoring &) -> string { return "defective-coloring"; },
            [] (const Alliance &) -> string { return "alliance"; },
            [] (const EquitablePartition &) -> string { return "equitable-partition"; },
            [] (const Capacitated & c) -> string { return c.kind == CapacitatedKind::VertexCover ? "capacitated-vc" : "capacitated-ds"; },
            [] (const BoundedDegreeDeletion &) -> string { return "bdd"; },
            [] (const CapacitatedMso2 &) -> string { return "capacitated-mso2"; }
        }, spec);
    }

    auto encode(const ProblemSpec & spec, const ColoredGraph & g) -> EncodedInstance
    {
        return std::visit(Overloaded{
            [&] (const FairVertexCover & s) { return encode_fair_vc(s, g); },
            [&] (const DefectiveColoring & s) { return encode_defective(s, g); },
            [&] (const Alliance & s) { return encode_alliance(s, g); },
            [&] (const EquitablePartition & s) { return encode_equitable(s, g); },
            [&] (const Capacitated & s) { return encode_capacitated(s, g); },
            [&] (const BoundedDegreeDeletion & s) { return encode_bdd(s, g); },
            [&] (const CapacitatedMso2 & s) { return encode_capacitated_mso2(s, g); }
        }, spec);
    }

    auto solve_encoded(const EncodedInstance & encoded, const SolveOptions & options) -> std::optional<Assignment>
    {
        if (encoded.instance.formula.uses_edge_sorts())
            return gso_model_check(encoded.graph, encoded.instance, options).witness;
        return model_check(encoded.graph, encoded.instance, options).witness;
    }

    auto half_edge_graph(const ColoredGraph & g, bool keep_edges) -> HalfEdgeGraph
    {
        HalfEdgeGraph result;
        int n = g.vertex_count();
        result.original_vertices = n;
        result.edges = g.edges();
        int total = n + 2 * static_cast<int>(result.edges.size());
        result.graph = ColoredGraph(total);
        if (keep_edges)
            for (auto & [u, v] : result.edges)
                result.graph.add_edge(u, v);
        for (int e = 0 ; e < static_cast<int>(result.edges.size()) ; ++e) {
            result.graph.add_edge(result.edges[e].first, result.half(e, 0));
            result.graph.add_edge(result.half(e, 0), result.half(e, 1));
            result.graph.add_edge(result.half(e, 1), result.edges[e].second);
        }
        for (auto & c : g.colors())
            result.graph.add_color(extend(c, total));
        VertexSet halves(total);
        for (int v = n ; v < total ; ++v)
            halves.set(v);
        result.half_color = result.graph.add_color(halves);
        return result;
    }

    auto gen_ecp_hardness(int t, const vector<int> & items) -> EcpInstance
    {
        require(t >= 1, "the number of parts must be positive");
        require(! items.empty(), "at least one item is required");
        for (auto a : items)
            require(a >= 1, "items must be positive");

        int64_t sum = std::accumulate(items.begin(), items.end(), int64_t{ 0 });
        EcpInstance result;
        result.parts = t;
        result.bin = sum / t;
        result.trivially_no = sum % t != 0;

        int n = static_cast<int>(items.size());
        int64_t w_pendants = std::max<int64_t>(0, 2 * result.bin - 1);
        int64_t total = n + t + (sum - n) + t * w_pendants;
        require(total <= 1'000'000, "hardness instance too large");

        ColoredGraph g(static_cast<int>(total));
        for (int i = 0 ; i < n ; ++i)
            for (int j = 0 ; j < t ; ++j)
                g.add_edge(i, n + j);
        int next = n + t;
        for (int i = 0 ; i < n ; ++i)
            for (int c = 1 ; c < items[i] ; ++c)
                g.add_edge(i, next++);
        for (int j = 0 ; j < t ; ++j)
            for (int64_t c = 0 ; c < w_pendants ; ++c)
                g.add_edge(n + j, next++);
        result.graph = std::move(g);
        return result;
    }

    auto unary_bin_packing(int t, const vector<int> & items) -> bool
    {
        require(t >= 1, "the number of bins must be positive");
        int64_t sum = std::accumulate(items.begin(), items.end(), int64_t{ 0 });
        if (sum % t != 0)
            return false;
        int64_t bin = sum / t;
        auto sorted = items;
        std::sort(sorted.rbegin(), sorted.rend());
        vector<int64_t> load(static_cast<std::size_t>(t), 0);
        std::function<auto (std::size_t) -> bool> place = [&] (std::size_t i) -> bool {
            if (i == sorted.size())
                return true;
            for (int b = 0 ; b < t ; ++b) {
                if (load[b] + sorted[i] > bin)
                    continue;
                load[b] += sorted[i];
                bool ok = place(i + 1);
                load[b] -= sorted[i];
                if (ok)
                    return true;
                if (load[b] == 0)
                    break;
            }
            return false;
        };
        return place(0);
    }
}
