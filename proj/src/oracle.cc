#include <vicheck/oracle.hh>

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

using std::int64_t;
using std::uint64_t;
using std::vector;

namespace vicheck
{
    namespace
    {
        auto bit(int i) -> uint64_t
        {
            return uint64_t{1} << i;
        }

        // Masks for one graph, independent of VertexSet.
        struct MaskGraph
        {
            int n = 0;
            vector<uint64_t> nb;
            vector<std::pair<int, int>> edges;
            vector<uint64_t> incident;
            vector<uint64_t> colors;

            explicit MaskGraph(const ColoredGraph & g)
            {
                n = g.vertex_count();
                if (n > 64 || g.edge_count() > 64)
                    throw OracleLimit{ "oracle supports at most 64 vertices and 64 edges" };
                nb.assign(static_cast<std::size_t>(n), 0);
                incident.assign(static_cast<std::size_t>(n), 0);
                for (int u = 0 ; u < n ; ++u)
                    for (int v = 0 ; v < n ; ++v)
                        if (u != v && g.adjacent(u, v))
                            nb[u] |= bit(v);
                edges = g.edges();
                for (int e = 0 ; e < static_cast<int>(edges.size()) ; ++e) {
                    incident[edges[e].first] |= bit(e);
                    incident[edges[e].second] |= bit(e);
                }
                for (auto & c : g.colors()) {
                    uint64_t m = 0;
                    for (int v = 0 ; v < n ; ++v)
                        if (c.test(v))
                            m |= bit(v);
                    colors.push_back(m);
                }
            }

            auto universe(Sort s) const -> int
            {
                return is_edge_sort(s) ? static_cast<int>(edges.size()) : n;
            }
        };

        class Substitution
        {
            private:
                const MaskGraph & _g;
                const Formula & _f;
                vector<bool> _globals;
                vector<uint64_t> _value;

            public:
                Substitution(const MaskGraph & g, const Formula & f, vector<bool> globals) :
                    _g(g),
                    _f(f),
                    _globals(std::move(globals)),
                    _value(f.variables().size(), 0)
                {
                }

                auto bind(int slot, uint64_t value) -> void
                {
                    _value[slot] = value;
                }

                auto truth(const Node & n) -> bool
                {
                    switch (n.kind) {
                        case NodeKind::True:
                            return true;
                        case NodeKind::False:
                            return false;
                        case NodeKind::Adjacent:
                            return (_g.nb[_value[n.first]] >> _value[n.second]) & 1u;
                        case NodeKind::Incident: {
                            auto & e = _g.edges[_value[n.second]];
                            auto x = static_cast<int>(_value[n.first]);
                            return e.first == x || e.second == x;
                        }
                        case NodeKind::Equal:
                            return _value[n.first] == _value[n.second];
                        case NodeKind::InSet:
                            return (_value[n.second] >> _value[n.first]) & 1u;
                        case NodeKind::InColor:
                            if (n.second >= static_cast<int>(_g.colors.size()))
                                throw InstanceError{ "formula refers to a missing color" };
                            return (_g.colors[n.second] >> _value[n.first]) & 1u;
                        case NodeKind::Global:
                            return _globals.at(n.first);
                        case NodeKind::Not:
                            return ! truth(*n.left);
                        case NodeKind::And:
                            return truth(*n.left) && truth(*n.right);
                        case NodeKind::Or:
                            return truth(*n.left) || truth(*n.right);
                        case NodeKind::Exists:
                        case NodeKind::Forall: {
                            bool want = n.kind == NodeKind::Exists;
                            auto sort = _f.variable(n.first).sort;
                            int u = _g.universe(sort);
                            if (is_set_sort(sort)) {
                                if (u > 30)
                                    throw OracleLimit{ "set quantifier over too large a universe" };
                                for (uint64_t m = 0 ; m < bit(u) ; ++m) {
                                    _value[n.first] = m;
                                    if (truth(*n.left) == want)
                                        return want;
                                }
                            }
                            else
                                for (int x = 0 ; x < u ; ++x) {
                                    _value[n.first] = static_cast<uint64_t>(x);
                                    if (truth(*n.left) == want)
                                        return want;
                                }
                            return ! want;
                        }
                    }
                    return false;
                }
        };

        auto to_mask(const VertexSet & x) -> uint64_t
        {
            uint64_t m = 0;
            for (int v = 0 ; v < x.universe_size() ; ++v)
                if (x.test(v))
                    m |= bit(v);
            return m;
        }

        auto sizes_of(const vector<uint64_t> & masks) -> vector<int64_t>
        {
            vector<int64_t> result;
            for (auto m : masks)
                result.push_back(std::popcount(m));
            return result;
        }

        auto globals_truth(const Instance & inst, const vector<uint64_t> & masks) -> vector<bool>
        {
            vector<bool> result;
            auto sizes = sizes_of(masks);
            for (auto & c : inst.globals) {
                __int128 total = 0;
                for (std::size_t i = 0 ; i < sizes.size() ; ++i)
                    total += __int128{ c.coeffs.at(i) } * sizes[i];
                result.push_back(total <= c.bound);
            }
            return result;
        }

        auto locals_ok(const MaskGraph & g, const Instance & inst, const vector<uint64_t> & masks) -> bool
        {
            if (inst.locals.variable_count() == 0)
                return true;
            for (int i = 0 ; i < inst.locals.variable_count() ; ++i) {
                bool edges = is_edge_sort(inst.formula.variable(i).sort);
                for (int v = 0 ; v < g.n ; ++v) {
                    int c = std::popcount(masks[i] & (edges ? g.incident[v] : g.nb[v]));
                    auto interval = inst.locals.at(i, v);
                    if (c < interval.lo || c > interval.hi)
                        return false;
                }
            }
            return true;
        }

        auto formula_ok(const MaskGraph & g, const Instance & inst, const vector<uint64_t> & masks) -> bool
        {
            Substitution sub(g, inst.formula, globals_truth(inst, masks));
            for (std::size_t i = 0 ; i < masks.size() ; ++i)
                sub.bind(static_cast<int>(i), masks[i]);
            return sub.truth(*inst.formula.root());
        }

        auto check_shape_of_instance(const ColoredGraph & g, const Instance & inst) -> void
        {
            for (auto & c : inst.globals)
                if (static_cast<int>(c.coeffs.size()) != inst.formula.free_count())
                    throw InstanceError{ "global constraint arity mismatch" };
            if (inst.formula.global_atom_bound() > static_cast<int>(inst.globals.size()))
                throw InstanceError{ "formula refers to a missing global constraint" };
            if (inst.locals.variable_count() != 0
                    && (inst.locals.variable_count() != inst.formula.free_count() || inst.locals.vertex_count() != g.vertex_count()))
                throw InstanceError{ "local table does not match the instance" };
        }

        auto from_masks(const MaskGraph & g, const Formula & f, const vector<uint64_t> & masks) -> Assignment
        {
            Assignment result;
            for (std::size_t i = 0 ; i < masks.size() ; ++i) {
                int u = g.universe(f.variable(static_cast<int>(i)).sort);
                VertexSet x(u);
                for (int v = 0 ; v < u ; ++v)
                    if ((masks[i] >> v) & 1u)
                        x.set(v);
                result.push_back(std::move(x));
            }
            return result;
        }

        auto brute_force(const ColoredGraph & g, const Instance & inst, OracleOptions options) -> OracleVerdict
        {
            check_shape_of_instance(g, inst);
            MaskGraph mg(g);
            int s = inst.formula.free_count();
            vector<int> universes;
            int total = 0;
            for (int i = 0 ; i < s ; ++i) {
                universes.push_back(mg.universe(inst.formula.variable(i).sort));
                total += universes.back();
            }
            if (total > options.max_bits)
                throw OracleLimit{ "assignment space of 2^" + std::to_string(total) + " exceeds the oracle limit" };

            OracleVerdict verdict;
            vector<uint64_t> masks(static_cast<std::size_t>(s), 0);
            for (uint64_t code = 0 ; code < bit(total) ; ++code) {
                int shift = 0;
                for (int i = 0 ; i < s ; ++i) {
                    masks[i] = (code >> shift) & (bit(universes[i]) - 1);
                    shift += universes[i];
                }
                if (! locals_ok(mg, inst, masks) || ! formula_ok(mg, inst, masks))
                    continue;
                ++verdict.count;
                if (! verdict.satisfiable) {
                    verdict.satisfiable = true;
                    verdict.witness = from_masks(mg, inst.formula, masks);
                }
                if (options.first_only)
                    break;
            }
            return verdict;
        }

        auto component_masks(const vector<uint64_t> & nb, uint64_t within) -> vector<uint64_t>
        {
            vector<uint64_t> result;
            while (within) {
                uint64_t comp = within & (~within + 1), frontier = comp;
                while (frontier) {
                    int v = std::countr_zero(frontier);
                    frontier &= frontier - 1;
                    uint64_t fresh = nb[v] & within & ~comp;
                    comp |= fresh;
                    frontier |= fresh;
                }
                result.push_back(comp);
                within &= ~comp;
            }
            return result;
        }

        auto require_small(const MaskGraph & g, int limit) -> void
        {
            if (g.n > limit)
                throw OracleLimit{ "exhaustive check limited to " + std::to_string(limit) + " vertices" };
        }

        auto connected(const vector<uint64_t> & nb, uint64_t within) -> bool
        {
            return within == 0 || component_masks(nb, within).size() == 1;
        }
    }

    auto oracle_holds(const ColoredGraph & g, const Instance & inst, const Assignment & assignment) -> bool
    {
        check_shape_of_instance(g, inst);
        MaskGraph mg(g);
        vector<uint64_t> masks;
        for (auto & x : assignment)
            masks.push_back(to_mask(x));
        if (static_cast<int>(masks.size()) != inst.formula.free_count())
            throw InstanceError{ "assignment arity mismatch" };
        return formula_ok(mg, inst, masks);
    }

    auto oracle_accepts(const ColoredGraph & g, const Instance & inst, const Assignment & assignment) -> bool
    {
        check_shape_of_instance(g, inst);
        MaskGraph mg(g);
        vector<uint64_t> masks;
        for (auto & x : assignment)
            masks.push_back(to_mask(x));
        if (static_cast<int>(masks.size()) != inst.formula.free_count())
            throw InstanceError{ "assignment arity mismatch" };
        return locals_ok(mg, inst, masks) && formula_ok(mg, inst, masks);
    }

    auto brute_force_msogl(const ColoredGraph & g, const Instance & inst, OracleOptions options) -> OracleVerdict
    {
        if (inst.formula.uses_edge_sorts())
            throw InstanceError{ "MSO2 instance given to the MSO1 oracle" };
        return brute_force(g, inst, options);
    }

    auto brute_force_gsogl(const ColoredGraph & g, const Instance & inst, OracleOptions options) -> OracleVerdict
    {
        return brute_force(g, inst, options);
    }

    auto brute_force_vi(const ColoredGraph & g) -> int
    {
        MaskGraph mg(g);
        if (mg.n > 24)
            throw OracleLimit{ "brute-force vertex integrity limited to 24 vertices" };
        if (mg.n == 0)
            return 0;
        uint64_t all = bit(mg.n) - 1;
        int best = mg.n;
        for (uint64_t s = 0 ; s <= all ; ++s) {
            int largest = 0;
            for (auto c : component_masks(mg.nb, all & ~s))
                largest = std::max(largest, std::popcount(c));
            best = std::min(best, std::popcount(s) + largest);
        }
        return best;
    }

    auto brute_force_treedepth(const ColoredGraph & g) -> int
    {
        MaskGraph mg(g);
        if (mg.n > 20)
            throw OracleLimit{ "brute-force treedepth limited to 20 vertices" };
        std::unordered_map<uint64_t, int> memo;
        std::function<auto (uint64_t) -> int> td = [&] (uint64_t within) -> int {
            if (within == 0)
                return 0;
            if (std::popcount(within) == 1)
                return 1;
            if (auto it = memo.find(within) ; it != memo.end())
                return it->second;
            auto comps = component_masks(mg.nb, within);
            int result = 0;
            if (comps.size() > 1)
                for (auto c : comps)
                    result = std::max(result, td(c));
            else {
                result = std::popcount(within);
                for (uint64_t rest = within ; rest ; rest &= rest - 1) {
                    int v = std::countr_zero(rest);
                    result = std::min(result, 1 + td(within & ~bit(v)));
                }
            }
            memo.emplace(within, result);
            return result;
        };
        return td(bit(mg.n) - 1);
    }

    auto treedepth_at_most(const ColoredGraph & g, int depth) -> bool
    {
        MaskGraph mg(g);
        std::map<std::pair<uint64_t, int>, bool> memo;
        std::function<auto (uint64_t, int) -> bool> fits = [&] (uint64_t comp, int d) -> bool {
            int size = std::popcount(comp);
            if (size <= d)
                return true;
            if (d <= 1)
                return false;
            auto key = std::pair{ comp, d };
            if (auto it = memo.find(key) ; it != memo.end())
                return it->second;

            vector<int> order;
            for (uint64_t rest = comp ; rest ; rest &= rest - 1)
                order.push_back(std::countr_zero(rest));
            std::stable_sort(order.begin(), order.end(), [&] (int a, int b) {
                return std::popcount(mg.nb[a] & comp) > std::popcount(mg.nb[b] & comp);
            });

            bool result = false;
            for (auto v : order) {
                bool all_fit = true;
                for (auto c : component_masks(mg.nb, comp & ~bit(v)))
                    if (! fits(c, d - 1)) {
                        all_fit = false;
                        break;
                    }
                if (all_fit) {
                    result = true;
                    break;
                }
            }
            memo.emplace(key, result);
            return result;
        };

        uint64_t all = mg.n == 64 ? ~uint64_t{0} : bit(mg.n) - 1;
        for (auto c : component_masks(mg.nb, all))
            if (! fits(c, depth))
                return false;
        return true;
    }

    auto fair_vertex_cover_exists(const ColoredGraph & g, int size_bound, int fairness) -> bool
    {
        MaskGraph mg(g);
        require_small(mg, 24);
        for (uint64_t c = 0 ; c < bit(mg.n) ; ++c) {
            if (std::popcount(c) > size_bound)
                continue;
            bool ok = true;
            for (auto & [u, v] : mg.edges)
                if (! ((c >> u) & 1u) && ! ((c >> v) & 1u))
                    ok = false;
            for (int v = 0 ; ok && v < mg.n ; ++v)
                if (std::popcount(mg.nb[v] & c) > fairness)
                    ok = false;
            if (ok)
                return true;
        }
        return false;
    }

    auto defective_coloring_exists(const ColoredGraph & g, int colors, int defect) -> bool
    {
        MaskGraph mg(g);
        if (mg.n == 0)
            return true;
        if (colors <= 0)
            return false;
        vector<int> color(static_cast<std::size_t>(mg.n), -1);
        std::function<auto (int, int) -> bool> place = [&] (int v, int used) -> bool {
            if (v == mg.n) {
                for (int u = 0 ; u < mg.n ; ++u) {
                    int same = 0;
                    for (int w = 0 ; w < mg.n ; ++w)
                        if (((mg.nb[u] >> w) & 1u) && color[w] == color[u])
                            ++same;
                    if (same > defect)
                        return false;
                }
                return true;
            }
            for (int c = 0 ; c < std::min(colors, used + 1) ; ++c) {
                color[v] = c;
                if (place(v + 1, std::max(used, c + 1)))
                    return true;
            }
            return false;
        };
        return place(0, 0);
    }

    auto alliance_exists(const ColoredGraph & g, AllianceKind kind, int r, bool global, int size_bound) -> bool
    {
        MaskGraph mg(g);
        require_small(mg, 24);
        for (uint64_t s = 1 ; s < bit(mg.n) ; ++s) {
            if (std::popcount(s) > size_bound)
                continue;
            auto balanced = [&] (int v) {
                uint64_t closed = mg.nb[v] | bit(v);
                return std::popcount(closed & s) >= std::popcount(closed & ~s) + r;
            };
            bool ok = true;
            for (int v = 0 ; ok && v < mg.n ; ++v) {
                bool inside = (s >> v) & 1u;
                bool boundary = ! inside && (mg.nb[v] & s);
                if (inside && kind != AllianceKind::Offensive && ! balanced(v))
                    ok = false;
                if (boundary && kind != AllianceKind::Defensive && ! balanced(v))
                    ok = false;
                if (global && ! inside && ! boundary)
                    ok = false;
            }
            if (ok)
                return true;
        }
        return false;
    }

    auto equitable_partition_exists(const ColoredGraph & g, int parts, PartProperty property) -> bool
    {
        MaskGraph mg(g);
        if (parts <= 0)
            return false;
        int lower = mg.n / parts, upper = (mg.n + parts - 1) / parts;

        // Blocks: with parts of size at least two and connected parts, a
        // degree-one vertex always shares its part with its neighbour.
        vector<uint64_t> blocks;
        if (property == PartProperty::Connected && lower >= 2) {
            vector<int> parent(static_cast<std::size_t>(mg.n));
            std::iota(parent.begin(), parent.end(), 0);
            std::function<auto (int) -> int> find = [&] (int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
            for (int v = 0 ; v < mg.n ; ++v)
                if (std::popcount(mg.nb[v]) == 1)
                    parent[find(v)] = find(std::countr_zero(mg.nb[v]));
            std::map<int, uint64_t> by_root;
            for (int v = 0 ; v < mg.n ; ++v)
                by_root[find(v)] |= bit(v);
            for (auto & [root, b] : by_root)
                blocks.push_back(b);
        }
        else
            for (int v = 0 ; v < mg.n ; ++v)
                blocks.push_back(bit(v));

        if (blocks.size() > 20)
            throw OracleLimit{ "equitable partition oracle limited to 20 blocks" };

        vector<uint64_t> part(static_cast<std::size_t>(parts), 0);
        std::function<auto (std::size_t, int) -> bool> place = [&] (std::size_t b, int used) -> bool {
            if (b == blocks.size()) {
                for (auto p : part) {
                    int size = std::popcount(p);
                    if (size < lower || size > upper)
                        return false;
                    if (property == PartProperty::Connected && ! connected(mg.nb, p))
                        return false;
                    if (property == PartProperty::Independent)
                        for (uint64_t rest = p ; rest ; rest &= rest - 1)
                            if (mg.nb[std::countr_zero(rest)] & p)
                                return false;
                }
                return true;
            }
            for (int i = 0 ; i < std::min(parts, used + 1) ; ++i) {
                if (std::popcount(part[i] | blocks[b]) > upper)
                    continue;
                part[i] |= blocks[b];
                bool ok = place(b + 1, std::max(used, i + 1));
                part[i] &= ~blocks[b];
                if (ok)
                    return true;
            }
            return false;
        };
        return place(0, 0);
    }

    auto capacitated_vertex_cover_exists(const ColoredGraph & g, const vector<int> & capacities, int size_bound) -> bool
    {
        MaskGraph mg(g);
        require_small(mg, 24);
        for (uint64_t c = 0 ; c < bit(mg.n) ; ++c) {
            if (std::popcount(c) > size_bound)
                continue;
            vector<int> load(static_cast<std::size_t>(mg.n), 0);
            std::function<auto (std::size_t) -> bool> assign = [&] (std::size_t e) -> bool {
                if (e == mg.edges.size())
                    return true;
                for (auto v : { mg.edges[e].first, mg.edges[e].second }) {
                    if (! ((c >> v) & 1u) || load[v] >= capacities[v])
                        continue;
                    ++load[v];
                    bool ok = assign(e + 1);
                    --load[v];
                    if (ok)
                        return true;
                }
                return false;
            };
            if (assign(0))
                return true;
        }
        return false;
    }

    auto capacitated_dominating_set_exists(const ColoredGraph & g, const vector<int> & capacities, int size_bound) -> bool
    {
        MaskGraph mg(g);
        require_small(mg, 24);
        for (uint64_t d = 0 ; d < bit(mg.n) ; ++d) {
            if (std::popcount(d) > size_bound)
                continue;
            vector<int> load(static_cast<std::size_t>(mg.n), 0);
            std::function<auto (int) -> bool> assign = [&] (int v) -> bool {
                if (v == mg.n)
                    return true;
                if ((d >> v) & 1u)
                    return assign(v + 1);
                for (uint64_t rest = mg.nb[v] & d ; rest ; rest &= rest - 1) {
                    int u = std::countr_zero(rest);
                    if (load[u] >= capacities[u])
                        continue;
                    ++load[u];
                    bool ok = assign(v + 1);
                    --load[u];
                    if (ok)
                        return true;
                }
                return false;
            };
            if (assign(0))
                return true;
        }
        return false;
    }

    auto bounded_degree_deletion_exists(const ColoredGraph & g, int budget, int degree) -> bool
    {
        MaskGraph mg(g);
        require_small(mg, 24);
        uint64_t all = bit(mg.n) - 1;
        for (uint64_t deleted = 0 ; deleted <= all ; ++deleted) {
            if (std::popcount(deleted) > budget)
                continue;
            uint64_t kept = all & ~deleted;
            bool ok = true;
            for (uint64_t rest = kept ; ok && rest ; rest &= rest - 1)
                if (std::popcount(mg.nb[std::countr_zero(rest)] & kept) > degree)
                    ok = false;
            if (ok)
                return true;
        }
        return false;
    }

    auto capacitated_mso2_exists(const ColoredGraph & g, const Formula & phi, const vector<int> & capacities, int size_bound) -> bool
    {
        MaskGraph mg(g);
        require_small(mg, 24);
        Instance inst{ phi, {}, {} };
        int m = static_cast<int>(mg.edges.size());
        for (uint64_t x = 0 ; x < bit(mg.n) ; ++x) {
            if (std::popcount(x) > size_bound)
                continue;
            for (uint64_t y = 0 ; y < bit(m) ; ++y) {
                bool ok = true;
                for (int e = 0 ; ok && e < m ; ++e)
                    if (((y >> e) & 1u) && ! ((x >> mg.edges[e].first) & 1u) && ! ((x >> mg.edges[e].second) & 1u))
                        ok = false;
                for (int v = 0 ; ok && v < mg.n ; ++v)
                    if (((x >> v) & 1u) && std::popcount(mg.incident[v] & y) > capacities[v])
                        ok = false;
                if (ok && formula_ok(mg, inst, { x, y }))
                    return true;
            }
        }
        return false;
    }
}
