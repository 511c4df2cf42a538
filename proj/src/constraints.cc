#include <vicheck/constraints.hh>

#include <algorithm>
#include <map>

using std::int64_t;
using std::vector;

namespace vicheck
{
    auto Interval::intersect(Interval other) const -> Interval
    {
        Interval result{ std::max(lo, other.lo), std::min(hi, other.hi) };
        return result.is_empty() ? empty() : result;
    }

    auto operator==(const Interval & a, const Interval & b) -> bool
    {
        if (a.is_empty() || b.is_empty())
            return a.is_empty() && b.is_empty();
        return a.lo == b.lo && a.hi == b.hi;
    }

    auto operator<(const Interval & a, const Interval & b) -> bool
    {
        if (a.is_empty() || b.is_empty())
            return a.is_empty() && ! b.is_empty();
        return std::pair{ a.lo, a.hi } < std::pair{ b.lo, b.hi };
    }

    auto to_string(Interval i) -> std::string
    {
        if (i.is_empty())
            return "[]";
        return "[" + std::to_string(i.lo) + "," + std::to_string(i.hi) + "]";
    }

    auto GlobalConstraint::holds(const vector<int64_t> & sizes) const -> bool
    {
        if (sizes.size() != coeffs.size())
            throw ConstraintError{ "global constraint arity mismatch" };
        __int128 total = 0;
        for (std::size_t i = 0 ; i < sizes.size() ; ++i)
            total += __int128{ coeffs[i] } * sizes[i];
        return total <= bound;
    }

    LocalTable::LocalTable(int n, int s) :
        _n(n),
        _intervals(static_cast<std::size_t>(s), vector<Interval>(static_cast<std::size_t>(n), Interval{ 0, n }))
    {
    }

    auto LocalTable::set(int i, Vertex v, Interval interval) -> void
    {
        if (v < 0 || v >= _n)
            throw ConstraintError{ "local constraint vertex " + std::to_string(v) + " out of range" };
        _intervals.at(i).at(v) = interval.is_empty() ? Interval::empty() : interval;
    }

    auto LocalTable::add_variable() -> void
    {
        _intervals.emplace_back(static_cast<std::size_t>(_n), Interval{ 0, _n });
    }

    auto LocalTable::restricts_anything() const -> bool
    {
        for (auto & row : _intervals)
            for (auto & i : row)
                if (i.is_empty() || i.lo > 0 || i.hi < _n)
                    return true;
        return false;
    }

    auto obeys_at(const ColoredGraph & g, const Assignment & assignment, const LocalTable & table, const VertexSet & where) -> bool
    {
        if (static_cast<int>(assignment.size()) != table.variable_count())
            throw ConstraintError{ "assignment arity does not match the local constraint table" };
        bool ok = true;
        where.for_each([&] (Vertex v) {
            if (! ok)
                return;
            for (int i = 0 ; i < table.variable_count() ; ++i)
                if (! table.at(i, v).contains(assignment[i].intersection_count(g.neighbours(v)))) {
                    ok = false;
                    return;
                }
        });
        return ok;
    }

    auto restrict_to_small_degrees(const LocalTable & table, const VertexSet & s_set, int k) -> LocalTable
    {
        LocalTable result = table;
        for (int i = 0 ; i < table.variable_count() ; ++i)
            for (Vertex v = 0 ; v < table.vertex_count() ; ++v)
                if (! s_set.test(v))
                    result.set(i, v, table.at(i, v).intersect(Interval{ 0, k - 1 }));
        return result;
    }

    auto has_empty_interval(const LocalTable & table, const VertexSet & where) -> bool
    {
        bool found = false;
        where.for_each([&] (Vertex v) {
            for (int i = 0 ; i < table.variable_count() ; ++i)
                if (table.at(i, v).is_empty())
                    found = true;
        });
        return found;
    }

    auto uniformize(const ColoredGraph & g, const vector<Vertex> & s_order, const LocalTable & table) -> UniformizationResult
    {
        VertexSet s_set = VertexSet::from_members(g.vertex_count(), s_order);
        UniformizationResult result;
        result.first_new_color = g.color_count();
        vector<VertexSet> extra;
        for (int i = 0 ; i < table.variable_count() ; ++i) {
            std::map<Interval, VertexSet> by_interval;
            for (Vertex v = 0 ; v < g.vertex_count() ; ++v) {
                if (s_set.test(v))
                    continue;
                auto interval = table.at(i, v);
                if (interval.is_empty())
                    throw ConstraintError{ "empty local interval at vertex " + std::to_string(v) };
                auto it = by_interval.find(interval);
                if (it == by_interval.end())
                    it = by_interval.emplace(interval, VertexSet(g.vertex_count())).first;
                it->second.set(v);
            }
            for (auto & [interval, members] : by_interval) {
                result.registry.push_back(UniformColor{ i, interval });
                extra.push_back(members);
            }
        }
        result.graph = g.with_extra_colors(extra);
        return result;
    }

    auto gamma_inequalities(const vector<GlobalConstraint> & globals, const PreEvaluation & gamma, int s, int64_t max_size) -> LinearSystem
    {
        if (gamma.size() != globals.size())
            throw ConstraintError{ "pre-evaluation does not cover every global constraint" };
        LinearSystem result;
        for (int i = 0 ; i < s ; ++i)
            result.add_variable(0, max_size, "y" + std::to_string(i + 1));
        for (std::size_t r = 0 ; r < globals.size() ; ++r) {
            auto & c = globals[r];
            if (static_cast<int>(c.coeffs.size()) != s)
                throw ConstraintError{ "global constraint R" + std::to_string(r + 1) + " has the wrong arity" };
            if (gamma[r])
                result.add_row(c.coeffs, c.bound);
            else
                result.add_row_at_least(c.coeffs, c.bound + 1);
        }
        return result;
    }

    auto set_sizes(const Assignment & assignment) -> vector<int64_t>
    {
        vector<int64_t> result;
        for (auto & x : assignment)
            result.push_back(x.count());
        return result;
    }
}
