#include <vicheck/shapes.hh>
#include <vicheck/evaluator.hh>

#include <algorithm>

using std::int64_t;
using std::uint32_t;
using std::vector;

namespace vicheck
{
    auto to_string(const Shape & shape) -> std::string
    {
        std::string result = "S:[";
        for (std::size_t j = 0 ; j < shape.s_masks.size() ; ++j)
            result += (j ? "," : "") + std::to_string(shape.s_masks[j]);
        result += "] sigma:[";
        for (std::size_t t = 0 ; t < shape.sigma.size() ; ++t)
            result += (t ? "," : "") + (shape.sigma[t] == Shape::top ? std::string("T") : std::to_string(shape.sigma[t]));
        return result + "]";
    }

    ShapeSpace::ShapeSpace(const ColoredGraph & g, vector<Vertex> s_order, int k, int s, int q) :
        _g(&g),
        _s_order(std::move(s_order)),
        _s_set(VertexSet::from_members(g.vertex_count(), _s_order)),
        _k(k),
        _s(s),
        _q(q),
        _threshold(kernel_threshold(k, q)),
        _census(vicheck::census(g, _s_order))
    {
        if (s < 0 || s > 16)
            throw ShapeError{ "unsupported number of free variables" };

        for (auto & c : _census.classes)
            _structures.emplace_back(g, _s_order, c.members[0].vertices);

        for (int base = 0 ; base < static_cast<int>(_census.classes.size()) ; ++base) {
            auto & rep = _structures[base];
            auto & base_order = _census.classes[base].members[0].order;
            int m = rep.size();
            if (static_cast<long long>(s) * m > 24)
                throw ShapeError{ "too many colorings of a component of size " + std::to_string(m) };

            vector<int> local_of_position(static_cast<std::size_t>(m));
            for (int pos = 0 ; pos < m ; ++pos)
                local_of_position[pos] = static_cast<int>(std::lower_bound(rep.vertices().begin(), rep.vertices().end(), base_order[pos]) - rep.vertices().begin());

            std::map<ComponentType, ExtendedType> found;
            uint32_t mask = (uint32_t{1} << s) - 1;
            vector<uint32_t> extra(static_cast<std::size_t>(m));
            for (uint64_t coloring = 0 ; coloring < (uint64_t{1} << (s * m)) ; ++coloring) {
                for (int i = 0 ; i < m ; ++i)
                    extra[i] = static_cast<uint32_t>(coloring >> (s * i)) & mask;
                auto form = rep.canonical(extra, s);
                if (found.contains(form.type))
                    continue;

                ExtendedType t;
                t.code = form.type;
                t.base = base;
                t.counts.assign(static_cast<std::size_t>(s), 0);
                t.s_neighbours.assign(_s_order.size(), vector<int>(static_cast<std::size_t>(s), 0));
                for (int pos = 0 ; pos < m ; ++pos) {
                    auto bits = extra[local_of_position[pos]];
                    t.pattern.push_back(bits);
                    for (int i = 0 ; i < s ; ++i) {
                        if (! ((bits >> i) & 1u))
                            continue;
                        ++t.counts[i];
                        for (std::size_t j = 0 ; j < _s_order.size() ; ++j)
                            if (g.adjacent(base_order[pos], _s_order[j]))
                                ++t.s_neighbours[j][i];
                    }
                }
                found.emplace(form.type, std::move(t));
            }

            int begin = static_cast<int>(_types.size());
            for (auto & [code, t] : found) {
                _index.emplace(code, static_cast<int>(_types.size()));
                _types.push_back(std::move(t));
            }
            _ranges.emplace_back(begin, static_cast<int>(_types.size()));
        }
    }

    auto ShapeSpace::find(const ComponentType & code) const -> int
    {
        auto it = _index.find(code);
        return it == _index.end() ? -1 : it->second;
    }

    auto ShapeSpace::shape_of(const Assignment & assignment) const -> Shape
    {
        if (static_cast<int>(assignment.size()) != _s)
            throw ShapeError{ "assignment arity does not match the shape space" };

        Shape result;
        for (auto v : _s_order) {
            uint32_t bits = 0;
            for (int i = 0 ; i < _s ; ++i)
                if (assignment[i].test(v))
                    bits |= uint32_t{1} << i;
            result.s_masks.push_back(bits);
        }

        vector<int64_t> counts(_types.size(), 0);
        for (auto & c : _census.classes)
            for (auto & member : c.members) {
                ComponentStructure structure(*_g, _s_order, member.vertices);
                vector<uint32_t> extra;
                for (auto v : structure.vertices()) {
                    uint32_t bits = 0;
                    for (int i = 0 ; i < _s ; ++i)
                        if (assignment[i].test(v))
                            bits |= uint32_t{1} << i;
                    extra.push_back(bits);
                }
                int t = find(structure.canonical(extra, _s).type);
                if (t < 0)
                    throw ShapeError{ "internal error: extended type missing from the universe" };
                ++counts[t];
            }

        for (auto c : counts)
            result.sigma.push_back(c > _threshold ? Shape::top : c);
        return result;
    }

    auto ShapeSpace::is_valid(const Shape & shape) const -> bool
    {
        if (shape.s_masks.size() != _s_order.size() || shape.sigma.size() != _types.size())
            return false;
        for (auto m : shape.s_masks)
            if (m >> _s)
                return false;
        for (std::size_t base = 0 ; base < _ranges.size() ; ++base) {
            int64_t fixed = 0, tops = 0;
            for (int t = _ranges[base].first ; t < _ranges[base].second ; ++t) {
                auto v = shape.sigma[t];
                if (v == Shape::top)
                    ++tops;
                else if (v < 0 || v > _threshold)
                    return false;
                else
                    fixed += v;
            }
            __int128 n_t = base_count(static_cast<int>(base));
            if (tops == 0 ? fixed != n_t : fixed + __int128{ tops } * (_threshold + 1) > n_t)
                return false;
        }
        return true;
    }

    auto ShapeSpace::for_each_valid_shape(const std::function<auto (const Shape &) -> bool> & fn) const -> bool
    {
        auto bits_needed = static_cast<long long>(_s) * static_cast<long long>(_s_order.size());
        if (bits_needed > 40)
            throw ShapeError{ "too many choices for the S part of a shape" };

        Shape shape;
        shape.s_masks.assign(_s_order.size(), 0);
        shape.sigma.assign(_types.size(), 0);

        // Slot by slot over each base range, bases in order; same order as
        // listing every base's choices and taking their product.
        int total = static_cast<int>(_types.size());
        vector<int64_t> fixed_before(static_cast<std::size_t>(total), 0), tops_before(static_cast<std::size_t>(total), 0);
        auto fill = [&] () -> bool {
            int t = 0;
            bool fresh = true;
            while (t >= 0) {
                if (t == total) {
                    if (fn(shape))
                        return true;
                    --t;
                    fresh = false;
                    continue;
                }
                int base = _types[t].base;
                auto [first, last] = _ranges[base];
                if (fresh) {
                    fixed_before[t] = 0;
                    tops_before[t] = 0;
                    if (t > first) {
                        auto previous = shape.sigma[t - 1];
                        fixed_before[t] = fixed_before[t - 1] + (previous == Shape::top ? 0 : previous);
                        tops_before[t] = tops_before[t - 1] + (previous == Shape::top ? 1 : 0);
                    }
                }
                int64_t n_t = base_count(base);
                int64_t used = fixed_before[t] + tops_before[t] * (_threshold + 1);
                auto & v = shape.sigma[t];
                bool exhausted = false;
                if (fresh)
                    v = 0;
                else if (v == Shape::top)
                    exhausted = true;
                else if (v < std::min(_threshold, n_t - used))
                    ++v;
                else if (n_t - used >= _threshold + 1)
                    v = Shape::top;
                else
                    exhausted = true;
                if (exhausted) {
                    --t;
                    fresh = false;
                    continue;
                }
                if (t + 1 == last) {
                    int64_t fixed = fixed_before[t] + (v == Shape::top ? 0 : v);
                    int64_t tops = tops_before[t] + (v == Shape::top ? 1 : 0);
                    bool complete = tops == 0 ? fixed == n_t : fixed + tops * (_threshold + 1) <= n_t;
                    if (! complete) {
                        fresh = false;
                        continue;
                    }
                }
                ++t;
                fresh = true;
            }
            return false;
        };

        uint32_t mask = (uint32_t{1} << _s) - 1;
        for (uint64_t code = 0 ; code < (uint64_t{1} << bits_needed) ; ++code) {
            for (std::size_t j = 0 ; j < _s_order.size() ; ++j)
                shape.s_masks[j] = static_cast<uint32_t>(code >> (_s * j)) & mask;
            if (fill())
                return true;
        }
        return false;
    }

    auto ShapeSpace::valid_shapes() const -> vector<Shape>
    {
        vector<Shape> result;
        for_each_valid_shape([&] (const Shape & shape) {
            result.push_back(shape);
            return false;
        });
        return result;
    }

    auto ShapeSpace::representative_counts(const Shape & shape) const -> vector<int64_t>
    {
        if (! is_valid(shape))
            throw ShapeError{ "shape cannot be realised: " + to_string(shape) };
        vector<int64_t> counts(_types.size(), 0);
        for (std::size_t base = 0 ; base < _ranges.size() ; ++base) {
            auto [begin, end] = _ranges[base];
            int64_t total = 0;
            int first_top = -1;
            for (int t = begin ; t < end ; ++t) {
                if (shape.sigma[t] == Shape::top) {
                    counts[t] = _threshold + 1;
                    if (first_top < 0)
                        first_top = t;
                }
                else
                    counts[t] = shape.sigma[t];
                total += counts[t];
            }
            if (first_top >= 0)
                counts[first_top] += base_count(static_cast<int>(base)) - total;
        }
        return counts;
    }

    auto ShapeSpace::representative(const Shape & shape) const -> Assignment
    {
        return realize(shape.s_masks, representative_counts(shape)).assignment;
    }

    auto ShapeSpace::realize(const vector<uint32_t> & s_masks, const vector<int64_t> & counts) const -> Realization
    {
        return realize_parts(s_masks, counts, false);
    }

    auto ShapeSpace::realize_kernel(const vector<uint32_t> & s_masks, const vector<int64_t> & counts) const -> Realization
    {
        return realize_parts(s_masks, counts, true);
    }

    auto ShapeSpace::realize_parts(const vector<uint32_t> & s_masks, const vector<int64_t> & counts, bool kernel_only) const -> Realization
    {
        if (s_masks.size() != _s_order.size() || counts.size() != _types.size())
            throw ShapeError{ "realisation data has the wrong size" };

        int n = _g->vertex_count();
        Realization result{ Assignment(static_cast<std::size_t>(_s), VertexSet(n)), _s_set };
        for (std::size_t j = 0 ; j < _s_order.size() ; ++j)
            for (int i = 0 ; i < _s ; ++i)
                if ((s_masks[j] >> i) & 1u)
                    result.assignment[i].set(_s_order[j]);

        for (std::size_t base = 0 ; base < _ranges.size() ; ++base) {
            auto & members = _census.classes[base].members;
            std::size_t next = 0;
            for (int t = _ranges[base].first ; t < _ranges[base].second ; ++t) {
                if (counts[t] < 0 || static_cast<int64_t>(members.size() - next) < counts[t])
                    throw ShapeError{ "extended type counts exceed the component census" };
                for (int64_t c = 0 ; c < counts[t] ; ++c, ++next) {
                    if (kernel_only && c >= _threshold) {
                        next += static_cast<std::size_t>(counts[t] - c);
                        break;
                    }
                    auto & member = members[next];
                    for (std::size_t pos = 0 ; pos < member.order.size() ; ++pos)
                        for (int i = 0 ; i < _s ; ++i)
                            if ((_types[t].pattern[pos] >> i) & 1u)
                                result.assignment[i].set(member.order[pos]);
                    if (c < _threshold)
                        result.kernel |= member.vertices;
                }
            }
            if (next != members.size())
                throw ShapeError{ "extended type counts do not cover the component census" };
        }
        return result;
    }

    auto restrict_assignment(const Assignment & assignment, const VertexSet & keep) -> Assignment
    {
        vector<int> new_id(static_cast<std::size_t>(keep.universe_size()), -1);
        int next = 0;
        keep.for_each([&] (Vertex v) { new_id[v] = next++; });
        Assignment result;
        for (auto & x : assignment) {
            VertexSet r(next);
            x.for_each([&] (Vertex v) {
                if (new_id[v] >= 0)
                    r.set(new_id[v]);
            });
            result.push_back(std::move(r));
        }
        return result;
    }
}
