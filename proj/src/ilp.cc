#include <vicheck/ilp.hh>

#include <algorithm>
#include <sstream>

using std::int64_t;
using std::optional;
using std::vector;

namespace vicheck
{
    using Wide = __int128;

    auto LinearSystem::add_variable(int64_t lower, int64_t upper, std::string name) -> int
    {
        lo.push_back(lower);
        hi.push_back(upper);
        if (name.empty())
            name = "x" + std::to_string(lo.size() - 1);
        names.push_back(std::move(name));
        for (auto & r : rows)
            r.coeffs.push_back(0);
        return dimension() - 1;
    }

    auto LinearSystem::add_row(vector<int64_t> coeffs, int64_t bound) -> void
    {
        if (static_cast<int>(coeffs.size()) != dimension())
            throw IlpError{ "row arity does not match the number of variables" };
        rows.push_back(LinearRow{ std::move(coeffs), bound });
    }

    auto LinearSystem::add_row_at_least(vector<int64_t> coeffs, int64_t bound) -> void
    {
        for (auto & c : coeffs)
            c = -c;
        add_row(std::move(coeffs), -bound);
    }

    auto LinearSystem::add_equality(const vector<int64_t> & coeffs, int64_t value) -> void
    {
        add_row(coeffs, value);
        add_row_at_least(coeffs, value);
    }

    namespace
    {
        constexpr Wide wide_limit = Wide{1} << 120;

        auto checked(Wide v) -> Wide
        {
            if (v > wide_limit || v < -wide_limit)
                throw IlpError{ "arithmetic overflow in linear system" };
            return v;
        }

        auto floor_div(Wide a, Wide b) -> Wide
        {
            Wide q = a / b;
            if ((a % b != 0) && ((a < 0) != (b < 0)))
                --q;
            return q;
        }

        auto ceil_div(Wide a, Wide b) -> Wide
        {
            return -floor_div(-a, b);
        }

        class Solver
        {
            private:
                struct SparseRow
                {
                    std::vector<std::pair<int, Wide>> terms;
                    Wide bound;
                };

                const LinearSystem & _sys;
                vector<SparseRow> _rows;

                auto propagate(vector<int64_t> & lo, vector<int64_t> & hi) const -> bool
                {
                    bool changed = true;
                    while (changed) {
                        changed = false;
                        for (auto & row : _rows) {
                            Wide min_activity = 0;
                            for (auto [j, a] : row.terms)
                                min_activity = checked(min_activity + checked(a > 0 ? a * lo[j] : a * hi[j]));
                            if (min_activity > row.bound)
                                return false;
                            for (auto [j, a] : row.terms) {
                                if (lo[j] == hi[j])
                                    continue;
                                Wide own = a > 0 ? a * lo[j] : a * hi[j];
                                Wide slack = row.bound - (min_activity - own);
                                if (a > 0) {
                                    Wide limit = floor_div(slack, a);
                                    if (limit < hi[j]) {
                                        if (limit < lo[j])
                                            return false;
                                        hi[j] = static_cast<int64_t>(limit);
                                        changed = true;
                                    }
                                }
                                else {
                                    Wide limit = ceil_div(slack, a);
                                    if (limit > lo[j]) {
                                        if (limit > hi[j])
                                            return false;
                                        lo[j] = static_cast<int64_t>(limit);
                                        changed = true;
                                    }
                                }
                                min_activity = checked(min_activity - own + (a > 0 ? a * lo[j] : a * hi[j]));
                            }
                        }
                    }
                    return true;
                }

                // Folds variables with lo == hi into the row bounds.
                auto presolve() -> bool
                {
                    for (auto & r : _sys.rows) {
                        SparseRow row{ {}, Wide{ r.bound } };
                        row.terms.reserve(r.coeffs.size());
                        for (int j = 0 ; j < _sys.dimension() ; ++j) {
                            Wide a = r.coeffs[j];
                            if (a == 0)
                                continue;
                            if (_sys.lo[j] == _sys.hi[j])
                                row.bound = checked(row.bound - a * _sys.lo[j]);
                            else
                                row.terms.emplace_back(j, a);
                        }
                        if (row.terms.empty()) {
                            if (row.bound < 0)
                                return false;
                            continue;
                        }
                        _rows.push_back(std::move(row));
                    }
                    return true;
                }

                auto search(vector<int64_t> lo, vector<int64_t> hi) const -> optional<vector<int64_t>>
                {
                    if (! propagate(lo, hi))
                        return std::nullopt;

                    int branch = -1;
                    for (int j = 0 ; j < _sys.dimension() ; ++j)
                        if (lo[j] != hi[j] && (branch == -1 || hi[j] - lo[j] < hi[branch] - lo[branch]))
                            branch = j;
                    if (branch == -1)
                        return lo;

                    for (int64_t value = lo[branch] ; ; ++value) {
                        auto next_lo = lo, next_hi = hi;
                        next_lo[branch] = next_hi[branch] = value;
                        if (auto found = search(std::move(next_lo), std::move(next_hi)))
                            return found;
                        if (value == hi[branch])
                            break;
                    }
                    return std::nullopt;
                }

            public:
                explicit Solver(const LinearSystem & sys) : _sys(sys) { }

                auto run() -> optional<vector<int64_t>>
                {
                    for (int j = 0 ; j < _sys.dimension() ; ++j) {
                        if (_sys.lo[j] == LinearSystem::unbounded_below || _sys.hi[j] == LinearSystem::unbounded_above)
                            throw IlpError{ "variable " + _sys.names[j] + " is unbounded" };
                        if (_sys.lo[j] > _sys.hi[j])
                            return std::nullopt;
                    }
                    vector<Wide> reach(static_cast<std::size_t>(_sys.dimension()));
                    for (int j = 0 ; j < _sys.dimension() ; ++j)
                        reach[j] = std::max(_sys.lo[j] < 0 ? -Wide{ _sys.lo[j] } : Wide{ _sys.lo[j] },
                                            _sys.hi[j] < 0 ? -Wide{ _sys.hi[j] } : Wide{ _sys.hi[j] });
                    for (auto & r : _sys.rows) {
                        if (static_cast<int>(r.coeffs.size()) != _sys.dimension())
                            throw IlpError{ "row arity does not match the number of variables" };
                        Wide worst = 0;
                        for (int j = 0 ; j < _sys.dimension() ; ++j) {
                            if (r.coeffs[j] == 0)
                                continue;
                            Wide c = r.coeffs[j] < 0 ? -Wide{ r.coeffs[j] } : Wide{ r.coeffs[j] };
                            worst = checked(worst + checked(c * reach[j]));
                        }
                    }
                    if (! presolve())
                        return std::nullopt;
                    return search(_sys.lo, _sys.hi);
                }
        };
    }

    auto satisfies(const LinearSystem & sys, const vector<int64_t> & point) -> bool
    {
        if (static_cast<int>(point.size()) != sys.dimension())
            return false;
        for (int j = 0 ; j < sys.dimension() ; ++j)
            if (point[j] < sys.lo[j] || point[j] > sys.hi[j])
                return false;
        for (auto & r : sys.rows) {
            Wide activity = 0;
            for (std::size_t j = 0 ; j < r.coeffs.size() ; ++j)
                activity = checked(activity + Wide{ r.coeffs[j] } * point[j]);
            if (activity > r.bound)
                return false;
        }
        return true;
    }

    auto feasible(const LinearSystem & sys) -> optional<vector<int64_t>>
    {
        auto result = Solver{ sys }.run();
        if (result && ! satisfies(sys, *result))
            throw IlpError{ "internal error: solver returned a point violating the system" };
        return result;
    }

    auto to_text(const LinearSystem & sys) -> std::string
    {
        std::ostringstream out;
        out << "subject to\n";
        for (std::size_t i = 0 ; i < sys.rows.size() ; ++i) {
            auto & r = sys.rows[i];
            out << "  c" << i << ":";
            bool any = false;
            for (std::size_t j = 0 ; j < r.coeffs.size() ; ++j) {
                if (r.coeffs[j] == 0)
                    continue;
                auto c = r.coeffs[j];
                out << (c < 0 ? " - " : (any ? " + " : " "));
                if (c != 1 && c != -1)
                    out << (c < 0 ? -c : c) << " ";
                out << sys.names[j];
                any = true;
            }
            if (! any)
                out << " 0";
            out << " <= " << r.bound << "\n";
        }
        out << "bounds\n";
        for (int j = 0 ; j < sys.dimension() ; ++j)
            out << "  " << sys.lo[j] << " <= " << sys.names[j] << " <= " << sys.hi[j] << "\n";
        out << "end\n";
        return out.str();
    }
}
