#include <vicheck/engine.hh>

#include <algorithm>

using std::int64_t;
using std::optional;
using std::uint32_t;
using std::vector;

namespace vicheck
{
    SolveContext::SolveContext(const ColoredGraph & g, const Formula & formula, vector<GlobalConstraint> globals,
            const LocalTable & locals, vector<Vertex> s_order, int k) :
        _h(uniformize(g, s_order, locals).graph),
        _first_uniform_color(g.color_count()),
        _locals(locals),
        _globals(std::move(globals)),
        _formula(formula),
        _q(quantifier_count(formula)),
        _space(_h, s_order, k, formula.free_count(), _q)
    {
        for (auto u : _space.s_order()) {
            auto & row = _s_adjacent.emplace_back();
            for (auto v : _space.s_order())
                row.push_back(g.adjacent(u, v) ? 1 : 0);
        }
    }

    auto SolveContext::s_side_neighbours(const vector<uint32_t> & s_masks, std::size_t j, int i) const -> int64_t
    {
        int64_t result = 0;
        for (std::size_t l = 0 ; l < s_masks.size() ; ++l)
            if (_s_adjacent[j][l] && ((s_masks[l] >> i) & 1u))
                ++result;
        return result;
    }

    auto build_ilp(const SolveContext & ctx, const Shape & shape, const PreEvaluation & gamma) -> LinearSystem
    {
        auto & space = ctx.space();
        auto & types = space.types();
        int s = ctx.s();
        LinearSystem sys;
        for (std::size_t t = 0 ; t < types.size() ; ++t) {
            int64_t n_t = space.base_count(types[t].base);
            if (shape.sigma[t] == Shape::top)
                sys.add_variable(space.threshold() + 1, n_t, "x" + std::to_string(t));
            else
                sys.add_variable(shape.sigma[t], shape.sigma[t], "x" + std::to_string(t));
        }
        int d = sys.dimension();

        for (int base = 0 ; base < static_cast<int>(space.census().classes.size()) ; ++base) {
            vector<int64_t> row(static_cast<std::size_t>(d), 0);
            auto [begin, end] = space.range_of(base);
            for (int t = begin ; t < end ; ++t)
                row[t] = 1;
            sys.add_equality(row, space.base_count(base));
        }

        vector<int64_t> s_counts(static_cast<std::size_t>(s), 0);
        for (auto m : shape.s_masks)
            for (int i = 0 ; i < s ; ++i)
                if ((m >> i) & 1u)
                    ++s_counts[i];

        auto & globals = ctx.globals();
        for (std::size_t r = 0 ; r < globals.size() ; ++r) {
            vector<int64_t> row(static_cast<std::size_t>(d), 0);
            int64_t constant = 0;
            for (int i = 0 ; i < s ; ++i) {
                auto a = globals[r].coeffs[i];
                constant += a * s_counts[i];
                for (int t = 0 ; t < d ; ++t)
                    row[t] += a * types[t].counts[i];
            }
            if (gamma.at(r))
                sys.add_row(row, globals[r].bound - constant);
            else
                sys.add_row_at_least(row, globals[r].bound + 1 - constant);
        }

        auto & s_order = space.s_order();
        for (std::size_t j = 0 ; j < s_order.size() ; ++j)
            for (int i = 0 ; i < s ; ++i) {
                auto interval = ctx.locals().at(i, s_order[j]);
                vector<int64_t> row(static_cast<std::size_t>(d), 0);
                for (int t = 0 ; t < d ; ++t)
                    row[t] = types[t].s_neighbours[j][i];
                int64_t constant = ctx.s_side_neighbours(shape.s_masks, j, i);
                sys.add_row(row, int64_t{ interval.hi } - constant);
                sys.add_row_at_least(row, int64_t{ interval.lo } - constant);
            }
        return sys;
    }

    auto witness_from_counts(const SolveContext & ctx, const Shape & shape, const vector<int64_t> & counts) -> Assignment
    {
        return ctx.space().realize(shape.s_masks, counts).assignment;
    }

    auto KernelMemo::lookup(const Shape & capped, const PreEvaluation & gamma) const -> optional<bool>
    {
        auto it = _results.find({ capped, gamma });
        if (it == _results.end())
            return std::nullopt;
        return it->second;
    }

    auto KernelMemo::insert(const Shape & capped, const PreEvaluation & gamma, bool value) -> void
    {
        _results.emplace(std::pair{ capped, gamma }, value);
    }

    namespace
    {
        auto capped(const SolveContext & ctx, const Shape & shape) -> Shape
        {
            Shape result = shape;
            for (auto & v : result.sigma)
                if (v == Shape::top)
                    v = ctx.space().threshold();
            return result;
        }

        auto step_locals(const SolveContext & ctx, const Realization & rep) -> bool
        {
            auto outside = rep.kernel;
            outside.subtract(ctx.space().s_set());
            return obeys_at(ctx.graph(), rep.assignment, ctx.locals(), outside);
        }

        struct GammaBranch
        {
            PreEvaluation gamma;
            Formula formula;
            optional<bool> known;
        };

        auto branch_for(const SolveContext & ctx, const PreEvaluation & gamma) -> GammaBranch
        {
            auto f = pre_evaluate(ctx.formula(), gamma);
            auto known = known_value(f);
            return GammaBranch{ gamma, std::move(f), known };
        }

        auto step_formula(const SolveContext & ctx, const Shape & shape, const Realization & rep, const GammaBranch & branch,
                KernelMemo * memo, SolveStatistics * statistics, EvaluationOptions evaluation) -> bool
        {
            if (branch.known)
                return *branch.known;
            auto & gamma = branch.gamma;
            auto key = capped(ctx, shape);
            if (memo)
                if (auto known = memo->lookup(key, gamma)) {
                    if (statistics)
                        ++statistics->memo_hits;
                    return *known;
                }
            if (statistics)
                ++statistics->evaluations;
            auto kernel = ctx.graph().induced(rep.kernel);
            bool result = holds(kernel, branch.formula, restrict_assignment(rep.assignment, rep.kernel), evaluation);
            if (memo)
                memo->insert(key, gamma, result);
            return result;
        }
    }

    auto check_shape(const SolveContext & ctx, const Shape & shape, const PreEvaluation & gamma,
            KernelMemo * memo, SolveStatistics * statistics, EvaluationOptions evaluation) -> optional<Assignment>
    {
        auto rep = ctx.space().realize_kernel(shape.s_masks, ctx.space().representative_counts(shape));
        if (! step_formula(ctx, shape, rep, branch_for(ctx, gamma), memo, statistics, evaluation))
            return std::nullopt;
        if (! step_locals(ctx, rep))
            return std::nullopt;
        if (statistics)
            ++statistics->ilp_calls;
        auto counts = feasible(build_ilp(ctx, shape, gamma));
        if (! counts)
            return std::nullopt;
        return witness_from_counts(ctx, shape, *counts);
    }

    auto verify_witness(const ColoredGraph & g, const Instance & inst, const Assignment & witness, EvaluationOptions evaluation) -> bool
    {
        auto locals = effective_locals(g, inst);
        auto gamma = global_truth(inst.globals, set_sizes(witness));
        return holds(g, pre_evaluate(inst.formula, gamma), witness, evaluation)
            && obeys_at(g, witness, locals, g.all_vertices());
    }

    auto model_check(const ColoredGraph & g, const Instance & inst, const SolveOptions & options) -> SolveResult
    {
        if (inst.formula.uses_edge_sorts())
            throw InstanceError{ "MSO2 formulas go through the subdivision reduction" };
        auto locals = effective_locals(g, inst);

        SolveResult result;
        if (options.k) {
            auto found = find_vi_set(g, *options.k);
            if (! found)
                throw InstanceError{ "the graph has no vi(" + std::to_string(*options.k) + ")-set" };
            result.k = found->k;
            result.s = found->members;
        }
        else {
            auto found = minimum_vi_set(g);
            result.k = found.k;
            result.s = found.members;
        }
        auto s_order = result.s.members();
        auto explain = options.explain;
        if (explain) {
            *explain << "k = " << result.k << ", S = [";
            for (std::size_t j = 0 ; j < s_order.size() ; ++j)
                *explain << (j ? "," : "") << s_order[j];
            *explain << "]\n";
        }

        auto restricted = restrict_to_small_degrees(locals, result.s, result.k);
        auto outside = g.all_vertices();
        outside.subtract(result.s);
        if (has_empty_interval(restricted, outside)) {
            if (explain)
                *explain << "a local constraint outside S is empty after degree restriction\n";
            return result;
        }

        SolveContext ctx(g, inst.formula, inst.globals, restricted, s_order, result.k);
        vector<GammaBranch> branches;
        for (auto & gamma : enumerate_pre_evaluations(static_cast<int>(inst.globals.size()))) {
            auto branch = branch_for(ctx, gamma);
            if (branch.known != false)
                branches.push_back(std::move(branch));
        }
        if (branches.empty()) {
            if (explain)
                *explain << "the formula is false under every pre-evaluation\n";
            return result;
        }
        if (explain)
            *explain << "q = " << ctx.q() << ", threshold = " << ctx.space().threshold() << ", base types = "
                << ctx.space().census().classes.size() << ", extended types = " << ctx.space().types().size() << "\n";

        KernelMemo memo;
        ctx.space().for_each_valid_shape([&] (const Shape & shape) -> bool {
            if (++result.statistics.shapes > options.shape_budget && options.shape_budget > 0)
                throw BudgetExceeded{ "shape budget of " + std::to_string(options.shape_budget) + " exceeded" };
            auto rep = ctx.space().realize_kernel(shape.s_masks, ctx.space().representative_counts(shape));
            if (! step_locals(ctx, rep)) {
                if (explain)
                    *explain << "shape " << to_string(shape) << ": locals outside S violated\n";
                return false;
            }
            for (auto & branch : branches) {
                auto & gamma = branch.gamma;
                ++result.statistics.ilp_calls;
                auto system = build_ilp(ctx, shape, gamma);
                auto counts = feasible(system);
                if (! counts)
                    continue;
                if (! step_formula(ctx, shape, rep, branch, &memo, &result.statistics, options.evaluation)) {
                    if (explain)
                        *explain << "shape " << to_string(shape) << ": formula false on the kernel\n";
                    continue;
                }
                if (explain) {
                    *explain << "shape " << to_string(shape) << ": satisfiable with gamma = [";
                    for (std::size_t r = 0 ; r < gamma.size() ; ++r)
                        *explain << (r ? "," : "") << (gamma[r] ? "true" : "false");
                    *explain << "]\n" << to_text(system);
                }
                result.witness = witness_from_counts(ctx, shape, *counts);
                return true;
            }
            return false;
        });

        if (options.self_check && result.witness && ! verify_witness(g, inst, *result.witness, options.evaluation))
            throw SelfCheckFailure{ "engine returned a witness that does not satisfy the instance" };
        return result;
    }
}
