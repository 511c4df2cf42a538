#include <vicheck/instance.hh>

namespace vicheck
{
    auto effective_locals(const ColoredGraph & g, const Instance & inst) -> LocalTable
    {
        int s = inst.formula.free_count();
        for (auto & c : inst.globals)
            if (static_cast<int>(c.coeffs.size()) != s)
                throw InstanceError{ "global constraint has " + std::to_string(c.coeffs.size()) + " coefficients but the formula has "
                        + std::to_string(s) + " free variables" };
        if (inst.formula.global_atom_bound() > static_cast<int>(inst.globals.size()))
            throw InstanceError{ "formula refers to R" + std::to_string(inst.formula.global_atom_bound()) + " but only "
                    + std::to_string(inst.globals.size()) + " global constraints are given" };
        if (inst.formula.color_bound() > g.color_count())
            throw InstanceError{ "formula refers to color C" + std::to_string(inst.formula.color_bound()) + " but the graph has "
                    + std::to_string(g.color_count()) + " colors" };
        if (inst.locals.variable_count() == 0)
            return LocalTable(g.vertex_count(), s);
        if (inst.locals.variable_count() != s || inst.locals.vertex_count() != g.vertex_count())
            throw InstanceError{ "local constraint table does not match the graph and formula" };
        return inst.locals;
    }

    auto global_truth(const std::vector<GlobalConstraint> & globals, const std::vector<std::int64_t> & sizes) -> PreEvaluation
    {
        PreEvaluation result;
        for (auto & c : globals)
            result.push_back(c.holds(sizes));
        return result;
    }
}
