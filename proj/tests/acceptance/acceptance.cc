#include <vicheck/constraints.hh>
#include <vicheck/engine.hh>
#include <vicheck/evaluator.hh>
#include <vicheck/gso.hh>
#include <vicheck/ilp.hh>
#include <vicheck/oracle.hh>
#include <vicheck/problems.hh>
#include <vicheck/shapes.hh>

#include "generators.hh"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace vicheck;
using vicheck::testing::Rng;

namespace
{
    using Clock = std::chrono::steady_clock;

    struct Outcome
    {
        bool pass;
        std::string detail;
    };

    auto seconds_since(Clock::time_point start) -> double
    {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }

    auto all_assignments(int n, int s) -> std::vector<Assignment>
    {
        std::vector<Assignment> result;
        for (long code = 0 ; code < (1L << (n * s)) ; ++code) {
            Assignment a;
            for (int i = 0 ; i < s ; ++i) {
                VertexSet x(n);
                for (int v = 0 ; v < n ; ++v)
                    if ((code >> (i * n + v)) & 1)
                        x.set(v);
                a.push_back(x);
            }
            result.push_back(a);
        }
        return result;
    }

    auto random_table(Rng & rng, int n, int s) -> LocalTable
    {
        LocalTable table(n, s);
        for (int i = 0 ; i < s ; ++i)
            for (int v = 0 ; v < n ; ++v)
                if (rng() % 2) {
                    int lo = static_cast<int>(rng() % (n + 1)), hi = static_cast<int>(rng() % (n + 1));
                    table.set(i, v, Interval{ std::min(lo, hi), std::max(lo, hi) });
                }
        return table;
    }

    // Size of the largest component of g - s, by flood fill.
    auto largest_component(const ColoredGraph & g, const VertexSet & s) -> int
    {
        int n = g.vertex_count(), largest = 0;
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int start = 0 ; start < n ; ++start) {
            if (seen[start] || s.test(start))
                continue;
            int size = 0;
            std::vector<int> stack{ start };
            seen[start] = true;
            while (! stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                ++size;
                for (int u = 0 ; u < n ; ++u)
                    if (! seen[u] && ! s.test(u) && g.adjacent(u, v)) {
                        seen[u] = true;
                        stack.push_back(u);
                    }
            }
            largest = std::max(largest, size);
        }
        return largest;
    }

    auto criterion_oracle_equivalence() -> Outcome
    {
        auto start = Clock::now();
        Rng rng(1001);
        int rounds = 240, disagreements = 0, sat = 0, bad_witness = 0;
        for (int round = 0 ; round < rounds ; ++round) {
            int n = 1 + static_cast<int>(rng() % 6);
            auto g = testing::random_graph(rng, n, 0.35, static_cast<int>(rng() % 3));
            int s = static_cast<int>(rng() % 3);
            int q = static_cast<int>(rng() % 3);
            int globals = s > 0 ? static_cast<int>(rng() % 2) : 0;
            auto inst = testing::random_instance(rng, g, s, q, globals, false, 0.3);
            auto result = model_check(g, inst);
            bool expected = brute_force_msogl(g, inst, OracleOptions{ true }).satisfiable;
            disagreements += result.satisfiable() != expected;
            if (result.witness) {
                ++sat;
                bad_witness += ! oracle_accepts(g, inst, *result.witness);
            }
        }
        double elapsed = seconds_since(start);
        std::ostringstream detail;
        detail << rounds << " instances, " << sat << " satisfiable, " << disagreements << " disagreements, "
               << bad_witness << " rejected witnesses, " << elapsed << " s";
        return { disagreements == 0 && bad_witness == 0 && elapsed < 600.0, detail.str() };
    }

    auto criterion_gso() -> Outcome
    {
        Rng rng(1002);
        int rounds = 120, disagreements = 0, sat = 0, bad_witness = 0;
        for (int round = 0 ; round < rounds ; ++round) {
            int n = 1 + static_cast<int>(rng() % 5);
            auto g = testing::random_graph(rng, n, 0.35, static_cast<int>(rng() % 2));
            int s = static_cast<int>(rng() % 3);
            int q = static_cast<int>(rng() % 3);
            int globals = s > 0 ? static_cast<int>(rng() % 2) : 0;
            auto inst = testing::random_instance(rng, g, s, q, globals, true, 0.3);
            auto result = gso_model_check(g, inst);
            bool expected = brute_force_gsogl(g, inst, OracleOptions{ true }).satisfiable;
            disagreements += result.satisfiable() != expected;
            if (result.witness) {
                ++sat;
                bad_witness += ! oracle_accepts(g, inst, *result.witness);
            }
        }
        std::ostringstream detail;
        detail << rounds << " MSO2 instances, " << sat << " satisfiable, " << disagreements << " disagreements, "
               << bad_witness << " rejected witnesses";
        return { disagreements == 0 && bad_witness == 0, detail.str() };
    }

    auto criterion_kernel() -> Outcome
    {
        Rng rng(1003);
        int rounds = 600, disagreements = 0, shrunk = 0;
        for (int round = 0 ; round < rounds ; ++round) {
            int block = 1 + static_cast<int>(rng() % 2);
            int core = static_cast<int>(rng() % 2);
            int blocks = 1 + static_cast<int>(rng() % ((10 - core) / block));
            auto g = testing::random_low_vi_graph(rng, core, blocks, block, static_cast<int>(rng() % 2));
            auto vi = *find_vi_set(g, vertex_integrity(g) + static_cast<int>(rng() % 2));
            testing::FormulaRecipe recipe;
            recipe.quantifiers = 1 + static_cast<int>(rng() % 2);
            recipe.colors = g.color_count();
            auto f = testing::random_formula(rng, recipe);
            int q = quantifier_count(f);
            auto kernel = kernelize(g, vi.members, q);
            shrunk += kernel.vertex_count() < g.vertex_count();
            bool whole = oracle_holds(g, Instance{ f, {}, {} }, {});
            bool reduced = oracle_holds(kernel, Instance{ f, {}, {} }, {});
            disagreements += whole != reduced || evaluate(g, f) != whole || evaluate(kernel, f) != reduced;
        }
        std::ostringstream detail;
        detail << rounds << " triples with n <= 10, " << shrunk << " kernels strictly smaller, " << disagreements << " disagreements";
        return { disagreements == 0 && shrunk > 0, detail.str() };
    }

    auto criterion_shapes() -> Outcome
    {
        Rng rng(1004);
        int pairs = 0, disagreements = 0;
        for (int round = 0 ; round < 400 && pairs < 600 ; ++round) {
            auto g = testing::random_low_vi_graph(rng, 1, 3 + static_cast<int>(rng() % 3), 1, static_cast<int>(rng() % 2));
            auto vi = *find_vi_set(g, vertex_integrity(g));
            int s = g.vertex_count() <= 6 ? 2 : 1;
            auto inst = testing::random_instance(rng, g, s, 1 + static_cast<int>(rng() % 2), 0, false, 0.0);
            int q = quantifier_count(inst.formula);
            ShapeSpace space(g, vi.members.members(), vi.k, s, q);
            std::map<Shape, std::vector<Assignment>> buckets;
            for (auto & a : all_assignments(g.vertex_count(), s))
                buckets[space.shape_of(a)].push_back(a);
            for (auto & [shape, members] : buckets) {
                if (members.size() < 2)
                    continue;
                for (int sample = 0 ; sample < 3 ; ++sample) {
                    auto & a = members[rng() % members.size()];
                    auto & b = members[rng() % members.size()];
                    disagreements += oracle_holds(g, inst, a) != oracle_holds(g, inst, b);
                    ++pairs;
                }
            }
        }

        int spaces = 0, enumeration_errors = 0;
        for (int n = 1 ; n <= 5 ; ++n)
            for (auto & g : testing::all_graphs(n))
                for (int s = 1 ; s <= 2 ; ++s) {
                    if (n * s > 8)
                        continue;
                    auto vi = *find_vi_set(g, vertex_integrity(g));
                    for (int q = 0 ; q <= 1 ; ++q) {
                        ShapeSpace space(g, vi.members.members(), vi.k, s, q);
                        std::set<Shape> realised;
                        for (auto & a : all_assignments(n, s))
                            realised.insert(space.shape_of(a));
                        auto listed = space.valid_shapes();
                        std::set<Shape> enumerated(listed.begin(), listed.end());
                        enumeration_errors += listed.size() != enumerated.size() || realised != enumerated;
                        ++spaces;
                    }
                }
        std::ostringstream detail;
        detail << pairs << " same-shape pairs, " << disagreements << " disagreements; " << spaces
               << " shape spaces on all graphs n <= 5 enumerated, " << enumeration_errors << " mismatches";
        return { pairs >= 500 && disagreements == 0 && enumeration_errors == 0, detail.str() };
    }

    auto criterion_locals() -> Outcome
    {
        Rng rng(1005);
        int graphs = 0, restriction_violations = 0, uniform_violations = 0, checked_pairs = 0;
        for (int n = 1 ; n <= 6 ; ++n)
            for (auto & g : testing::all_graphs(n)) {
                ++graphs;
                int s = n <= 5 ? 2 : 1;
                auto vi = *find_vi_set(g, vertex_integrity(g));
                auto table = random_table(rng, n, s);
                auto restricted = restrict_to_small_degrees(table, vi.members, vi.k);
                auto everything = all_assignments(n, s);
                for (auto & a : everything)
                    restriction_violations += obeys_at(g, a, table, g.all_vertices()) != obeys_at(g, a, restricted, g.all_vertices());

                auto outside = g.all_vertices();
                outside.subtract(vi.members);
                if (has_empty_interval(restricted, outside))
                    continue;
                auto u = uniformize(g, vi.members.members(), restricted);
                if (u.graph.edges() != g.edges() || static_cast<int>(u.registry.size()) > s * vi.k * vi.k)
                    ++uniform_violations;
                ShapeSpace space(u.graph, vi.members.members(), vi.k, s, 1);
                std::map<Shape, bool> verdicts;
                for (auto & a : everything) {
                    bool ok = obeys_at(g, a, restricted, outside);
                    auto [it, fresh] = verdicts.emplace(space.shape_of(a), ok);
                    if (! fresh) {
                        ++checked_pairs;
                        uniform_violations += it->second != ok;
                    }
                }
            }
        std::ostringstream detail;
        detail << graphs << " graphs (all up to isomorphism, n <= 6), " << restriction_violations << " restriction violations, "
               << checked_pairs << " same-shape comparisons, " << uniform_violations << " uniformization violations";
        return { restriction_violations == 0 && uniform_violations == 0, detail.str() };
    }

    auto criterion_subdivision() -> Outcome
    {
        Rng rng(1006);
        int rounds = 200, violations = 0, brute = 0;
        for (int round = 0 ; round < rounds ; ++round) {
            int n = 1 + static_cast<int>(rng() % 8);
            auto g = testing::random_graph(rng, n, 0.1 + 0.5 * static_cast<double>(rng() % 100) / 100.0);
            int k = brute_force_vi(g);
            auto lifted = subdivide(g).graph;
            if (lifted.vertex_count() <= 24) {
                ++brute;
                violations += brute_force_vi(lifted) > k * k;
            }
            else {
                auto certificate = find_vi_set(lifted, k * k);
                violations += ! certificate
                    || static_cast<int>(certificate->members.count()) + largest_component(lifted, certificate->members) > k * k;
            }
        }
        std::ostringstream detail;
        detail << rounds << " graphs with n <= 8, " << brute << " by brute force, " << rounds - brute
               << " by a checked certificate, " << violations << " violations";
        return { violations == 0, detail.str() };
    }

    auto criterion_hardness() -> Outcome
    {
        int cases = 0, violations = 0, divisible = 0, yes = 0;
        std::function<void(std::vector<int> &, int)> multisets;
        std::vector<std::vector<int>> all;
        multisets = [&] (std::vector<int> & items, int smallest) {
            if (! items.empty())
                all.push_back(items);
            if (items.size() == 5)
                return;
            for (int x = smallest ; x <= 4 ; ++x) {
                items.push_back(x);
                multisets(items, x);
                items.pop_back();
            }
        };
        std::vector<int> scratch;
        multisets(scratch, 1);
        for (int t = 1 ; t <= 3 ; ++t)
            for (auto & items : all) {
                ++cases;
                auto ecp = gen_ecp_hardness(t, items);
                bool packing = unary_bin_packing(t, items);
                int sum = 0;
                for (int x : items)
                    sum += x;
                if (sum % t != 0) {
                    violations += packing || ! ecp.trivially_no;
                    continue;
                }
                ++divisible;
                yes += packing;
                int n = ecp.graph.vertex_count();
                bool shallow = n <= 20 ? brute_force_treedepth(ecp.graph) <= t + 2 : treedepth_at_most(ecp.graph, t + 2);
                bool partition = equitable_partition_exists(ecp.graph, t, PartProperty::Connected);
                violations += n != 3 * t * (sum / t) || ! shallow || partition != packing || ecp.trivially_no;
            }
        std::ostringstream detail;
        detail << cases << " (t, items) cases, " << divisible << " with t dividing the sum (" << yes << " packable), "
               << violations << " violations";
        return { violations == 0, detail.str() };
    }

    auto criterion_defective() -> Outcome
    {
        Rng rng(1008);
        int rounds = 60, satisfied = 0, by_engine = 0;
        for (int round = 0 ; round < rounds ; ++round) {
            int n = 1 + static_cast<int>(rng() % 7);
            auto g = testing::random_graph(rng, n, 0.15 + 0.5 * static_cast<double>(rng() % 100) / 100.0);
            int k = brute_force_vi(g);
            auto encoded = encode(DefectiveColoring{ k, 0 }, g);

            SolveOptions options;
            options.shape_budget = 500;
            try {
                auto witness = solve_encoded(encoded, options);
                ++by_engine;
                if (witness && oracle_accepts(encoded.graph, encoded.instance, *witness))
                    ++satisfied;
                continue;
            }
            catch (const BudgetExceeded &) { }
            catch (const ShapeError &) { }

            VertexSet best(n);
            for (long mask = 0 ; mask < (1L << n) ; ++mask) {
                VertexSet s(n);
                for (int v = 0 ; v < n ; ++v)
                    if ((mask >> v) & 1)
                        s.set(v);
                if (static_cast<int>(s.count()) + largest_component(g, s) == k) {
                    best = s;
                    break;
                }
            }
            std::vector<int> color(static_cast<std::size_t>(n), -1);
            int next = 0;
            for (int v : best.members())
                color[v] = next++;
            for (auto & c : components(g, best)) {
                int shade = static_cast<int>(best.count());
                for (int v : c.members())
                    color[v] = shade++;
            }
            Assignment witness;
            for (int i = 0 ; i < k ; ++i) {
                VertexSet x(n);
                for (int v = 0 ; v < n ; ++v)
                    if (color[v] == i)
                        x.set(v);
                witness.push_back(x);
            }
            witness.push_back(VertexSet(g.edge_count()));
            satisfied += oracle_accepts(encoded.graph, encoded.instance, witness);
        }
        std::ostringstream detail;
        detail << satisfied << " of " << rounds << " encoded instances satisfiable (" << by_engine
               << " decided by the engine, the rest by an explicit coloring accepted by the oracle)";
        return { satisfied == rounds, detail.str() };
    }

    auto criterion_scaling() -> Outcome
    {
        auto instance_for = [] (int copies) {
            ColoredGraph g(1 + copies);
            for (int c = 1 ; c <= copies ; ++c)
                g.add_edge(0, c);
            auto f = parse("R1 & exists x. (x in X1 & ~(x in C1))", { declare("X1", Sort::VertexSet) });
            g.add_color(VertexSet::from_members(1 + copies, { 0 }));
            return std::pair{ g, Instance{ f, { GlobalConstraint{ { 1 }, 1 } }, {} } };
        };
        auto timed = [&] (int copies) {
            auto [g, inst] = instance_for(copies);
            double best = 1e300;
            bool verdict = false;
            for (int rep = 0 ; rep < 30 ; ++rep) {
                auto start = Clock::now();
                verdict = model_check(g, inst).satisfiable();
                best = std::min(best, seconds_since(start));
            }
            return std::pair{ verdict, best };
        };
        auto [small_verdict, small_time] = timed(10);
        auto [large_verdict, large_time] = timed(200);
        double ratio = large_time / std::max(small_time, 1e-9);
        std::ostringstream detail;
        detail << "10 copies " << small_time << " s, 200 copies " << large_time << " s, ratio " << ratio
               << ", verdicts " << small_verdict << "/" << large_verdict;
        return { small_verdict == large_verdict && ratio <= 5.0, detail.str() };
    }

    auto criterion_ilp() -> Outcome
    {
        Rng rng(1010);
        int rounds = 1000, disagreements = 0, feasible_count = 0;
        for (int round = 0 ; round < rounds ; ++round) {
            int d = 1 + static_cast<int>(rng() % 6);
            auto sys = testing::random_system(rng, d, 1'000'000);
            auto point = feasible(sys);
            bool expected = testing::box_feasible(sys);
            disagreements += point.has_value() != expected || (point && ! satisfies(sys, *point));
            feasible_count += expected;
        }
        std::ostringstream detail;
        detail << rounds << " systems with d <= 6, " << feasible_count << " feasible, " << disagreements << " disagreements";
        return { disagreements == 0, detail.str() };
    }
}

auto main() -> int
{
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        { "oracle equivalence", criterion_oracle_equivalence },
        { "gso reduction", criterion_gso },
        { "kernel soundness", criterion_kernel },
        { "shape equivalence", criterion_shapes },
        { "local restriction and uniformization", criterion_locals },
        { "subdivision vertex integrity", criterion_subdivision },
        { "bin packing reduction", criterion_hardness },
        { "defective coloring sanity", criterion_defective },
        { "scaling smoke test", criterion_scaling },
        { "ilp exactness", criterion_ilp },
    };
    int failures = 0, index = 0;
    for (auto & [name, run] : criteria) {
        ++index;
        Outcome outcome{ false, "" };
        auto start = Clock::now();
        try {
            outcome = run();
        }
        catch (const std::exception & e) {
            outcome = { false, std::string{ "exception: " } + e.what() };
        }
        failures += ! outcome.pass;
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " " << index << " " << name << ": " << outcome.detail
                  << " [" << seconds_since(start) << " s]" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
