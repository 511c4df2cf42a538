#include <vicheck/cli.hh>

#include <vicheck/engine.hh>
#include <vicheck/evaluator.hh>
#include <vicheck/gso.hh>
#include <vicheck/io.hh>
#include <vicheck/oracle.hh>
#include <vicheck/problems.hh>

#include <CLI11.hpp>

#include <random>
#include <sstream>

namespace fs = std::filesystem;
using std::string;
using std::vector;

namespace vicheck
{
    namespace
    {
        struct CheckFlags
        {
            string graph, formula, constraints, witness_out, verify;
            bool mso2 = false, explain = false, pretty = false;
            int k = 0, threads = 1;
            std::int64_t shape_budget = 0;
            std::uint64_t eval_budget = EvaluationOptions{}.budget;
        };

        struct EncodeFlags
        {
            string problem, graph, out, kind = "defensive", property = "connected", capacities, phi;
            int size = 0, fairness = 0, colors = 1, defect = 0, r = 0, parts = 1, deletions = 0, degree = 0;
            bool global = false;
        };

        struct GenFlags
        {
            int t = 1, n = 5, colors = 0;
            string items, out;
            double density = 0.3;
            std::uint64_t seed = 1;
        };

        auto add_check_options(CLI::App & cmd, CheckFlags & f) -> void
        {
            cmd.add_option("--graph", f.graph, "graph JSON")->required();
            cmd.add_option("--formula", f.formula, "formula text file")->required();
            cmd.add_option("--constraints", f.constraints, "constraints JSON");
            cmd.add_flag("--mso2", f.mso2, "allow edge sorts and route through the subdivision");
            cmd.add_option("--witness", f.witness_out, "write the witness JSON here instead of stdout");
            cmd.add_flag("--pretty", f.pretty, "human-readable output");
            cmd.add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
        }

        auto load(const CheckFlags & f) -> LoadedInstance
        {
            auto g = graph_from_json(read_json(f.graph));
            Sidecar sidecar;
            if (! f.constraints.empty())
                sidecar = sidecar_from_json(read_json(f.constraints));
            auto inst = build_instance(g, read_text(f.formula), sidecar, f.mso2);
            return LoadedInstance{ std::move(g), std::move(inst) };
        }

        auto pretty_witness(const ColoredGraph & g, const Formula & f, const std::optional<Assignment> & witness) -> string
        {
            if (! witness)
                return "unsatisfiable\n";
            std::ostringstream text;
            text << "satisfiable\n";
            auto free = f.free_variables();
            for (std::size_t i = 0 ; i < free.size() ; ++i) {
                text << "  " << free[i].name << " = {";
                bool first = true;
                for (int x : sorted_members((*witness)[i])) {
                    text << (first ? "" : ", ");
                    if (free[i].sort == Sort::EdgeSet)
                        text << g.edges()[x].first << "-" << g.edges()[x].second;
                    else
                        text << x;
                    first = false;
                }
                text << "}\n";
            }
            return text.str();
        }

        auto emit_verdict(const CheckFlags & f, const LoadedInstance & loaded, const std::optional<Assignment> & witness, std::ostream & out) -> int
        {
            auto json = witness_to_json(loaded.graph, loaded.instance.formula, witness);
            if (! f.witness_out.empty())
                write_text(f.witness_out, json.dump() + "\n");
            if (f.pretty)
                out << pretty_witness(loaded.graph, loaded.instance.formula, witness);
            else if (f.witness_out.empty())
                out << json.dump() << "\n";
            return witness ? exit_satisfiable : exit_unsatisfiable;
        }

        auto run_check(const CheckFlags & f, std::ostream & out, std::ostream & err) -> int
        {
            auto loaded = load(f);
            SolveOptions options;
            if (f.k > 0)
                options.k = f.k;
            options.shape_budget = f.shape_budget;
            options.evaluation.budget = f.eval_budget;
            options.threads = f.threads;
            if (f.explain)
                options.explain = &err;
            std::optional<Assignment> witness;
            if (loaded.instance.formula.uses_edge_sorts() || f.mso2)
                witness = gso_model_check(loaded.graph, loaded.instance, options).witness;
            else
                witness = model_check(loaded.graph, loaded.instance, options).witness;
            return emit_verdict(f, loaded, witness, out);
        }

        auto run_oracle_check(const CheckFlags & f, std::ostream & out) -> int
        {
            auto loaded = load(f);
            if (! f.verify.empty()) {
                auto claimed = witness_from_json(loaded.graph, loaded.instance.formula, read_json(f.verify));
                if (! claimed)
                    throw FormatError{ "only satisfiable witnesses can be verified" };
                bool ok = oracle_accepts(loaded.graph, loaded.instance, *claimed);
                out << Json{ { "verified", ok } }.dump() << "\n";
                return ok ? exit_satisfiable : exit_unsatisfiable;
            }
            auto verdict = brute_force_gsogl(loaded.graph, loaded.instance, OracleOptions{ true });
            return emit_verdict(f, loaded, verdict.witness, out);
        }

        auto run_vi(const string & path, bool pretty, std::ostream & out) -> int
        {
            auto g = graph_from_json(read_json(path));
            auto vi = minimum_vi_set(g);
            auto members = sorted_members(vi.members);
            if (pretty) {
                out << "vi=" << vi.k << ", S=[";
                for (std::size_t i = 0 ; i < members.size() ; ++i)
                    out << (i ? "," : "") << members[i];
                out << "]\n";
            }
            else
                out << Json{ { "vi", vi.k }, { "S", members } }.dump() << "\n";
            return exit_satisfiable;
        }

        auto parse_list(const string & text) -> vector<int>
        {
            vector<int> values;
            std::stringstream in(text);
            string item;
            while (std::getline(in, item, ',')) {
                try {
                    std::size_t used = 0;
                    values.push_back(std::stoi(item, &used));
                    if (used != item.size())
                        throw std::invalid_argument{ item };
                }
                catch (const std::logic_error &) {
                    throw FormatError{ "not an integer list: " + text };
                }
            }
            return values;
        }

        auto alliance_kind(const string & name) -> AllianceKind
        {
            if (name == "defensive")
                return AllianceKind::Defensive;
            if (name == "offensive")
                return AllianceKind::Offensive;
            if (name == "powerful")
                return AllianceKind::Powerful;
            throw FormatError{ "unknown alliance kind " + name };
        }

        auto part_property(const string & name) -> PartProperty
        {
            if (name == "connected")
                return PartProperty::Connected;
            if (name == "independent")
                return PartProperty::Independent;
            throw FormatError{ "unknown part property " + name };
        }

        auto problem_spec(const EncodeFlags & f) -> ProblemSpec
        {
            if (f.problem == "fair-vc")
                return FairVertexCover{ f.size, f.fairness };
            if (f.problem == "defective-coloring")
                return DefectiveColoring{ f.colors, f.defect };
            if (f.problem == "alliance")
                return Alliance{ alliance_kind(f.kind), f.r, f.global, f.size };
            if (f.problem == "equitable-partition")
                return EquitablePartition{ f.parts, part_property(f.property) };
            if (f.problem == "capacitated-vc")
                return Capacitated{ CapacitatedKind::VertexCover, parse_list(f.capacities), f.size };
            if (f.problem == "capacitated-ds")
                return Capacitated{ CapacitatedKind::DominatingSet, parse_list(f.capacities), f.size };
            if (f.problem == "bdd")
                return BoundedDegreeDeletion{ f.deletions, f.degree };
            if (f.problem == "capacitated-mso2") {
                vector<Variable> free{ declare("A", Sort::VertexSet), declare("B", Sort::EdgeSet) };
                return CapacitatedMso2{ parse(read_text(f.phi), free, ParseOptions{ true }), parse_list(f.capacities), f.size };
            }
            throw FormatError{ "unknown problem " + f.problem };
        }

        auto run_encode(const EncodeFlags & f, std::ostream & out) -> int
        {
            auto g = graph_from_json(read_json(f.graph));
            auto encoded = encode(problem_spec(f), g);
            write_instance_dir(f.out, encoded.graph, encoded.instance);
            out << Json{ { "problem", f.problem }, { "vertices", encoded.graph.vertex_count() }, { "out", f.out } }.dump() << "\n";
            return exit_satisfiable;
        }

        auto run_gen_ecp(const GenFlags & f, std::ostream & out) -> int
        {
            auto ecp = gen_ecp_hardness(f.t, parse_list(f.items));
            auto encoded = encode(EquitablePartition{ ecp.parts, PartProperty::Connected }, ecp.graph);
            write_instance_dir(f.out, encoded.graph, encoded.instance);
            Json meta{ { "parts", ecp.parts }, { "bin", ecp.bin }, { "trivially_no", ecp.trivially_no }, { "vertices", ecp.graph.vertex_count() } };
            write_text(fs::path(f.out) / "meta.json", meta.dump() + "\n");
            out << meta.dump() << "\n";
            return exit_satisfiable;
        }

        auto run_gen_random(const GenFlags & f, std::ostream & out) -> int
        {
            if (f.n < 0 || f.colors < 0 || f.density < 0.0 || f.density > 1.0)
                throw FormatError{ "random graphs need n >= 0, colors >= 0 and density in [0, 1]" };
            std::mt19937_64 rng(f.seed);
            std::bernoulli_distribution edge(f.density), member(0.5);
            ColoredGraph g(f.n);
            for (int u = 0 ; u < f.n ; ++u)
                for (int v = u + 1 ; v < f.n ; ++v)
                    if (edge(rng))
                        g.add_edge(u, v);
            for (int c = 0 ; c < f.colors ; ++c) {
                VertexSet members(f.n);
                for (int v = 0 ; v < f.n ; ++v)
                    if (member(rng))
                        members.set(v);
                g.add_color(members);
            }
            auto text = graph_to_json(g).dump() + "\n";
            if (f.out.empty())
                out << text;
            else
                write_text(f.out, text);
            return exit_satisfiable;
        }

        auto run_kernel(const string & path, int q, const string & target, std::ostream & out) -> int
        {
            auto g = graph_from_json(read_json(path));
            auto vi = minimum_vi_set(g);
            auto text = graph_to_json(kernelize(g, vi.members, q, vi.k)).dump() + "\n";
            if (target.empty())
                out << text;
            else
                write_text(target, text);
            return exit_satisfiable;
        }
    }

    auto run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{ "model checker for graphs of bounded vertex integrity", "vicheck" };
        app.require_subcommand(1);

        CheckFlags check_flags, oracle_flags;
        auto check = app.add_subcommand("check", "decide an instance with the engine");
        add_check_options(*check, check_flags);
        check->add_option("--k", check_flags.k, "use this k instead of vi(G)")->check(CLI::PositiveNumber);
        check->add_option("--budget", check_flags.shape_budget, "maximum number of shapes, 0 for no limit")->check(CLI::NonNegativeNumber);
        check->add_option("--eval-budget", check_flags.eval_budget, "maximum formula nodes per evaluation")->check(CLI::PositiveNumber);
        check->add_flag("--explain", check_flags.explain, "dump shapes, pre-evaluations and systems to stderr");

        auto oracle = app.add_subcommand("oracle", "brute-force reference");
        oracle->require_subcommand(1);
        auto oracle_check = oracle->add_subcommand("check", "decide an instance by exhaustive search");
        add_check_options(*oracle_check, oracle_flags);
        oracle_check->add_option("--verify", oracle_flags.verify, "check this witness JSON instead of searching");

        string vi_graph;
        bool vi_pretty = false;
        auto vi = app.add_subcommand("vi", "vertex integrity and a witnessing set");
        vi->add_option("--graph", vi_graph, "graph JSON")->required();
        vi->add_flag("--pretty", vi_pretty, "human-readable output");

        EncodeFlags encode_flags;
        auto enc = app.add_subcommand("encode", "write a problem as an instance directory");
        enc->add_option("problem", encode_flags.problem, "fair-vc, defective-coloring, alliance, equitable-partition, capacitated-vc, capacitated-ds, bdd, capacitated-mso2")->required();
        enc->add_option("--graph", encode_flags.graph, "graph JSON")->required();
        enc->add_option("--out", encode_flags.out, "output directory")->required();
        enc->add_option("--size", encode_flags.size, "size bound");
        enc->add_option("--fairness", encode_flags.fairness, "fairness bound");
        enc->add_option("--colors", encode_flags.colors, "number of colors");
        enc->add_option("--defect", encode_flags.defect, "allowed same-colored neighbours");
        enc->add_option("--kind", encode_flags.kind, "defensive, offensive or powerful");
        enc->add_option("--r", encode_flags.r, "alliance shift");
        enc->add_flag("--global", encode_flags.global, "global alliance");
        enc->add_option("--parts", encode_flags.parts, "number of parts");
        enc->add_option("--property", encode_flags.property, "connected or independent");
        enc->add_option("--capacities", encode_flags.capacities, "comma-separated capacities");
        enc->add_option("--deletions", encode_flags.deletions, "deletion budget");
        enc->add_option("--degree", encode_flags.degree, "degree bound");
        enc->add_option("--phi", encode_flags.phi, "formula file over A and F:B");

        GenFlags gen_flags;
        auto gen = app.add_subcommand("gen", "instance generators");
        gen->require_subcommand(1);
        auto ecp = gen->add_subcommand("ecp", "equitable connected partition instance from bin packing");
        ecp->add_option("--t", gen_flags.t, "number of bins")->required()->check(CLI::PositiveNumber);
        ecp->add_option("--items", gen_flags.items, "comma-separated item sizes")->required();
        ecp->add_option("--out", gen_flags.out, "output directory")->required();
        auto random = gen->add_subcommand("random", "random graph");
        random->add_option("--n", gen_flags.n, "vertices");
        random->add_option("--density", gen_flags.density, "edge probability");
        random->add_option("--colors", gen_flags.colors, "number of random colors");
        random->add_option("--seed", gen_flags.seed, "random seed");
        random->add_option("--out", gen_flags.out, "output file");

        string kernel_graph, kernel_out;
        int kernel_q = 1;
        auto kernel = app.add_subcommand("kernel", "drop surplus components of equal type");
        kernel->add_option("--graph", kernel_graph, "graph JSON")->required();
        kernel->add_option("--q", kernel_q, "quantifier count")->required()->check(CLI::NonNegativeNumber);
        kernel->add_option("--out", kernel_out, "output file");

        try {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError & e) {
            std::ostringstream o, e2;
            int code = app.exit(e, o, e2);
            out << o.str();
            err << e2.str();
            return code == 0 ? exit_satisfiable : exit_input_error;
        }

        try {
            if (check->parsed())
                return run_check(check_flags, out, err);
            if (oracle_check->parsed())
                return run_oracle_check(oracle_flags, out);
            if (vi->parsed())
                return run_vi(vi_graph, vi_pretty, out);
            if (enc->parsed())
                return run_encode(encode_flags, out);
            if (ecp->parsed())
                return run_gen_ecp(gen_flags, out);
            if (random->parsed())
                return run_gen_random(gen_flags, out);
            if (kernel->parsed())
                return run_kernel(kernel_graph, kernel_q, kernel_out, out);
        }
        catch (const ParseError & e) {
            err << "parse error at position " << e.position() << ": " << e.what() << "\n";
            return exit_input_error;
        }
        catch (const BudgetExceeded & e) {
            err << "budget exceeded: " << e.what() << "\n";
            return exit_budget;
        }
        catch (const OracleLimit & e) {
            err << "oracle limit: " << e.what() << "\n";
            return exit_budget;
        }
        catch (const IoError & e) {
            err << "i/o error: " << e.what() << "\n";
            return exit_io_error;
        }
        catch (const std::exception & e) {
            err << "error: " << e.what() << "\n";
            return exit_input_error;
        }
        return exit_input_error;
    }
}
