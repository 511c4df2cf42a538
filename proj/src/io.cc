#include <vicheck/io.hh>

#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace vicheck
{
    namespace
    {
        auto require(bool condition, const std::string & message) -> void
        {
            if (! condition)
                throw FormatError{ message };
        }

        auto vertex_id(const Json & j, int n, const std::string & where) -> Vertex
        {
            require(j.is_number_integer(), where + ": vertex ids must be integers");
            auto v = j.get<std::int64_t>();
            require(v >= 0 && v < n, where + ": vertex id " + std::to_string(v) + " out of range");
            return static_cast<Vertex>(v);
        }

        auto bound_value(const Json & j, int n) -> int
        {
            require(j.is_number_integer(), "interval bounds must be integers");
            auto x = j.get<std::int64_t>();
            if (x == -1)
                return n;
            require(x >= 0 && x <= n, "interval bound " + std::to_string(x) + " outside [0, n]");
            return static_cast<int>(x);
        }

        auto interval_from_json(const Json & j, int n) -> Interval
        {
            require(j.is_array() && j.size() == 2, "intervals are written [lo, hi]");
            return Interval{ bound_value(j[0], n), bound_value(j[1], n) };
        }

        auto interval_to_json(Interval i, int n) -> Json
        {
            if (i.is_empty())
                return Json::array({ 1, 0 });
            return Json::array({ i.lo, i.hi >= n ? -1 : i.hi });
        }
    }

    auto graph_from_json(const Json & j) -> ColoredGraph
    {
        require(j.is_object(), "graph must be a JSON object");
        require(j.contains("n") && j["n"].is_number_integer(), "graph needs an integer n");
        auto n64 = j["n"].get<std::int64_t>();
        require(n64 >= 0 && n64 <= 1'000'000, "graph size out of range");
        int n = static_cast<int>(n64);
        ColoredGraph g(n);
        if (j.contains("edges")) {
            require(j["edges"].is_array(), "edges must be an array");
            for (auto & e : j["edges"]) {
                require(e.is_array() && e.size() == 2, "edges are pairs [u, v]");
                Vertex u = vertex_id(e[0], n, "edge"), v = vertex_id(e[1], n, "edge");
                require(u != v, "self-loop at vertex " + std::to_string(u));
                require(! g.adjacent(u, v), "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
                g.add_edge(u, v);
            }
        }
        if (j.contains("colors")) {
            require(j["colors"].is_array(), "colors must be an array");
            for (auto & c : j["colors"]) {
                require(c.is_array(), "each color is a list of vertex ids");
                VertexSet members(n);
                for (auto & v : c)
                    members.set(vertex_id(v, n, "color"));
                g.add_color(members);
            }
        }
        return g;
    }

    auto graph_to_json(const ColoredGraph & g) -> Json
    {
        Json edges = Json::array();
        for (auto [u, v] : g.edges())
            edges.push_back(Json::array({ u, v }));
        Json colors = Json::array();
        for (auto & c : g.colors())
            colors.push_back(sorted_members(c));
        return Json{ { "n", g.vertex_count() }, { "edges", edges }, { "colors", colors } };
    }

    auto variable_to_json(const Variable & v) -> Json
    {
        return v.sort == Sort::EdgeSet ? "F:" + v.name : v.name;
    }

    auto variable_from_json(const Json & j) -> Variable
    {
        require(j.is_string(), "free variables are written as names");
        auto text = j.get<std::string>();
        if (text.starts_with("F:"))
            return declare(text.substr(2), Sort::EdgeSet);
        return declare(text, Sort::VertexSet);
    }

    auto constraints_to_json(const Instance & inst, int n) -> Json
    {
        Json free = Json::array();
        for (auto & v : inst.formula.free_variables())
            free.push_back(variable_to_json(v));
        Json globals = Json::array();
        for (auto & c : inst.globals)
            globals.push_back(Json{ { "coeffs", c.coeffs }, { "bound", c.bound } });
        Json locals = Json::array();
        auto names = inst.formula.free_variables();
        for (int i = 0 ; i < inst.locals.variable_count() ; ++i) {
            Json overrides = Json::object();
            for (int v = 0 ; v < n ; ++v)
                if (! (inst.locals.at(i, v).lo == 0 && inst.locals.at(i, v).hi >= n))
                    overrides[std::to_string(v)] = interval_to_json(inst.locals.at(i, v), n);
            if (! overrides.empty())
                locals.push_back(Json{ { "var", names[i].name }, { "default", Json::array({ 0, -1 }) }, { "overrides", overrides } });
        }
        return Json{ { "free", free }, { "mso2", inst.formula.is_mso2() }, { "globals", globals }, { "locals", locals } };
    }

    auto sidecar_from_json(const Json & j) -> Sidecar
    {
        require(j.is_object(), "constraints must be a JSON object");
        Sidecar result;
        if (j.contains("free")) {
            require(j["free"].is_array(), "free must be an array");
            for (auto & v : j["free"])
                result.free.push_back(variable_from_json(v));
        }
        if (j.contains("mso2")) {
            require(j["mso2"].is_boolean(), "mso2 must be a boolean");
            result.mso2 = j["mso2"].get<bool>();
        }
        if (j.contains("globals")) {
            require(j["globals"].is_array(), "globals must be an array");
            result.globals = j["globals"];
        }
        if (j.contains("locals")) {
            require(j["locals"].is_array(), "locals must be an array");
            result.locals = j["locals"];
        }
        return result;
    }

    auto build_instance(const ColoredGraph & g, const std::string & formula_text, const Sidecar & sidecar, bool force_mso2) -> Instance
    {
        bool mso2 = force_mso2 || sidecar.mso2;
        for (auto & v : sidecar.free)
            mso2 = mso2 || v.sort == Sort::EdgeSet;
        Instance inst{ parse(formula_text, sidecar.free, ParseOptions{ mso2 }), {}, {} };
        int s = inst.formula.free_count(), n = g.vertex_count();

        for (auto & c : sidecar.globals) {
            require(c.is_object() && c.contains("coeffs") && c.contains("bound"), "globals need coeffs and bound");
            require(c["coeffs"].is_array() && c["bound"].is_number_integer(), "malformed global constraint");
            GlobalConstraint gc;
            for (auto & a : c["coeffs"]) {
                require(a.is_number_integer(), "coefficients must be integers");
                gc.coeffs.push_back(a.get<std::int64_t>());
            }
            require(static_cast<int>(gc.coeffs.size()) == s, "global constraint needs one coefficient per free variable");
            gc.bound = c["bound"].get<std::int64_t>();
            inst.globals.push_back(gc);
        }

        if (! sidecar.locals.empty()) {
            inst.locals = LocalTable(n, s);
            for (auto & entry : sidecar.locals) {
                require(entry.is_object() && entry.contains("var") && entry["var"].is_string(), "local tables need a var name");
                auto name = entry["var"].get<std::string>();
                int index = -1;
                for (int i = 0 ; i < s ; ++i)
                    if (sidecar.free[i].name == name)
                        index = i;
                require(index >= 0, "local table for undeclared variable " + name);
                Interval fallback{ 0, n };
                if (entry.contains("default"))
                    fallback = interval_from_json(entry["default"], n);
                for (int v = 0 ; v < n ; ++v)
                    inst.locals.set(index, v, fallback);
                if (entry.contains("overrides")) {
                    require(entry["overrides"].is_object(), "overrides map vertex ids to intervals");
                    for (auto & [key, value] : entry["overrides"].items()) {
                        int v = -1;
                        try {
                            std::size_t used = 0;
                            v = std::stoi(key, &used);
                            require(used == key.size(), "bad vertex key " + key);
                        }
                        catch (const std::logic_error &) {
                            throw FormatError{ "bad vertex key " + key };
                        }
                        require(v >= 0 && v < n, "override for vertex " + key + " out of range");
                        inst.locals.set(index, v, interval_from_json(value, n));
                    }
                }
            }
        }
        effective_locals(g, inst);
        return inst;
    }

    auto witness_to_json(const ColoredGraph & g, const Formula & f, const std::optional<Assignment> & witness) -> Json
    {
        if (! witness)
            return Json{ { "satisfiable", false } };
        Json assignment = Json::object();
        auto free = f.free_variables();
        for (std::size_t i = 0 ; i < free.size() ; ++i) {
            auto & x = (*witness)[i];
            if (free[i].sort == Sort::EdgeSet) {
                Json edges = Json::array();
                for (int e : sorted_members(x))
                    edges.push_back(Json::array({ g.edges()[e].first, g.edges()[e].second }));
                assignment[free[i].name + "_edges"] = edges;
            }
            else
                assignment[free[i].name] = sorted_members(x);
        }
        return Json{ { "satisfiable", true }, { "assignment", assignment } };
    }

    auto witness_from_json(const ColoredGraph & g, const Formula & f, const Json & j) -> std::optional<Assignment>
    {
        require(j.is_object() && j.contains("satisfiable") && j["satisfiable"].is_boolean(), "witness needs a satisfiable flag");
        if (! j["satisfiable"].get<bool>())
            return std::nullopt;
        require(j.contains("assignment") && j["assignment"].is_object(), "witness needs an assignment object");
        auto & a = j["assignment"];
        Assignment result;
        int n = g.vertex_count();
        for (auto & v : f.free_variables()) {
            if (v.sort == Sort::EdgeSet) {
                auto key = v.name + "_edges";
                require(a.contains(key) && a[key].is_array(), "witness is missing " + key);
                VertexSet x(g.edge_count());
                for (auto & e : a[key]) {
                    require(e.is_array() && e.size() == 2, "edges are pairs [u, v]");
                    Vertex p = vertex_id(e[0], n, key), q = vertex_id(e[1], n, key);
                    require(p != q && g.adjacent(p, q), key + " names a non-edge");
                    x.set(g.edge_index(p, q));
                }
                result.push_back(x);
            }
            else {
                require(a.contains(v.name) && a[v.name].is_array(), "witness is missing " + v.name);
                VertexSet x(n);
                for (auto & u : a[v.name])
                    x.set(vertex_id(u, n, v.name));
                result.push_back(x);
            }
        }
        return result;
    }

    auto read_text(const fs::path & path) -> std::string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw IoError{ "cannot read " + path.string() };
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto read_json(const fs::path & path) -> Json
    {
        auto text = read_text(path);
        try {
            return Json::parse(text);
        }
        catch (const Json::parse_error & e) {
            throw FormatError{ path.string() + ": " + e.what() };
        }
    }

    auto write_text(const fs::path & path, const std::string & text) -> void
    {
        std::ofstream out(path, std::ios::binary);
        if (! out || ! (out << text) || ! out.flush())
            throw IoError{ "cannot write " + path.string() };
    }

    auto write_instance_dir(const fs::path & dir, const ColoredGraph & g, const Instance & inst) -> void
    {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec)
            throw IoError{ "cannot create " + dir.string() };
        write_text(dir / "graph.json", graph_to_json(g).dump() + "\n");
        write_text(dir / "formula.mso", print(inst.formula) + "\n");
        write_text(dir / "constraints.json", constraints_to_json(inst, g.vertex_count()).dump() + "\n");
    }

    auto read_instance_dir(const fs::path & dir) -> LoadedInstance
    {
        auto g = graph_from_json(read_json(dir / "graph.json"));
        auto sidecar = sidecar_from_json(read_json(dir / "constraints.json"));
        auto inst = build_instance(g, read_text(dir / "formula.mso"), sidecar);
        return LoadedInstance{ std::move(g), std::move(inst) };
    }
}
