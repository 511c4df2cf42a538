#pragma once

#include <vicheck/graph.hh>
#include <vicheck/instance.hh>

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace vicheck
{
    /// Malformed file contents.
    class FormatError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /// Files that cannot be read or written.
    class IoError : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    using Json = nlohmann::ordered_json;

    auto graph_from_json(const Json & j) -> ColoredGraph;
    auto graph_to_json(const ColoredGraph & g) -> Json;

    /// Free variables are written as names, with an "F:" prefix for edge sets.
    auto variable_to_json(const Variable & v) -> Json;
    auto variable_from_json(const Json & j) -> Variable;

    /// {"free": [...], "mso2": bool, "globals": [...], "locals": [...]}.
    /// In local tables -1 stands for n.
    auto constraints_to_json(const Instance & inst, int n) -> Json;

    struct Sidecar
    {
        std::vector<Variable> free;
        bool mso2 = false;
        Json globals = Json::array();
        Json locals = Json::array();
    };

    auto sidecar_from_json(const Json & j) -> Sidecar;

    /// Parses the formula against the sidecar and checks every arity.
    auto build_instance(const ColoredGraph & g, const std::string & formula_text, const Sidecar & sidecar, bool force_mso2 = false) -> Instance;

    /// {"satisfiable": false} or {"satisfiable": true, "assignment": {...}};
    /// edge-set variables appear as "<name>_edges" with endpoint pairs.
    auto witness_to_json(const ColoredGraph & g, const Formula & f, const std::optional<Assignment> & witness) -> Json;
    auto witness_from_json(const ColoredGraph & g, const Formula & f, const Json & j) -> std::optional<Assignment>;

    auto read_text(const std::filesystem::path & path) -> std::string;
    auto read_json(const std::filesystem::path & path) -> Json;
    auto write_text(const std::filesystem::path & path, const std::string & text) -> void;

    /// graph.json, formula.mso and constraints.json inside dir.
    auto write_instance_dir(const std::filesystem::path & dir, const ColoredGraph & g, const Instance & inst) -> void;

    struct LoadedInstance
    {
        ColoredGraph graph;
        Instance instance;
    };

    auto read_instance_dir(const std::filesystem::path & dir) -> LoadedInstance;
}
