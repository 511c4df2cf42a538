#pragma once

#include <vicheck/engine.hh>
#include <vicheck/graph.hh>
#include <vicheck/instance.hh>
#include <vicheck/problem_kinds.hh>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace vicheck
{
    class ProblemError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    struct FairVertexCover
    {
        int size_bound = 0;
        int fairness = 0;
    };

    struct DefectiveColoring
    {
        int colors = 1;
        int defect = 0;
    };

    struct Alliance
    {
        AllianceKind kind = AllianceKind::Defensive;
        int r = 0;
        bool global = false;
        int size_bound = 0;
    };

    struct EquitablePartition
    {
        int parts = 1;
        PartProperty property = PartProperty::Independent;
    };

    struct Capacitated
    {
        CapacitatedKind kind = CapacitatedKind::VertexCover;
        std::vector<int> capacities;
        int size_bound = 0;
    };

    struct BoundedDegreeDeletion
    {
        int budget = 0;
        int degree = 0;
    };

    /// phi has free variables A (vertex set) then B (edge set).
    struct CapacitatedMso2
    {
        Formula phi;
        std::vector<int> capacities;
        int size_bound = 0;
    };

    using ProblemSpec = std::variant<FairVertexCover, DefectiveColoring, Alliance, EquitablePartition, Capacitated,
          BoundedDegreeDeletion, CapacitatedMso2>;

    auto problem_name(const ProblemSpec & spec) -> std::string;

    struct EncodedInstance
    {
        ColoredGraph graph;
        Instance instance;
    };

    auto encode(const ProblemSpec & spec, const ColoredGraph & g) -> EncodedInstance;

    /// Runs the engine, or the subdivision reduction for MSO2 instances.
    /// Witness sets use edge indices for edge-sorted variables.
    auto solve_encoded(const EncodedInstance & encoded, const SolveOptions & options = {}) -> std::optional<Assignment>;

    /// Every edge e = (u,v) becomes the path u - a_e - b_e - v with
    /// a_e = n + 2e and b_e = n + 2e + 1; the halves form a new last color.
    struct HalfEdgeGraph
    {
        ColoredGraph graph;
        int original_vertices = 0;
        std::vector<Edge> edges;
        int half_color = 0;

        auto half(int edge, int side) const -> Vertex { return original_vertices + 2 * edge + side; }
    };

    auto half_edge_graph(const ColoredGraph & g, bool keep_edges) -> HalfEdgeGraph;

    struct EcpInstance
    {
        ColoredGraph graph;
        int parts = 0;
        std::int64_t bin = 0;
        /// The item sum is not divisible by t, so the answer is no.
        bool trivially_no = false;
    };

    /// Items become u_1..u_n (vertices 0..n-1), bins w_1..w_t (n..n+t-1),
    /// then the pendants of each u_i and of each w_j in that order.
    auto gen_ecp_hardness(int t, const std::vector<int> & items) -> EcpInstance;

    auto unary_bin_packing(int t, const std::vector<int> & items) -> bool;
}
