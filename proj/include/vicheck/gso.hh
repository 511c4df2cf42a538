#pragma once

#include <vicheck/engine.hh>
#include <vicheck/instance.hh>

#include <vector>

namespace vicheck
{
    /// G' = G plus a vertex v_e = n + (index of e) adjacent to both ends of
    /// each edge e. The original edges stay; C_E = {v_e} is the last color.
    struct SubdivisionMap
    {
        ColoredGraph graph;
        int original_vertices = 0;
        std::vector<Edge> edges;
        int edge_color = 0;

        auto vertex_of_edge(int index) const -> Vertex { return original_vertices + index; }
        /// -1 for original vertices.
        auto edge_of_vertex(Vertex v) const -> int { return v >= original_vertices ? v - original_vertices : -1; }
    };

    auto subdivide(const ColoredGraph & g) -> SubdivisionMap;

    /// MSO1 formula over G' equivalent to f over G; edge_color is the index of C_E.
    auto rewrite_formula(const Formula & f, int edge_color) -> Formula;

    /// Instance over G' for inst over G.
    auto lift_constraints(const ColoredGraph & g, const Instance & inst, const SubdivisionMap & map) -> Instance;

    /// Native assignments store vertex sets over [0, n) and edge sets over the
    /// edge indices [0, m).
    auto lift_assignment(const Formula & f, const SubdivisionMap & map, const Assignment & native) -> Assignment;
    auto lower_assignment(const Formula & f, const SubdivisionMap & map, const Assignment & lifted) -> Assignment;

    struct GsoResult
    {
        SolveResult lifted;
        std::optional<Assignment> witness;

        auto satisfiable() const -> bool { return witness.has_value(); }
    };

    auto gso_model_check(const ColoredGraph & g, const Instance & inst, const SolveOptions & options = {}) -> GsoResult;
}
