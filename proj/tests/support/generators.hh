#pragma once

#include <vicheck/graph.hh>
#include <vicheck/ilp.hh>
#include <vicheck/instance.hh>

#include <random>
#include <vector>

namespace vicheck::testing
{
    using Rng = std::mt19937_64;

    auto random_graph(Rng & rng, int n, double density, int colors = 0) -> ColoredGraph;

    /// A relabelled copy: vertex v becomes perm[v].
    auto relabel(const ColoredGraph & g, const std::vector<Vertex> & perm) -> ColoredGraph;
    auto random_permutation(Rng & rng, int n) -> std::vector<Vertex>;

    /// Graph made of disjoint copies of small random blocks hanging off a
    /// small core, so that vertex integrity stays low.
    auto random_low_vi_graph(Rng & rng, int core, int blocks, int block_size, int colors = 0) -> ColoredGraph;

    /// One uncolored graph per isomorphism class on n vertices (n <= 6).
    auto all_graphs(int n) -> std::vector<ColoredGraph>;

    struct FormulaRecipe
    {
        std::vector<Variable> free;
        int quantifiers = 2;
        int colors = 0;
        int globals = 0;
        bool mso2 = false;
        int max_depth = 5;
    };

    auto random_formula(Rng & rng, const FormulaRecipe & recipe) -> Formula;

    /// Free vertex sets X1..Xs (or edge sets when mso2 picks them), random
    /// globals and random interval locals.
    auto random_instance(Rng & rng, const ColoredGraph & g, int s, int quantifiers, int globals, bool mso2, double local_density = 0.3) -> Instance;

    auto random_assignment(Rng & rng, int n, int s) -> Assignment;

    auto random_system(Rng & rng, int dimension, std::int64_t max_volume) -> LinearSystem;

    /// Walks the whole box; all variables must be bounded.
    auto box_feasible(const LinearSystem & sys) -> bool;
}
