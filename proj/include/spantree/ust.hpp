#pragma once

#include <cstdint>
#include <vector>

#include "spantree/estimate.hpp"
#include "spantree/grid.hpp"
#include "spantree/rng.hpp"

namespace spantree {

/* Rooted spanning tree of a RegionGraph. parent[v] is the edge leading from v
 * toward the root (-1 at the root); tree_edges is sorted ascending. */
struct SpanningTree {
    const RegionGraph* graph = nullptr;
    std::vector<EdgeId> tree_edges;
    VertexId root = -1;
    std::vector<EdgeId> parent;

    // Other endpoint of parent[v].
    VertexId parent_vertex(VertexId v) const {
        const auto& e = graph->edges[parent[v]];
        return e.a == v ? e.b : e.a;
    }
};

// Rooted tree from a spanning acyclic edge set; parents point toward root.
SpanningTree assemble_tree(const RegionGraph& g, std::vector<EdgeId> edges, VertexId root);

// Chronological loop erasure on vertex ids: revisiting a retained vertex
// truncates the output back to its first retained occurrence.
std::vector<VertexId> loop_erase(const std::vector<VertexId>& walk,
                                 std::int32_t vertex_count);

// Same erasure on a polyline whose points identify vertices by exact equality.
Curve loop_erase(const Curve& walk);

// Uniform spanning tree via loop-erased random walks from successively
// lowest-index vertices. Steps are uniform over incident edges, so parallel
// edges carry proportional weight.
SpanningTree wilson_ust(const RegionGraph& g, VertexId root, Rng& rng);

// Uniform among spanning trees containing the forced edges (which must form a
// nonempty connected forest without cycles); equivalent to contracting them.
SpanningTree wilson_ust_conditioned(const RegionGraph& g,
                                    const std::vector<EdgeId>& forced, Rng& rng);

/* Winding experiment on the shell D(r,3r): a random walk starts at radius 2r
 * and runs until it reaches a vertex on either rim (failure) or its erased
 * trajectory closes a loop of full winding about the center (success). */
EstimateRecord estimate_choking_probability(double delta, double r, Rng& rng,
                                            std::int64_t n_samples);

} // namespace spantree
