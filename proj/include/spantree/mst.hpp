#pragma once

#include <cstdint>
#include <vector>

#include "spantree/grid.hpp"
#include "spantree/rng.hpp"
#include "spantree/ust.hpp"

namespace spantree {

/* One value in [0,1) per edge index.  Comparisons go through call_less, which
 * breaks value ties by edge index, so the induced order is always strict. */
struct CallNumbers {
    std::vector<double> values;
};

CallNumbers draw_call_numbers(const RegionGraph& g, Rng& rng);

inline bool call_less(const CallNumbers& u, EdgeId a, EdgeId b) {
    return u.values[a] != u.values[b] ? u.values[a] < u.values[b] : a < b;
}

// Edge ids sorted ascending by call order.
std::vector<EdgeId> call_order(const CallNumbers& u);

// Unique minimum spanning tree under u; throws on a disconnected graph.
SpanningTree kruskal_mst(const RegionGraph& g, const CallNumbers& u);

// Growth from root by repeatedly adjoining the cheapest non-cycle frontier
// edge; the edge set equals kruskal_mst(g, u) for every root.
SpanningTree invasion_tree(const RegionGraph& g, const CallNumbers& u, VertexId root);

// {e : u_e < p}, ascending by id.
std::vector<EdgeId> occupied_subgraph(const RegionGraph& g, const CallNumbers& u, double p);

/* Vacant edges whose endpoints are not already joined by strictly cheaper
 * edges; empty exactly when t is the minimum spanning tree. */
struct VacancyReport {
    std::vector<EdgeId> violations;
    bool ok() const { return violations.empty(); }
};
VacancyReport verify_vacancy_cycle_property(const RegionGraph& g, const CallNumbers& u,
                                            const SpanningTree& t);

/* Mismatch between the duals of the vacant edges and the minimum tree of the
 * dual graph under reversed call numbers; both lists empty when they agree. */
struct DualMstReport {
    std::vector<EdgeId> missing; // vacant edges whose dual the dual tree lacks
    std::vector<EdgeId> extra;   // occupied edges whose dual the dual tree contains
    bool ok() const { return missing.empty() && extra.empty(); }
};
DualMstReport dual_mst_check(const RegionGraph& g, const CallNumbers& u);
DualMstReport dual_mst_check(const RegionGraph& g, const CallNumbers& u, const PlanarDual& d);

/* Subgraph induced by a vertex mask.  With Boundary::Wired every edge leaving
 * the mask collapses onto one boundary vertex (created only when such edges
 * exist) and keeps its source length; with Boundary::Free those edges are
 * dropped.  A kept vertex without a coordinate (the wired vertex of g) gets a
 * synthetic position outside the bounding box. */
struct SubgraphMap {
    RegionGraph graph;
    std::vector<VertexId> source_vertex; // restricted id -> id in g (boundary vertex absent)
    std::vector<EdgeId> source_edge;     // restricted id -> id in g
    std::vector<EdgeId> image_edge;      // id in g -> restricted id, -1 where dropped
};
SubgraphMap restrict_region(const RegionGraph& g, const std::vector<char>& inside, Boundary bc);

// Call numbers pulled back through source_edge.
CallNumbers restrict_calls(const CallNumbers& u, const SubgraphMap& sub);

std::vector<char> inside_rect(const RegionGraph& g, const Rect& rect);    // closed containment
std::vector<char> inside_circle(const RegionGraph& g, const Circle& cut); // open disc

/* Containment of the wired and free subregion trees around the full tree
 * under shared call numbers, checked on edges with both endpoints strictly
 * inside sub.  Throws when sub is not contained in the graph region. */
struct BracketingReport {
    std::vector<EdgeId> wired_violations; // wired-tree interior edges absent from the full tree
    std::vector<EdgeId> free_violations;  // full-tree interior edges absent from the free tree
    bool ok() const { return wired_violations.empty() && free_violations.empty(); }
};
BracketingReport bracketing_check(const RegionGraph& g, const CallNumbers& u, const Rect& sub);

/* Factor trees grown from disjoint call-number ranges after cutting along a
 * circle: free inside, wired outside.  The free factor must contain every
 * full-tree edge inside the cut and the full tree must contain every wired
 * factor edge outside it. */
struct FactorizationReport {
    std::vector<EdgeId> free_violations;  // full-tree edges inside the cut the free factor lacks
    std::vector<EdgeId> wired_violations; // wired-factor edges outside the cut the full tree lacks
    bool disjoint_calls = true;
    bool ok() const {
        return free_violations.empty() && wired_violations.empty() && disjoint_calls;
    }
};
FactorizationReport fw_factorization_sample(const RegionGraph& g, const CallNumbers& u,
                                            const Circle& cut);

} // namespace spantree
