#pragma once

#include <cstdint>
#include <vector>

#include "spantree/grid.hpp"
#include "spantree/mst.hpp"
#include "spantree/ust.hpp"

namespace spantree {

enum class Disjointness { VertexDisjoint };

/* Maximum family of pairwise vertex-disjoint source-to-sink paths inside an
 * edge subset.  The wired vertex (when present) is exempt from the capacity:
 * it merges a whole boundary, so curves through it stay disjoint. */
struct CrossingQuery {
    const RegionGraph* graph = nullptr;
    std::vector<EdgeId> edge_set;
    std::vector<VertexId> sources;
    std::vector<VertexId> sinks;
    Disjointness disjointness = Disjointness::VertexDisjoint;
};

// Menger count via unit-vertex-capacity max flow; 0 when no path exists.
// Throws when sources and sinks intersect.
int max_disjoint_crossings(const CrossingQuery& q);

/* Vertices bounding a shell.  On a lattice a vertex is on a boundary when one
 * of its four lattice neighbor positions falls off that side.  On point-set
 * graphs (delta == 0) a vertex abuts the hole when an incident real edge dips
 * into the open inner disc, and abuts the outside when a real edge ends
 * beyond R or the vertex lies on the convex hull.  A wired side is
 * represented by the merged vertex alone. */
struct AnnulusBoundarySets {
    std::vector<VertexId> inner;
    std::vector<VertexId> outer;
};
AnnulusBoundarySets annulus_boundary_sets(const RegionGraph& g, const AnnulusSpec& spec);

// Edges of the set with both endpoints in the closed shell; edges into the
// wired vertex stay when the spec declares that side wired.
std::vector<EdgeId> edges_within_shell(const RegionGraph& g, const std::vector<EdgeId>& edge_set,
                                       const AnnulusSpec& spec);

/* Disjoint tree paths from the inner boundary to the outer one, using tree
 * edges inside the shell only.  A vertex on both boundaries is one traversal
 * by itself and is retired from further paths.  Requires spec.r > 0. */
int tree_traversal_count(const SpanningTree& t, const AnnulusSpec& spec);

// Same count for an arbitrary edge configuration (occupied edges, droplets).
int percolation_crossing_count(const RegionGraph& g, const std::vector<EdgeId>& edge_set,
                               const AnnulusSpec& spec);

enum class Axis { X, Y };

// Disjoint crossings of a rectangle between its two sides normal to axis.
// The merged vertex never participates: rectangle sides are vertex rows.
int percolation_crossing_count(const RegionGraph& g, const std::vector<EdgeId>& edge_set,
                               const Rect& rect, Axis axis);

/* Disjoint annulus traversals by semipaths: a path in the dual layer (edges
 * with u >= 1/2, between faces) followed by a path in the primal layer (edges
 * with u < 1/2), joined by a one-way jump from a face to a corner of one of
 * its boundary edges.  Either half may be empty.  Traversals run from the
 * free side (its rim vertices, or the dual merged face inside it) to the
 * wired side (the merged vertex, or the dual faces along it).  Requires a
 * mixed-boundary annulus graph with a planar dual. */
int semipath_crossing_count(const RegionGraph& g, const CallNumbers& u);
int semipath_crossing_count(const RegionGraph& g, const CallNumbers& u, const PlanarDual& d);

// Edges whose straight segment jumps the whole shell: one endpoint in the
// open hole, the other beyond the outer radius.  Each is one traversal that
// the vertex-based counts above cannot see.
std::vector<EdgeId> long_edge_crossings(const RegionGraph& g, const std::vector<EdgeId>& edge_set,
                                        const AnnulusSpec& spec);

} // namespace spantree
