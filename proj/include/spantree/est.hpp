#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "spantree/crossings.hpp"
#include "spantree/estimate.hpp"
#include "spantree/geometry.hpp"
#include "spantree/grid.hpp"
#include "spantree/mst.hpp"
#include "spantree/rng.hpp"

namespace spantree {

/* Poisson sample of intensity delta^-2 over a fixed region; delta is the
 * length unit every droplet radius below is measured in. */
struct PointSet {
    std::vector<Vec2> points;
    double delta = 1.0;

    double intensity() const { return 1.0 / (delta * delta); }
};

PointSet sample_poisson(const Rect& region, double delta, Rng& rng);
PointSet sample_poisson(const AnnulusSpec& region, double delta, Rng& rng);

// Sign of the turn a->b->c: +1 left, -1 right, 0 collinear.  Exact.
int orientation_sign(Vec2 a, Vec2 b, Vec2 c);

// Sign of d against the circle through a, b, c (counterclockwise): +1 strictly
// inside, -1 strictly outside, 0 cocircular.  Exact.
int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/* Delaunay triangulation.  Triangles are counterclockwise; neighbors[t][i] is
 * the triangle across the edge opposite corner i, -1 past the hull.  Edges
 * are the unique vertex pairs with a < b, sorted lexicographically; left is
 * the triangle holding the directed edge a->b, right the one holding b->a.
 * Cocircular ties are broken by a fixed index perturbation, so the result is
 * unique.  Collinear input (or fewer than 3 points) has no triangles and path
 * edges in coordinate order. */
struct Triangulation {
    struct EdgeRef {
        VertexId a = -1, b = -1;
        std::int32_t left = -1, right = -1;
    };

    std::vector<Vec2> points;
    std::vector<std::array<VertexId, 3>> triangles;
    std::vector<std::array<std::int32_t, 3>> neighbors;
    std::vector<Vec2> circumcenters; // one per triangle
    std::vector<EdgeRef> edges;
};

// Throws on duplicate points.
Triangulation delaunay_triangulation(const std::vector<Vec2>& points);

// Delaunay edges with Euclidean lengths; edge ids match tri.edges.
RegionGraph delaunay_graph(const Triangulation& tri);
RegionGraph delaunay_graph(const PointSet& pts);

/* Delaunay graph plus one wired edge per point, the shortest connection to a
 * wired part of the region boundary; wired edge ids follow the Delaunay ids
 * in point order.  The annulus overload wires the sides the spec marks Wired
 * (the inner side only when r > 0) and throws when neither side is. */
RegionGraph wired_delaunay_graph(const PointSet& pts, const Rect& region);
RegionGraph wired_delaunay_graph(const PointSet& pts, const AnnulusSpec& region);

// Edge lengths mapped monotonically into [0,1), so the minimum tree under
// these call numbers is the minimum-length tree.
CallNumbers length_calls(const RegionGraph& g);

// Minimum-length spanning tree of a Delaunay or wired Delaunay graph.
SpanningTree euclidean_mst(const RegionGraph& g);

/* Component label per point under the droplet relation dist < 2 p delta,
 * strict; labels are the smallest member index of each cluster. */
std::vector<std::int32_t> droplet_components(const PointSet& pts, double p);

/* Smallest droplet parameter beyond which a chain of radius-p*delta discs
 * links the two sides (walls of the rect along the axis, or the two rims of
 * the annulus); crossings exist exactly for p > threshold.  Infinite when no
 * chain exists at any p, e.g. for an empty point set. */
double droplet_crossing_threshold(const PointSet& pts, const Rect& region, Axis axis);
double droplet_crossing_threshold(const PointSet& pts, const AnnulusSpec& region);

bool droplet_crossing_exists(const PointSet& pts, double p, const Rect& region, Axis axis);
bool droplet_crossing_exists(const PointSet& pts, double p, const AnnulusSpec& region);

/* Whether a curve can cross the region while keeping distance >= p*delta
 * from every point: between the two walls of the rect along the given axis,
 * or from the inner rim of the annulus to the outer one.  Decided by planar
 * duality: the rect crossing is blocked exactly by a perpendicular droplet
 * chain, the annulus crossing by a droplet cycle winding around the hole. */
bool vacant_crossing_exists(const PointSet& pts, double p, const Rect& region, Axis axis);
bool vacant_crossing_exists(const PointSet& pts, double p, const AnnulusSpec& region);

/* Clearance between a tree edge and the interior of a dual path.  The path
 * is a list of interior Delaunay edge ids whose duals (segments between the
 * circumcenters of the flanking triangles) form a connected Voronoi walk; the
 * first and last segments are terminal and excluded from the clearance.  The
 * separation bound p*delta/2 applies when the path is vacant, i.e. every
 * listed edge spans at least 2 p delta. */
struct SeparationReport {
    bool path_vacant = false;
    double clearance = 0.0; // min distance from edge b to a non-terminal segment
    double required = 0.0;  // p * delta / 2
    std::int32_t worst_segment = -1;

    bool ok() const { return !path_vacant || clearance >= required; }
};

SeparationReport check_vacant_separation(const Triangulation& tri, const SpanningTree& tree,
                                         EdgeId b, const std::vector<EdgeId>& dual_path,
                                         double p, double delta);

/* Bisection of the wall-to-wall droplet crossing frequency toward 1/2 on one
 * shared batch of configurations; each configuration contributes its exact
 * crossing threshold, so the trace is monotone and the answer is the sample
 * median with an order-statistic interval. */
struct PcTracePoint {
    double p = 0.0;
    std::int64_t crossings = 0;
};

EstimateRecord estimate_droplet_pc(const Rect& region, double delta, std::int64_t n_samples,
                                   Rng& rng, std::vector<PcTracePoint>* trace = nullptr);

} // namespace spantree
