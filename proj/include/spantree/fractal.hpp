#pragma once

#include <cstdint>
#include <vector>

#include "spantree/geometry.hpp"
#include "spantree/stats.hpp"
#include "spantree/ust.hpp"

namespace spantree {

/* Point of the one-point compactification of the plane. */
struct ExtPoint {
    Vec2 p;
    bool infinite = false;
};

inline ExtPoint ext(Vec2 p) { return {p, false}; }
inline ExtPoint ext_infinity() { return {{0.0, 0.0}, true}; }

/* Geodesic distance for the conformal metric |dx| / (1 + |x|^2) on the
 * compactified plane: half the angle between the stereographic images on the
 * unit sphere.  Symmetric, triangle inequality, zero iff equal. */
double sphere_metric(ExtPoint u, ExtPoint v);
double sphere_metric(Vec2 u, Vec2 v);

/* Discrete Frechet distance between polylines under sphere_metric, minimized
 * over the traversal orientation of c2.  Throws std::invalid_argument on an
 * empty curve. */
double curve_distance(const Curve& c1, const Curve& c2);

/* Log-log fit of box occupancy against scale. */
struct DimensionFit {
    std::vector<double> scales;       // box sides, descending
    std::vector<std::int64_t> counts; // occupied boxes per scale
    double slope = 0.0;               // dimension estimate
    double slope_stderr = 0.0;
    double fit_lo = 0.0; // smallest box side used
    double fit_hi = 0.0; // largest box side used
};

/* Dyadic box sides within [4 * delta, diam / 8], coarsest first, where diam
 * is the bounding-box diagonal.  Throws when the range holds fewer than four
 * scales. */
std::vector<double> dyadic_scales(const std::vector<Vec2>& pts, double delta);

/* Occupied-cell counts on grids anchored at the bounding-box corner, one per
 * scale, fitted as log N against log(1 / side).  Needs >= 4 scales. */
DimensionFit box_counting(const std::vector<Vec2>& pts, std::vector<double> scales);

/* Largest quotient |g(t) - g(t')| / ((1 + |g(t)|^2 + |g(t')|^2) * |t - t'|^alpha)
 * over vertex pairs, with t the vertex index scaled to [0, 1].  alpha in
 * (0, 1]; curves shorter than two points are rejected. */
double holder_modulus(const Curve& c, double alpha);

/* Number of components of t minus v holding a vertex at Euclidean distance
 * >= eps from v.  The wired vertex carries no position and never counts as
 * far. */
std::int32_t branch_scale_degree(const SpanningTree& t, VertexId v, double eps);

struct BranchPoint {
    VertexId v = -1;
    std::int32_t degree = 0;
};

/* Branching points of scale eps: vertices with branch_scale_degree >= 3
 * inside the window shrunk by a 2 * eps margin. */
struct BranchingCensus {
    double eps = 0.0;
    Rect window; // after the margin shrink
    std::vector<BranchPoint> points;
    std::int64_t n_eps = 0;
};

BranchingCensus branching_census(const SpanningTree& t, double eps, const Rect& window);

/* Covering of the unit circle by radius-c balls centered on it, partitioned
 * into families whose sigma-dilated balls are pairwise disjoint. */
struct CircleCover {
    std::vector<Vec2> centers;
    double radius = 0.0; // c
    double sigma = 1.0;
    std::vector<std::vector<std::int32_t>> families; // indices into centers
};

/* Evenly spaced centers at angular spacing <= 4 * asin(c / 2) (the tight
 * coverage rule for radius-c balls), partitioned greedily so centers within
 * one family are >= 2 * sigma * c apart.  Requires 0 < c < 1 and sigma >= 1. */
CircleCover cover_circle(double c, double sigma);

} // namespace spantree
