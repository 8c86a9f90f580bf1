#include "spantree/fractal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace spantree {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Inverse stereographic projection onto the unit sphere, north pole = infinity.
std::array<double, 3> to_sphere(ExtPoint u) {
    if (u.infinite) return {0.0, 0.0, 1.0};
    double s = 1.0 + norm2(u.p);
    return {2.0 * u.p.x / s, 2.0 * u.p.y / s, (norm2(u.p) - 1.0) / s};
}

} // namespace

double sphere_metric(ExtPoint u, ExtPoint v) {
    std::array<double, 3> a = to_sphere(u), b = to_sphere(v);
    double d = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    double cx = a[1] * b[2] - a[2] * b[1];
    double cy = a[2] * b[0] - a[0] * b[2];
    double cz = a[0] * b[1] - a[1] * b[0];
    double c = std::sqrt(cx * cx + cy * cy + cz * cz);
    return 0.5 * std::atan2(c, d);
}

double sphere_metric(Vec2 u, Vec2 v) { return sphere_metric(ext(u), ext(v)); }

namespace {

double frechet_oriented(const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
    std::size_t m = q.size();
    std::vector<double> prev(m), cur(m);
    prev[0] = sphere_metric(p[0], q[0]);
    for (std::size_t j = 1; j < m; ++j) prev[j] = std::max(prev[j - 1], sphere_metric(p[0], q[j]));
    for (std::size_t i = 1; i < p.size(); ++i) {
        cur[0] = std::max(prev[0], sphere_metric(p[i], q[0]));
        for (std::size_t j = 1; j < m; ++j)
            cur[j] = std::max(sphere_metric(p[i], q[j]),
                              std::min({prev[j], prev[j - 1], cur[j - 1]}));
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

} // namespace

double curve_distance(const Curve& c1, const Curve& c2) {
    if (c1.points.empty() || c2.points.empty()) throw std::invalid_argument("empty curve");
    std::vector<Vec2> rev(c2.points.rbegin(), c2.points.rend());
    return std::min(frechet_oriented(c1.points, c2.points), frechet_oriented(c1.points, rev));
}

std::vector<double> dyadic_scales(const std::vector<Vec2>& pts, double delta) {
    if (pts.empty()) throw std::invalid_argument("empty point set");
    if (delta <= 0.0) throw std::invalid_argument("delta must be positive");
    Vec2 lo = pts[0], hi = pts[0];
    for (Vec2 p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    double diam = dist(lo, hi);
    std::vector<double> scales;
    for (double side = diam / 8.0; side >= 4.0 * delta * (1.0 - 1e-12); side /= 2.0)
        scales.push_back(side);
    if (scales.size() < 4)
        throw std::invalid_argument("box-count fit range is narrower than four dyadic scales");
    return scales;
}

DimensionFit box_counting(const std::vector<Vec2>& pts, std::vector<double> scales) {
    if (pts.empty()) throw std::invalid_argument("empty point set");
    if (scales.size() < 4) throw std::invalid_argument("need at least four scales");
    std::sort(scales.begin(), scales.end(), std::greater<>());
    if (scales.back() <= 0.0) throw std::invalid_argument("scales must be positive");

    Vec2 lo = pts[0];
    for (Vec2 p : pts) lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};

    DimensionFit fit;
    fit.scales = scales;
    std::vector<double> xs, ys;
    std::unordered_set<std::uint64_t> cells;
    for (double side : scales) {
        cells.clear();
        for (Vec2 p : pts) {
            auto ix = static_cast<std::uint64_t>(std::floor((p.x - lo.x) / side));
            auto iy = static_cast<std::uint64_t>(std::floor((p.y - lo.y) / side));
            cells.insert((ix << 32) ^ (iy & 0xffffffffULL));
        }
        fit.counts.push_back(static_cast<std::int64_t>(cells.size()));
        xs.push_back(std::log(1.0 / side));
        ys.push_back(std::log(static_cast<double>(cells.size())));
    }
    LineFit line = fit_line(xs, ys);
    fit.slope = line.slope;
    fit.slope_stderr = line.slope_stderr;
    fit.fit_lo = scales.back();
    fit.fit_hi = scales.front();
    return fit;
}

double holder_modulus(const Curve& c, double alpha) {
    std::size_t n = c.points.size();
    if (n < 2) throw std::invalid_argument("curve shorter than two points");
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("alpha outside (0, 1]");
    double kappa = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double dt = static_cast<double>(j - i) / static_cast<double>(n - 1);
            double denom = (1.0 + norm2(c.points[i]) + norm2(c.points[j])) * std::pow(dt, alpha);
            kappa = std::max(kappa, dist(c.points[i], c.points[j]) / denom);
        }
    return kappa;
}

namespace {

/* Adjacency restricted to the tree edges, CSR over all graph vertices. */
struct TreeAdjacency {
    std::vector<std::int32_t> off;
    std::vector<VertexId> to;

    explicit TreeAdjacency(const SpanningTree& t) {
        const RegionGraph& g = *t.graph;
        std::int32_t n = g.vertex_count();
        off.assign(n + 1, 0);
        for (EdgeId e : t.tree_edges) {
            ++off[g.edges[e].a + 1];
            ++off[g.edges[e].b + 1];
        }
        for (std::int32_t v = 0; v < n; ++v) off[v + 1] += off[v];
        to.resize(off[n]);
        std::vector<std::int32_t> cursor(off.begin(), off.end() - 1);
        for (EdgeId e : t.tree_edges) {
            const auto& ed = g.edges[e];
            to[cursor[ed.a]++] = ed.b;
            to[cursor[ed.b]++] = ed.a;
        }
    }
};

/* Components of the tree minus v that leave the closed eps-disc around v.
 * Per-component search stops at the first far vertex; stamp marks visited
 * vertices for the current v only. */
std::int32_t far_components(const RegionGraph& g, const TreeAdjacency& adj, VertexId v,
                            double eps, std::vector<std::int32_t>& stamp,
                            std::vector<VertexId>& stack) {
    Vec2 home = g.coords[v];
    stamp[v] = v;
    std::int32_t far = 0;
    for (std::int32_t k = adj.off[v]; k < adj.off[v + 1]; ++k) {
        VertexId seed = adj.to[k];
        if (stamp[seed] == v) continue;
        stack.clear();
        stack.push_back(seed);
        stamp[seed] = v;
        bool reached = false;
        while (!stack.empty() && !reached) {
            VertexId u = stack.back();
            stack.pop_back();
            if (g.has_coord(u) && dist(g.coords[u], home) >= eps) {
                reached = true;
                break;
            }
            for (std::int32_t a = adj.off[u]; a < adj.off[u + 1]; ++a)
                if (stamp[adj.to[a]] != v) {
                    stamp[adj.to[a]] = v;
                    stack.push_back(adj.to[a]);
                }
        }
        if (reached) ++far;
    }
    return far;
}

} // namespace

std::int32_t branch_scale_degree(const SpanningTree& t, VertexId v, double eps) {
    const RegionGraph& g = *t.graph;
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("vertex id out of range");
    if (!g.has_coord(v)) throw std::invalid_argument("vertex has no position");
    TreeAdjacency adj(t);
    std::vector<std::int32_t> stamp(g.vertex_count(), -1);
    std::vector<VertexId> stack;
    return far_components(g, adj, v, eps, stamp, stack);
}

BranchingCensus branching_census(const SpanningTree& t, double eps, const Rect& window) {
    if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
    const RegionGraph& g = *t.graph;
    BranchingCensus census;
    census.eps = eps;
    census.window = {window.x0 + 2.0 * eps, window.y0 + 2.0 * eps, window.x1 - 2.0 * eps,
                     window.y1 - 2.0 * eps};
    if (census.window.x0 > census.window.x1 || census.window.y0 > census.window.y1)
        return census;

    TreeAdjacency adj(t);
    std::vector<std::int32_t> stamp(g.vertex_count(), -1);
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < static_cast<VertexId>(g.coords.size()); ++v) {
        if (adj.off[v + 1] - adj.off[v] < 3) continue;
        if (!census.window.contains(g.coords[v])) continue;
        std::int32_t deg = far_components(g, adj, v, eps, stamp, stack);
        if (deg >= 3) census.points.push_back({v, deg});
    }
    census.n_eps = static_cast<std::int64_t>(census.points.size());
    return census;
}

CircleCover cover_circle(double c, double sigma) {
    if (!(c > 0.0) || c >= 1.0) throw std::invalid_argument("cover radius outside (0, 1)");
    if (!(sigma >= 1.0)) throw std::invalid_argument("sigma below 1");

    CircleCover cover;
    cover.radius = c;
    cover.sigma = sigma;
    auto n = static_cast<std::int32_t>(std::ceil(kPi / (2.0 * std::asin(c / 2.0))));
    for (std::int32_t k = 0; k < n; ++k) {
        double phi = 2.0 * kPi * k / n;
        cover.centers.push_back({std::cos(phi), std::sin(phi)});
    }
    for (std::int32_t k = 0; k < n; ++k) {
        bool placed = false;
        for (auto& fam : cover.families) {
            bool fits = true;
            for (std::int32_t other : fam)
                if (dist(cover.centers[k], cover.centers[other]) < 2.0 * sigma * c) {
                    fits = false;
                    break;
                }
            if (fits) {
                fam.push_back(k);
                placed = true;
                break;
            }
        }
        if (!placed) cover.families.push_back({k});
    }
    return cover;
}

} // namespace spantree
