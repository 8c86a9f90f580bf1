#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "spantree/est.hpp"

namespace spantree {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

void require_shell(const AnnulusSpec& region) {
    if (!(region.R > 0.0) || region.r < 0.0 || !(region.R >= region.r))
        throw std::invalid_argument("annulus radii are not ordered");
}

struct DisjointSets {
    std::vector<std::int32_t> parent;

    explicit DisjointSets(std::int32_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::int32_t find(std::int32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    // The smaller root absorbs, so every root is the least member of its set.
    bool unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

// Unordered pairs at distance strictly below reach, via a bucket grid; key
// collisions only widen a bucket, the distance test keeps the result exact.
std::vector<std::pair<std::int32_t, std::int32_t>> close_pairs(const std::vector<Vec2>& pts,
                                                               double reach) {
    std::vector<std::pair<std::int32_t, std::int32_t>> out;
    std::int32_t n = static_cast<std::int32_t>(pts.size());
    if (!(reach > 0.0) || n < 2) return out;
    auto cell = [&](double v) { return static_cast<std::int64_t>(std::floor(v / reach)); };
    auto key = [](std::int64_t ix, std::int64_t iy) {
        return (static_cast<std::uint64_t>(ix) << 32) ^
               (static_cast<std::uint64_t>(iy) & 0xffffffffULL);
    };
    std::unordered_map<std::uint64_t, std::vector<std::int32_t>> grid;
    grid.reserve(static_cast<std::size_t>(n) * 2);
    for (std::int32_t i = 0; i < n; ++i) grid[key(cell(pts[i].x), cell(pts[i].y))].push_back(i);
    double r2 = reach * reach;
    for (std::int32_t i = 0; i < n; ++i) {
        std::int64_t ix = cell(pts[i].x), iy = cell(pts[i].y);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = grid.find(key(ix + dx, iy + dy));
                if (it == grid.end()) continue;
                for (std::int32_t j : it->second)
                    if (j > i && dist2(pts[i], pts[j]) < r2) out.push_back({i, j});
            }
    }
    return out;
}

/* Least achievable maximum over a chain of links joining the two walls; the
 * walls are virtual nodes n and n+1 with per-point attachment values, pairs
 * cost their distance in units of one droplet diameter. */
double bottleneck_threshold(const std::vector<Vec2>& pts, double delta,
                            const std::vector<double>& src_wall,
                            const std::vector<double>& dst_wall) {
    std::int32_t n = static_cast<std::int32_t>(pts.size());
    if (n == 0) return kInf;
    struct Link {
        double v;
        std::int32_t a, b;
    };
    std::vector<Link> links;
    links.reserve(static_cast<std::size_t>(n) * (n - 1) / 2 + 2 * n);
    for (std::int32_t i = 0; i < n; ++i)
        for (std::int32_t j = i + 1; j < n; ++j)
            links.push_back({dist(pts[i], pts[j]) / (2.0 * delta), i, j});
    for (std::int32_t i = 0; i < n; ++i) {
        links.push_back({src_wall[i], n, i});
        links.push_back({dst_wall[i], i, n + 1});
    }
    std::sort(links.begin(), links.end(), [](const Link& x, const Link& y) { return x.v < y.v; });
    DisjointSets uf(n + 2);
    for (const Link& l : links) {
        uf.unite(l.a, l.b);
        if (uf.find(n) == uf.find(n + 1)) return l.v;
    }
    return kInf;
}

std::vector<double> center_distances(const PointSet& pts, const AnnulusSpec& region) {
    std::vector<double> d(pts.points.size());
    for (std::size_t i = 0; i < pts.points.size(); ++i)
        d[i] = dist(pts.points[i], region.center);
    return d;
}

RegionGraph finish_graph(RegionGraph g, bool wired) {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
    for (std::size_t i = 0; i < g.coords.size(); ++i) {
        if (i == 0) {
            x0 = x1 = g.coords[i].x;
            y0 = y1 = g.coords[i].y;
        }
        x0 = std::min(x0, g.coords[i].x);
        x1 = std::max(x1, g.coords[i].x);
        y0 = std::min(y0, g.coords[i].y);
        y1 = std::max(y1, g.coords[i].y);
    }
    g.anchor = {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
    g.delta = 0.0;
    g.finalize(wired);
    return g;
}

} // namespace

PointSet sample_poisson(const Rect& region, double delta, Rng& rng) {
    require_positive(delta, "delta");
    if (region.width() < 0.0 || region.height() < 0.0)
        throw std::invalid_argument("rectangle has negative extent");
    PointSet out;
    out.delta = delta;
    std::int64_t n = rng.next_poisson(region.area() / (delta * delta));
    out.points.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k)
        out.points.push_back({region.x0 + region.width() * rng.next_double(),
                              region.y0 + region.height() * rng.next_double()});
    return out;
}

PointSet sample_poisson(const AnnulusSpec& region, double delta, Rng& rng) {
    require_positive(delta, "delta");
    require_shell(region);
    PointSet out;
    out.delta = delta;
    double area = kPi * (region.R * region.R - region.r * region.r);
    std::int64_t n = rng.next_poisson(area / (delta * delta));
    out.points.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        // Radius by inverse transform, so the density is uniform over the shell.
        double u = rng.next_double();
        double rad = std::sqrt(region.r * region.r +
                               (region.R * region.R - region.r * region.r) * u);
        double ang = 2.0 * kPi * rng.next_double();
        out.points.push_back(
            {region.center.x + rad * std::cos(ang), region.center.y + rad * std::sin(ang)});
    }
    return out;
}

RegionGraph delaunay_graph(const Triangulation& tri) {
    RegionGraph g;
    g.coords = tri.points;
    g.edges.reserve(tri.edges.size());
    for (const auto& er : tri.edges)
        g.edges.push_back(
            {er.a, er.b, dist(tri.points[er.a], tri.points[er.b]), tri.points[er.b]});
    return finish_graph(std::move(g), false);
}

RegionGraph delaunay_graph(const PointSet& pts) {
    return delaunay_graph(delaunay_triangulation(pts.points));
}

RegionGraph wired_delaunay_graph(const PointSet& pts, const Rect& region) {
    for (const Vec2& q : pts.points)
        if (!region.contains(q)) throw std::invalid_argument("point outside the region");
    RegionGraph g;
    {
        RegionGraph base = delaunay_graph(pts);
        g.coords = std::move(base.coords);
        g.edges = std::move(base.edges);
    }
    VertexId hub = static_cast<VertexId>(pts.points.size());
    for (std::size_t i = 0; i < pts.points.size(); ++i) {
        Vec2 q = pts.points[i];
        std::array<double, 4> gaps{q.x - region.x0, region.x1 - q.x, q.y - region.y0,
                                   region.y1 - q.y};
        std::array<Vec2, 4> feet{Vec2{region.x0, q.y}, Vec2{region.x1, q.y},
                                 Vec2{q.x, region.y0}, Vec2{q.x, region.y1}};
        int best = 0;
        for (int s = 1; s < 4; ++s)
            if (gaps[s] < gaps[best]) best = s;
        g.edges.push_back({static_cast<VertexId>(i), hub, gaps[best], feet[best]});
    }
    return finish_graph(std::move(g), true);
}

RegionGraph wired_delaunay_graph(const PointSet& pts, const AnnulusSpec& region) {
    require_shell(region);
    bool inner = region.inner == Boundary::Wired && region.r > 0.0;
    bool outer = region.outer == Boundary::Wired;
    if (!inner && !outer) throw std::invalid_argument("region has no wired side");
    for (const Vec2& q : pts.points)
        if (!region.in_shell(q)) throw std::invalid_argument("point outside the region");
    RegionGraph g;
    {
        RegionGraph base = delaunay_graph(pts);
        g.coords = std::move(base.coords);
        g.edges = std::move(base.edges);
    }
    VertexId hub = static_cast<VertexId>(pts.points.size());
    for (std::size_t i = 0; i < pts.points.size(); ++i) {
        Vec2 q = pts.points[i];
        double d = dist(q, region.center);
        Vec2 dir = d > 0.0 ? (1.0 / d) * (q - region.center) : Vec2{1.0, 0.0};
        double len = kInf;
        Vec2 tip;
        if (inner && d - region.r < len) {
            len = d - region.r;
            tip = region.center + region.r * dir;
        }
        if (outer && region.R - d < len) {
            len = region.R - d;
            tip = region.center + region.R * dir;
        }
        g.edges.push_back({static_cast<VertexId>(i), hub, len, tip});
    }
    g.annulus = region;
    return finish_graph(std::move(g), true);
}

CallNumbers length_calls(const RegionGraph& g) {
    CallNumbers u;
    u.values.reserve(g.edges.size());
    // len / (1 + len) is strictly increasing, so Kruskal order is preserved.
    for (const auto& e : g.edges) u.values.push_back(e.length / (1.0 + e.length));
    return u;
}

SpanningTree euclidean_mst(const RegionGraph& g) { return kruskal_mst(g, length_calls(g)); }

std::vector<std::int32_t> droplet_components(const PointSet& pts, double p) {
    require_positive(p, "p");
    require_positive(pts.delta, "delta");
    std::int32_t n = static_cast<std::int32_t>(pts.points.size());
    DisjointSets uf(n);
    for (const auto& [i, j] : close_pairs(pts.points, 2.0 * p * pts.delta)) uf.unite(i, j);
    std::vector<std::int32_t> label(n);
    for (std::int32_t i = 0; i < n; ++i) label[i] = uf.find(i);
    return label;
}

double droplet_crossing_threshold(const PointSet& pts, const Rect& region, Axis axis) {
    require_positive(pts.delta, "delta");
    std::size_t n = pts.points.size();
    std::vector<double> src(n), dst(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 q = pts.points[i];
        if (axis == Axis::X) {
            src[i] = (q.x - region.x0) / pts.delta;
            dst[i] = (region.x1 - q.x) / pts.delta;
        } else {
            src[i] = (q.y - region.y0) / pts.delta;
            dst[i] = (region.y1 - q.y) / pts.delta;
        }
    }
    return bottleneck_threshold(pts.points, pts.delta, src, dst);
}

double droplet_crossing_threshold(const PointSet& pts, const AnnulusSpec& region) {
    require_positive(pts.delta, "delta");
    require_shell(region);
    std::vector<double> d = center_distances(pts, region);
    std::vector<double> src(d.size()), dst(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        src[i] = (d[i] - region.r) / pts.delta;
        dst[i] = (region.R - d[i]) / pts.delta;
    }
    return bottleneck_threshold(pts.points, pts.delta, src, dst);
}

bool droplet_crossing_exists(const PointSet& pts, double p, const Rect& region, Axis axis) {
    require_positive(p, "p");
    return p > droplet_crossing_threshold(pts, region, axis);
}

bool droplet_crossing_exists(const PointSet& pts, double p, const AnnulusSpec& region) {
    require_positive(p, "p");
    return p > droplet_crossing_threshold(pts, region);
}

bool vacant_crossing_exists(const PointSet& pts, double p, const Rect& region, Axis axis) {
    require_positive(p, "p");
    // A path between two sides and a perpendicular droplet chain cannot
    // coexist in a convex region, and one of the two always exists.
    Axis other = axis == Axis::X ? Axis::Y : Axis::X;
    return !(p > droplet_crossing_threshold(pts, region, other));
}

bool vacant_crossing_exists(const PointSet& pts, double p, const AnnulusSpec& region) {
    require_positive(p, "p");
    require_positive(pts.delta, "delta");
    require_shell(region);
    double rad = p * pts.delta;
    if (region.r > 0.0 && rad > region.r)
        throw std::invalid_argument("droplet radius exceeds the inner radius");
    std::int32_t n = static_cast<std::int32_t>(pts.points.size());
    if (n == 0) return true;
    std::vector<double> d = center_distances(pts, region);
    for (std::int32_t i = 0; i < n; ++i) {
        if (region.r > 0.0 && d[i] < region.r * (1.0 - 1e-9))
            throw std::invalid_argument("point inside the inner hole");
        if (rad > d[i] + region.r) return false; // one disc swallows the inner rim
    }

    /* The crossing is blocked exactly when some droplet cluster holds a cycle
     * winding around the hole.  Cumulative angles along a search tree make
     * the winding of every fundamental cycle a near-exact multiple of 2 pi. */
    auto pairs = close_pairs(pts.points, 2.0 * rad);
    std::vector<std::vector<std::int32_t>> adj(n);
    for (const auto& [i, j] : pairs) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<double> theta(n, 0.0);
    std::vector<char> vis(n, 0);
    std::vector<std::int32_t> queue;
    for (std::int32_t root = 0; root < n; ++root) {
        if (vis[root]) continue;
        vis[root] = 1;
        queue.assign(1, root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::int32_t v = queue[head];
            for (std::int32_t w : adj[v]) {
                if (vis[w]) continue;
                vis[w] = 1;
                theta[w] =
                    theta[v] + angle_increment(region.center, pts.points[v], pts.points[w]);
                queue.push_back(w);
            }
        }
    }
    for (const auto& [i, j] : pairs) {
        double wind =
            theta[i] + angle_increment(region.center, pts.points[i], pts.points[j]) - theta[j];
        if (std::abs(wind) > 3.14) return false;
    }
    return true;
}

SeparationReport check_vacant_separation(const Triangulation& tri, const SpanningTree& tree,
                                         EdgeId b, const std::vector<EdgeId>& dual_path,
                                         double p, double delta) {
    require_positive(p, "p");
    require_positive(delta, "delta");
    EdgeId ne = static_cast<EdgeId>(tri.edges.size());
    if (b < 0 || b >= ne) throw std::invalid_argument("edge id out of range");
    if (dual_path.empty()) throw std::invalid_argument("dual path is empty");
    for (EdgeId e : dual_path) {
        if (e < 0 || e >= ne) throw std::invalid_argument("edge id out of range");
        if (tri.edges[e].left < 0 || tri.edges[e].right < 0)
            throw std::invalid_argument("dual path leaves the hull");
        if (e == b) throw std::invalid_argument("dual path contains the dual of the edge");
    }
    for (std::size_t i = 1; i < dual_path.size(); ++i) {
        const auto& u = tri.edges[dual_path[i - 1]];
        const auto& v = tri.edges[dual_path[i]];
        bool meet = u.left == v.left || u.left == v.right || u.right == v.left ||
                    u.right == v.right;
        if (!meet) throw std::invalid_argument("dual path is not connected");
    }
    if (!std::binary_search(tree.tree_edges.begin(), tree.tree_edges.end(), b))
        throw std::invalid_argument("edge is not in the tree");

    SeparationReport rep;
    rep.required = p * delta / 2.0;
    double reach = 2.0 * p * delta;
    rep.path_vacant = true;
    for (EdgeId e : dual_path)
        if (dist(tri.points[tri.edges[e].a], tri.points[tri.edges[e].b]) < reach)
            rep.path_vacant = false;
    Vec2 ba = tri.points[tri.edges[b].a], bb = tri.points[tri.edges[b].b];
    rep.clearance = kInf;
    for (std::size_t i = 1; i + 1 < dual_path.size(); ++i) {
        const auto& er = tri.edges[dual_path[i]];
        double d = segment_segment_dist(ba, bb, tri.circumcenters[er.left],
                                        tri.circumcenters[er.right]);
        if (d < rep.clearance) {
            rep.clearance = d;
            rep.worst_segment = static_cast<std::int32_t>(i);
        }
    }
    return rep;
}

EstimateRecord estimate_droplet_pc(const Rect& region, double delta, std::int64_t n_samples,
                                   Rng& rng, std::vector<PcTracePoint>* trace) {
    require_positive(delta, "delta");
    require_positive(region.width(), "region width");
    require_positive(region.height(), "region height");
    if (n_samples <= 0) throw std::invalid_argument("n_samples must be positive");

    std::vector<double> thresholds;
    thresholds.reserve(static_cast<std::size_t>(n_samples));
    for (std::int64_t s = 0; s < n_samples; ++s) {
        PointSet ps = sample_poisson(region, delta, rng);
        thresholds.push_back(droplet_crossing_threshold(ps, region, Axis::X));
    }
    std::sort(thresholds.begin(), thresholds.end());
    auto count_below = [&](double pv) {
        return static_cast<std::int64_t>(
            std::lower_bound(thresholds.begin(), thresholds.end(), pv) - thresholds.begin());
    };

    double lo = 0.0, hi = 2.0;
    while (count_below(hi) * 2 < n_samples) {
        hi *= 2.0;
        if (!std::isfinite(hi)) throw std::runtime_error("median crossing point is unbounded");
    }
    for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        std::int64_t c = count_below(mid);
        if (trace) trace->push_back({mid, c});
        if (c * 2 < n_samples) lo = mid;
        else hi = mid;
    }

    EstimateRecord rec;
    rec.model = Model::Droplet;
    rec.rect = region;
    rec.k = 1;
    rec.delta = delta;
    rec.n_samples = n_samples;
    rec.p_hat = 0.5 * (lo + hi);
    rec.successes = count_below(rec.p_hat);
    // Distribution-free interval around the median from binomial order statistics.
    double half = 1.959963984540054 * std::sqrt(static_cast<double>(n_samples) * 0.25);
    auto clamp_idx = [&](double v) {
        return static_cast<std::size_t>(
            std::min<double>(static_cast<double>(n_samples - 1), std::max(0.0, v)));
    };
    rec.ci_low = thresholds[clamp_idx(std::floor(n_samples / 2.0 - half) - 1.0)];
    rec.ci_high = thresholds[clamp_idx(std::ceil(n_samples / 2.0 + half))];
    return rec;
}

} // namespace spantree
