#include "spantree/crossings.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace spantree {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
} // namespace

namespace {

// Dinic blocking-flow max flow; capacities are small integers here.
class FlowNet {
  public:
    explicit FlowNet(std::int32_t n) : adj_(n), level_(n), iter_(n) {}

    void add_arc(std::int32_t u, std::int32_t v, std::int32_t cap) {
        adj_[u].push_back({v, static_cast<std::int32_t>(adj_[v].size()), cap});
        adj_[v].push_back({u, static_cast<std::int32_t>(adj_[u].size()) - 1, 0});
    }

    std::int32_t max_flow(std::int32_t s, std::int32_t t) {
        std::int32_t total = 0;
        while (build_levels(s, t)) {
            std::fill(iter_.begin(), iter_.end(), 0);
            while (std::int32_t pushed = augment(s, t, unbounded_))
                total += pushed;
        }
        return total;
    }

  private:
    struct Arc {
        std::int32_t to;
        std::int32_t rev;
        std::int32_t cap;
    };

    static constexpr std::int32_t unbounded_ = 1 << 29;

    bool build_levels(std::int32_t s, std::int32_t t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::int32_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            std::int32_t v = q.front();
            q.pop();
            for (const Arc& a : adj_[v]) {
                if (a.cap > 0 && level_[a.to] < 0) {
                    level_[a.to] = level_[v] + 1;
                    q.push(a.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    std::int32_t augment(std::int32_t v, std::int32_t t, std::int32_t limit) {
        if (v == t)
            return limit;
        for (std::int32_t& i = iter_[v]; i < static_cast<std::int32_t>(adj_[v].size()); ++i) {
            Arc& a = adj_[v][i];
            if (a.cap <= 0 || level_[a.to] != level_[v] + 1)
                continue;
            std::int32_t pushed = augment(a.to, t, std::min(limit, a.cap));
            if (pushed > 0) {
                a.cap -= pushed;
                adj_[a.to][a.rev].cap += pushed;
                return pushed;
            }
        }
        level_[v] = -1;
        return 0;
    }

    std::vector<std::vector<Arc>> adj_;
    std::vector<std::int32_t> level_;
    std::vector<std::int32_t> iter_;
};

std::int32_t node_in(VertexId v) { return 2 * v; }
std::int32_t node_out(VertexId v) { return 2 * v + 1; }

bool sorted_intersects(std::vector<VertexId> a, std::vector<VertexId> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib)
            return true;
        (*ia < *ib) ? ++ia : ++ib;
    }
    return false;
}

bool spec_counts_wired(const RegionGraph& g, const AnnulusSpec& spec) {
    return g.wired() && (spec.inner == Boundary::Wired || spec.outer == Boundary::Wired);
}

} // namespace

int max_disjoint_crossings(const CrossingQuery& q) {
    if (q.graph == nullptr)
        throw std::invalid_argument("crossing query has no graph");
    const RegionGraph& g = *q.graph;
    if (q.sources.empty() || q.sinks.empty())
        return 0;
    if (sorted_intersects(q.sources, q.sinks))
        throw std::invalid_argument("sources and sinks must be disjoint");

    const std::int32_t n = g.vertex_count();
    const std::int32_t source = 2 * n;
    const std::int32_t sink = 2 * n + 1;
    const std::int32_t wide = n + 1;
    FlowNet net(2 * n + 2);
    for (VertexId v = 0; v < n; ++v) {
        std::int32_t cap = (g.wired() && v == g.wired_vertex()) ? wide : 1;
        net.add_arc(node_in(v), node_out(v), cap);
    }
    for (EdgeId e : q.edge_set) {
        if (e < 0 || e >= g.edge_count())
            throw std::invalid_argument("edge id out of range in crossing query");
        const RegionGraph::Edge& ed = g.edges[e];
        net.add_arc(node_out(ed.a), node_in(ed.b), 1);
        net.add_arc(node_out(ed.b), node_in(ed.a), 1);
    }
    for (VertexId v : q.sources)
        net.add_arc(source, node_in(v), wide);
    for (VertexId v : q.sinks)
        net.add_arc(node_out(v), sink, wide);
    return net.max_flow(source, sink);
}

namespace {

/* Boundary probes for point-set graphs.  A vertex abuts the hole when one of
 * its real edges dips into the open inner disc, and abuts the outside when a
 * real edge ends beyond R or the vertex lies on the convex hull (its real
 * neighbors leave an angular gap of at least pi). */
void point_graph_boundaries(const RegionGraph& g, const AnnulusSpec& spec,
                            AnnulusBoundarySets& sets) {
    std::vector<char> hole(g.coords.size(), 0), out(g.coords.size(), 0);
    for (const RegionGraph::Edge& ed : g.edges) {
        if (!g.has_coord(ed.a) || !g.has_coord(ed.b))
            continue;
        if (spec.r > 0.0 &&
            point_segment_dist(spec.center, g.coords[ed.a], g.coords[ed.b]) < spec.r)
            hole[ed.a] = hole[ed.b] = 1;
        if (dist(g.coords[ed.b], spec.center) > spec.R)
            out[ed.a] = 1;
        if (dist(g.coords[ed.a], spec.center) > spec.R)
            out[ed.b] = 1;
    }
    std::vector<double> angles;
    for (VertexId v = 0; v < static_cast<VertexId>(g.coords.size()); ++v) {
        if (out[v] || !spec.in_shell(g.coords[v]))
            continue;
        angles.clear();
        for (const auto* a = g.arcs_begin(v); a != g.arcs_end(v); ++a)
            if (g.has_coord(a->to)) {
                Vec2 d = g.coords[a->to] - g.coords[v];
                angles.push_back(std::atan2(d.y, d.x));
            }
        if (angles.size() < 2) {
            out[v] = 1;
            continue;
        }
        std::sort(angles.begin(), angles.end());
        double gap = angles.front() + 2.0 * kPi - angles.back();
        for (std::size_t i = 1; i < angles.size(); ++i)
            gap = std::max(gap, angles[i] - angles[i - 1]);
        if (gap >= kPi - 1e-9)
            out[v] = 1;
    }
    for (VertexId v = 0; v < static_cast<VertexId>(g.coords.size()); ++v) {
        if (!spec.in_shell(g.coords[v]))
            continue;
        if (hole[v] && spec.inner == Boundary::Free)
            sets.inner.push_back(v);
        if (out[v] && spec.outer == Boundary::Free)
            sets.outer.push_back(v);
    }
}

} // namespace

AnnulusBoundarySets annulus_boundary_sets(const RegionGraph& g, const AnnulusSpec& spec) {
    AnnulusBoundarySets sets;
    if (g.delta > 0.0) {
        const double r2 = spec.r * spec.r;
        const double R2 = spec.R * spec.R;
        const Vec2 steps[4] = {{g.delta, 0.0}, {-g.delta, 0.0}, {0.0, g.delta}, {0.0, -g.delta}};
        for (VertexId v = 0; v < static_cast<VertexId>(g.coords.size()); ++v) {
            Vec2 p = g.coords[v];
            if (!spec.in_shell(p))
                continue;
            bool toward_hole = false;
            bool toward_outside = false;
            for (const Vec2& s : steps) {
                double d2 = dist2(p + s, spec.center);
                toward_hole = toward_hole || d2 < r2;
                toward_outside = toward_outside || d2 > R2;
            }
            if (toward_hole && spec.inner == Boundary::Free)
                sets.inner.push_back(v);
            if (toward_outside && spec.outer == Boundary::Free)
                sets.outer.push_back(v);
        }
    } else {
        point_graph_boundaries(g, spec, sets);
    }
    if (g.wired()) {
        if (spec.inner == Boundary::Wired)
            sets.inner.push_back(g.wired_vertex());
        if (spec.outer == Boundary::Wired)
            sets.outer.push_back(g.wired_vertex());
    }
    return sets;
}

std::vector<EdgeId> edges_within_shell(const RegionGraph& g, const std::vector<EdgeId>& edge_set,
                                       const AnnulusSpec& spec) {
    const bool hub_counts = spec_counts_wired(g, spec);
    std::vector<EdgeId> kept;
    kept.reserve(edge_set.size());
    for (EdgeId e : edge_set) {
        const RegionGraph::Edge& ed = g.edges[e];
        bool a_in = g.has_coord(ed.a) ? spec.in_shell(g.coords[ed.a]) : hub_counts;
        bool b_in = g.has_coord(ed.b) ? spec.in_shell(g.coords[ed.b]) : hub_counts;
        if (a_in && b_in)
            kept.push_back(e);
    }
    return kept;
}

namespace {

/* A coordinate vertex on both rims (possible on point graphs whose edges dip
 * into the hole and jump past R) is a complete traversal by itself; it is
 * counted directly and retired with its edges so no other path can use it. */
int annulus_crossing_count(const RegionGraph& g, const std::vector<EdgeId>& edge_set,
                           const AnnulusSpec& spec) {
    AnnulusBoundarySets sets = annulus_boundary_sets(g, spec);
    std::vector<char> inner_mark(g.vertex_count(), 0);
    for (VertexId v : sets.inner)
        inner_mark[v] = 1;
    std::vector<char> both(g.vertex_count(), 0);
    int self = 0;
    for (VertexId v : sets.outer)
        if (inner_mark[v] && g.has_coord(v)) {
            both[v] = 1;
            ++self;
        }

    CrossingQuery q;
    q.graph = &g;
    if (self == 0) {
        q.edge_set = edges_within_shell(g, edge_set, spec);
        q.sources = sets.inner;
        q.sinks = sets.outer;
    } else {
        for (EdgeId e : edges_within_shell(g, edge_set, spec)) {
            const RegionGraph::Edge& ed = g.edges[e];
            if (!both[ed.a] && !both[ed.b])
                q.edge_set.push_back(e);
        }
        for (VertexId v : sets.inner)
            if (!both[v])
                q.sources.push_back(v);
        for (VertexId v : sets.outer)
            if (!both[v])
                q.sinks.push_back(v);
    }
    if (q.sources.empty() || q.sinks.empty())
        return self;
    return self + max_disjoint_crossings(q);
}

} // namespace

int tree_traversal_count(const SpanningTree& t, const AnnulusSpec& spec) {
    if (t.graph == nullptr)
        throw std::invalid_argument("tree has no graph");
    if (spec.r <= 0.0)
        throw std::invalid_argument("traversal counting needs an annulus with a hole");
    return annulus_crossing_count(*t.graph, t.tree_edges, spec);
}

int percolation_crossing_count(const RegionGraph& g, const std::vector<EdgeId>& edge_set,
                               const AnnulusSpec& spec) {
    if (spec.r <= 0.0)
        throw std::invalid_argument("traversal counting needs an annulus with a hole");
    return annulus_crossing_count(g, edge_set, spec);
}

int percolation_crossing_count(const RegionGraph& g, const std::vector<EdgeId>& edge_set,
                               const Rect& rect, Axis axis) {
    const double tol = g.delta > 0.0 ? 0.5 * g.delta : 1e-9;
    CrossingQuery q;
    q.graph = &g;
    for (VertexId v = 0; v < static_cast<VertexId>(g.coords.size()); ++v) {
        Vec2 p = g.coords[v];
        if (!rect.contains(p))
            continue;
        double along = axis == Axis::X ? p.x : p.y;
        double lo = axis == Axis::X ? rect.x0 : rect.y0;
        double hi = axis == Axis::X ? rect.x1 : rect.y1;
        if (along <= lo + tol)
            q.sources.push_back(v);
        else if (along >= hi - tol)
            q.sinks.push_back(v);
    }
    for (EdgeId e : edge_set) {
        const RegionGraph::Edge& ed = g.edges[e];
        if (g.has_coord(ed.a) && g.has_coord(ed.b) && rect.contains(g.coords[ed.a]) &&
            rect.contains(g.coords[ed.b]))
            q.edge_set.push_back(e);
    }
    if (q.sources.empty() || q.sinks.empty())
        return 0;
    return max_disjoint_crossings(q);
}

int semipath_crossing_count(const RegionGraph& g, const CallNumbers& u) {
    PlanarDual d = planar_dual(g);
    return semipath_crossing_count(g, u, d);
}

int semipath_crossing_count(const RegionGraph& g, const CallNumbers& u, const PlanarDual& d) {
    if (!g.annulus.has_value() || !g.wired() || !d.dual.wired())
        throw std::invalid_argument("semipath counting needs a mixed-boundary annulus with a dual");
    if (static_cast<EdgeId>(u.values.size()) != g.edge_count())
        throw std::invalid_argument("call numbers do not match the edge count");

    const std::int32_t np = g.vertex_count();
    const std::int32_t nd = d.dual.vertex_count();
    const std::int32_t total = np + nd;
    const std::int32_t source = 2 * total;
    const std::int32_t sink = 2 * total + 1;
    const std::int32_t wide = total + 1;
    const auto dual_node = [np](VertexId w) { return np + w; };

    FlowNet net(2 * total + 2);
    for (VertexId v = 0; v < np; ++v)
        net.add_arc(node_in(v), node_out(v), v == g.wired_vertex() ? wide : 1);
    for (VertexId w = 0; w < nd; ++w)
        net.add_arc(node_in(dual_node(w)), node_out(dual_node(w)),
                    w == d.dual.wired_vertex() ? wide : 1);

    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const RegionGraph::Edge& ed = g.edges[e];
        if (u.values[e] < 0.5) {
            net.add_arc(node_out(ed.a), node_in(ed.b), 1);
            net.add_arc(node_out(ed.b), node_in(ed.a), 1);
        } else {
            const RegionGraph::Edge& de = d.dual.edges[d.to_dual[e]];
            net.add_arc(node_out(dual_node(de.a)), node_in(dual_node(de.b)), 1);
            net.add_arc(node_out(dual_node(de.b)), node_in(dual_node(de.a)), 1);
        }
        // Jump from either side face onto either corner, face-first only.
        for (VertexId w : {d.face_left[e], d.face_right[e]}) {
            net.add_arc(node_out(dual_node(w)), node_in(ed.a), 1);
            net.add_arc(node_out(dual_node(w)), node_in(ed.b), 1);
        }
    }

    net.add_arc(source, node_in(dual_node(d.dual.wired_vertex())), wide);
    for (VertexId v : g.inner_free)
        net.add_arc(source, node_in(v), wide);
    for (VertexId v : g.outer_free)
        net.add_arc(source, node_in(v), wide);
    net.add_arc(node_out(g.wired_vertex()), sink, wide);
    for (VertexId w : d.dual.inner_free)
        net.add_arc(node_out(dual_node(w)), sink, wide);
    for (VertexId w : d.dual.outer_free)
        net.add_arc(node_out(dual_node(w)), sink, wide);
    return net.max_flow(source, sink);
}

std::vector<EdgeId> long_edge_crossings(const RegionGraph& g, const std::vector<EdgeId>& edge_set,
                                        const AnnulusSpec& spec) {
    std::vector<EdgeId> jumps;
    if (spec.r <= 0.0)
        return jumps;
    const double r2 = spec.r * spec.r;
    const double R2 = spec.R * spec.R;
    for (EdgeId e : edge_set) {
        const RegionGraph::Edge& ed = g.edges[e];
        if (!g.has_coord(ed.a))
            continue;
        Vec2 pa = g.coords[ed.a];
        Vec2 pb = g.has_coord(ed.b) ? g.coords[ed.b] : ed.tip;
        double da = dist2(pa, spec.center);
        double db = dist2(pb, spec.center);
        if ((da < r2 && db > R2) || (db < r2 && da > R2))
            jumps.push_back(e);
    }
    return jumps;
}

} // namespace spantree
