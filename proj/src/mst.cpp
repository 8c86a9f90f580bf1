#include "spantree/mst.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace spantree {

namespace {

struct UnionFind {
    std::vector<std::int32_t> up;
    explicit UnionFind(std::int32_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    std::int32_t find(std::int32_t v) {
        while (up[v] != v) v = up[v] = up[up[v]];
        return v;
    }
    bool unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        up[a] = b;
        return true;
    }
};

void require_matching_calls(const RegionGraph& g, const CallNumbers& u) {
    if (u.values.size() != static_cast<std::size_t>(g.edge_count()))
        throw std::invalid_argument("call numbers do not match the edge count");
}

bool strictly_inside(const Rect& r, Vec2 p) {
    return p.x > r.x0 && p.x < r.x1 && p.y > r.y0 && p.y < r.y1;
}

// The region a graph stands for: its annulus shell if it has one, otherwise
// the bounding box of its vertex coordinates.
bool region_contains(const RegionGraph& g, const Rect& sub) {
    const double eps = 1e-9;
    if (g.annulus) {
        const AnnulusSpec& a = *g.annulus;
        Vec2 corners[4] = {{sub.x0, sub.y0}, {sub.x1, sub.y0}, {sub.x0, sub.y1}, {sub.x1, sub.y1}};
        for (Vec2 c : corners)
            if (dist(c, a.center) > a.R + eps) return false;
        Vec2 nearest{std::clamp(a.center.x, sub.x0, sub.x1),
                     std::clamp(a.center.y, sub.y0, sub.y1)};
        return dist(nearest, a.center) >= a.r - eps;
    }
    Rect bb{g.coords[0].x, g.coords[0].y, g.coords[0].x, g.coords[0].y};
    for (Vec2 p : g.coords) {
        bb.x0 = std::min(bb.x0, p.x);
        bb.y0 = std::min(bb.y0, p.y);
        bb.x1 = std::max(bb.x1, p.x);
        bb.y1 = std::max(bb.y1, p.y);
    }
    return sub.x0 >= bb.x0 - eps && sub.y0 >= bb.y0 - eps && sub.x1 <= bb.x1 + eps &&
           sub.y1 <= bb.y1 + eps;
}

std::vector<char> edge_flags(std::int32_t edge_count, const std::vector<EdgeId>& edges) {
    std::vector<char> flags(edge_count, 0);
    for (EdgeId e : edges) flags[e] = 1;
    return flags;
}

// Minimum spanning forest: the cheapest acyclic edge set joining whatever can
// be joined.  Equals the minimum spanning tree edge set when g is connected.
std::vector<EdgeId> kruskal_forest(const RegionGraph& g, const CallNumbers& u) {
    UnionFind uf(g.vertex_count());
    std::vector<EdgeId> accepted;
    for (EdgeId e : call_order(u))
        if (uf.unite(g.edges[e].a, g.edges[e].b)) accepted.push_back(e);
    std::sort(accepted.begin(), accepted.end());
    return accepted;
}

} // namespace

CallNumbers draw_call_numbers(const RegionGraph& g, Rng& rng) {
    CallNumbers u;
    u.values.reserve(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) u.values.push_back(rng.next_double());
    return u;
}

std::vector<EdgeId> call_order(const CallNumbers& u) {
    std::vector<EdgeId> order(u.values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&u](EdgeId a, EdgeId b) { return call_less(u, a, b); });
    return order;
}

SpanningTree kruskal_mst(const RegionGraph& g, const CallNumbers& u) {
    require_matching_calls(g, u);
    std::vector<EdgeId> accepted = kruskal_forest(g, u);
    if (static_cast<std::int32_t>(accepted.size()) != g.vertex_count() - 1)
        throw std::invalid_argument("graph is not connected");
    return assemble_tree(g, std::move(accepted), 0);
}

SpanningTree invasion_tree(const RegionGraph& g, const CallNumbers& u, VertexId root) {
    require_matching_calls(g, u);
    std::int32_t n = g.vertex_count();
    if (root < 0 || root >= n) throw std::invalid_argument("root out of range");
    struct CostlierFirst {
        const CallNumbers* u;
        bool operator()(EdgeId a, EdgeId b) const { return call_less(*u, b, a); }
    };
    std::priority_queue<EdgeId, std::vector<EdgeId>, CostlierFirst> frontier{CostlierFirst{&u}};
    std::vector<char> in_tree(n, 0);
    std::vector<EdgeId> parent(n, -1);
    std::vector<EdgeId> edges;
    edges.reserve(n - 1);
    in_tree[root] = 1;
    for (const auto* a = g.arcs_begin(root); a != g.arcs_end(root); ++a)
        frontier.push(a->edge);
    while (!frontier.empty() && static_cast<std::int32_t>(edges.size()) < n - 1) {
        EdgeId e = frontier.top();
        frontier.pop();
        const auto& ed = g.edges[e];
        VertexId fresh = !in_tree[ed.a] ? ed.a : (!in_tree[ed.b] ? ed.b : -1);
        if (fresh < 0) continue; // both ends reached already, the edge would close a loop
        in_tree[fresh] = 1;
        parent[fresh] = e;
        edges.push_back(e);
        for (const auto* a = g.arcs_begin(fresh); a != g.arcs_end(fresh); ++a)
            if (!in_tree[a->to]) frontier.push(a->edge);
    }
    if (static_cast<std::int32_t>(edges.size()) != n - 1)
        throw std::invalid_argument("graph is not connected");
    std::sort(edges.begin(), edges.end());
    return {&g, std::move(edges), root, std::move(parent)};
}

std::vector<EdgeId> occupied_subgraph(const RegionGraph& g, const CallNumbers& u, double p) {
    require_matching_calls(g, u);
    std::vector<EdgeId> occupied;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (u.values[e] < p) occupied.push_back(e);
    return occupied;
}

VacancyReport verify_vacancy_cycle_property(const RegionGraph& g, const CallNumbers& u,
                                            const SpanningTree& t) {
    require_matching_calls(g, u);
    if (static_cast<std::int32_t>(t.tree_edges.size()) != g.vertex_count() - 1)
        throw std::invalid_argument("edge set has the wrong cardinality for a spanning tree");
    std::vector<char> in_tree = edge_flags(g.edge_count(), t.tree_edges);
    UnionFind uf(g.vertex_count());
    VacancyReport report;
    for (EdgeId e : call_order(u)) {
        const auto& ed = g.edges[e];
        if (!in_tree[e] && uf.find(ed.a) != uf.find(ed.b)) report.violations.push_back(e);
        uf.unite(ed.a, ed.b);
    }
    std::sort(report.violations.begin(), report.violations.end());
    return report;
}

DualMstReport dual_mst_check(const RegionGraph& g, const CallNumbers& u) {
    return dual_mst_check(g, u, planar_dual(g));
}

DualMstReport dual_mst_check(const RegionGraph& g, const CallNumbers& u, const PlanarDual& d) {
    require_matching_calls(g, u);
    SpanningTree t = kruskal_mst(g, u);
    CallNumbers reversed;
    reversed.values.resize(u.values.size());
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        reversed.values[d.to_dual[e]] = 1.0 - u.values[e];
    SpanningTree td = kruskal_mst(d.dual, reversed);
    std::vector<char> occupied = edge_flags(g.edge_count(), t.tree_edges);
    std::vector<char> in_dual = edge_flags(d.dual.edge_count(), td.tree_edges);
    DualMstReport report;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!occupied[e] && !in_dual[d.to_dual[e]]) report.missing.push_back(e);
        if (occupied[e] && in_dual[d.to_dual[e]]) report.extra.push_back(e);
    }
    return report;
}

SubgraphMap restrict_region(const RegionGraph& g, const std::vector<char>& inside, Boundary bc) {
    std::int32_t n = g.vertex_count();
    if (inside.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("vertex mask does not match the vertex count");
    SubgraphMap sub;
    std::vector<VertexId> image(n, -1);
    for (VertexId v = 0; v < n; ++v) {
        if (!inside[v]) continue;
        image[v] = static_cast<VertexId>(sub.graph.coords.size());
        sub.source_vertex.push_back(v);
        sub.graph.coords.push_back(g.has_coord(v) ? g.coords[v] : Vec2{});
    }
    if (!sub.source_vertex.empty() && !g.coords.empty()) {
        // Synthetic position for a kept coordinate-free vertex, clear of the rest.
        Rect bb{g.coords[0].x, g.coords[0].y, g.coords[0].x, g.coords[0].y};
        for (Vec2 p : g.coords) {
            bb.x0 = std::min(bb.x0, p.x);
            bb.y0 = std::min(bb.y0, p.y);
            bb.x1 = std::max(bb.x1, p.x);
            bb.y1 = std::max(bb.y1, p.y);
        }
        for (std::size_t i = 0; i < sub.source_vertex.size(); ++i)
            if (!g.has_coord(sub.source_vertex[i]))
                sub.graph.coords[i] = {bb.x1 + bb.width() + 1.0, bb.y1 + bb.height() + 1.0};
    }
    VertexId boundary = static_cast<VertexId>(sub.graph.coords.size());
    sub.image_edge.assign(g.edge_count(), -1);
    bool any_crossing = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edges[e];
        bool ia = inside[ed.a], ib = inside[ed.b];
        if (ia && ib) {
            sub.image_edge[e] = static_cast<EdgeId>(sub.graph.edges.size());
            sub.source_edge.push_back(e);
            sub.graph.edges.push_back({image[ed.a], image[ed.b], ed.length, ed.tip});
        } else if (ia != ib && bc == Boundary::Wired) {
            VertexId kept = ia ? image[ed.a] : image[ed.b];
            Vec2 lost = ia ? (g.has_coord(ed.b) ? g.coords[ed.b] : ed.tip) : g.coords[ed.a];
            sub.image_edge[e] = static_cast<EdgeId>(sub.graph.edges.size());
            sub.source_edge.push_back(e);
            sub.graph.edges.push_back({kept, boundary, ed.length, lost});
            any_crossing = true;
        }
    }
    sub.graph.delta = g.delta;
    sub.graph.anchor = g.anchor;
    sub.graph.finalize(any_crossing);
    return sub;
}

CallNumbers restrict_calls(const CallNumbers& u, const SubgraphMap& sub) {
    CallNumbers out;
    out.values.reserve(sub.source_edge.size());
    for (EdgeId e : sub.source_edge) out.values.push_back(u.values[e]);
    return out;
}

std::vector<char> inside_rect(const RegionGraph& g, const Rect& rect) {
    std::vector<char> mask(g.vertex_count(), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        mask[v] = g.has_coord(v) && rect.contains(g.coords[v]);
    return mask;
}

std::vector<char> inside_circle(const RegionGraph& g, const Circle& cut) {
    std::vector<char> mask(g.vertex_count(), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        mask[v] = g.has_coord(v) && cut.contains(g.coords[v]);
    return mask;
}

BracketingReport bracketing_check(const RegionGraph& g, const CallNumbers& u, const Rect& sub) {
    require_matching_calls(g, u);
    if (!region_contains(g, sub))
        throw std::invalid_argument("subregion is not contained in the graph region");
    SpanningTree full = kruskal_mst(g, u);
    std::vector<char> mask = inside_rect(g, sub);
    SubgraphMap free_sub = restrict_region(g, mask, Boundary::Free);
    if (free_sub.graph.vertex_count() == 0)
        throw std::invalid_argument("subregion contains no vertices");
    SpanningTree free_tree = kruskal_mst(free_sub.graph, restrict_calls(u, free_sub));
    SubgraphMap wired_sub = restrict_region(g, mask, Boundary::Wired);
    SpanningTree wired_tree = kruskal_mst(wired_sub.graph, restrict_calls(u, wired_sub));

    auto interior = [&](EdgeId e) {
        const auto& ed = g.edges[e];
        return g.has_coord(ed.a) && g.has_coord(ed.b) && strictly_inside(sub, g.coords[ed.a]) &&
               strictly_inside(sub, g.coords[ed.b]);
    };
    std::vector<char> in_full = edge_flags(g.edge_count(), full.tree_edges);
    std::vector<char> in_free = edge_flags(free_sub.graph.edge_count(), free_tree.tree_edges);
    BracketingReport report;
    for (EdgeId se : wired_tree.tree_edges) {
        EdgeId e = wired_sub.source_edge[se];
        if (interior(e) && !in_full[e]) report.wired_violations.push_back(e);
    }
    for (EdgeId e : full.tree_edges)
        if (interior(e) && (free_sub.image_edge[e] < 0 || !in_free[free_sub.image_edge[e]]))
            report.free_violations.push_back(e);
    return report;
}

FactorizationReport fw_factorization_sample(const RegionGraph& g, const CallNumbers& u,
                                            const Circle& cut) {
    require_matching_calls(g, u);
    SpanningTree full = kruskal_mst(g, u);
    std::vector<char> in_cut = inside_circle(g, cut);
    std::vector<char> out_cut(in_cut.size());
    for (std::size_t i = 0; i < in_cut.size(); ++i) out_cut[i] = !in_cut[i];
    std::vector<char> in_full = edge_flags(g.edge_count(), full.tree_edges);
    FactorizationReport report;

    // A lattice cut can slice the inside band into several components, so the
    // free factor is the minimum spanning forest; domination holds per part.
    SubgraphMap free_sub = restrict_region(g, in_cut, Boundary::Free);
    if (free_sub.graph.vertex_count() > 0) {
        std::vector<EdgeId> forest =
            kruskal_forest(free_sub.graph, restrict_calls(u, free_sub));
        std::vector<char> in_free = edge_flags(free_sub.graph.edge_count(), forest);
        for (EdgeId e : full.tree_edges) {
            const auto& ed = g.edges[e];
            if (in_cut[ed.a] && in_cut[ed.b] &&
                (free_sub.image_edge[e] < 0 || !in_free[free_sub.image_edge[e]]))
                report.free_violations.push_back(e);
        }
    }
    SubgraphMap wired_sub = restrict_region(g, out_cut, Boundary::Wired);
    if (wired_sub.graph.vertex_count() > 0) {
        SpanningTree wired_tree = kruskal_mst(wired_sub.graph, restrict_calls(u, wired_sub));
        for (EdgeId se : wired_tree.tree_edges) {
            EdgeId e = wired_sub.source_edge[se];
            const auto& ed = g.edges[e];
            if (out_cut[ed.a] && out_cut[ed.b] && !in_full[e])
                report.wired_violations.push_back(e);
        }
    }
    std::vector<EdgeId> lhs = free_sub.source_edge, rhs = wired_sub.source_edge;
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    std::vector<EdgeId> shared;
    std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                          std::back_inserter(shared));
    report.disjoint_calls = shared.empty();
    return report;
}

} // namespace spantree
