#include "spantree/ust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace spantree {

std::vector<VertexId> loop_erase(const std::vector<VertexId>& walk,
                                 std::int32_t vertex_count) {
    if (walk.empty()) throw std::invalid_argument("loop erasure needs a nonempty walk");
    std::vector<std::int32_t> at(vertex_count, -1);
    std::vector<VertexId> out;
    out.reserve(walk.size());
    for (VertexId v : walk) {
        if (v < 0 || v >= vertex_count)
            throw std::invalid_argument("walk vertex out of range");
        if (at[v] >= 0) {
            while (static_cast<std::int32_t>(out.size()) > at[v] + 1) {
                at[out.back()] = -1;
                out.pop_back();
            }
        } else {
            at[v] = static_cast<std::int32_t>(out.size());
            out.push_back(v);
        }
    }
    return out;
}

Curve loop_erase(const Curve& walk) {
    if (walk.points.empty())
        throw std::invalid_argument("loop erasure needs a nonempty walk");
    std::map<std::pair<double, double>, VertexId> ids;
    std::vector<VertexId> as_ids;
    std::vector<Vec2> pos;
    as_ids.reserve(walk.points.size());
    for (Vec2 p : walk.points) {
        auto [it, fresh] = ids.try_emplace({p.x, p.y},
                                           static_cast<VertexId>(pos.size()));
        if (fresh) pos.push_back(p);
        as_ids.push_back(it->second);
    }
    std::vector<VertexId> erased = loop_erase(as_ids, static_cast<std::int32_t>(pos.size()));
    Curve out;
    out.points.reserve(erased.size());
    for (VertexId v : erased) out.points.push_back(pos[v]);
    return out;
}

SpanningTree assemble_tree(const RegionGraph& g, std::vector<EdgeId> edges, VertexId root) {
    std::int32_t n = g.vertex_count();
    if (root < 0 || root >= n) throw std::invalid_argument("root out of range");
    if (static_cast<std::int32_t>(edges.size()) != n - 1)
        throw std::invalid_argument("edge set has the wrong cardinality for a spanning tree");
    std::vector<char> in_set(g.edge_count(), 0);
    for (EdgeId e : edges) in_set[e] = 1;
    std::vector<EdgeId> parent(n, -1);
    std::vector<char> seen(n, 0);
    std::vector<VertexId> queue{root};
    seen[root] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        VertexId v = queue[head];
        for (const auto* a = g.arcs_begin(v); a != g.arcs_end(v); ++a) {
            if (!in_set[a->edge] || seen[a->to]) continue;
            seen[a->to] = 1;
            parent[a->to] = a->edge;
            queue.push_back(a->to);
        }
    }
    if (static_cast<std::int32_t>(queue.size()) != n)
        throw std::invalid_argument("edge set does not span the graph");
    std::sort(edges.begin(), edges.end());
    return {&g, std::move(edges), root, std::move(parent)};
}

namespace {

SpanningTree wilson_from(const RegionGraph& g, VertexId root,
                         const std::vector<EdgeId>& forced, Rng& rng) {
    std::int32_t n = g.vertex_count();
    std::vector<char> in_tree(n, 0);
    std::vector<EdgeId> parent(n, -1);
    in_tree[root] = 1;

    if (!forced.empty()) {
        // adjacency restricted to the forced edges
        std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(n);
        std::int32_t touched = 0;
        std::vector<char> seen(n, 0);
        for (EdgeId e : forced) {
            if (e < 0 || e >= g.edge_count())
                throw std::invalid_argument("forced edge out of range");
            const auto& ed = g.edges[e];
            adj[ed.a].push_back({ed.b, e});
            adj[ed.b].push_back({ed.a, e});
            for (VertexId v : {ed.a, ed.b})
                if (!seen[v]) {
                    seen[v] = 1;
                    ++touched;
                }
        }
        if (!seen[root])
            throw std::invalid_argument("forced edges must touch the root");
        std::vector<VertexId> queue{root};
        std::int32_t visited = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            VertexId u = queue[qi];
            for (auto [v, e] : adj[u])
                if (!in_tree[v]) {
                    in_tree[v] = 1;
                    parent[v] = e;
                    queue.push_back(v);
                    ++visited;
                }
        }
        // a connected forest uses exactly one edge per non-root vertex
        if (visited != touched || static_cast<std::int32_t>(forced.size()) != touched - 1)
            throw std::invalid_argument("forced edges must form a connected cycle-free set");
    }

    std::vector<EdgeId> exit_edge(n, -1);
    for (VertexId start = 0; start < n; ++start) {
        if (in_tree[start]) continue;
        VertexId u = start;
        while (!in_tree[u]) {
            // uniform over incident edges; revisits overwrite, erasing loops
            const auto* a = g.arcs_begin(u) + rng.next_below(g.degree(u));
            exit_edge[u] = a->edge;
            u = a->to;
        }
        u = start;
        while (!in_tree[u]) {
            in_tree[u] = 1;
            parent[u] = exit_edge[u];
            const auto& e = g.edges[exit_edge[u]];
            u = e.a == u ? e.b : e.a;
        }
    }

    SpanningTree t;
    t.graph = &g;
    t.root = root;
    t.parent = std::move(parent);
    t.tree_edges.reserve(n - 1);
    for (VertexId v = 0; v < n; ++v)
        if (t.parent[v] >= 0) t.tree_edges.push_back(t.parent[v]);
    std::sort(t.tree_edges.begin(), t.tree_edges.end());
    return t;
}

} // namespace

SpanningTree wilson_ust(const RegionGraph& g, VertexId root, Rng& rng) {
    if (root < 0 || root >= g.vertex_count())
        throw std::invalid_argument("root out of range");
    return wilson_from(g, root, {}, rng);
}

SpanningTree wilson_ust_conditioned(const RegionGraph& g,
                                    const std::vector<EdgeId>& forced, Rng& rng) {
    if (forced.empty()) return wilson_from(g, 0, {}, rng);
    VertexId root = g.vertex_count();
    for (EdgeId e : forced) {
        if (e < 0 || e >= g.edge_count())
            throw std::invalid_argument("forced edge out of range");
        root = std::min({root, g.edges[e].a, g.edges[e].b});
    }
    return wilson_from(g, root, forced, rng);
}

EstimateRecord estimate_choking_probability(double delta, double r, Rng& rng,
                                            std::int64_t n_samples) {
    if (n_samples <= 0) throw std::invalid_argument("need at least one sample");
    AnnulusSpec spec{{0.0, 0.0}, r, 3.0 * r, Boundary::Free, Boundary::Free};
    RegionGraph g = build_lattice_annulus(delta, spec);
    std::int32_t n = g.vertex_count();

    std::vector<char> rim(n, 0);
    for (VertexId v : g.inner_free) rim[v] = 1;
    for (VertexId v : g.outer_free) rim[v] = 1;

    VertexId x0 = -1;
    double best = std::numeric_limits<double>::infinity();
    Vec2 target{2.0 * r, 0.0};
    for (VertexId v = 0; v < n; ++v) {
        double d2 = dist2(g.coords[v], target);
        if (d2 < best) {
            best = d2;
            x0 = v;
        }
    }
    if (rim[x0]) throw std::invalid_argument("shell too thin for an interior start");

    const double full_turn = 2.0 * M_PI - 1e-9;
    std::vector<std::int32_t> at(n, -1);
    std::vector<VertexId> stack;
    std::vector<double> wind;
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        for (VertexId v : stack) at[v] = -1;
        stack.assign(1, x0);
        wind.assign(1, 0.0);
        at[x0] = 0;
        while (true) {
            VertexId u = stack.back();
            const auto* a = g.arcs_begin(u) + rng.next_below(g.degree(u));
            VertexId v = a->to;
            double w = wind.back() + angle_increment(spec.center, g.coords[u], g.coords[v]);
            if (at[v] >= 0) {
                // the erased trajectory plus this step closes a cycle; a simple
                // lattice cycle winds 0 or +-2pi about an enclosed point
                if (std::abs(w - wind[at[v]]) >= full_turn) {
                    ++hits;
                    break;
                }
                while (static_cast<std::int32_t>(stack.size()) > at[v] + 1) {
                    at[stack.back()] = -1;
                    stack.pop_back();
                    wind.pop_back();
                }
            } else if (rim[v]) {
                break;
            } else {
                at[v] = static_cast<std::int32_t>(stack.size());
                stack.push_back(v);
                wind.push_back(w);
            }
        }
    }

    EstimateRecord rec;
    rec.model = Model::Ust;
    rec.annulus = spec;
    rec.k = 1;
    rec.delta = delta;
    rec.n_samples = n_samples;
    rec.successes = hits;
    rec.p_hat = static_cast<double>(hits) / static_cast<double>(n_samples);
    Interval ci = wilson_interval(hits, n_samples);
    rec.ci_low = ci.lo;
    rec.ci_high = ci.hi;
    return rec;
}

} // namespace spantree
