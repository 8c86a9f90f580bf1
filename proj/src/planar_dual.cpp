#include "spantree/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spantree {

namespace {

inline VertexId half_tail(const RegionGraph& g, std::int32_t h) {
    const auto& e = g.edges[h >> 1];
    return (h & 1) ? e.b : e.a;
}

inline VertexId half_head(const RegionGraph& g, std::int32_t h) {
    const auto& e = g.edges[h >> 1];
    return (h & 1) ? e.a : e.b;
}

// Embedded position of an edge endpoint; the wired endpoint borrows the
// position of the deleted lattice point it replaced.
inline Vec2 endpoint_pos(const RegionGraph& g, EdgeId e, VertexId v) {
    return g.has_coord(v) ? g.coords[v] : g.edges[e].tip;
}

} // namespace

Embedding geometric_embedding(const RegionGraph& g) {
    std::int32_t n = g.vertex_count();
    Embedding emb;
    emb.rot.resize(n);
    std::vector<std::vector<std::pair<double, std::int32_t>>> keyed(n);
    bool wired_inside = false, wired_outside = false;

    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edges[e];
        for (int s = 0; s < 2; ++s) {
            std::int32_t h = 2 * e + s;
            VertexId tail = s ? ed.b : ed.a;
            VertexId head = s ? ed.a : ed.b;
            if (g.has_coord(tail)) {
                Vec2 dir = endpoint_pos(g, e, head) - g.coords[tail];
                keyed[tail].push_back({std::atan2(dir.y, dir.x), h});
            } else {
                // Around the super-vertex, order stubs by the angular position
                // of their tips about the region anchor; ties (two stubs that
                // share a deleted point) fall back to the lattice endpoint,
                // measured relative to the tip so the atan2 cut cannot split
                // a tie group.
                Vec2 t = ed.tip - g.anchor;
                Vec2 u = g.coords[head] - g.anchor;
                double at = std::atan2(t.y, t.x);
                double au = std::atan2(u.y, u.x);
                double key = at + 1e-9 * std::remainder(au - at, 2.0 * M_PI);
                keyed[tail].push_back({key, h});
                double rr = norm2(t);
                bool inside = g.annulus && g.annulus->r > 0.0 &&
                              rr < g.annulus->r * g.annulus->r;
                (inside ? wired_inside : wired_outside) = true;
            }
        }
    }
    for (std::int32_t v = 0; v < n; ++v) {
        auto& k = keyed[v];
        std::sort(k.begin(), k.end());
        bool reverse = !g.has_coord(v) && wired_outside;
        if (reverse) std::reverse(k.begin(), k.end()); // a vertex at infinity winds the other way
        emb.rot[v].reserve(k.size());
        for (auto& [key, h] : k) emb.rot[v].push_back(h);
    }
    if (wired_inside && wired_outside)
        throw std::invalid_argument("planar dual: super-vertex attached to both sides has no planar embedding");
    return emb;
}

PlanarDual planar_dual(const RegionGraph& g) {
    return planar_dual(g, geometric_embedding(g));
}

PlanarDual planar_dual(const RegionGraph& g, const Embedding& emb) {
    std::int32_t n = g.vertex_count();
    std::int32_t m = g.edge_count();
    if (static_cast<std::int32_t>(emb.rot.size()) != n)
        throw std::invalid_argument("planar dual: embedding does not match the graph");

    // Position of each half-edge in its tail's rotation.
    std::vector<std::int32_t> rot_pos(2 * m, -1), rot_vertex(2 * m, -1);
    for (std::int32_t v = 0; v < n; ++v)
        for (std::size_t i = 0; i < emb.rot[v].size(); ++i) {
            std::int32_t h = emb.rot[v][i];
            if (h < 0 || h >= 2 * m || rot_pos[h] >= 0 || half_tail(g, h) != v)
                throw std::invalid_argument("planar dual: malformed rotation system");
            rot_pos[h] = static_cast<std::int32_t>(i);
            rot_vertex[h] = v;
        }
    for (std::int32_t h = 0; h < 2 * m; ++h)
        if (rot_pos[h] < 0) throw std::invalid_argument("planar dual: rotation system misses a half-edge");

    // Faces lie to the left of their half-edges: follow twin, then the next
    // outgoing half-edge counterclockwise.
    auto next_half = [&](std::int32_t h) {
        std::int32_t t = h ^ 1;
        VertexId v = rot_vertex[t];
        const auto& r = emb.rot[v];
        return r[(rot_pos[t] + 1) % r.size()];
    };

    std::vector<VertexId> face(2 * m, -1);
    std::vector<std::vector<std::int32_t>> orbits;
    for (std::int32_t h0 = 0; h0 < 2 * m; ++h0) {
        if (face[h0] >= 0) continue;
        VertexId f = static_cast<VertexId>(orbits.size());
        orbits.emplace_back();
        std::int32_t h = h0;
        do {
            face[h] = f;
            orbits[f].push_back(h);
            h = next_half(h);
        } while (h != h0);
    }
    std::int32_t nf = static_cast<std::int32_t>(orbits.size());
    if (n - m + nf != 2)
        throw std::invalid_argument("planar dual: embedding is not planar (Euler check failed)");

    PlanarDual pd;
    pd.face_left.resize(m);
    pd.face_right.resize(m);
    for (EdgeId e = 0; e < m; ++e) {
        pd.face_left[e] = face[2 * e];
        pd.face_right[e] = face[2 * e + 1];
        if (pd.face_left[e] == pd.face_right[e])
            throw std::invalid_argument("planar dual: primal bridge would give a dual self-loop");
    }

    // Representative positions: mean midpoint of the boundary segments.
    std::vector<Vec2> repr(nf, Vec2{});
    for (VertexId f = 0; f < nf; ++f) {
        for (std::int32_t h : orbits[f]) {
            EdgeId e = h >> 1;
            Vec2 pa = endpoint_pos(g, e, g.edges[e].a);
            Vec2 pb = endpoint_pos(g, e, g.edges[e].b);
            repr[f] = repr[f] + 0.5 * (pa + pb);
        }
        repr[f] = (1.0 / static_cast<double>(orbits[f].size())) * repr[f];
    }

    pd.dual.coords = repr;
    pd.dual.anchor = g.anchor;
    pd.dual.delta = g.delta;
    pd.dual.edges.reserve(m);
    for (EdgeId e = 0; e < m; ++e) {
        VertexId fa = pd.face_left[e], fb = pd.face_right[e];
        pd.dual.edges.push_back({fa, fb, dist(repr[fa], repr[fb]), repr[fb]});
    }
    pd.to_dual.resize(m);
    pd.to_primal.resize(m);
    std::iota(pd.to_dual.begin(), pd.to_dual.end(), 0);
    std::iota(pd.to_primal.begin(), pd.to_primal.end(), 0);

    // Dual rotations: around a face, the boundary orbit already lists the
    // crossed edges in cyclic order.
    pd.dual_embedding.rot.resize(nf);
    for (VertexId f = 0; f < nf; ++f) {
        pd.dual_embedding.rot[f].reserve(orbits[f].size());
        for (std::int32_t h : orbits[f]) {
            EdgeId e = h >> 1;
            pd.dual_embedding.rot[f].push_back(2 * e + (pd.face_left[e] == f ? 0 : 1));
        }
    }

    // Boundary roles swap across the annulus dual: the face across the free
    // side is the dual super-vertex stand-in, the faces around the primal
    // super-vertex are the dual free row.
    bool one_sided_wired = g.wired() && g.annulus && g.annulus->r > 0.0 &&
                           (g.annulus->inner == Boundary::Wired) != (g.annulus->outer == Boundary::Wired);
    if (one_sided_wired) {
        std::vector<char> at_super(nf, 0);
        for (EdgeId e = 0; e < m; ++e)
            if (!g.has_coord(g.edges[e].a) || !g.has_coord(g.edges[e].b)) {
                at_super[pd.face_left[e]] = 1;
                at_super[pd.face_right[e]] = 1;
            }
        VertexId across = -1;
        for (VertexId f = 0; f < nf; ++f) {
            if (at_super[f]) continue;
            double turn = 0.0;
            const auto& orb = orbits[f];
            for (std::size_t i = 0; i < orb.size(); ++i) {
                Vec2 p0 = g.coords[half_tail(g, orb[i])];
                Vec2 p1 = g.coords[half_tail(g, orb[(i + 1) % orb.size()])];
                turn += angle_increment(g.anchor, p0, p1);
            }
            if (std::lround(turn / (2.0 * M_PI)) != 0) {
                if (across >= 0)
                    throw std::invalid_argument("planar dual: ambiguous annulus face structure");
                across = f;
            }
        }
        if (across < 0)
            throw std::invalid_argument("planar dual: no face across the free side");

        // Relabel so the face across the free side takes the last index and
        // can serve as the dual super-vertex.
        VertexId last = nf - 1;
        auto relabel = [&](VertexId v) { return v == across ? last : (v == last ? across : v); };
        if (across != last) {
            std::swap(pd.dual.coords[across], pd.dual.coords[last]);
            std::swap(pd.dual_embedding.rot[across], pd.dual_embedding.rot[last]);
            std::vector<char> tmp(at_super);
            at_super[across] = tmp[last];
            at_super[last] = tmp[across];
            for (auto& e : pd.dual.edges) {
                e.a = relabel(e.a);
                e.b = relabel(e.b);
            }
            for (EdgeId e = 0; e < m; ++e) {
                pd.face_left[e] = relabel(pd.face_left[e]);
                pd.face_right[e] = relabel(pd.face_right[e]);
            }
        }
        Vec2 hub_pos = pd.dual.coords[last];
        pd.dual.coords.pop_back();
        std::vector<char> flipped(m, 0);
        for (EdgeId d = 0; d < m; ++d) {
            auto& e = pd.dual.edges[d];
            if (e.a == last) {
                std::swap(e.a, e.b);
                flipped[d] = 1;
            }
            e.tip = (e.b == last) ? hub_pos : pd.dual.coords[e.b];
        }
        for (auto& rot : pd.dual_embedding.rot)
            for (auto& h : rot)
                if (flipped[h >> 1]) h ^= 1;
        auto& row = (g.annulus->outer == Boundary::Wired) ? pd.dual.outer_free : pd.dual.inner_free;
        for (VertexId f = 0; f < nf - 1; ++f)
            if (at_super[f]) row.push_back(f);
        pd.dual.finalize(true);
    } else {
        for (auto& e : pd.dual.edges) e.tip = pd.dual.coords[e.b];
        pd.dual.finalize(false);
    }
    return pd;
}

} // namespace spantree
