#include "spantree/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace spantree {

void RegionGraph::finalize(bool wired) {
    wired_ = wired;
    std::int32_t n = vertex_count();
    for (const Edge& e : edges) {
        if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n || e.a == e.b)
            throw std::invalid_argument("region graph edge endpoints out of range");
    }
    adj_off_.assign(n + 1, 0);
    for (const Edge& e : edges) {
        ++adj_off_[e.a + 1];
        ++adj_off_[e.b + 1];
    }
    for (std::int32_t v = 0; v < n; ++v) adj_off_[v + 1] += adj_off_[v];
    adj_.resize(adj_off_[n]);
    std::vector<std::int32_t> cursor(adj_off_.begin(), adj_off_.end() - 1);
    for (EdgeId i = 0; i < static_cast<EdgeId>(edges.size()); ++i) {
        const Edge& e = edges[i];
        adj_[cursor[e.a]++] = {e.b, i};
        adj_[cursor[e.b]++] = {e.a, i};
    }
}

bool RegionGraph::is_connected() const {
    std::int32_t n = vertex_count();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    std::int32_t reached = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (const Arc* a = arcs_begin(v); a != arcs_end(v); ++a) {
            if (!seen[a->to]) {
                seen[a->to] = 1;
                ++reached;
                stack.push_back(a->to);
            }
        }
    }
    return reached == n;
}

namespace {

struct LatticeIndex {
    std::int64_t ix0, iy0, nx, ny;
    std::vector<VertexId> id; // -1 where absent

    VertexId lookup(std::int64_t ix, std::int64_t iy) const {
        if (ix < ix0 || ix >= ix0 + nx || iy < iy0 || iy >= iy0 + ny) return -1;
        return id[static_cast<std::size_t>((iy - iy0) * nx + (ix - ix0))];
    }
};

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

} // namespace

RegionGraph build_lattice_annulus(double delta, const AnnulusSpec& spec) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (!(spec.R > 0.0) || spec.r < 0.0 || spec.r >= spec.R)
        throw std::invalid_argument("annulus requires 0 <= r < R");
    if (spec.r > 0.0 && delta >= (spec.R - spec.r) / 4.0)
        throw std::invalid_argument("lattice spacing too coarse for the shell width");

    RegionGraph g;
    g.delta = delta;
    g.anchor = spec.center;
    g.annulus = spec;

    LatticeIndex idx;
    idx.ix0 = static_cast<std::int64_t>(std::floor((spec.center.x - spec.R) / delta)) - 1;
    idx.iy0 = static_cast<std::int64_t>(std::floor((spec.center.y - spec.R) / delta)) - 1;
    idx.nx = static_cast<std::int64_t>(std::ceil((spec.center.x + spec.R) / delta)) + 2 - idx.ix0;
    idx.ny = static_cast<std::int64_t>(std::ceil((spec.center.y + spec.R) / delta)) + 2 - idx.iy0;
    idx.id.assign(static_cast<std::size_t>(idx.nx * idx.ny), -1);

    auto pos = [&](std::int64_t ix, std::int64_t iy) { return Vec2{ix * delta, iy * delta}; };
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    for (std::int64_t iy = idx.iy0; iy < idx.iy0 + idx.ny; ++iy)
        for (std::int64_t ix = idx.ix0; ix < idx.ix0 + idx.nx; ++ix)
            if (spec.in_shell(pos(ix, iy))) {
                idx.id[static_cast<std::size_t>((iy - idx.iy0) * idx.nx + (ix - idx.ix0))] =
                    static_cast<VertexId>(g.coords.size());
                g.coords.push_back(pos(ix, iy));
                cells.emplace_back(ix, iy);
            }
    if (g.coords.empty()) throw std::invalid_argument("annulus contains no lattice points");

    bool want_wired = (spec.r > 0.0 && spec.inner == Boundary::Wired) || spec.outer == Boundary::Wired;
    VertexId wired_id = want_wired ? static_cast<VertexId>(g.coords.size()) : -1;
    std::vector<char> tag_inner(g.coords.size(), 0), tag_outer(g.coords.size(), 0);

    for (VertexId v = 0; v < static_cast<VertexId>(g.coords.size()); ++v) {
        auto [ix, iy] = cells[v];
        for (int d = 0; d < 4; ++d) {
            std::int64_t jx = ix + kDx[d], jy = iy + kDy[d];
            VertexId w = idx.lookup(jx, jy);
            if (w >= 0) {
                if (d < 2) // +x and +y only, so each lattice edge appears once
                    g.edges.push_back({v, w, delta, g.coords[w]});
                continue;
            }
            Vec2 out = pos(jx, jy);
            bool inside_hole = spec.r > 0.0 && dist2(out, spec.center) < spec.r * spec.r;
            Boundary bc = inside_hole ? spec.inner : spec.outer;
            if (bc == Boundary::Wired) {
                g.edges.push_back({v, wired_id, delta, out});
            } else if (inside_hole) {
                tag_inner[v] = 1;
            } else {
                tag_outer[v] = 1;
            }
        }
    }
    for (VertexId v = 0; v < static_cast<VertexId>(g.coords.size()); ++v) {
        if (tag_inner[v]) g.inner_free.push_back(v);
        if (tag_outer[v]) g.outer_free.push_back(v);
    }
    g.finalize(want_wired);
    if (!g.is_connected()) throw std::invalid_argument("annulus lattice graph is disconnected");
    return g;
}

RegionGraph build_lattice_box(double delta, const Rect& rect, Boundary bc) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (!(rect.width() > 0.0) || !(rect.height() > 0.0))
        throw std::invalid_argument("rectangle must have positive extent");
    if (delta > std::min(rect.width(), rect.height()))
        throw std::invalid_argument("lattice spacing too coarse for the rectangle");

    RegionGraph g;
    g.delta = delta;
    g.anchor = {(rect.x0 + rect.x1) / 2.0, (rect.y0 + rect.y1) / 2.0};

    LatticeIndex idx;
    idx.ix0 = static_cast<std::int64_t>(std::floor(rect.x0 / delta)) - 1;
    idx.iy0 = static_cast<std::int64_t>(std::floor(rect.y0 / delta)) - 1;
    idx.nx = static_cast<std::int64_t>(std::ceil(rect.x1 / delta)) + 2 - idx.ix0;
    idx.ny = static_cast<std::int64_t>(std::ceil(rect.y1 / delta)) + 2 - idx.iy0;
    idx.id.assign(static_cast<std::size_t>(idx.nx * idx.ny), -1);

    auto pos = [&](std::int64_t ix, std::int64_t iy) { return Vec2{ix * delta, iy * delta}; };
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    for (std::int64_t iy = idx.iy0; iy < idx.iy0 + idx.ny; ++iy)
        for (std::int64_t ix = idx.ix0; ix < idx.ix0 + idx.nx; ++ix)
            if (rect.contains(pos(ix, iy))) {
                idx.id[static_cast<std::size_t>((iy - idx.iy0) * idx.nx + (ix - idx.ix0))] =
                    static_cast<VertexId>(g.coords.size());
                g.coords.push_back(pos(ix, iy));
                cells.emplace_back(ix, iy);
            }
    if (g.coords.empty()) throw std::invalid_argument("rectangle contains no lattice points");

    bool want_wired = bc == Boundary::Wired;
    VertexId wired_id = want_wired ? static_cast<VertexId>(g.coords.size()) : -1;
    std::vector<char> tag(g.coords.size(), 0);
    for (VertexId v = 0; v < static_cast<VertexId>(g.coords.size()); ++v) {
        auto [ix, iy] = cells[v];
        for (int d = 0; d < 4; ++d) {
            VertexId w = idx.lookup(ix + kDx[d], iy + kDy[d]);
            if (w >= 0) {
                if (d < 2) g.edges.push_back({v, w, delta, g.coords[w]});
                continue;
            }
            if (want_wired)
                g.edges.push_back({v, wired_id, delta, pos(ix + kDx[d], iy + kDy[d])});
            else
                tag[v] = 1;
        }
    }
    for (VertexId v = 0; v < static_cast<VertexId>(g.coords.size()); ++v)
        if (tag[v]) g.outer_free.push_back(v);
    g.finalize(want_wired);
    if (!g.is_connected()) throw std::invalid_argument("box lattice graph is disconnected");
    return g;
}

} // namespace spantree
