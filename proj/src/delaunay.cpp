#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spantree/est.hpp"

namespace spantree {

namespace {

using Rational = boost::multiprecision::cpp_rational;

int orientation_exact(Vec2 a, Vec2 b, Vec2 c) {
    Rational det = (Rational(b.x) - Rational(a.x)) * (Rational(c.y) - Rational(a.y)) -
                   (Rational(b.y) - Rational(a.y)) * (Rational(c.x) - Rational(a.x));
    return det.sign();
}

int incircle_exact(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    Rational adx = Rational(a.x) - Rational(d.x), ady = Rational(a.y) - Rational(d.y);
    Rational bdx = Rational(b.x) - Rational(d.x), bdy = Rational(b.y) - Rational(d.y);
    Rational cdx = Rational(c.x) - Rational(d.x), cdy = Rational(c.y) - Rational(d.y);
    Rational det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) +
                   (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy) +
                   (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
    return det.sign();
}

} // namespace

int orientation_sign(Vec2 a, Vec2 b, Vec2 c) {
    // The float filter is an order of magnitude above the worst rounding of
    // the two products, so a passing sign is already exact.
    double t1 = (b.x - a.x) * (c.y - a.y);
    double t2 = (b.y - a.y) * (c.x - a.x);
    double det = t1 - t2;
    if (std::abs(det) > 1e-14 * (std::abs(t1) + std::abs(t2))) return det > 0.0 ? 1 : -1;
    return orientation_exact(a, b, c);
}

int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    double adx = a.x - d.x, ady = a.y - d.y;
    double bdx = b.x - d.x, bdy = b.y - d.y;
    double cdx = c.x - d.x, cdy = c.y - d.y;
    double ad2 = adx * adx + ady * ady;
    double bd2 = bdx * bdx + bdy * bdy;
    double cd2 = cdx * cdx + cdy * cdy;
    double det = ad2 * (bdx * cdy - cdx * bdy) + bd2 * (cdx * ady - adx * cdy) +
                 cd2 * (adx * bdy - bdx * ady);
    double mag = ad2 * (std::abs(bdx * cdy) + std::abs(cdx * bdy)) +
                 bd2 * (std::abs(cdx * ady) + std::abs(adx * cdy)) +
                 cd2 * (std::abs(adx * bdy) + std::abs(bdx * ady));
    if (std::abs(det) > 1e-13 * mag) return det > 0.0 ? 1 : -1;
    return incircle_exact(a, b, c, d);
}

namespace {

/* Cocircular ties resolve as if every point were lifted onto the paraboloid
 * and pushed up by a strictly decreasing amount of its index; the push enters
 * the determinant through the orientation of the other three points, so ties
 * cascade in index order and the result stays alternating in its arguments. */
int in_disc_sos(const std::vector<Vec2>& pts, VertexId a, VertexId b, VertexId c, VertexId d) {
    int s = incircle_sign(pts[a], pts[b], pts[c], pts[d]);
    if (s != 0) return s;
    struct Term {
        VertexId v;
        int sign;
        VertexId x, y, z;
    };
    std::array<Term, 4> terms{{{a, 1, b, c, d}, {b, -1, a, c, d}, {c, 1, a, b, d}, {d, -1, a, b, c}}};
    std::sort(terms.begin(), terms.end(), [](const Term& u, const Term& v) { return u.v < v.v; });
    for (const Term& t : terms) {
        int o = orientation_sign(pts[t.x], pts[t.y], pts[t.z]);
        if (o != 0) return t.sign * o;
    }
    return 0; // unreachable for a non-degenerate triangle
}

// Exact betweenness of collinear p on the open segment (u, v).
bool strictly_between(Vec2 u, Vec2 v, Vec2 p) {
    if (u.x != v.x) return (u.x < p.x) != (v.x < p.x) && p.x != u.x && p.x != v.x;
    return (u.y < p.y) != (v.y < p.y) && p.y != u.y && p.y != v.y;
}

/* Triangle soup with one ghost vertex closing the hull: a ghost triangle
 * (u, v, G) owns the open halfplane strictly left of u->v plus the open edge
 * segment, so every non-duplicate point conflicts with at least one alive
 * triangle and cavities are always ringed. */
struct Mesh {
    const std::vector<Vec2>* pts = nullptr;
    VertexId ghost = -1;
    std::vector<std::array<VertexId, 3>> tv;
    std::vector<std::array<std::int32_t, 3>> tn;
    std::vector<std::uint32_t> mark;
    std::vector<char> alive;
    std::vector<std::int32_t> free_slots;
    std::uint32_t epoch = 0;
    std::int32_t hint = 0;

    bool is_ghost(std::int32_t t) const {
        return tv[t][0] == ghost || tv[t][1] == ghost || tv[t][2] == ghost;
    }
};

bool in_conflict(const Mesh& m, std::int32_t t, VertexId p) {
    const auto& v = m.tv[t];
    int gi = -1;
    for (int i = 0; i < 3; ++i)
        if (v[i] == m.ghost) gi = i;
    const std::vector<Vec2>& pts = *m.pts;
    if (gi < 0) return in_disc_sos(pts, v[0], v[1], v[2], p) > 0;
    VertexId u = v[(gi + 1) % 3], w = v[(gi + 2) % 3];
    int o = orientation_sign(pts[u], pts[w], pts[p]);
    if (o != 0) return o > 0;
    return strictly_between(pts[u], pts[w], pts[p]);
}

std::int32_t alloc_triangle(Mesh& m, VertexId a, VertexId b, VertexId c) {
    std::int32_t t;
    if (!m.free_slots.empty()) {
        t = m.free_slots.back();
        m.free_slots.pop_back();
    } else {
        t = static_cast<std::int32_t>(m.tv.size());
        m.tv.push_back({});
        m.tn.push_back({});
        m.mark.push_back(0);
        m.alive.push_back(0);
    }
    m.tv[t] = {a, b, c};
    m.tn[t] = {-1, -1, -1};
    m.alive[t] = 1;
    return t;
}

std::int32_t locate_conflict(Mesh& m, VertexId p) {
    std::int32_t t = m.hint, prev = -1;
    std::int64_t cap = 4 * static_cast<std::int64_t>(m.tv.size()) + 64;
    const std::vector<Vec2>& pts = *m.pts;
    while (t >= 0 && m.alive[t] && cap-- > 0) {
        if (in_conflict(m, t, p)) return t;
        if (m.is_ghost(t)) break; // a ghost entered from its hull edge always conflicts
        std::int32_t next = -1;
        const auto& v = m.tv[t];
        for (int i = 0; i < 3 && next < 0; ++i) {
            std::int32_t nb = m.tn[t][i];
            if (nb == prev) continue;
            if (orientation_sign(pts[v[(i + 1) % 3]], pts[v[(i + 2) % 3]], pts[p]) < 0) next = nb;
        }
        prev = t;
        t = next;
    }
    for (std::int32_t s = 0; s < static_cast<std::int32_t>(m.tv.size()); ++s)
        if (m.alive[s] && in_conflict(m, s, p)) return s;
    throw std::logic_error("point insertion found no conflicting triangle");
}

void insert_point(Mesh& m, VertexId p) {
    std::int32_t seed = locate_conflict(m, p);
    ++m.epoch;
    std::vector<std::int32_t> cavity{seed};
    m.mark[seed] = m.epoch;
    struct Border {
        VertexId u, v;
        std::int32_t outer, slot;
    };
    std::vector<Border> ring;
    for (std::size_t i = 0; i < cavity.size(); ++i) {
        std::int32_t s = cavity[i];
        for (int j = 0; j < 3; ++j) {
            std::int32_t nb = m.tn[s][j];
            if (m.mark[nb] == m.epoch) continue;
            if (in_conflict(m, nb, p)) {
                m.mark[nb] = m.epoch;
                cavity.push_back(nb);
                continue;
            }
            std::int32_t back = -1;
            for (int k = 0; k < 3; ++k)
                if (m.tn[nb][k] == s) back = k;
            ring.push_back({m.tv[s][(j + 1) % 3], m.tv[s][(j + 2) % 3], nb, back});
        }
    }

    std::map<VertexId, std::size_t> start_at;
    for (std::size_t k = 0; k < ring.size(); ++k) start_at[ring[k].u] = k;
    if (start_at.size() != ring.size() || ring.size() < 3)
        throw std::logic_error("insertion cavity has no simple border ring");

    for (std::int32_t s : cavity) {
        m.alive[s] = 0;
        m.free_slots.push_back(s);
    }
    std::vector<std::int32_t> fan(ring.size(), -1);
    std::vector<std::size_t> order(ring.size());
    order[0] = 0;
    for (std::size_t k = 1; k < ring.size(); ++k) {
        auto it = start_at.find(ring[order[k - 1]].v);
        if (it == start_at.end()) throw std::logic_error("insertion cavity has a broken border ring");
        order[k] = it->second;
    }
    if (ring[order.back()].v != ring[order[0]].u)
        throw std::logic_error("insertion cavity border does not close");
    for (std::size_t k = 0; k < order.size(); ++k)
        fan[k] = alloc_triangle(m, ring[order[k]].u, ring[order[k]].v, p);
    std::size_t nf = fan.size();
    for (std::size_t k = 0; k < nf; ++k) {
        const Border& br = ring[order[k]];
        m.tn[fan[k]] = {fan[(k + 1) % nf], fan[(k + nf - 1) % nf], br.outer};
        m.tn[br.outer][br.slot] = fan[k];
    }
    for (std::size_t k = 0; k < nf; ++k)
        if (!m.is_ghost(fan[k])) {
            m.hint = fan[k];
            return;
        }
    throw std::logic_error("insertion fan produced only ghost triangles");
}

// Serpentine bucket order over a sqrt-sized grid keeps consecutive
// insertions spatially close, so the conflict walk stays short.
std::vector<VertexId> snake_order(const std::vector<Vec2>& pts) {
    std::int32_t n = static_cast<std::int32_t>(pts.size());
    double x0 = pts[0].x, x1 = x0, y0 = pts[0].y, y1 = y0;
    for (const Vec2& q : pts) {
        x0 = std::min(x0, q.x);
        x1 = std::max(x1, q.x);
        y0 = std::min(y0, q.y);
        y1 = std::max(y1, q.y);
    }
    std::int32_t k = std::max<std::int32_t>(1, static_cast<std::int32_t>(std::sqrt(n / 2.0)));
    double wx = x1 > x0 ? (x1 - x0) : 1.0, wy = y1 > y0 ? (y1 - y0) : 1.0;
    std::vector<std::int64_t> cell(n);
    std::vector<VertexId> order(n);
    for (std::int32_t i = 0; i < n; ++i) {
        auto cx = static_cast<std::int64_t>(std::min<double>(k - 1, (pts[i].x - x0) / wx * k));
        auto cy = static_cast<std::int64_t>(std::min<double>(k - 1, (pts[i].y - y0) / wy * k));
        std::int64_t col = (cy % 2 == 0) ? cx : (k - 1 - cx);
        cell[i] = cy * k + col;
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        if (cell[a] != cell[b]) return cell[a] < cell[b];
        if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
        return pts[a].y < pts[b].y;
    });
    return order;
}

bool lex_less(Vec2 a, Vec2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

void require_distinct(const std::vector<Vec2>& pts) {
    std::vector<std::int32_t> idx(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) idx[i] = static_cast<std::int32_t>(i);
    std::sort(idx.begin(), idx.end(),
              [&](std::int32_t a, std::int32_t b) { return lex_less(pts[a], pts[b]); });
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (pts[idx[i - 1]] == pts[idx[i]]) throw std::invalid_argument("duplicate points");
}

Triangulation collinear_path(const std::vector<Vec2>& pts) {
    Triangulation tri;
    tri.points = pts;
    std::vector<std::int32_t> idx(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) idx[i] = static_cast<std::int32_t>(i);
    std::sort(idx.begin(), idx.end(),
              [&](std::int32_t a, std::int32_t b) { return lex_less(pts[a], pts[b]); });
    for (std::size_t i = 1; i < idx.size(); ++i) {
        Triangulation::EdgeRef er;
        er.a = std::min(idx[i - 1], idx[i]);
        er.b = std::max(idx[i - 1], idx[i]);
        tri.edges.push_back(er);
    }
    std::sort(tri.edges.begin(), tri.edges.end(),
              [](const Triangulation::EdgeRef& u, const Triangulation::EdgeRef& v) {
                  return u.a != v.a ? u.a < v.a : u.b < v.b;
              });
    return tri;
}

Vec2 circumcenter_of(Vec2 a, Vec2 b, Vec2 c) {
    Vec2 u = b - a, v = c - a;
    double d = 2.0 * cross(u, v);
    double ux = norm2(u), vx = norm2(v);
    return {a.x + (v.y * ux - u.y * vx) / d, a.y + (u.x * vx - v.x * ux) / d};
}

} // namespace

Triangulation delaunay_triangulation(const std::vector<Vec2>& points) {
    require_distinct(points);
    std::int32_t n = static_cast<std::int32_t>(points.size());
    if (n < 3) return collinear_path(points);

    std::vector<VertexId> order = snake_order(points);
    std::int32_t third = -1;
    for (std::int32_t j = 2; j < n && third < 0; ++j)
        if (orientation_sign(points[order[0]], points[order[1]], points[order[j]]) != 0) third = j;
    if (third < 0) return collinear_path(points);
    std::swap(order[2], order[third]);

    VertexId a = order[0], b = order[1], c = order[2];
    if (orientation_sign(points[a], points[b], points[c]) < 0) std::swap(b, c);

    Mesh m;
    m.pts = &points;
    m.ghost = n;
    alloc_triangle(m, a, b, c);
    alloc_triangle(m, b, a, m.ghost);
    alloc_triangle(m, c, b, m.ghost);
    alloc_triangle(m, a, c, m.ghost);
    m.tn[0] = {2, 3, 1};
    m.tn[1] = {3, 2, 0};
    m.tn[2] = {1, 3, 0};
    m.tn[3] = {2, 1, 0};
    m.hint = 0;

    for (std::int32_t i = 3; i < n; ++i) insert_point(m, order[i]);

    Triangulation tri;
    tri.points = points;
    std::vector<std::int32_t> remap(m.tv.size(), -1);
    for (std::size_t t = 0; t < m.tv.size(); ++t)
        if (m.alive[t] && !m.is_ghost(static_cast<std::int32_t>(t))) {
            remap[t] = static_cast<std::int32_t>(tri.triangles.size());
            tri.triangles.push_back(m.tv[t]);
        }
    tri.neighbors.reserve(tri.triangles.size());
    tri.circumcenters.reserve(tri.triangles.size());
    for (std::size_t t = 0; t < m.tv.size(); ++t) {
        if (remap[t] < 0) continue;
        std::array<std::int32_t, 3> nb{};
        for (int i = 0; i < 3; ++i) nb[i] = remap[m.tn[t][i]];
        tri.neighbors.push_back(nb);
        const auto& v = m.tv[t];
        tri.circumcenters.push_back(circumcenter_of(points[v[0]], points[v[1]], points[v[2]]));
    }

    std::map<std::pair<VertexId, VertexId>, Triangulation::EdgeRef> edges;
    for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
        const auto& v = tri.triangles[t];
        for (int i = 0; i < 3; ++i) {
            VertexId u = v[(i + 1) % 3], w = v[(i + 2) % 3];
            auto key = std::make_pair(std::min(u, w), std::max(u, w));
            auto& er = edges[key];
            er.a = key.first;
            er.b = key.second;
            (u < w ? er.left : er.right) = static_cast<std::int32_t>(t);
        }
    }
    tri.edges.reserve(edges.size());
    for (const auto& [key, er] : edges) tri.edges.push_back(er);
    return tri;
}

} // namespace spantree
