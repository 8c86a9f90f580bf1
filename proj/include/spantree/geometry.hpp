#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spantree {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline double dist2(Vec2 a, Vec2 b) { return norm2(a - b); }

/* Axis-aligned rectangle [x0,x1] x [y0,y1]. */
struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool contains(Vec2 p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
    // Distance from an interior point to the rectangle boundary.
    double boundary_distance(Vec2 p) const {
        double d = p.x - x0;
        d = std::min(d, x1 - p.x);
        d = std::min(d, p.y - y0);
        d = std::min(d, y1 - p.y);
        return d;
    }
};

struct Circle {
    Vec2 center;
    double radius = 0.0;

    // Open disc membership; points on the circle itself count as outside.
    bool contains(Vec2 p) const { return dist2(p, center) < radius * radius; }
};

// Distance from point p to the closed segment [a, b].
inline double point_segment_dist(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = norm2(ab);
    if (len2 == 0.0) return dist(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::max(0.0, std::min(1.0, t));
    return dist(p, a + t * ab);
}

// Distance between closed segments [a,b] and [c,d]; 0 when they intersect.
inline double segment_segment_dist(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0)
        return 0.0;
    double m = point_segment_dist(c, a, b);
    m = std::min(m, point_segment_dist(d, a, b));
    m = std::min(m, point_segment_dist(a, c, d));
    m = std::min(m, point_segment_dist(b, c, d));
    return m;
}

// Signed angle of the turn from direction (p1-p0) viewed from a fixed center:
// increment of atan2(p - c) along the step p0 -> p1, taken in (-pi, pi].
inline double angle_increment(Vec2 c, Vec2 p0, Vec2 p1) {
    Vec2 u = p0 - c, v = p1 - c;
    return std::atan2(cross(u, v), dot(u, v));
}

/* Polyline; no two consecutive points coincide. */
struct Curve {
    std::vector<Vec2> points;
};

} // namespace spantree
