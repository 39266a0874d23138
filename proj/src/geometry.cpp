#include "polymotion/geometry.hpp"

#include <algorithm>
#include <utility>

namespace polymotion {

Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(const Scalar& s, const Point& p) { return {s * p.x, s * p.y}; }

Scalar cross(const Point& origin, const Point& p, const Point& q) {
    return (p.x - origin.x) * (q.y - origin.y) - (p.y - origin.y) * (q.x - origin.x);
}

int orientation(const Point& a, const Point& b, const Point& c) {
    return sign(cross(a, b, c));
}

Scalar squared_distance(const Point& a, const Point& b) {
    Scalar dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

Scalar squared_distance(const Point& p, const Segment& s) {
    Point d = s.b - s.a;
    Scalar len2 = d.x * d.x + d.y * d.y;
    Scalar t = ((p.x - s.a.x) * d.x + (p.y - s.a.y) * d.y) / len2;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    Point closest = s.a + t * d;
    return squared_distance(p, closest);
}

bool collinear(const Point& a, const Point& b, const Point& c) {
    return orientation(a, b, c) == 0;
}

bool on_segment(const Point& p, const Segment& s) {
    if (orientation(s.a, s.b, p) != 0) return false;
    return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
           std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

bool strictly_inside_segment(const Point& p, const Segment& s) {
    return on_segment(p, s) && p != s.a && p != s.b;
}

namespace {

/* 1-dimensional overlap of two collinear segments, as parameters along the
 * dominant axis. Returns false when they share at most a point. */
bool collinear_overlap_positive(const Segment& s, const Segment& t) {
    bool use_x = s.a.x != s.b.x;
    auto coord = [use_x](const Point& p) { return use_x ? p.x : p.y; };
    Scalar s_lo = std::min(coord(s.a), coord(s.b)), s_hi = std::max(coord(s.a), coord(s.b));
    Scalar t_lo = std::min(coord(t.a), coord(t.b)), t_hi = std::max(coord(t.a), coord(t.b));
    return std::max(s_lo, t_lo) < std::min(s_hi, t_hi);
}

}  // namespace

bool segments_properly_intersect(const Segment& s, const Segment& t) {
    int o1 = orientation(s.a, s.b, t.a);
    int o2 = orientation(s.a, s.b, t.b);
    int o3 = orientation(t.a, t.b, s.a);
    int o4 = orientation(t.a, t.b, s.b);

    if (o1 * o2 < 0 && o3 * o4 < 0) return true;  // transversal crossing

    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0)
        return collinear_overlap_positive(s, t);

    // Touching cases: an endpoint of one lies strictly inside the other.
    if (o1 == 0 && strictly_inside_segment(t.a, s)) return true;
    if (o2 == 0 && strictly_inside_segment(t.b, s)) return true;
    if (o3 == 0 && strictly_inside_segment(s.a, t)) return true;
    if (o4 == 0 && strictly_inside_segment(s.b, t)) return true;
    return false;
}

bool segments_touch(const Segment& s, const Segment& t) {
    if (segments_properly_intersect(s, t)) return true;
    return t.a == s.a || t.a == s.b || t.b == s.a || t.b == s.b ||
           on_segment(t.a, s) || on_segment(t.b, s) ||
           on_segment(s.a, t) || on_segment(s.b, t);
}

bool is_simple(const std::vector<Point>& vertices,
               std::pair<std::size_t, std::size_t>* offending) {
    std::size_t n = vertices.size();
    if (n < 3) {
        if (offending) *offending = {0, 0};
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (vertices[i] == vertices[(i + 1) % n]) {
            if (offending) *offending = {i, i};
            return false;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        Segment ei(vertices[i], vertices[(i + 1) % n]);
        for (std::size_t j = i + 1; j < n; ++j) {
            Segment ej(vertices[j], vertices[(j + 1) % n]);
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            bool bad = adjacent ? segments_properly_intersect(ei, ej)
                                : segments_touch(ei, ej);
            if (bad) {
                if (offending) *offending = {i, j};
                return false;
            }
        }
    }
    return true;
}

Polygon::Polygon(std::vector<Point> vertices) : verts_(std::move(vertices)) {
    if (verts_.size() < 3)
        throw std::invalid_argument("polygon needs at least 3 vertices");
    std::pair<std::size_t, std::size_t> bad;
    if (!is_simple(verts_, &bad)) {
        if (bad.first == bad.second)
            throw NonSimplePolygonError(bad.first, bad.second,
                "polygon is degenerate: vertices " + std::to_string(bad.first) + " and " +
                std::to_string((bad.first + 1) % verts_.size()) + " coincide");
        throw NonSimplePolygonError(bad.first, bad.second,
            "polygon is not simple: edge (" + std::to_string(bad.first) + "," +
            std::to_string(bad.first + 1) + ") intersects edge (" +
            std::to_string(bad.second) + "," +
            std::to_string((bad.second + 1) % verts_.size()) + ")");
    }
    Scalar area2(0);
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        const Point& a = verts_[i];
        const Point& b = verts_[(i + 1) % verts_.size()];
        area2 += a.x * b.y - b.x * a.y;
    }
    if (sign(area2) < 0) {
        std::reverse(verts_.begin(), verts_.end());
        reversed_ = true;
    }
}

Segment Polygon::edge(std::size_t i) const {
    if (i >= verts_.size()) throw std::out_of_range("edge index out of range");
    return Segment(verts_[i], verts_[(i + 1) % verts_.size()]);
}

std::vector<Point> Polygon::input_vertices() const {
    std::vector<Point> out = verts_;
    if (reversed_) std::reverse(out.begin(), out.end());
    return out;
}

PointLocation point_location(const Polygon& poly, const Point& p) {
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        if (on_segment(p, poly.edge(i))) return PointLocation::Boundary;

    // Crossing number against the ray to +x, half-open in y so vertices on
    // the ray are counted once.
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % n];
        if ((a.y > p.y) == (b.y > p.y)) continue;
        int o = orientation(a, b, p);
        if (b.y > a.y ? o > 0 : o < 0) inside = !inside;
    }
    return inside ? PointLocation::Interior : PointLocation::Exterior;
}

Convexity classify_convexity(const Polygon& poly) {
    std::size_t n = poly.size();
    bool degenerate = false;
    for (std::size_t i = 0; i < n; ++i) {
        int o = orientation(poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]);
        if (o < 0) return Convexity::NonConvex;
        if (o == 0) degenerate = true;
    }
    return degenerate ? Convexity::Degenerate : Convexity::Strict;
}

bool is_convex(const Polygon& poly) {
    return classify_convexity(poly) != Convexity::NonConvex;
}

std::vector<Scalar> segment_split_params(const Polygon& poly, const Segment& s) {
    Point d = s.b - s.a;
    std::vector<Scalar> params;
    params.push_back(Scalar(0));
    params.push_back(Scalar(1));

    for (std::size_t i = 0; i < poly.size(); ++i) {
        Segment e = poly.edge(i);
        Point ed = e.b - e.a;
        Scalar denom = d.x * ed.y - d.y * ed.x;
        if (sign(denom) != 0) {
            Point w = e.a - s.a;
            Scalar t = (w.x * ed.y - w.y * ed.x) / denom;
            Scalar u = (w.x * d.y - w.y * d.x) / denom;
            if (t >= 0 && t <= 1 && u >= 0 && u <= 1) params.push_back(t);
        } else if (orientation(s.a, s.b, e.a) == 0) {
            // Collinear edge: project its endpoints onto s.
            Scalar len2 = d.x * d.x + d.y * d.y;
            for (const Point* q : {&e.a, &e.b}) {
                Scalar t = ((q->x - s.a.x) * d.x + (q->y - s.a.y) * d.y) / len2;
                if (t >= 0 && t <= 1) params.push_back(t);
            }
        }
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    return params;
}

bool segment_in_closure(const Polygon& poly, const Segment& s) {
    Point d = s.b - s.a;
    std::vector<Scalar> params = segment_split_params(poly, s);
    // Between consecutive boundary meetings sidedness is constant, so each
    // piece is decided by its midpoint.
    for (std::size_t i = 0; i + 1 < params.size(); ++i) {
        Scalar mid = (params[i] + params[i + 1]) / 2;
        Point q = s.a + mid * d;
        if (point_location(poly, q) == PointLocation::Exterior) return false;
    }
    return true;
}

}  // namespace polymotion
