#ifndef POLYMOTION_GEOMETRY_HPP
#define POLYMOTION_GEOMETRY_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymotion/scalar.hpp"

namespace polymotion {

struct Point {
    Scalar x, y;
    Point() : x(0), y(0) {}
    Point(Scalar px, Scalar py) : x(std::move(px)), y(std::move(py)) {}
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point& o) const { return !(*this == o); }
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Scalar& s, const Point& p);

/* Non-degenerate closed segment. */
struct Segment {
    Point a, b;
    Segment(Point pa, Point pb) : a(std::move(pa)), b(std::move(pb)) {
        if (a == b) throw std::invalid_argument("degenerate segment");
    }
};

enum class PointLocation { Interior, Boundary, Exterior };

enum class Convexity { NonConvex, Strict, Degenerate };

/* Thrown by Polygon construction; names the offending edge pair. */
struct NonSimplePolygonError : std::invalid_argument {
    std::size_t edge_a, edge_b;
    NonSimplePolygonError(std::size_t ea, std::size_t eb, const std::string& what)
        : std::invalid_argument(what), edge_a(ea), edge_b(eb) {}
};

/* Simple polygon, counterclockwise after construction. Input listed
 * clockwise is reversed and the reversal recorded so callers that care
 * about the original listing (file emission, index reporting) can map
 * back. Rejects n < 3, repeated consecutive vertices and any edge pair
 * intersecting beyond a shared endpoint of adjacent edges. */
class Polygon {
  public:
    explicit Polygon(std::vector<Point> vertices);

    std::size_t size() const { return verts_.size(); }
    const Point& operator[](std::size_t i) const { return verts_[i]; }
    const std::vector<Point>& vertices() const { return verts_; }
    Segment edge(std::size_t i) const;
    bool reversed_on_input() const { return reversed_; }

    /* Index of vertex i in the caller's original listing. */
    std::size_t input_index(std::size_t i) const {
        return reversed_ ? verts_.size() - 1 - i : i;
    }
    /* Vertices in the caller's original listing order. */
    std::vector<Point> input_vertices() const;

    bool operator==(const Polygon& o) const { return verts_ == o.verts_; }

  private:
    std::vector<Point> verts_;
    bool reversed_ = false;
};

/* Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right turn,
 * 0 collinear. */
int orientation(const Point& a, const Point& b, const Point& c);

Scalar cross(const Point& origin, const Point& p, const Point& q);

Scalar squared_distance(const Point& a, const Point& b);

/* Squared distance from p to the closed segment s. */
Scalar squared_distance(const Point& p, const Segment& s);

bool collinear(const Point& a, const Point& b, const Point& c);

/* p lies on the closed segment s. */
bool on_segment(const Point& p, const Segment& s);

/* p lies on s minus its endpoints. */
bool strictly_inside_segment(const Point& p, const Segment& s);

/* True iff the closed segments share a point interior to at least one of
 * them, or overlap along a subsegment of positive length. Meeting only at
 * a common endpoint does not count. */
bool segments_properly_intersect(const Segment& s, const Segment& t);

/* True iff the closed segments share at least one point. */
bool segments_touch(const Segment& s, const Segment& t);

/* Exact point-in-polygon by crossing number; boundary detected first. */
PointLocation point_location(const Polygon& poly, const Point& p);

/* Simplicity test on a raw vertex list. When false and offending is
 * non-null, *offending holds the violating edge pair (or the index of a
 * degenerate edge twice). */
bool is_simple(const std::vector<Point>& vertices,
               std::pair<std::size_t, std::size_t>* offending = nullptr);

Convexity classify_convexity(const Polygon& poly);

/* True for strictly convex and for convex with straight vertices. */
bool is_convex(const Polygon& poly);

/* Sorted unique parameters in [0, 1] (always including both ends) at which
 * s meets the polygon boundary. Between consecutive parameters the open
 * piece of s stays on one side of the boundary. */
std::vector<Scalar> segment_split_params(const Polygon& poly, const Segment& s);

/* True iff every point of s lies in the closure of poly (interior or
 * boundary). Exact: s is split at every intersection with a polygon edge
 * and each open piece is classified by its midpoint. */
bool segment_in_closure(const Polygon& poly, const Segment& s);

}  // namespace polymotion

#endif
