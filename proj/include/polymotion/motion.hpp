#ifndef POLYMOTION_MOTION_HPP
#define POLYMOTION_MOTION_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymotion/geometry.hpp"

namespace polymotion {

/* Raised when evaluating a motion produces a broken polygon (non-simple, or
 * orientation flipped, which means simplicity must have broken earlier), or
 * when a plan's moves do not chain. */
struct MotionError : std::runtime_error {
    explicit MotionError(const std::string& what) : std::runtime_error(what) {}
};

struct Keyframe {
    Scalar t;
    Point p;
};

/* Piecewise-linear path of one vertex. A single keyframe means the vertex
 * is pinned there for all time; otherwise the domain is [first t, last t]. */
class Orbit {
  public:
    explicit Orbit(std::vector<Keyframe> keys);
    static Orbit constant(Point p);

    const std::vector<Keyframe>& keys() const { return keys_; }
    bool is_constant() const;
    Scalar domain_start() const { return keys_.front().t; }
    Scalar domain_end() const { return keys_.back().t; }

    /* Exact linear interpolation. Throws outside the domain. */
    Point at(const Scalar& t) const;

    /* Keyframes clipped to [t0, t1] with exact interpolated endpoints. */
    Orbit restricted(const Scalar& t0, const Scalar& t1) const;

    Orbit shifted(const Scalar& dt) const;

  private:
    std::vector<Keyframe> keys_;
};

/* Simultaneous motion of all vertices over [start, end]. Vertex i follows
 * orbits[i]; the polygon at the start time must be simple and is expected
 * counterclockwise (loaders reverse orbit order for clockwise input). */
struct Transformation {
    Scalar start, end;
    std::vector<Orbit> orbits;

    Transformation(Scalar s, Scalar e, std::vector<Orbit> o);
    std::size_t vertex_count() const { return orbits.size(); }
};

/* Vertex positions at time t as an index-faithful polygon. Errors carry the
 * evaluation time. */
Polygon polygon_at(const Transformation& tr, const Scalar& t);

/* Polygon from a vertex list that must already be counterclockwise; used
 * whenever indices carry identity (motion evaluation, plan application). */
Polygon make_indexed_polygon(std::vector<Point> vertices, const std::string& context);

/* One vertex moves along a path while the rest stay put. */
struct SingleVertexMove {
    std::size_t vertex;
    Orbit path;
};

/* The single-vertex move as a Transformation over the move's time span. */
Transformation move_transformation(const Polygon& current, const SingleVertexMove& move);

/* Sequence of single-vertex moves from an initial polygon. Move time spans
 * are on one global increasing clock. */
struct Plan {
    Polygon initial;
    std::vector<SingleVertexMove> moves;

    /* Polygon after the first k moves (chain-checked). */
    Polygon polygon_after(std::size_t k) const;
    Polygon final_polygon() const { return polygon_after(moves.size()); }
};

Polygon apply_move(const Polygon& current, const SingleVertexMove& move);

/* Exact nonnegative quantity reported as its square (rational) plus a
 * decimal approximation of the root. */
struct RootReported {
    Scalar squared;
    double approx() const;
    bool operator==(const RootReported& o) const { return squared == o.squared; }
    bool operator<(const RootReported& o) const { return squared < o.squared; }
};

/* Bottleneck distance: min over vertex bijections of the max displacement.
 * Requires equal vertex counts. */
RootReported distance(const Polygon& p, const Polygon& q);

/* Max displacement under the identity labeling. */
RootReported labeled_distance(const Polygon& p, const Polygon& q);

/* Lipschitz bound: labeled_distance(P^s, P^t) <= max_speed * |s - t|. */
RootReported max_speed(const Transformation& tr);

/* Joins plans whose junction polygons match exactly, retiming each plan
 * after the first onto the running global clock. */
Plan concatenate(const std::vector<Plan>& plans);

}  // namespace polymotion

#endif
