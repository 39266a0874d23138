#include "doctest.h"

#include <vector>

#include "polymotion/geometry.hpp"

using namespace polymotion;

namespace {

Point pt(long x, long y) { return Point{Scalar(x), Scalar(y)}; }

Polygon square() { return Polygon({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}); }
Polygon dart() { return Polygon({pt(0, 0), pt(2, 0), pt(1, 3), pt(1, 1)}); }
Polygon critical_quad() { return Polygon({pt(0, 0), pt(1, 0), pt(2, 0), pt(1, 1)}); }

}  // namespace

TEST_CASE("orientation frozen cases") {
    CHECK(orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == 1);
    CHECK(orientation(pt(0, 0), pt(0, 1), pt(1, 0)) == -1);
    CHECK(orientation(pt(0, 0), pt(1, 1), pt(2, 2)) == 0);
    CHECK(orientation(pt(0, 0), pt(1, 0), pt(2, 0)) == 0);
}

TEST_CASE("orientation algebraic identities on a grid") {
    std::vector<Point> g;
    for (long x = 0; x <= 2; ++x)
        for (long y = 0; y <= 2; ++y) g.push_back(pt(x, y));
    for (const Point& a : g)
        for (const Point& b : g)
            for (const Point& c : g) {
                int o = orientation(a, b, c);
                CHECK(o == -orientation(a, c, b));
                CHECK(o == orientation(b, c, a));
                CHECK(o == sign(cross(a, b, c)));
                CHECK(collinear(a, b, c) == (o == 0));
            }
}

TEST_CASE("on_segment and strictly_inside_segment") {
    Segment s(pt(0, 0), pt(4, 2));
    CHECK(on_segment(pt(2, 1), s));
    CHECK(on_segment(pt(0, 0), s));
    CHECK(strictly_inside_segment(pt(2, 1), s));
    CHECK_FALSE(strictly_inside_segment(pt(0, 0), s));
    CHECK_FALSE(on_segment(pt(1, 1), s));
    CHECK_FALSE(on_segment(pt(6, 3), s));  // collinear but beyond the end
    CHECK_THROWS_AS(Segment(pt(1, 1), pt(1, 1)), std::invalid_argument);
}

TEST_CASE("squared_distance point to point and to segment") {
    CHECK(squared_distance(pt(0, 0), pt(3, 4)) == Scalar(25));
    Segment s(pt(0, 0), pt(2, 0));
    CHECK(squared_distance(pt(1, 5), s) == Scalar(25));   // foot inside
    CHECK(squared_distance(pt(-3, 4), s) == Scalar(25));  // clamped to an end
    CHECK(squared_distance(pt(1, 0), s) == Scalar(0));
    CHECK(squared_distance(Point{Scalar(1, 2), Scalar(1, 2)}, s) == Scalar(1, 4));
}

TEST_CASE("segments_properly_intersect truth table") {
    // Transversal crossing.
    CHECK(segments_properly_intersect(Segment(pt(0, 0), pt(2, 2)), Segment(pt(0, 2), pt(2, 0))));
    // Endpoint strictly inside the other segment.
    CHECK(segments_properly_intersect(Segment(pt(0, 0), pt(2, 0)), Segment(pt(1, 0), pt(1, 5))));
    // Collinear overlap of positive length.
    CHECK(segments_properly_intersect(Segment(pt(0, 0), pt(3, 0)), Segment(pt(1, 0), pt(5, 0))));
    // Nested collinear.
    CHECK(segments_properly_intersect(Segment(pt(0, 0), pt(4, 0)), Segment(pt(1, 0), pt(2, 0))));
    // Shared endpoint only: not proper.
    CHECK_FALSE(segments_properly_intersect(Segment(pt(0, 0), pt(1, 1)), Segment(pt(1, 1), pt(2, 0))));
    // Collinear, meeting at one point only.
    CHECK_FALSE(segments_properly_intersect(Segment(pt(0, 0), pt(1, 0)), Segment(pt(1, 0), pt(2, 0))));
    // Disjoint.
    CHECK_FALSE(segments_properly_intersect(Segment(pt(0, 0), pt(1, 0)), Segment(pt(0, 1), pt(1, 1))));
    // Parallel, never touching.
    CHECK_FALSE(segments_properly_intersect(Segment(pt(0, 0), pt(2, 0)), Segment(pt(0, 1), pt(2, 1))));
}

TEST_CASE("segments_touch") {
    CHECK(segments_touch(Segment(pt(0, 0), pt(1, 1)), Segment(pt(1, 1), pt(2, 0))));
    CHECK(segments_touch(Segment(pt(0, 0), pt(2, 2)), Segment(pt(0, 2), pt(2, 0))));
    CHECK_FALSE(segments_touch(Segment(pt(0, 0), pt(1, 0)), Segment(pt(0, 1), pt(1, 1))));
}

TEST_CASE("Polygon keeps counterclockwise input and reverses clockwise input") {
    Polygon ccw = square();
    CHECK_FALSE(ccw.reversed_on_input());
    CHECK(ccw[0] == pt(0, 0));
    CHECK(ccw.input_index(2) == 2);

    Polygon cw(std::vector<Point>{pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 0)});
    CHECK(cw.reversed_on_input());
    CHECK(cw.vertices() == std::vector<Point>{pt(1, 0), pt(1, 1), pt(0, 1), pt(0, 0)});
    CHECK(cw.input_index(3) == 0);  // normalized index 3 was listed first
    CHECK(cw.input_vertices() == std::vector<Point>{pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 0)});
    CHECK(ccw == Polygon(std::vector<Point>{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}));
    CHECK_FALSE(ccw == cw);  // equality is labeled, not set-based
}

TEST_CASE("Polygon rejects degenerate and self-intersecting input") {
    CHECK_THROWS_AS(Polygon(std::vector<Point>{pt(0, 0), pt(1, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(Polygon(std::vector<Point>{pt(0, 0), pt(0, 0), pt(1, 1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Polygon(std::vector<Point>{pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)}),
                    NonSimplePolygonError);
    // Edge running back over the previous edge.
    CHECK_THROWS_AS(Polygon(std::vector<Point>{pt(0, 0), pt(2, 0), pt(2, 2), pt(1, 0)}),
                    NonSimplePolygonError);
    // Straight vertices are allowed.
    CHECK_NOTHROW(critical_quad());
}

TEST_CASE("is_simple reports the offending edge pair") {
    std::pair<std::size_t, std::size_t> bad{99, 99};
    CHECK(is_simple({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}));
    CHECK_FALSE(is_simple({pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)}, &bad));
    CHECK(bad != std::pair<std::size_t, std::size_t>{99, 99});
}

TEST_CASE("point_location on the square") {
    Polygon p = square();
    CHECK(point_location(p, Point{Scalar(1, 2), Scalar(1, 2)}) == PointLocation::Interior);
    CHECK(point_location(p, pt(0, 0)) == PointLocation::Boundary);
    CHECK(point_location(p, Point{Scalar(1, 2), Scalar(0)}) == PointLocation::Boundary);
    CHECK(point_location(p, Point{Scalar(1), Scalar(1, 3)}) == PointLocation::Boundary);
    CHECK(point_location(p, pt(2, 0)) == PointLocation::Exterior);
    CHECK(point_location(p, Point{Scalar(1, 2), Scalar(-1, 7)}) == PointLocation::Exterior);
    CHECK(point_location(p, Point{Scalar(-1, 100), Scalar(1, 2)}) == PointLocation::Exterior);
}

TEST_CASE("point_location on the dart notch") {
    Polygon p = dart();
    // The notch mouth: on the line through (0,0) and (1,3) but outside.
    CHECK(point_location(p, Point{Scalar(1, 2), Scalar(3, 2)}) == PointLocation::Exterior);
    CHECK(point_location(p, Point{Scalar(9, 10), Scalar(3, 2)}) == PointLocation::Exterior);
    CHECK(point_location(p, Point{Scalar(1), Scalar(1, 2)}) == PointLocation::Interior);
    CHECK(point_location(p, pt(1, 1)) == PointLocation::Boundary);  // the reflex vertex
    CHECK(point_location(p, Point{Scalar(1), Scalar(2)}) == PointLocation::Boundary);  // on edge 2-3
}

TEST_CASE("classify_convexity and is_convex") {
    CHECK(classify_convexity(square()) == Convexity::Strict);
    CHECK(classify_convexity(critical_quad()) == Convexity::Degenerate);
    CHECK(classify_convexity(dart()) == Convexity::NonConvex);
    CHECK(is_convex(square()));
    CHECK(is_convex(critical_quad()));
    CHECK_FALSE(is_convex(dart()));
}

TEST_CASE("segment_split_params on the square") {
    Polygon p = square();
    // Crossing segment: enters at x=0 (t=1/4), leaves at x=1 (t=3/4).
    Segment cross_seg(Point{Scalar(-1, 2), Scalar(1, 2)}, Point{Scalar(3, 2), Scalar(1, 2)});
    CHECK(segment_split_params(p, cross_seg) ==
          std::vector<Scalar>{Scalar(0), Scalar(1, 4), Scalar(3, 4), Scalar(1)});
    CHECK_FALSE(segment_in_closure(p, cross_seg));

    Segment inside(Point{Scalar(1, 4), Scalar(1, 4)}, Point{Scalar(3, 4), Scalar(3, 4)});
    CHECK(segment_split_params(p, inside) == std::vector<Scalar>{Scalar(0), Scalar(1)});
    CHECK(segment_in_closure(p, inside));

    // A full edge lies in the closure (boundary counts).
    CHECK(segment_in_closure(p, Segment(pt(0, 0), pt(1, 0))));
}

TEST_CASE("segment_in_closure distinguishes chords of the dart") {
    Polygon p = dart();
    // Chord over the notch leaves the closure.
    CHECK_FALSE(segment_in_closure(p, Segment(pt(0, 0), pt(1, 3))));
    // Chord on the convex side stays inside.
    CHECK(segment_in_closure(p, Segment(pt(2, 0), pt(1, 1))));
    // The critical quad's witness runs along the boundary.
    CHECK(segment_in_closure(critical_quad(), Segment(pt(0, 0), pt(2, 0))));
}
