#include "doctest.h"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polymotion/io.hpp"
#include "polymotion/verifier.hpp"

using namespace polymotion;

namespace {

Point pt(long x, long y) { return Point{Scalar(x), Scalar(y)}; }

Orbit seg_orbit(Point a, Point b, Scalar t0 = Scalar(0), Scalar t1 = Scalar(1)) {
    return Orbit({Keyframe{std::move(t0), std::move(a)}, Keyframe{std::move(t1), std::move(b)}});
}

/* Unit square whose corner 0 slides diagonally to (3/5, 3/5), crossing the
 * 1--3 diagonal at t = 5/6 and poking inward past it. */
Transformation square_block() {
    return Transformation(Scalar(0), Scalar(1),
                          {seg_orbit(pt(0, 0), Point{Scalar(3, 5), Scalar(3, 5)}),
                           Orbit::constant(pt(1, 0)), Orbit::constant(pt(1, 1)),
                           Orbit::constant(pt(0, 1))});
}

Transformation dart_unfold() {
    return parse_transformation_file(std::string(DATA_DIR) + "/dart_oracle.json");
}

/* Triangle that collapses onto a line at the irrational time (7 - sqrt(17))/8:
 * collinearity polynomial 8 t^2 - 14 t + 4. */
Transformation irrational_collapse() {
    return Transformation(Scalar(0), Scalar(1),
                          {seg_orbit(pt(0, 0), pt(2, 0)), Orbit::constant(pt(3, 1)),
                           seg_orbit(pt(2, 2), Point{Scalar(2), Scalar(-2)})});
}

const Event* find_event(const EventCertificate& cert, EventKind kind) {
    for (const Event& e : cert.events)
        if (e.kind == kind) return &e;
    return nullptr;
}

}  // namespace

TEST_CASE("collinearity polynomial coefficients are exact") {
    EventPolynomial p = collinearity_event_polynomial(square_block(), 0, 1, 3, Scalar(0), Scalar(1));
    CHECK(p.c2 == Scalar(0));
    CHECK(p.c1 == Scalar(-6, 5));
    CHECK(p.c0 == Scalar(1));
    CHECK(p.eval(Scalar(5, 6)) == Scalar(0));

    EventPolynomial q = collinearity_event_polynomial(dart_unfold(), 0, 2, 3, Scalar(0), Scalar(1));
    CHECK(q.c2 == Scalar(0));
    CHECK(q.c1 == Scalar(4));
    CHECK(q.c0 == Scalar(-2));

    EventPolynomial r =
        collinearity_event_polynomial(irrational_collapse(), 0, 1, 2, Scalar(0), Scalar(1));
    CHECK(r.c2 == Scalar(8));
    CHECK(r.c1 == Scalar(-14));
    CHECK(r.c0 == Scalar(4));
}

TEST_CASE("collinearity polynomial rejects bad pieces") {
    Transformation tr(Scalar(0), Scalar(2),
                      {Orbit({Keyframe{Scalar(0), pt(0, 0)}, Keyframe{Scalar(1), pt(1, 0)},
                              Keyframe{Scalar(2), pt(1, 1)}}),
                       Orbit::constant(pt(3, 0)), Orbit::constant(pt(0, 3))});
    CHECK_THROWS_AS(collinearity_event_polynomial(tr, 0, 1, 2, Scalar(1, 2), Scalar(3, 2)),
                    std::invalid_argument);
    CHECK_NOTHROW(collinearity_event_polynomial(tr, 0, 1, 2, Scalar(0), Scalar(1)));
    CHECK_THROWS_AS(collinearity_event_polynomial(tr, 0, 1, 1, Scalar(0), Scalar(1)),
                    std::invalid_argument);
}

TEST_CASE("static and zero-duration transformations are preserving") {
    Transformation still(Scalar(0), Scalar(1),
                         {Orbit::constant(pt(0, 0)), Orbit::constant(pt(1, 0)),
                          Orbit::constant(pt(1, 1)), Orbit::constant(pt(0, 1))});
    EventCertificate cert = verify_transformation(still);
    CHECK(cert.preserving());
    CHECK(cert.events.empty());

    Transformation instant(Scalar(0), Scalar(0),
                           {Orbit::constant(pt(0, 0)), Orbit::constant(pt(1, 0)),
                            Orbit::constant(pt(1, 1)), Orbit::constant(pt(0, 1))});
    CHECK(verify_transformation(instant).preserving());
}

TEST_CASE("blocking the square diagonal is a violation at t = 5/6") {
    EventCertificate cert = verify_transformation(square_block());
    CHECK(cert.violating);
    REQUIRE(cert.events.size() == 2);
    // Sorted by bracket, then kind: the loss precedes the critical instant.
    CHECK(cert.events[0].kind == EventKind::VisibilityLoss);
    CHECK(cert.events[0].lo == Scalar(5, 6));
    CHECK(cert.events[0].hi == Scalar(5, 6));
    CHECK(cert.events[0].involved == std::vector<std::size_t>{1, 3});
    CHECK(cert.events[1].kind == EventKind::CriticalConfiguration);
    CHECK(cert.events[1].lo == Scalar(5, 6));
    CHECK(cert.events[1].hi == Scalar(5, 6));
    CHECK(cert.events[1].involved == std::vector<std::size_t>{3, 0, 1});
}

TEST_CASE("unfolding the dart gains visibility and passes one critical instant") {
    EventCertificate cert = verify_transformation(dart_unfold());
    CHECK(cert.preserving());
    REQUIRE(cert.events.size() == 2);
    CHECK(cert.events[0].kind == EventKind::VisibilityGain);
    CHECK(cert.events[0].lo == Scalar(1, 2));
    CHECK(cert.events[0].hi == Scalar(1, 2));
    CHECK(cert.events[0].involved == std::vector<std::size_t>{0, 2});
    CHECK(cert.events[1].kind == EventKind::CriticalConfiguration);
    CHECK(cert.events[1].lo == Scalar(1, 2));
    CHECK(cert.events[1].hi == Scalar(1, 2));
    CHECK(cert.events[1].involved == std::vector<std::size_t>{0, 3, 2});
}

TEST_CASE("irrational event times get certified sign-change brackets") {
    Transformation tr = irrational_collapse();
    EventCertificate cert = verify_transformation(tr);
    CHECK(cert.violating);

    const Event* viol = find_event(cert, EventKind::SimplicityViolation);
    REQUIRE(viol != nullptr);
    CHECK(viol->hi - viol->lo <= Scalar(1, 65536));
    CHECK(viol->lo >= Scalar(0));
    CHECK(viol->hi <= Scalar(1));
    // The polynomial changes sign across the bracket, so the bracket contains
    // the irrational root (7 - sqrt(17))/8, the only root in [0, 1].
    EventPolynomial p =
        collinearity_event_polynomial(tr, 0, 1, 2, Scalar(0), Scalar(1));
    CHECK(sign(p.eval(viol->lo)) > 0);
    CHECK(sign(p.eval(viol->hi)) < 0);

    // Tighter tolerances tighten the bracket.
    VerifyOptions tight;
    tight.epsilon_fraction = Scalar(1, 1 << 24);
    EventCertificate tight_cert = verify_transformation(tr, tight);
    const Event* tv = find_event(tight_cert, EventKind::SimplicityViolation);
    REQUIRE(tv != nullptr);
    CHECK(tv->hi - tv->lo <= Scalar(1, 1 << 24));
    CHECK(sign(p.eval(tv->lo)) > 0);
    CHECK(sign(p.eval(tv->hi)) < 0);
}

TEST_CASE("first critical time: exact instants") {
    std::optional<CriticalHit> hit = first_critical_time(square_block());
    REQUIRE(hit.has_value());
    CHECK(hit->when.exact());
    CHECK(hit->when.lo == Scalar(5, 6));
    CHECK(hit->involved == std::vector<std::size_t>{3, 0, 1});

    std::optional<CriticalHit> dart_hit = first_critical_time(dart_unfold());
    REQUIRE(dart_hit.has_value());
    CHECK(dart_hit->when.exact());
    CHECK(dart_hit->when.lo == Scalar(1, 2));
    CHECK(dart_hit->involved == std::vector<std::size_t>{0, 3, 2});

    Transformation still(Scalar(0), Scalar(1),
                         {Orbit::constant(pt(0, 0)), Orbit::constant(pt(1, 0)),
                          Orbit::constant(pt(1, 1)), Orbit::constant(pt(0, 1))});
    CHECK(!first_critical_time(still).has_value());
}

TEST_CASE("first critical time: irrational instants come bracketed") {
    Transformation tr = irrational_collapse();
    std::optional<CriticalHit> hit = first_critical_time(tr);
    REQUIRE(hit.has_value());
    CHECK(!hit->when.exact());
    CHECK(hit->when.hi - hit->when.lo <= Scalar(1, 65536));
    EventPolynomial p = collinearity_event_polynomial(tr, 0, 1, 2, Scalar(0), Scalar(1));
    CHECK(sign(p.eval(hit->when.lo)) > 0);
    CHECK(sign(p.eval(hit->when.hi)) < 0);
}

TEST_CASE("verify_plan attributes events to moves on one clock") {
    Polygon dart(std::vector<Point>{pt(0, 0), pt(2, 0), pt(1, 3), pt(1, 1)});
    SingleVertexMove widen{1, seg_orbit(pt(2, 0), Point{Scalar(5, 2), Scalar(0)})};
    SingleVertexMove unfold{3, seg_orbit(pt(1, 1), pt(0, 2), Scalar(1), Scalar(2))};
    Plan plan{dart, {widen, unfold}};

    EventCertificate cert = verify_plan(plan);
    CHECK(cert.preserving());
    REQUIRE(cert.events.size() == 2);
    CHECK(cert.events[0].kind == EventKind::VisibilityGain);
    CHECK(cert.events[0].involved == std::vector<std::size_t>{0, 2});
    CHECK(cert.events[0].move_index == 1);
    CHECK(cert.events[0].lo == Scalar(3, 2));  // global clock, not move-local
    CHECK(cert.events[0].hi == Scalar(3, 2));
    CHECK(cert.events[1].kind == EventKind::CriticalConfiguration);
    CHECK(cert.events[1].move_index == 1);
    CHECK(cert.events[1].lo == Scalar(3, 2));
}

TEST_CASE("verify_plan rejects broken chains and overlapping clocks") {
    Polygon dart(std::vector<Point>{pt(0, 0), pt(2, 0), pt(1, 3), pt(1, 1)});
    SingleVertexMove widen{1, seg_orbit(pt(2, 0), Point{Scalar(5, 2), Scalar(0)})};
    SingleVertexMove wrong_start{3, seg_orbit(pt(9, 9), pt(0, 2), Scalar(1), Scalar(2))};
    Plan broken{dart, {widen, wrong_start}};
    CHECK_THROWS_AS(verify_plan(broken), MotionError);

    SingleVertexMove overlapping{3, seg_orbit(pt(1, 1), pt(0, 2), Scalar(1, 2), Scalar(3, 2))};
    Plan overlap{dart, {widen, overlapping}};
    CHECK_THROWS_AS(verify_plan(overlap), std::invalid_argument);
}

TEST_CASE("a violating move makes the whole plan violating") {
    Polygon square(std::vector<Point>{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
    SingleVertexMove blocker{0, seg_orbit(pt(0, 0), Point{Scalar(3, 5), Scalar(3, 5)})};
    Plan plan{square, {blocker}};
    EventCertificate cert = verify_plan(plan);
    CHECK(cert.violating);
    const Event* loss = find_event(cert, EventKind::VisibilityLoss);
    REQUIRE(loss != nullptr);
    CHECK(loss->move_index == 0);
}
