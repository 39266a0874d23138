#include "doctest.h"

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymotion/io.hpp"
#include "polymotion/visibility.hpp"

using namespace polymotion;

namespace {

Point pt(long x, long y) { return Point{Scalar(x), Scalar(y)}; }

std::string data_path(const char* name) { return std::string(DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("polygon parse/emit is canonical and idempotent") {
    std::string raw = read_file(data_path("dart.json"));
    Polygon poly = parse_polygon(raw);
    CHECK(poly == Polygon({pt(0, 0), pt(2, 0), pt(1, 3), pt(1, 1)}));
    std::string canon = emit_polygon(poly);
    CHECK(emit_polygon(parse_polygon(canon)) == canon);
    CHECK(canon.back() == '\n');
}

TEST_CASE("scalars emit as integers when possible, p/q strings otherwise") {
    Polygon poly = parse_polygon(R"({"vertices": [["0/1", 0],
                                     ["36893488147419103232", "1/3"],
                                     ["2/4", "-6/3"]]})");
    CHECK(poly[0] == Point{Scalar(1, 2), Scalar(-2)});  // clockwise input, reversed
    std::string canon = emit_polygon(poly);
    CHECK(canon.find("\"1/2\"") != std::string::npos);       // reduced, quoted
    CHECK(canon.find("-2") != std::string::npos);            // integral, bare
    CHECK(canon.find("\"2/4\"") == std::string::npos);       // canonicalized away
    CHECK(canon.find("\"36893488147419103232\"") != std::string::npos);  // too big for int64
    CHECK(emit_polygon(parse_polygon(canon)) == canon);      // survives the round trip
}

TEST_CASE("inexact and malformed input is rejected") {
    CHECK_THROWS_AS(parse_polygon(R"({"vertices": [[0.5, 0], [1, 0], [0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_polygon(R"({"vertices": [["1/0", 0], [1, 0], [0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_polygon(R"({"vertices": [["1e3", 0], [1, 0], [0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_polygon(R"({"vertices": [[true, 0], [1, 0], [0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_polygon(R"({"vertices": [[0], [1, 0], [0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_polygon(R"({"vertices": [[0, 0], [1, 0]]})"), ParseError);
    CHECK_THROWS_AS(parse_polygon(R"({"points": [[0, 0], [1, 0], [0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_polygon("not json"), ParseError);
    // Self-intersecting vertex lists fail at parse time too.
    CHECK_THROWS_AS(parse_polygon(R"({"vertices": [[0, 0], [1, 1], [1, 0], [0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_transformation(R"({"start": 0, "orbits": []})"), ParseError);
    CHECK_THROWS_AS(parse_plan(R"({"initial": {"vertices": [[0,0],[1,0],[0,1]]}})"), ParseError);
}

TEST_CASE("clockwise polygon input is normalized with labels remapped") {
    Polygon cw = parse_polygon(R"({"vertices": [[0, 0], [0, 1], [1, 1], [1, 0]]})");
    CHECK(cw.reversed_on_input());
    CHECK(cw[0] == pt(1, 0));  // normalized order is the reverse
    CHECK(cw.input_vertices()[0] == pt(0, 0));
    CHECK(cw.input_index(0) == 3);
    // Emission uses the normalized order, so it parses back unreversed.
    Polygon again = parse_polygon(emit_polygon(cw));
    CHECK(!again.reversed_on_input());
    CHECK(again == cw);
}

TEST_CASE("clockwise plan input remaps move vertex labels") {
    std::string text = R"({
      "initial": {"vertices": [[0, 0], [0, 1], [1, 1], [1, 0]]},
      "moves": [{"vertex": 0, "path": [[0, 0, 0], [1, -1, 0]]}]
    })";
    Plan plan = parse_plan(text);
    REQUIRE(plan.moves.size() == 1);
    CHECK(plan.moves[0].vertex == 3);  // input label 0 sits at normalized index 3
    CHECK(plan.final_polygon()[3] == Point{Scalar(-1), Scalar(0)});
    std::string canon = emit_plan(plan);
    CHECK(emit_plan(parse_plan(canon)) == canon);

    std::string out_of_range = R"({
      "initial": {"vertices": [[0, 0], [1, 0], [0, 1]]},
      "moves": [{"vertex": 3, "path": [[0, 0, 0], [1, -1, 0]]}]
    })";
    CHECK_THROWS_AS(parse_plan(out_of_range), ParseError);
}

TEST_CASE("clockwise transformation input reverses the orbit order") {
    // Clockwise square; vertex label 0 (= (0,0)) is the only mover.
    std::string text = R"({
      "start": 0, "end": 1,
      "orbits": [[[0, 0, 0], [1, 0, -1]], [[0, 0, 1]], [[0, 1, 1]], [[0, 1, 0]]]
    })";
    Transformation tr = parse_transformation(text);
    Polygon at0 = polygon_at(tr, Scalar(0));
    // Orbit order was reversed, so the stored list is the reversed input list.
    CHECK(at0 == Polygon({pt(1, 0), pt(1, 1), pt(0, 1), pt(0, 0)}));
    // The mover is last in the normalized orbit order.
    CHECK(tr.orbits[3].at(Scalar(1)) == Point{Scalar(0), Scalar(-1)});
    CHECK(tr.orbits[0].is_constant());
    std::string canon = emit_transformation(tr);
    CHECK(emit_transformation(parse_transformation(canon)) == canon);
}

TEST_CASE("transformation file round trip") {
    Transformation tr = parse_transformation_file(data_path("dart_oracle.json"));
    CHECK(tr.start == Scalar(0));
    CHECK(tr.end == Scalar(1));
    REQUIRE(tr.vertex_count() == 4);
    CHECK(tr.orbits[3].at(Scalar(1, 2)) == Point{Scalar(1, 2), Scalar(3, 2)});
    std::string canon = emit_transformation(tr);
    CHECK(emit_transformation(parse_transformation(canon)) == canon);
}

TEST_CASE("certificates and stage logs serialize") {
    Transformation tr = parse_transformation_file(data_path("dart_oracle.json"));
    std::string cert = emit_certificate(verify_transformation(tr));
    CHECK(cert.find("\"preserving\"") != std::string::npos);
    CHECK(cert.find("\"visibility-gain\"") != std::string::npos);
    CHECK(cert.find("\"critical-configuration\"") != std::string::npos);
    CHECK(cert.find("\"1/2\"") != std::string::npos);

    StageRecord rec;
    rec.kind = "follow";
    rec.from_time = Scalar(0);
    rec.to_time = Scalar(1, 2);
    rec.delta = Scalar(1, 4);
    rec.tau = Scalar(1, 8);
    rec.steps = 4;
    rec.vertex_order = {0, 1, 2, 3};
    rec.nonvisible_before = 5;
    rec.nonvisible_after = 5;
    rec.moves_emitted = 4;
    std::string log = emit_stage_log({rec});
    CHECK(log.find("\"follow\"") != std::string::npos);
    CHECK(log.find("\"nonvisible_before\": 5") != std::string::npos);
}

TEST_CASE("random polygons are deterministic, simple, and the right size") {
    for (std::size_t n : {4, 6, 9}) {
        for (std::uint64_t seed : {1, 7, 42}) {
            Polygon p = random_simple_polygon(n, seed);
            CHECK(p.size() == n);
            CHECK(is_simple(p.vertices()));
            CHECK(emit_polygon(p) == emit_polygon(random_simple_polygon(n, seed)));
        }
    }
    // Different seeds give different polygons (overwhelmingly).
    CHECK(emit_polygon(random_simple_polygon(8, 1)) != emit_polygon(random_simple_polygon(8, 2)));
}

TEST_CASE("general-position polygons have no collinear triples") {
    for (std::uint64_t seed : {1, 5, 11}) {
        Polygon p = random_simple_polygon_general_position(7, seed);
        CHECK(p.size() == 7);
        bool any_collinear = false;
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = i + 1; j < 7; ++j)
                for (std::size_t k = j + 1; k < 7; ++k)
                    if (collinear(p[i], p[j], p[k])) any_collinear = true;
        CHECK(!any_collinear);
    }
}

TEST_CASE("rational circle polygons are strictly convex and exactly on the circle") {
    for (std::size_t n = 3; n <= 12; ++n) {
        Polygon p = rational_circle_polygon(n);
        CHECK(p.size() == n);
        CHECK(classify_convexity(p) == Convexity::Strict);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(p[i].x * p[i].x + p[i].y * p[i].y == Scalar(1));
        CHECK(nonvisible_pair_count(p) == n);
        std::set<std::pair<std::string, std::string>> uniq;
        for (std::size_t i = 0; i < n; ++i)
            uniq.insert({scalar_to_string(p[i].x), scalar_to_string(p[i].y)});
        CHECK(uniq.size() == n);
    }
}

TEST_CASE("animated SVG export") {
    Plan plan{Polygon({pt(0, 0), pt(2, 0), pt(1, 3), pt(1, 1)}),
              {SingleVertexMove{3, Orbit({Keyframe{Scalar(0), pt(1, 1)},
                                          Keyframe{Scalar(1), pt(0, 2)}})}}};
    std::string svg = export_svg(plan, 8.0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<animate") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("keyTimes") != std::string::npos);

    // A plan that sits still animates nothing but still renders.
    Plan still{Polygon({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}), {}};
    std::string quiet = export_svg(still, 8.0);
    CHECK(quiet.find("<svg") != std::string::npos);
    CHECK(quiet.find("<animate") == std::string::npos);
}

TEST_CASE("frame export samples the plan clock") {
    Polygon dart({pt(0, 0), pt(2, 0), pt(1, 3), pt(1, 1)});
    SingleVertexMove unfold{3, Orbit({Keyframe{Scalar(0), pt(1, 1)}, Keyframe{Scalar(1), pt(0, 2)}})};
    Plan plan{dart, {unfold}};
    // span 1 at 8 fps: ceil(8) + 1 frames
    CHECK(export_svg_frames(plan, 8.0).size() == 9);

    SingleVertexMove settle{0, Orbit({Keyframe{Scalar(1), pt(0, 0)},
                                      Keyframe{Scalar(3, 2), Point{Scalar(-1), Scalar(0)}}})};
    Plan longer{dart, {unfold, settle}};
    std::vector<std::string> frames = export_svg_frames(longer, 8.0);
    CHECK(frames.size() == 13);  // span 3/2 at 8 fps
    for (const std::string& f : frames) {
        CHECK(f.find("<svg") != std::string::npos);
        CHECK(f.find("<animate") == std::string::npos);  // stills, not SMIL
    }

    CHECK_THROWS_AS(export_svg_frames(plan, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(export_svg_frames(plan, 3000.0), std::invalid_argument);
}
