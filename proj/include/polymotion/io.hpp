#ifndef POLYMOTION_IO_HPP
#define POLYMOTION_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymotion/motion.hpp"
#include "polymotion/planner.hpp"
#include "polymotion/verifier.hpp"

namespace polymotion {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/* JSON formats. Rationals appear as JSON integers when integral and small
 * enough, otherwise as "p/q" strings; non-integer JSON numbers are rejected
 * so nothing silently loses exactness. Emission is canonical: re-emitting a
 * parsed canonical file reproduces it byte for byte. Clockwise input is
 * normalized counterclockwise on load (orbit and move indices remapped to
 * match). */
Polygon parse_polygon(const std::string& text);
std::string emit_polygon(const Polygon& poly);

Transformation parse_transformation(const std::string& text);
std::string emit_transformation(const Transformation& tr);

Plan parse_plan(const std::string& text);
std::string emit_plan(const Plan& plan);

std::string emit_certificate(const EventCertificate& cert);
std::string emit_stage_log(const std::vector<StageRecord>& stages);

Polygon parse_polygon_file(const std::string& path);
Transformation parse_transformation_file(const std::string& path);
Plan parse_plan_file(const std::string& path);

/* Deterministic simple polygon with integer-grid vertices: angular sort
 * around the centroid, then exact 2-opt uncrossing; resamples on
 * degeneracies (duplicate points, direction ties, unresolvable contacts). */
Polygon random_simple_polygon(std::size_t n, std::uint64_t seed);

/* As above, additionally rejecting polygons with any collinear vertex
 * triple. */
Polygon random_simple_polygon_general_position(std::size_t n, std::uint64_t seed);

/* Strictly convex polygon with exactly rational vertices on the unit
 * circle, spread roughly evenly (rational points cannot be exactly even). */
Polygon rational_circle_polygon(std::size_t n);

/* Animated SVG (SMIL) of a plan: the polygon morphs move by move; sight
 * lines are drawn for the initial and final polygons, and critical-tuple
 * witnesses in red wherever an intermediate move-boundary polygon is
 * critical. fps bounds the morph sampling density per clock unit. */
std::string export_svg(const Plan& plan, double fps);

/* Standalone SVG frames sampled at fps across the plan clock, each with the
 * instantaneous polygon and its sight lines. */
std::vector<std::string> export_svg_frames(const Plan& plan, double fps);

}  // namespace polymotion

#endif
