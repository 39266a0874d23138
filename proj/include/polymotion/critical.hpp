#ifndef POLYMOTION_CRITICAL_HPP
#define POLYMOTION_CRITICAL_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "polymotion/geometry.hpp"
#include "polymotion/motion.hpp"

namespace polymotion {

/* Three or more vertices on one line whose hull segment stays inside the
 * closed polygon. Such alignments are exactly where vertex-to-vertex
 * visibility can appear or disappear under motion. */
struct CriticalTuple {
    std::vector<std::size_t> indices;  // ordered along the witness
    Segment witness;                   // hull of the aligned vertices
};

/* All maximal critical tuples. Vertices on a common line are walked in
 * order; a tuple is a maximal run of consecutive aligned vertices whose
 * connecting subsegments all stay in the closure. */
std::vector<CriticalTuple> critical_tuples(const Polygon& poly);

bool is_critical(const Polygon& poly);

/* Every 3-subset of every maximal tuple, i.e. all critical triples, each
 * sorted ascending; the list is sorted for set comparison. */
std::vector<std::array<std::size_t, 3>> critical_triples(const Polygon& poly);

enum class RadiusComponent {
    Altitude,    // min altitude of a non-collinear vertex triple
    Clearance,   // exterior depth of a non-critical collinear triple's hull
    VertexEdge,  // vertex to non-incident edge
};

/* delta such that perturbing each vertex by less than delta cannot create
 * any new critical configuration and keeps the polygon simple. */
struct SafeRadius {
    Scalar value;          // rational lower bound: sqrt_lower_bound(min)/4
    Scalar squared_bound;  // exact minimum of the squared candidate family
    RadiusComponent component;
    std::array<std::size_t, 3> witness;  // triple, or {vertex, edge a, edge b}
};

SafeRadius safe_radius(const Polygon& poly);

/* Raised when no certified visibility-increasing move can be produced. */
struct CertificationError : std::runtime_error {
    explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

/* For a critical polygon: a straight-line move of one vertex of a critical
 * tuple, length at most safe_radius/2, certified by full motion verification
 * to strictly increase the number of visible vertex pairs. The move's path
 * spans [0, 1]. */
SingleVertexMove visibility_increasing_move(const Polygon& poly);

}  // namespace polymotion

#endif
