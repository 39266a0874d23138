#include "polymotion/visibility.hpp"

#include <algorithm>
#include <stdexcept>

namespace polymotion {

bool vertices_adjacent(std::size_t n, std::size_t i, std::size_t j) {
    std::size_t d = i < j ? j - i : i - j;
    return d == 1 || d == n - 1;
}

namespace {

/* Does edge e intersect the open part of the sight segment s? Contact at
 * the endpoints of s is allowed (every edge incident to the endpoint
 * vertices touches there); any other shared point blocks visibility, since
 * it puts a boundary point on the open segment. */
bool edge_blocks_sight(const Segment& s, const Segment& e) {
    int o1 = orientation(s.a, s.b, e.a);
    int o2 = orientation(s.a, s.b, e.b);

    if (o1 == 0 && o2 == 0) {
        // Collinear: blocked iff the overlap reaches into the open segment.
        bool use_x = s.a.x != s.b.x;
        auto coord = [use_x](const Point& p) { return use_x ? p.x : p.y; };
        Scalar s_lo = std::min(coord(s.a), coord(s.b)), s_hi = std::max(coord(s.a), coord(s.b));
        Scalar e_lo = std::min(coord(e.a), coord(e.b)), e_hi = std::max(coord(e.a), coord(e.b));
        return std::max(s_lo, e_lo) < std::min(s_hi, e_hi);
    }
    if (o1 == 0) return strictly_inside_segment(e.a, s);
    if (o2 == 0) return strictly_inside_segment(e.b, s);

    int o3 = orientation(e.a, e.b, s.a);
    int o4 = orientation(e.a, e.b, s.b);
    if (o3 == 0 || o4 == 0) return false;  // contact only at an endpoint of s
    return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace

bool vertices_visible(const Polygon& poly, std::size_t i, std::size_t j) {
    std::size_t n = poly.size();
    if (i >= n || j >= n) throw std::out_of_range("vertex index out of range");
    if (i == j) throw std::invalid_argument("vertices_visible needs distinct indices");
    if (vertices_adjacent(n, i, j)) return false;

    Segment sight(poly[i], poly[j]);
    for (std::size_t k = 0; k < n; ++k)
        if (edge_blocks_sight(sight, poly.edge(k))) return false;

    Point mid = poly[i] + Scalar(1, 2) * (poly[j] - poly[i]);
    return point_location(poly, mid) == PointLocation::Interior;
}

VisibilityGraph::VisibilityGraph(std::size_t n, std::vector<VertexPair> pairs)
    : n_(n), pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    for (const auto& [i, j] : pairs_) {
        if (i >= j || j >= n_) throw std::invalid_argument("malformed visibility pair");
        if (vertices_adjacent(n_, i, j))
            throw std::invalid_argument("adjacent pair in visibility graph");
    }
}

bool VisibilityGraph::visible(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(pairs_.begin(), pairs_.end(), VertexPair{i, j});
}

std::size_t VisibilityGraph::nonvisible_pair_count() const {
    return n_ * (n_ - 1) / 2 - pairs_.size();
}

VisibilityGraph visibility_graph(const Polygon& poly) {
    std::vector<VertexPair> pairs;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!vertices_adjacent(n, i, j) && vertices_visible(poly, i, j))
                pairs.emplace_back(i, j);
    return VisibilityGraph(n, std::move(pairs));
}

std::size_t nonvisible_pair_count(const Polygon& poly) {
    return visibility_graph(poly).nonvisible_pair_count();
}

bool property_A(const Polygon& poly, std::size_t i, std::size_t j, std::size_t k) {
    std::size_t n = poly.size();
    if (i >= n || j >= n || k >= n) throw std::out_of_range("vertex index out of range");
    if (i == j || j == k || i == k)
        throw std::invalid_argument("property_A needs three distinct indices");
    auto ok = [&](std::size_t a, std::size_t b) {
        return vertices_adjacent(n, a, b) || vertices_visible(poly, a, b);
    };
    return ok(i, j) && ok(j, k) && ok(i, k);
}

}  // namespace polymotion
