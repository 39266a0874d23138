#ifndef POLYMOTION_VISIBILITY_HPP
#define POLYMOTION_VISIBILITY_HPP

#include <cstddef>
#include <vector>
#include <utility>

#include "polymotion/geometry.hpp"

namespace polymotion {

using VertexPair = std::pair<std::size_t, std::size_t>;  // always first < second

bool vertices_adjacent(std::size_t n, std::size_t i, std::size_t j);

/* Internal visibility between vertices: true iff the open segment from
 * vertex i to vertex j lies strictly in the interior. Adjacent vertices are
 * never visible (their open segment lies on the boundary). */
bool vertices_visible(const Polygon& poly, std::size_t i, std::size_t j);

/* All visible vertex pairs of a polygon, sorted. */
class VisibilityGraph {
  public:
    VisibilityGraph(std::size_t n, std::vector<VertexPair> pairs);

    std::size_t vertex_count() const { return n_; }
    const std::vector<VertexPair>& visible_pairs() const { return pairs_; }
    bool visible(std::size_t i, std::size_t j) const;
    std::size_t nonvisible_pair_count() const;

    bool operator==(const VisibilityGraph& o) const {
        return n_ == o.n_ && pairs_ == o.pairs_;
    }

  private:
    std::size_t n_;
    std::vector<VertexPair> pairs_;
};

/* O(n^3): every pair through vertices_visible. */
VisibilityGraph visibility_graph(const Polygon& poly);

/* C(n,2) minus the number of visible pairs; always >= n, with equality
 * exactly on strictly convex polygons. */
std::size_t nonvisible_pair_count(const Polygon& poly);

/* Every two of {i,j,k} are visible or adjacent. */
bool property_A(const Polygon& poly, std::size_t i, std::size_t j, std::size_t k);

}  // namespace polymotion

#endif
