#include "polymotion/critical.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "polymotion/verifier.hpp"
#include "polymotion/visibility.hpp"

namespace polymotion {

namespace {

/* Canonical key of the line through two distinct points, as a normalized
 * (A, B, C) of A x + B y = C: non-horizontal lines scale A to 1, horizontal
 * lines are keyed by their y. */
using LineKey = std::tuple<int, Scalar, Scalar>;

LineKey line_key(const Point& p, const Point& q) {
    Scalar a = q.y - p.y;
    Scalar b = p.x - q.x;
    Scalar c = a * p.x + b * p.y;
    if (sign(a) != 0) return {1, b / a, c / a};
    return {0, Scalar(0), c / b};
}

/* Sorts indices of pairwise-collinear vertices along their common line. */
void order_along_line(const Polygon& poly, std::vector<std::size_t>& idx) {
    Point d = poly[idx[1]] - poly[idx[0]];
    bool by_x = sign(d.x) != 0;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return by_x ? poly[a].x < poly[b].x : poly[a].y < poly[b].y;
    });
}

}  // namespace

std::vector<CriticalTuple> critical_tuples(const Polygon& poly) {
    const std::size_t n = poly.size();
    std::map<LineKey, std::set<std::size_t>> families;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto& members = families[line_key(poly[i], poly[j])];
            members.insert(i);
            members.insert(j);
        }

    std::vector<CriticalTuple> out;
    for (const auto& [key, members] : families) {
        if (members.size() < 3) continue;
        std::vector<std::size_t> idx(members.begin(), members.end());
        order_along_line(poly, idx);

        // A tuple is a maximal run of consecutive vertices along the line
        // whose connecting gaps all stay inside the closure.
        std::vector<char> clean(idx.size() - 1);
        for (std::size_t g = 0; g + 1 < idx.size(); ++g)
            clean[g] = segment_in_closure(poly, Segment(poly[idx[g]], poly[idx[g + 1]]));

        std::size_t g = 0;
        while (g < clean.size()) {
            if (!clean[g]) {
                ++g;
                continue;
            }
            std::size_t h = g;
            while (h < clean.size() && clean[h]) ++h;
            if (h - g + 1 >= 3) {
                std::vector<std::size_t> run(idx.begin() + g, idx.begin() + h + 1);
                Segment witness(poly[run.front()], poly[run.back()]);
                out.push_back(CriticalTuple{std::move(run), std::move(witness)});
            }
            g = h;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const CriticalTuple& a, const CriticalTuple& b) { return a.indices < b.indices; });
    return out;
}

bool is_critical(const Polygon& poly) { return !critical_tuples(poly).empty(); }

std::vector<std::array<std::size_t, 3>> critical_triples(const Polygon& poly) {
    std::vector<std::array<std::size_t, 3>> out;
    for (const CriticalTuple& t : critical_tuples(poly)) {
        const auto& v = t.indices;
        for (std::size_t a = 0; a < v.size(); ++a)
            for (std::size_t b = a + 1; b < v.size(); ++b)
                for (std::size_t c = b + 1; c < v.size(); ++c) {
                    std::array<std::size_t, 3> tr{v[a], v[b], v[c]};
                    std::sort(tr.begin(), tr.end());
                    out.push_back(tr);
                }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SafeRadius safe_radius(const Polygon& poly) {
    const std::size_t n = poly.size();
    SafeRadius best;
    bool have = false;
    auto consider = [&](const Scalar& sq, RadiusComponent comp,
                        const std::array<std::size_t, 3>& w) {
        if (!have || sq < best.squared_bound) {
            best.squared_bound = sq;
            best.component = comp;
            best.witness = w;
            have = true;
        }
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Scalar cr = cross(poly[i], poly[j], poly[k]);
                if (sign(cr) != 0) {
                    // Squared min altitude: (2 area)^2 over the longest side.
                    Scalar m2 = std::max({squared_distance(poly[i], poly[j]),
                                          squared_distance(poly[j], poly[k]),
                                          squared_distance(poly[i], poly[k])});
                    consider(cr * cr / m2, RadiusComponent::Altitude, {i, j, k});
                    continue;
                }
                // Collinear: hull of the triple along the line.
                std::vector<std::size_t> t{i, j, k};
                order_along_line(poly, t);
                Segment hull(poly[t[0]], poly[t[2]]);
                Point d = hull.b - hull.a;
                std::vector<Scalar> params = segment_split_params(poly, hull);
                // Deepest exterior piece midpoint; a triple with no exterior
                // piece is critical and contributes no candidate.
                Scalar deepest;
                bool any = false;
                for (std::size_t s = 0; s + 1 < params.size(); ++s) {
                    Point q = hull.a + ((params[s] + params[s + 1]) / 2) * d;
                    if (point_location(poly, q) != PointLocation::Exterior) continue;
                    Scalar dmin;
                    bool first = true;
                    for (std::size_t e = 0; e < n; ++e) {
                        Scalar d2 = squared_distance(q, poly.edge(e));
                        if (first || d2 < dmin) dmin = d2;
                        first = false;
                    }
                    if (!any || dmin > deepest) deepest = dmin;
                    any = true;
                }
                if (any) consider(deepest, RadiusComponent::Clearance, {t[0], t[1], t[2]});
            }

    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t e = 0; e < n; ++e) {
            if (e == v || (e + 1) % n == v) continue;
            consider(squared_distance(poly[v], poly.edge(e)), RadiusComponent::VertexEdge,
                     {v, e, (e + 1) % n});
        }

    best.value = sqrt_lower_bound(best.squared_bound) / 4;
    return best;
}

SingleVertexMove visibility_increasing_move(const Polygon& poly) {
    std::vector<CriticalTuple> tuples = critical_tuples(poly);
    if (tuples.empty())
        throw CertificationError("visibility_increasing_move: polygon has no critical tuple");

    const Scalar delta = safe_radius(poly).value;
    const std::size_t m_before = nonvisible_pair_count(poly);
    std::ostringstream tried;

    for (const CriticalTuple& tuple : tuples) {
        Point d = tuple.witness.b - tuple.witness.a;
        Point perp{-d.y, d.x};
        Scalar len_up = sqrt_upper_bound(d.x * d.x + d.y * d.y);

        for (std::size_t mid = 1; mid + 1 < tuple.indices.size(); ++mid) {
            const std::size_t v = tuple.indices[mid];
            Scalar h = delta / 2;
            for (int halving = 0; halving <= 6; ++halving, h /= 2) {
                // Exterior side first: flattened reflex corners open outward.
                Point plus = poly[v] + (h / len_up) * perp;
                Point minus = poly[v] - (h / len_up) * perp;
                std::array<Point, 2> targets =
                    point_location(poly, plus) == PointLocation::Exterior ? std::array<Point, 2>{plus, minus}
                                                                          : std::array<Point, 2>{minus, plus};
                for (const Point& target : targets) {
                    SingleVertexMove move{
                        v, Orbit({Keyframe{Scalar(0), poly[v]}, Keyframe{Scalar(1), target}})};
                    EventCertificate cert;
                    try {
                        cert = verify_transformation(move_transformation(poly, move));
                    } catch (const MotionError&) {
                        continue;
                    }
                    if (!cert.preserving()) continue;
                    Polygon after = apply_move(poly, move);
                    if (nonvisible_pair_count(after) < m_before) return move;
                }
            }
            tried << " v" << v;
        }
    }
    throw CertificationError(
        "visibility_increasing_move: no certified move found (tried tuple vertices:" + tried.str() +
        ")");
}

}  // namespace polymotion
