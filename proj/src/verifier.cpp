#include "polymotion/verifier.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "polymotion/critical.hpp"
#include "polymotion/visibility.hpp"

namespace polymotion {

namespace {

/* Position (ax + bx t, ay + by t) of a vertex on one linear piece. */
struct AffinePoint {
    Scalar ax, ay, bx, by;
};

EventPolynomial triple_polynomial(const AffinePoint& pi, const AffinePoint& pj,
                                  const AffinePoint& pk) {
    Scalar dx0 = pj.ax - pi.ax, dx1 = pj.bx - pi.bx;
    Scalar dy0 = pj.ay - pi.ay, dy1 = pj.by - pi.by;
    Scalar ex0 = pk.ax - pi.ax, ex1 = pk.bx - pi.bx;
    Scalar ey0 = pk.ay - pi.ay, ey1 = pk.by - pi.by;
    return EventPolynomial{dx1 * ey1 - dy1 * ex1,
                           dx0 * ey1 + dx1 * ey0 - (dy0 * ex1 + dy1 * ex0),
                           dx0 * ey0 - dy0 * ex0};
}

struct RootRec {
    Scalar lo, hi;  // lo == hi: exact rational root
    std::array<std::size_t, 3> triple;
    EventPolynomial poly;
};

struct Cluster {
    Scalar lo, hi;
    std::vector<std::size_t> roots;
};

/* Bisects a sign-change bracket below the width target; lands exactly on a
 * root whenever a midpoint evaluates to zero. */
void refine_bracket(RootRec& r, const Scalar& width) {
    if (r.lo == r.hi) return;
    int slo = sign(r.poly.eval(r.lo));
    while (r.hi - r.lo > width) {
        Scalar mid = (r.lo + r.hi) / 2;
        int sm = sign(r.poly.eval(mid));
        if (sm == 0) {
            r.lo = mid;
            r.hi = mid;
            return;
        }
        if (sm == slo)
            r.lo = mid;
        else
            r.hi = mid;
    }
}

/* Real roots of p in [u, v]. Rational roots come out exact; irrational ones
 * as sign-change brackets of width at most `width`. Identically-zero
 * polynomials contribute nothing (handled by criticality checks at
 * evaluation times instead). */
void isolate_roots(const EventPolynomial& p, const Scalar& u, const Scalar& v, const Scalar& width,
                   const std::array<std::size_t, 3>& triple, std::vector<RootRec>& out) {
    if (p.identically_zero()) return;
    auto push_exact = [&](const Scalar& r) { out.push_back(RootRec{r, r, triple, p}); };
    if (sign(p.c2) == 0) {
        if (sign(p.c1) == 0) return;
        Scalar r = -p.c0 / p.c1;
        if (r >= u && r <= v) push_exact(r);
        return;
    }
    Scalar disc = p.c1 * p.c1 - 4 * p.c2 * p.c0;
    int sd = sign(disc);
    if (sd < 0) return;
    Scalar vertex = -p.c1 / (2 * p.c2);
    if (sd == 0) {
        if (vertex >= u && vertex <= v) push_exact(vertex);
        return;
    }
    // Roots straddle the vertex strictly, so p is monotone with at most one
    // root on each side.
    auto side = [&](const Scalar& lo, const Scalar& hi) {
        if (lo >= hi) return;
        int slo = sign(p.eval(lo)), shi = sign(p.eval(hi));
        if (slo == 0) {
            push_exact(lo);
            return;
        }
        if (shi == 0) {
            push_exact(hi);
            return;
        }
        if (slo == shi) return;
        RootRec r{lo, hi, triple, p};
        refine_bracket(r, width);
        out.push_back(std::move(r));
    };
    side(u, std::min(v, vertex));
    side(std::max(u, vertex), v);
}

struct Timeline {
    std::vector<RootRec> roots;
    std::vector<Cluster> clusters;  // sorted, pairwise disjoint
    std::vector<Scalar> evals;      // sorted; includes start and end
};

void merge_clusters(Timeline& tl) {
    tl.clusters.clear();
    std::vector<std::size_t> order(tl.roots.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const RootRec &ra = tl.roots[a], &rb = tl.roots[b];
        if (ra.lo != rb.lo) return ra.lo < rb.lo;
        return ra.hi < rb.hi;
    });
    for (std::size_t idx : order) {
        const RootRec& r = tl.roots[idx];
        if (!tl.clusters.empty() && r.lo <= tl.clusters.back().hi) {
            Cluster& c = tl.clusters.back();
            c.hi = std::max(c.hi, r.hi);
            c.roots.push_back(idx);
        } else {
            tl.clusters.push_back(Cluster{r.lo, r.hi, {idx}});
        }
    }
}

Timeline build_timeline(const Transformation& tr, const VerifyOptions& opt) {
    Timeline tl;
    const std::size_t n = tr.vertex_count();
    Scalar duration = tr.end - tr.start;
    if (sign(duration) == 0) {
        tl.evals.push_back(tr.start);
        return tl;
    }
    Scalar eps = duration * opt.epsilon_fraction;

    std::set<Scalar> bounds{tr.start, tr.end};
    for (const Orbit& orb : tr.orbits)
        for (const Keyframe& k : orb.keys())
            if (k.t > tr.start && k.t < tr.end) bounds.insert(k.t);
    std::vector<Scalar> b(bounds.begin(), bounds.end());

    for (std::size_t piece = 0; piece + 1 < b.size(); ++piece) {
        const Scalar& u = b[piece];
        const Scalar& v = b[piece + 1];
        Scalar dt = v - u;
        std::vector<AffinePoint> aff(n);
        for (std::size_t i = 0; i < n; ++i) {
            Point pu = tr.orbits[i].at(u), pv = tr.orbits[i].at(v);
            Scalar bx = (pv.x - pu.x) / dt, by = (pv.y - pu.y) / dt;
            aff[i] = AffinePoint{pu.x - bx * u, pu.y - by * u, bx, by};
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k)
                    isolate_roots(triple_polynomial(aff[i], aff[j], aff[k]), u, v, eps / 4,
                                  {i, j, k}, tl.roots);
    }
    merge_clusters(tl);

    // A cluster wider than eps may have swallowed distinct roots: shrink the
    // member brackets until clusters fit or only coincident roots remain.
    for (int round = 0; round < 6; ++round) {
        bool oversized = false;
        for (const Cluster& c : tl.clusters) {
            if (c.hi - c.lo <= eps) continue;
            oversized = true;
            for (std::size_t idx : c.roots) {
                RootRec& r = tl.roots[idx];
                if (r.lo < r.hi) refine_bracket(r, (r.hi - r.lo) / 16);
            }
        }
        if (!oversized) break;
        merge_clusters(tl);
    }

    auto in_cluster = [&](const Scalar& t) {
        for (const Cluster& c : tl.clusters)
            if (t >= c.lo && t <= c.hi) return true;
        return false;
    };
    std::set<Scalar> evals{tr.start, tr.end};
    for (std::size_t i = 1; i + 1 < b.size(); ++i)
        if (!in_cluster(b[i])) evals.insert(b[i]);
    for (std::size_t i = 0; i + 1 < tl.clusters.size(); ++i)
        evals.insert((tl.clusters[i].hi + tl.clusters[i + 1].lo) / 2);
    tl.evals.assign(evals.begin(), evals.end());
    return tl;
}

void emit(EventCertificate& cert, Event e) {
    for (const Event& x : cert.events)
        if (x.kind == e.kind && x.lo == e.lo && x.hi == e.hi && x.involved == e.involved &&
            x.move_index == e.move_index)
            return;
    cert.events.push_back(std::move(e));
}

/* The farthest-apart pair of a (nearly) collinear triple; near a collinearity
 * instant these are the hull extremes. */
std::pair<std::size_t, std::size_t> extreme_pair(const Polygon& p,
                                                 const std::array<std::size_t, 3>& t) {
    Scalar d01 = squared_distance(p[t[0]], p[t[1]]);
    Scalar d02 = squared_distance(p[t[0]], p[t[2]]);
    Scalar d12 = squared_distance(p[t[1]], p[t[2]]);
    if (d01 >= d02 && d01 >= d12) return {t[0], t[1]};
    if (d02 >= d01 && d02 >= d12) return {t[0], t[2]};
    return {t[1], t[2]};
}

/* One-sided criticality probe for an irrational collinearity instant: the
 * segment between the triple's extremes, tested just before or just after
 * the root, where visibility structure is still constant. */
bool side_critical(const Transformation& tr, const Scalar& t,
                   const std::array<std::size_t, 3>& triple) {
    Polygon p = polygon_at(tr, t);
    auto [a, b] = extreme_pair(p, triple);
    if (p[a] == p[b]) return false;
    return segment_in_closure(p, Segment(p[a], p[b]));
}

EventCertificate analyze(const Transformation& tr, const VerifyOptions& opt) {
    EventCertificate cert;
    Timeline tl = build_timeline(tr, opt);

    std::optional<Scalar> prev_t;
    std::optional<VisibilityGraph> prev_graph;
    bool prev_critical = false;
    // The (at most one) cluster seen since the previous evaluation time and
    // whether it already produced an exact criticality event.
    std::optional<std::pair<Scalar, Scalar>> pending;
    bool pending_emitted_critical = false;
    bool stopped = false;

    std::size_t ei = 0, ci = 0;
    while (!stopped && (ei < tl.evals.size() || ci < tl.clusters.size())) {
        bool take_eval =
            ei < tl.evals.size() &&
            (ci >= tl.clusters.size() || tl.evals[ei] <= tl.clusters[ci].lo);
        if (!take_eval) {
            // Process a root cluster: exact instants are examined outright,
            // irrational ones by one-sided limits.
            const Cluster& c = tl.clusters[ci++];
            std::set<std::pair<std::pair<Scalar, Scalar>, std::array<std::size_t, 3>>> seen;
            for (std::size_t ridx : c.roots) {
                const RootRec& r = tl.roots[ridx];
                if (!seen.insert({{r.lo, r.hi}, r.triple}).second) continue;
                if (r.lo == r.hi) {
                    try {
                        Polygon p = polygon_at(tr, r.lo);
                        for (const CriticalTuple& tup : critical_tuples(p)) {
                            emit(cert, Event{EventKind::CriticalConfiguration, r.lo, r.hi,
                                             tup.indices, 0});
                            pending_emitted_critical = true;
                        }
                    } catch (const MotionError&) {
                        emit(cert, Event{EventKind::SimplicityViolation, r.lo, r.hi,
                                         {r.triple.begin(), r.triple.end()}, 0});
                        cert.violating = true;
                        stopped = true;
                        break;
                    }
                } else {
                    bool crit = false;
                    for (const Scalar& side : {r.lo, r.hi}) {
                        try {
                            if (side_critical(tr, side, r.triple)) {
                                crit = true;
                                break;
                            }
                        } catch (const MotionError&) {
                        }
                    }
                    if (crit) {
                        emit(cert, Event{EventKind::CriticalConfiguration, r.lo, r.hi,
                                         {r.triple.begin(), r.triple.end()}, 0});
                        pending_emitted_critical = true;
                    }
                }
            }
            pending = std::make_pair(c.lo, c.hi);
            continue;
        }

        const Scalar& t = tl.evals[ei++];
        std::optional<Polygon> poly;
        try {
            poly = polygon_at(tr, t);
        } catch (const MotionError&) {
            Scalar lo = pending ? pending->first : (prev_t ? *prev_t : t);
            Scalar hi = pending ? pending->second : t;
            emit(cert, Event{EventKind::SimplicityViolation, lo, hi, {}, 0});
            cert.violating = true;
            break;
        }
        VisibilityGraph graph = visibility_graph(*poly);
        std::vector<CriticalTuple> tuples = critical_tuples(*poly);

        if (prev_graph) {
            Scalar lo = pending ? pending->first : *prev_t;
            Scalar hi = pending ? pending->second : t;
            const auto& before = prev_graph->visible_pairs();
            const auto& after = graph.visible_pairs();
            std::vector<VertexPair> gained, lost;
            std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                                std::back_inserter(gained));
            std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                                std::back_inserter(lost));
            for (const VertexPair& pr : gained)
                emit(cert, Event{EventKind::VisibilityGain, lo, hi, {pr.first, pr.second}, 0});
            for (const VertexPair& pr : lost) {
                emit(cert, Event{EventKind::VisibilityLoss, lo, hi, {pr.first, pr.second}, 0});
                cert.violating = true;
            }
        }

        if (!tuples.empty() && !prev_critical && !pending_emitted_critical) {
            // Criticality persisting at a sampled time whose onset was not an
            // exactly-examined instant: charge it to the preceding cluster.
            Scalar lo = pending ? pending->first : t;
            Scalar hi = pending ? pending->second : t;
            for (const CriticalTuple& tup : tuples)
                emit(cert, Event{EventKind::CriticalConfiguration, lo, hi, tup.indices, 0});
        }

        prev_t = t;
        prev_graph = std::move(graph);
        prev_critical = !tuples.empty();
        pending.reset();
        pending_emitted_critical = false;
    }

    std::sort(cert.events.begin(), cert.events.end(), [](const Event& a, const Event& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        if (a.hi != b.hi) return a.hi < b.hi;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    return cert;
}

}  // namespace

EventPolynomial collinearity_event_polynomial(const Transformation& tr, std::size_t i,
                                              std::size_t j, std::size_t k, const Scalar& piece_lo,
                                              const Scalar& piece_hi) {
    const std::size_t n = tr.vertex_count();
    if (i >= n || j >= n || k >= n || i == j || j == k || i == k)
        throw std::invalid_argument("collinearity polynomial needs three distinct vertex indices");
    if (piece_lo < tr.start || piece_hi > tr.end || !(piece_lo < piece_hi))
        throw std::invalid_argument("piece must be a nonempty subinterval of the transformation");
    AffinePoint aff[3];
    std::size_t idx[3] = {i, j, k};
    Scalar dt = piece_hi - piece_lo;
    for (int v = 0; v < 3; ++v) {
        const Orbit& orb = tr.orbits[idx[v]];
        for (const Keyframe& key : orb.keys())
            if (key.t > piece_lo && key.t < piece_hi)
                throw std::invalid_argument("piece interior contains an orbit keyframe");
        Point pu = orb.at(piece_lo), pv = orb.at(piece_hi);
        Scalar bx = (pv.x - pu.x) / dt, by = (pv.y - pu.y) / dt;
        aff[v] = AffinePoint{pu.x - bx * piece_lo, pu.y - by * piece_lo, bx, by};
    }
    return triple_polynomial(aff[0], aff[1], aff[2]);
}

EventCertificate verify_transformation(const Transformation& tr, const VerifyOptions& opt) {
    return analyze(tr, opt);
}

EventCertificate verify_plan(const Plan& plan, const VerifyOptions& opt) {
    EventCertificate cert;
    Polygon cur = plan.initial;
    Scalar clock;
    bool have_clock = false;
    for (std::size_t m = 0; m < plan.moves.size(); ++m) {
        const SingleVertexMove& mv = plan.moves[m];
        if (have_clock && mv.path.domain_start() < clock)
            throw std::invalid_argument("plan move time spans overlap");
        clock = mv.path.domain_end();
        have_clock = true;
        Transformation tr = move_transformation(cur, mv);
        EventCertificate sub = verify_transformation(tr, opt);
        for (Event& e : sub.events) {
            e.move_index = m;
            cert.events.push_back(std::move(e));
        }
        cert.violating = cert.violating || sub.violating;
        try {
            cur = apply_move(cur, mv);
        } catch (const MotionError&) {
            cert.violating = true;  // end polygon unusable; already evidenced above
            break;
        }
    }
    return cert;
}

std::optional<CriticalHit> first_critical_time(const Transformation& tr,
                                               const VerifyOptions& opt) {
    EventCertificate cert = analyze(tr, opt);
    const Event* best = nullptr;
    for (const Event& e : cert.events) {
        if (e.kind != EventKind::CriticalConfiguration) continue;
        if (!best || e.lo < best->lo || (e.lo == best->lo && e.hi < best->hi)) best = &e;
    }
    if (!best) return std::nullopt;
    return CriticalHit{TimeBracket{best->lo, best->hi}, best->involved};
}

}  // namespace polymotion
