#include "polymotion/planner.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <sstream>

#include "polymotion/io.hpp"
#include "polymotion/visibility.hpp"

namespace polymotion {

namespace {

constexpr unsigned long kMaxSteps = 1ul << 20;
constexpr int kTauRetries = 6;
constexpr int kDeltaRounds = 4;

/* Min safe radius over a sample grid of [tr.start, tr.end], refined while
 * the implied step count says the grid is too coarse. Per-move verification
 * backstops anything a finite grid can miss. */
Scalar grid_min_delta(const Transformation& tr, const RootReported& speed,
                      const std::string& oracle_name) {
    Scalar span = tr.end - tr.start;
    unsigned long samples = 8;
    Scalar delta;
    bool have = false;
    auto scan = [&](unsigned long count) {
        for (unsigned long k = 0; k <= count; ++k) {
            Scalar t = tr.start + span * Scalar(k) / Scalar(count);
            Polygon p = [&] {
                try {
                    return polygon_at(tr, t);
                } catch (const MotionError& e) {
                    throw OracleError(oracle_name + ": transformation breaks at sampled time: " +
                                      e.what());
                }
            }();
            Scalar d = safe_radius(p).value;
            if (!have || d < delta) {
                delta = d;
                have = true;
            }
        }
    };
    scan(samples);
    for (int round = 0; round < kDeltaRounds; ++round) {
        TauResult t = compute_tau(speed, delta, tr.start, tr.end);
        if (t.steps <= samples || samples >= 64) break;
        samples = std::min<unsigned long>(64, t.steps);
        scan(samples);
    }
    return delta;
}

std::vector<std::size_t> identity_order(std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return order;
}

/* Earliest critical onset and earliest violation in a single-vertex move's
 * certificate. Onsets of single-vertex moves are always exact rational
 * instants (the event polynomials are linear). */
struct MoveEvents {
    std::optional<Scalar> critical_onset;
    std::optional<Scalar> violation_lo;
};

MoveEvents scan_move_certificate(const EventCertificate& cert) {
    MoveEvents ev;
    for (const Event& e : cert.events) {
        if (e.kind == EventKind::CriticalConfiguration) {
            if (e.lo != e.hi)
                throw PlannerError("single-vertex move produced a non-exact critical bracket");
            if (!ev.critical_onset || e.lo < *ev.critical_onset) ev.critical_onset = e.lo;
        } else if (e.kind == EventKind::VisibilityLoss ||
                   e.kind == EventKind::SimplicityViolation) {
            if (!ev.violation_lo || e.lo < *ev.violation_lo) ev.violation_lo = e.lo;
        }
    }
    return ev;
}

}  // namespace

TauResult compute_tau(const RootReported& speed, const Scalar& delta, const Scalar& a,
                      const Scalar& c) {
    if (sign(delta) <= 0) throw std::invalid_argument("compute_tau needs a positive delta");
    if (!(a < c)) throw std::invalid_argument("compute_tau needs a < c");
    Scalar span = c - a;
    // steps = max(1, ceil(span * speed / delta) + 1), with the ceiling taken
    // exactly on the squared quantity.
    Scalar x2 = span * span * speed.squared / (delta * delta);
    mpz_class steps = ceil_sqrt(x2) + 1;
    if (steps < 1) steps = 1;
    if (!steps.fits_ulong_p()) throw PlannerError("discretization step count overflows");
    return TauResult{span / Scalar(steps), steps.get_ui()};
}

Plan discretize_interval(const Transformation& tr, const Scalar& t0, const Scalar& t1,
                         unsigned long steps, const std::vector<std::size_t>& order,
                         const Scalar& clock0) {
    if (!(t0 < t1)) throw std::invalid_argument("discretize_interval needs t0 < t1");
    if (t0 < tr.start || t1 > tr.end)
        throw std::invalid_argument("discretize_interval outside the transformation domain");
    if (steps < 1) throw std::invalid_argument("discretize_interval needs at least one step");
    const std::size_t n = tr.vertex_count();
    std::vector<std::size_t> check = order;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < n; ++i)
        if (i >= check.size() || check[i] != i)
            throw std::invalid_argument("vertex order must be a permutation of all vertices");

    Plan plan{polygon_at(tr, t0), {}};
    Polygon cur = plan.initial;
    Scalar clock = clock0;
    Scalar span = t1 - t0;
    Scalar tau = span / Scalar(steps);
    for (unsigned long s = 1; s <= steps; ++s) {
        Scalar g = (s == steps) ? t1 : t0 + span * Scalar(s) / Scalar(steps);
        for (std::size_t v : order) {
            Point target = tr.orbits[v].at(g);
            if (target == cur[v]) continue;
            SingleVertexMove mv{v, Orbit({Keyframe{clock, cur[v]}, Keyframe{clock + tau, target}})};
            clock += tau;
            cur = apply_move(cur, mv);
            plan.moves.push_back(std::move(mv));
        }
    }
    return plan;
}

PlanResult single_vertex_convexify(const Polygon& start, const ConvexificationOracle& oracle) {
    const std::size_t n = start.size();
    PlanResult result{Plan{start, {}}, {}};
    Polygon cur = start;
    Scalar clock(0);
    std::size_t m = nonvisible_pair_count(cur);
    const std::vector<std::size_t> order = identity_order(n);

    // A certified single-vertex nudge off the critical configuration; it
    // strictly lowers the nonvisible count, which bounds how often we loop.
    auto observe = [&]() {
        std::size_t before = nonvisible_pair_count(cur);
        Polygon critical_poly = cur;
        Scalar delta = safe_radius(cur).value;
        SingleVertexMove mv = visibility_increasing_move(cur);
        SingleVertexMove shifted{mv.vertex, mv.path.shifted(clock)};
        cur = apply_move(cur, shifted);
        clock = shifted.path.domain_end();
        result.plan.moves.push_back(std::move(shifted));
        m = nonvisible_pair_count(cur);
        StageRecord rec;
        rec.kind = "observation";
        rec.from_time = rec.to_time = Scalar(0);
        rec.delta = delta;
        rec.tau = Scalar(1);
        rec.steps = 1;
        rec.vertex_order = {mv.vertex};
        rec.critical_polygon = std::move(critical_poly);
        rec.nonvisible_before = before;
        rec.nonvisible_after = m;
        rec.moves_emitted = 1;
        result.stages.push_back(std::move(rec));
        if (m >= before)
            throw PlannerError("visibility-increasing move failed to lower the nonvisible count");
    };

    // Tracks tr over [from, to] one vertex at a time, verifying every move.
    // Returns true if it truncated onto a critical configuration (committed
    // up to and including the truncated move), false on clean arrival at
    // polygon_at(tr, to). Retries with a finer grid on visibility loss.
    auto follow = [&](const Transformation& tr, const Scalar& from, const Scalar& to) -> bool {
        if (!(cur == polygon_at(tr, from)))
            throw PlannerError("planner lost track of the oracle path");
        Transformation window(from, to, tr.orbits);
        RootReported speed = max_speed(window);
        Scalar delta = grid_min_delta(window, speed, oracle.name);
        TauResult base = compute_tau(speed, delta, from, to);
        unsigned long steps = base.steps;

        for (int retry = 0; retry <= kTauRetries; ++retry, steps *= 2) {
            if (steps > kMaxSteps)
                throw PlannerError("discretization step count exceeded the cap");
            std::vector<SingleVertexMove> buffer;
            Polygon p = cur;
            Scalar ck = clock;
            Scalar span = to - from;
            Scalar tau = span / Scalar(steps);
            bool lost = false;
            std::optional<Polygon> critical_end;

            for (unsigned long s = 1; s <= steps && !lost && !critical_end; ++s) {
                Scalar g = (s == steps) ? to : from + span * Scalar(s) / Scalar(steps);
                for (std::size_t v : order) {
                    Point target = tr.orbits[v].at(g);
                    if (target == p[v]) continue;
                    SingleVertexMove mv{
                        v, Orbit({Keyframe{ck, p[v]}, Keyframe{ck + tau, target}})};
                    EventCertificate cert = verify_transformation(move_transformation(p, mv));
                    MoveEvents ev = scan_move_certificate(cert);
                    if (ev.violation_lo &&
                        (!ev.critical_onset || *ev.violation_lo < *ev.critical_onset)) {
                        lost = true;
                        break;
                    }
                    if (ev.critical_onset) {
                        const Scalar& q = *ev.critical_onset;
                        if (q <= ck)
                            throw PlannerError("move begins at a critical configuration");
                        SingleVertexMove trunc{v, mv.path.restricted(ck, q)};
                        EventCertificate cert2 =
                            verify_transformation(move_transformation(p, trunc));
                        if (!cert2.preserving()) {
                            lost = true;
                            break;
                        }
                        p = apply_move(p, trunc);
                        ck = q;
                        buffer.push_back(std::move(trunc));
                        critical_end = p;
                        break;
                    }
                    p = apply_move(p, mv);
                    ck += tau;
                    buffer.push_back(std::move(mv));
                }
            }
            if (lost) continue;

            StageRecord rec;
            rec.kind = "follow";
            rec.from_time = from;
            rec.to_time = to;
            rec.delta = delta;
            rec.tau = tau;
            rec.steps = steps;
            rec.vertex_order = order;
            rec.nonvisible_before = nonvisible_pair_count(cur);
            rec.moves_emitted = buffer.size();
            for (SingleVertexMove& mv : buffer) result.plan.moves.push_back(std::move(mv));
            cur = p;
            clock = ck;
            rec.nonvisible_after = nonvisible_pair_count(cur);
            if (critical_end) {
                rec.critical_polygon = std::move(*critical_end);
                result.stages.push_back(std::move(rec));
                return true;
            }
            result.stages.push_back(std::move(rec));
            return false;
        }
        throw OracleError(oracle.name +
                          ": discretized tracking kept losing visibility (retry budget spent)");
    };

    const std::size_t outer_cap = n * (n - 1) / 2 + n + 16;
    std::size_t outer = 0;
    while (m > n) {
        if (++outer > outer_cap) throw PlannerError("planner iteration cap reached");
        if (is_critical(cur)) {
            observe();
            continue;
        }

        Transformation tr = oracle.supply(cur);
        if (!(polygon_at(tr, tr.start) == cur))
            throw OracleError(oracle.name + ": transformation does not start at the queried polygon");
        EventCertificate cert = verify_transformation(tr);
        if (!cert.preserving())
            throw OracleError(oracle.name +
                              ": transformation violates visibility or simplicity preservation");
        if (classify_convexity(polygon_at(tr, tr.end)) == Convexity::NonConvex)
            throw OracleError(oracle.name + ": transformation does not end at a convex polygon");

        Scalar t_cur = tr.start;
        bool interrupted = false;
        std::size_t inner = 0;
        while (!interrupted && t_cur < tr.end) {
            if (++inner > 100000) throw PlannerError("planner made no progress along the oracle path");
            Transformation rest(t_cur, tr.end, tr.orbits);
            auto hit = first_critical_time(rest);

            Scalar c = tr.end;
            std::optional<std::pair<Scalar, Scalar>> bracket;
            if (hit) {
                if (hit->when.exact()) {
                    c = hit->when.lo;
                    if (c == t_cur) throw PlannerError("planner stalled at a critical time");
                } else {
                    c = hit->when.lo;
                    bracket = std::make_pair(hit->when.lo, hit->when.hi);
                }
            }
            if (t_cur < c) {
                if (follow(tr, t_cur, c)) {
                    interrupted = true;
                    break;
                }
                t_cur = c;
            }
            if (bracket) {
                // Irrational critical instant: cross its bracket with exact
                // single-vertex chords; any criticality they meet themselves
                // is rational and handled by truncation.
                if (follow(tr, bracket->first, bracket->second)) {
                    interrupted = true;
                    break;
                }
                t_cur = bracket->second;
            }
        }
        if (interrupted) {
            observe();
            continue;
        }
        m = nonvisible_pair_count(cur);
    }

    if (classify_convexity(cur) != Convexity::Strict)
        throw PlannerError("planner finished without reaching a strictly convex polygon");
    return result;
}

ConvexificationOracle oracle_from_file(const std::string& path) {
    auto tr = std::make_shared<Transformation>(parse_transformation_file(path));
    ConvexificationOracle oracle;
    oracle.name = "file:" + path;
    std::string name = oracle.name;
    oracle.supply = [tr, name](const Polygon& p) -> Transformation {
        Polygon own = polygon_at(*tr, tr->start);
        if (!(own == p))
            throw OracleError(name +
                              ": a transformation file answers only the polygon it starts at, and "
                              "the queried polygon differs");
        return *tr;
    };
    return oracle;
}

ConvexificationOracle greedy_oracle() {
    ConvexificationOracle oracle;
    oracle.name = "greedy";
    oracle.supply = [](const Polygon& start) -> Transformation {
        const std::size_t n = start.size();
        Polygon cur = start;
        struct Leg {
            std::size_t vertex;
            Point target;
        };
        std::vector<Leg> legs;

        auto defect = [&](const Polygon& p) {
            std::size_t d = 0;
            for (std::size_t v = 0; v < n; ++v)
                if (sign(cross(p[(v + n - 1) % n], p[v], p[(v + 1) % n])) <= 0) ++d;
            return d;
        };

        std::size_t guard = 0;
        while (classify_convexity(cur) != Convexity::Strict) {
            if (++guard > n * n * n + 32)
                throw OracleError("greedy: leg budget exhausted before convexity");
            std::size_t cur_defect = defect(cur);
            std::size_t cur_m = nonvisible_pair_count(cur);
            bool found = false;

            for (std::size_t v = 0; v < n && !found; ++v) {
                const Point& u = cur[(v + n - 1) % n];
                const Point& w = cur[(v + 1) % n];
                if (sign(cross(u, cur[v], w)) > 0) continue;  // already convex corner
                Point uw = w - u;
                Scalar len2 = uw.x * uw.x + uw.y * uw.y;
                Scalar tproj = ((cur[v].x - u.x) * uw.x + (cur[v].y - u.y) * uw.y) / len2;
                Point proj = u + tproj * uw;
                Point mid = u + Scalar(1, 2) * uw;
                std::vector<Point> targets;
                for (const Scalar& lam : {Scalar(1, 8), Scalar(1, 64)})
                    targets.push_back(cur[v] + (1 + lam) * (proj - cur[v]));
                targets.push_back(cur[v] + Scalar(9, 8) * (mid - cur[v]));
                for (const Point& target : targets) {
                    if (target == cur[v]) continue;
                    SingleVertexMove mv{
                        v, Orbit({Keyframe{Scalar(0), cur[v]}, Keyframe{Scalar(1), target}})};
                    EventCertificate cert;
                    try {
                        cert = verify_transformation(move_transformation(cur, mv));
                    } catch (const MotionError&) {
                        continue;
                    }
                    if (!cert.preserving()) continue;
                    Polygon next = apply_move(cur, mv);
                    if (defect(next) >= cur_defect) continue;
                    legs.push_back(Leg{v, target});
                    cur = next;
                    found = true;
                    break;
                }
            }
            if (found) continue;

            // No straightening leg certifies; if the snag is a critical
            // alignment, nudge off it (strict visibility gain, certified).
            if (is_critical(cur)) {
                try {
                    SingleVertexMove mv = visibility_increasing_move(cur);
                    Point target = mv.path.at(mv.path.domain_end());
                    Polygon next = apply_move(cur, mv);
                    if (nonvisible_pair_count(next) < cur_m) {
                        legs.push_back(Leg{mv.vertex, target});
                        cur = next;
                        continue;
                    }
                } catch (const CertificationError&) {
                }
            }
            std::ostringstream os;
            os << "greedy: stuck with no certified leg (defect " << cur_defect << ", nonvisible "
               << cur_m << ")";
            throw OracleError(os.str());
        }

        // Assemble orbits: leg k moves its vertex over [k, k+1].
        std::vector<Point> pos = start.vertices();
        std::vector<std::vector<Keyframe>> keys(n);
        for (std::size_t v = 0; v < n; ++v) keys[v].push_back(Keyframe{Scalar(0), pos[v]});
        for (std::size_t k = 0; k < legs.size(); ++k) {
            const Leg& leg = legs[k];
            Scalar t0 = Scalar(static_cast<long>(k));
            Scalar t1 = t0 + 1;
            if (keys[leg.vertex].back().t < t0)
                keys[leg.vertex].push_back(Keyframe{t0, pos[leg.vertex]});
            keys[leg.vertex].push_back(Keyframe{t1, leg.target});
            pos[leg.vertex] = leg.target;
        }
        Scalar end = Scalar(static_cast<long>(legs.size()));
        std::vector<Orbit> orbits;
        orbits.reserve(n);
        for (std::size_t v = 0; v < n; ++v) {
            if (keys[v].back().t < end && keys[v].size() > 1)
                keys[v].push_back(Keyframe{end, pos[v]});
            orbits.push_back(Orbit(std::move(keys[v])));
        }
        return Transformation(Scalar(0), end, std::move(orbits));
    };
    return oracle;
}

}  // namespace polymotion
