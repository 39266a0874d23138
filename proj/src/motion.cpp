#include "polymotion/motion.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace polymotion {

namespace {

std::string time_string(const Scalar& t) { return scalar_to_string(t); }

}  // namespace

Orbit::Orbit(std::vector<Keyframe> keys) : keys_(std::move(keys)) {
    if (keys_.empty()) throw std::invalid_argument("orbit needs at least one keyframe");
    for (std::size_t i = 1; i < keys_.size(); ++i) {
        if (!(keys_[i - 1].t < keys_[i].t))
            throw std::invalid_argument("orbit keyframe times must be strictly increasing");
    }
}

Orbit Orbit::constant(Point p) { return Orbit({Keyframe{Scalar(0), std::move(p)}}); }

bool Orbit::is_constant() const {
    for (std::size_t i = 1; i < keys_.size(); ++i)
        if (keys_[i].p != keys_[0].p) return false;
    return true;
}

Point Orbit::at(const Scalar& t) const {
    if (keys_.size() == 1) return keys_[0].p;
    if (t < keys_.front().t || t > keys_.back().t)
        throw std::out_of_range("orbit evaluated outside its domain at t=" + time_string(t));
    // Last segment whose start time is <= t.
    std::size_t lo = 0, hi = keys_.size() - 1;
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (keys_[mid].t <= t)
            lo = mid;
        else
            hi = mid;
    }
    const Keyframe& a = keys_[lo];
    const Keyframe& b = keys_[hi];
    if (t == a.t) return a.p;
    if (t == b.t) return b.p;
    Scalar u = (t - a.t) / (b.t - a.t);
    return a.p + u * (b.p - a.p);
}

Orbit Orbit::restricted(const Scalar& t0, const Scalar& t1) const {
    if (t0 > t1) throw std::invalid_argument("orbit restriction needs t0 <= t1");
    if (keys_.size() == 1) {
        if (t0 == t1) return Orbit({Keyframe{t0, keys_[0].p}});
        return Orbit({Keyframe{t0, keys_[0].p}, Keyframe{t1, keys_[0].p}});
    }
    std::vector<Keyframe> out;
    out.push_back(Keyframe{t0, at(t0)});
    for (const Keyframe& k : keys_)
        if (k.t > t0 && k.t < t1) out.push_back(k);
    if (t1 > t0) out.push_back(Keyframe{t1, at(t1)});
    return Orbit(std::move(out));
}

Orbit Orbit::shifted(const Scalar& dt) const {
    std::vector<Keyframe> out = keys_;
    for (Keyframe& k : out) k.t += dt;
    return Orbit(std::move(out));
}

Transformation::Transformation(Scalar s, Scalar e, std::vector<Orbit> o)
    : start(std::move(s)), end(std::move(e)), orbits(std::move(o)) {
    if (start > end) throw std::invalid_argument("transformation needs start <= end");
    if (orbits.size() < 3) throw std::invalid_argument("transformation needs at least 3 orbits");
    for (const Orbit& orb : orbits) {
        if (orb.keys().size() == 1) continue;
        if (orb.domain_start() > start || orb.domain_end() < end)
            throw std::invalid_argument("orbit domain must cover [start, end]");
    }
}

Polygon make_indexed_polygon(std::vector<Point> vertices, const std::string& context) {
    try {
        Polygon p(std::move(vertices));
        if (p.reversed_on_input())
            throw MotionError(context + ": orientation reversed (simplicity must have broken earlier)");
        return p;
    } catch (const NonSimplePolygonError& e) {
        throw MotionError(context + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw MotionError(context + ": " + e.what());
    }
}

Polygon polygon_at(const Transformation& tr, const Scalar& t) {
    if (t < tr.start || t > tr.end)
        throw std::out_of_range("time " + time_string(t) + " outside transformation domain");
    std::vector<Point> verts;
    verts.reserve(tr.orbits.size());
    for (const Orbit& orb : tr.orbits) verts.push_back(orb.at(t));
    return make_indexed_polygon(std::move(verts), "polygon at t=" + time_string(t));
}

Transformation move_transformation(const Polygon& current, const SingleVertexMove& move) {
    if (move.vertex >= current.size())
        throw std::invalid_argument("move vertex index out of range");
    if (move.path.at(move.path.domain_start()) != current[move.vertex])
        throw MotionError("move path does not start at the vertex's current position");
    std::vector<Orbit> orbits;
    orbits.reserve(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
        if (i == move.vertex)
            orbits.push_back(move.path);
        else
            orbits.push_back(Orbit::constant(current[i]));
    }
    return Transformation(move.path.domain_start(), move.path.domain_end(), std::move(orbits));
}

Polygon apply_move(const Polygon& current, const SingleVertexMove& move) {
    if (move.vertex >= current.size())
        throw std::invalid_argument("move vertex index out of range");
    if (current[move.vertex] != move.path.at(move.path.domain_start()))
        throw MotionError("plan does not chain: move path starts away from the vertex");
    std::vector<Point> verts = current.vertices();
    verts[move.vertex] = move.path.at(move.path.domain_end());
    return make_indexed_polygon(std::move(verts), "polygon after move");
}

Polygon Plan::polygon_after(std::size_t k) const {
    if (k > moves.size()) throw std::out_of_range("plan has fewer moves");
    Polygon cur = initial;
    for (std::size_t i = 0; i < k; ++i) cur = apply_move(cur, moves[i]);
    return cur;
}

double RootReported::approx() const { return std::sqrt(squared.get_d()); }

namespace {

/* Augmenting-path step of the bipartite matching used by the bottleneck
 * search: can row i be matched using edges with weight <= thr? */
bool try_match(std::size_t i, const std::vector<std::vector<Scalar>>& w, const Scalar& thr,
               std::vector<char>& seen, std::vector<std::size_t>& match_of_col) {
    const std::size_t n = w.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (seen[j] || w[i][j] > thr) continue;
        seen[j] = 1;
        if (match_of_col[j] == n || try_match(match_of_col[j], w, thr, seen, match_of_col)) {
            match_of_col[j] = i;
            return true;
        }
    }
    return false;
}

bool perfect_matching_under(const std::vector<std::vector<Scalar>>& w, const Scalar& thr) {
    const std::size_t n = w.size();
    std::vector<std::size_t> match_of_col(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<char> seen(n, 0);
        if (!try_match(i, w, thr, seen, match_of_col)) return false;
    }
    return true;
}

}  // namespace

RootReported distance(const Polygon& p, const Polygon& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("distance requires equal vertex counts");
    const std::size_t n = p.size();
    std::vector<std::vector<Scalar>> w(n, std::vector<Scalar>(n));
    std::set<Scalar> values;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            w[i][j] = squared_distance(p[i], q[j]);
            values.insert(w[i][j]);
        }
    std::vector<Scalar> sorted(values.begin(), values.end());
    // Smallest threshold admitting a perfect matching.
    std::size_t lo = 0, hi = sorted.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (perfect_matching_under(w, sorted[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return RootReported{sorted[lo]};
}

RootReported labeled_distance(const Polygon& p, const Polygon& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("labeled_distance requires equal vertex counts");
    Scalar best(0);
    for (std::size_t i = 0; i < p.size(); ++i)
        best = std::max(best, squared_distance(p[i], q[i]));
    return RootReported{best};
}

RootReported max_speed(const Transformation& tr) {
    Scalar best(0);
    for (const Orbit& orb : tr.orbits) {
        const auto& ks = orb.keys();
        for (std::size_t i = 1; i < ks.size(); ++i) {
            // Only pieces overlapping (start, end) bound speeds inside the domain.
            if (ks[i].t <= tr.start || ks[i - 1].t >= tr.end) continue;
            Scalar dt = ks[i].t - ks[i - 1].t;
            Scalar v2 = squared_distance(ks[i].p, ks[i - 1].p) / (dt * dt);
            best = std::max(best, v2);
        }
    }
    return RootReported{best};
}

Plan concatenate(const std::vector<Plan>& plans) {
    if (plans.empty()) throw std::invalid_argument("cannot concatenate zero plans");
    Plan out{plans[0].initial, {}};
    Polygon cur = plans[0].initial;
    bool have_clock = false;
    Scalar clock(0);
    for (const Plan& pl : plans) {
        if (!(pl.initial == cur))
            throw MotionError("concatenation junction mismatch: plan does not start at the previous final polygon");
        for (const SingleVertexMove& mv : pl.moves) {
            Scalar s = mv.path.domain_start();
            Scalar dt(0);
            if (have_clock && s < clock) dt = clock - s;
            SingleVertexMove shifted{mv.vertex, dt == 0 ? mv.path : mv.path.shifted(dt)};
            if (have_clock && shifted.path.domain_start() < clock)
                throw MotionError("concatenation produced overlapping move times");
            clock = shifted.path.domain_end();
            have_clock = true;
            cur = apply_move(cur, shifted);
            out.moves.push_back(std::move(shifted));
        }
    }
    return out;
}

}  // namespace polymotion
