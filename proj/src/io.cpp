#include "polymotion/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "polymotion/critical.hpp"
#include "polymotion/visibility.hpp"

namespace polymotion {

namespace {

using Json = nlohmann::ordered_json;

Json scalar_to_json(const Scalar& s) {
    if (s.get_den() == 1) {
        mpz_class num = s.get_num();
        if (num.fits_slong_p()) return Json(num.get_si());
    }
    return Json(scalar_to_string(s));
}

Scalar json_to_scalar(const Json& j, const std::string& where) {
    if (j.is_number_integer() || j.is_number_unsigned()) return parse_scalar(j.dump());
    if (j.is_number_float())
        throw ParseError(where + ": non-integer JSON numbers are inexact; use a \"p/q\" string");
    if (j.is_string()) {
        try {
            return parse_scalar(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

Point json_to_point(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected [x, y]");
    return Point{json_to_scalar(j[0], where + "[0]"), json_to_scalar(j[1], where + "[1]")};
}

Json point_to_json(const Point& p) { return Json::array({scalar_to_json(p.x), scalar_to_json(p.y)}); }

Polygon parse_polygon_json(const Json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("vertices"))
        throw ParseError(where + ": expected an object with a \"vertices\" array");
    const Json& vs = j["vertices"];
    if (!vs.is_array() || vs.size() < 3) throw ParseError(where + ".vertices: need at least 3 entries");
    std::vector<Point> pts;
    pts.reserve(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
        pts.push_back(json_to_point(vs[i], where + ".vertices[" + std::to_string(i) + "]"));
    try {
        return Polygon(std::move(pts));
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

Json polygon_to_json(const Polygon& p) {
    Json vs = Json::array();
    for (const Point& v : p.vertices()) vs.push_back(point_to_json(v));
    Json out = Json::object();
    out["vertices"] = std::move(vs);
    return out;
}

std::vector<Keyframe> json_to_keys(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty array of [t, x, y]");
    std::vector<Keyframe> keys;
    keys.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) {
        const Json& e = j[k];
        std::string at = where + "[" + std::to_string(k) + "]";
        if (!e.is_array() || e.size() != 3) throw ParseError(at + ": expected [t, x, y]");
        keys.push_back(Keyframe{json_to_scalar(e[0], at + "[0]"),
                                Point{json_to_scalar(e[1], at + "[1]"), json_to_scalar(e[2], at + "[2]")}});
    }
    return keys;
}

Json keys_to_json(const Orbit& orbit) {
    Json out = Json::array();
    for (const Keyframe& k : orbit.keys())
        out.push_back(Json::array({scalar_to_json(k.t), scalar_to_json(k.p.x), scalar_to_json(k.p.y)}));
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

Polygon parse_polygon(const std::string& text) { return parse_polygon_json(parse_json(text), "polygon"); }

std::string emit_polygon(const Polygon& poly) { return dump(polygon_to_json(poly)); }

Transformation parse_transformation(const std::string& text) {
    Json j = parse_json(text);
    if (!j.is_object()) throw ParseError("transformation: expected an object");
    for (const char* key : {"start", "end", "orbits"})
        if (!j.contains(key)) throw ParseError(std::string("transformation: missing \"") + key + "\"");
    Scalar start = json_to_scalar(j["start"], "start");
    Scalar end = json_to_scalar(j["end"], "end");
    const Json& os = j["orbits"];
    if (!os.is_array() || os.size() < 3) throw ParseError("orbits: need at least 3 orbits");
    std::vector<Orbit> orbits;
    orbits.reserve(os.size());
    for (std::size_t i = 0; i < os.size(); ++i) {
        try {
            orbits.emplace_back(json_to_keys(os[i], "orbits[" + std::to_string(i) + "]"));
        } catch (const std::invalid_argument& e) {
            throw ParseError("orbits[" + std::to_string(i) + "]: " + e.what());
        }
    }
    // Orientation is normalized on the polygon at the start time; clockwise
    // input flips to counterclockwise by reversing the orbit order.
    std::vector<Point> init;
    init.reserve(orbits.size());
    try {
        for (const Orbit& orb : orbits) init.push_back(orb.at(start));
    } catch (const std::out_of_range& e) {
        throw ParseError(std::string("orbits: ") + e.what());
    }
    Polygon probe = [&] {
        try {
            return Polygon(std::move(init));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("transformation: polygon at the start time: ") + e.what());
        }
    }();
    if (probe.reversed_on_input()) std::reverse(orbits.begin(), orbits.end());
    try {
        return Transformation(std::move(start), std::move(end), std::move(orbits));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("transformation: ") + e.what());
    }
}

std::string emit_transformation(const Transformation& tr) {
    Json out = Json::object();
    out["start"] = scalar_to_json(tr.start);
    out["end"] = scalar_to_json(tr.end);
    Json os = Json::array();
    for (const Orbit& orb : tr.orbits) os.push_back(keys_to_json(orb));
    out["orbits"] = std::move(os);
    return dump(out);
}

Plan parse_plan(const std::string& text) {
    Json j = parse_json(text);
    if (!j.is_object() || !j.contains("initial") || !j.contains("moves"))
        throw ParseError("plan: expected an object with \"initial\" and \"moves\"");
    Polygon initial = parse_polygon_json(j["initial"], "initial");
    const std::size_t n = initial.size();
    const bool reversed = initial.reversed_on_input();
    const Json& ms = j["moves"];
    if (!ms.is_array()) throw ParseError("moves: expected an array");
    std::vector<SingleVertexMove> moves;
    moves.reserve(ms.size());
    for (std::size_t k = 0; k < ms.size(); ++k) {
        const Json& mj = ms[k];
        std::string at = "moves[" + std::to_string(k) + "]";
        if (!mj.is_object() || !mj.contains("vertex") || !mj.contains("path"))
            throw ParseError(at + ": expected {\"vertex\": i, \"path\": [[t, x, y], ...]}");
        const Json& vj = mj["vertex"];
        if (!vj.is_number_integer() && !vj.is_number_unsigned())
            throw ParseError(at + ".vertex: expected an integer");
        long long v = vj.get<long long>();
        if (v < 0 || static_cast<std::size_t>(v) >= n)
            throw ParseError(at + ".vertex: out of range for " + std::to_string(n) + " vertices");
        std::size_t vertex = static_cast<std::size_t>(v);
        if (reversed) vertex = n - 1 - vertex;  // labels follow the normalized order
        try {
            moves.push_back(SingleVertexMove{vertex, Orbit(json_to_keys(mj["path"], at + ".path"))});
        } catch (const std::invalid_argument& e) {
            throw ParseError(at + ".path: " + e.what());
        }
    }
    return Plan{std::move(initial), std::move(moves)};
}

std::string emit_plan(const Plan& plan) {
    Json out = Json::object();
    out["initial"] = polygon_to_json(plan.initial);
    Json ms = Json::array();
    for (const SingleVertexMove& mv : plan.moves) {
        Json mj = Json::object();
        mj["vertex"] = mv.vertex;
        mj["path"] = keys_to_json(mv.path);
        ms.push_back(std::move(mj));
    }
    out["moves"] = std::move(ms);
    return dump(out);
}

namespace {

const char* kind_name(EventKind k) {
    switch (k) {
        case EventKind::VisibilityGain: return "visibility-gain";
        case EventKind::VisibilityLoss: return "visibility-loss";
        case EventKind::SimplicityViolation: return "simplicity-violation";
        case EventKind::CriticalConfiguration: return "critical-configuration";
    }
    return "unknown";
}

}  // namespace

std::string emit_certificate(const EventCertificate& cert) {
    Json out = Json::object();
    out["verdict"] = cert.violating ? "violated" : "preserving";
    Json evs = Json::array();
    for (const Event& e : cert.events) {
        Json ej = Json::object();
        ej["kind"] = kind_name(e.kind);
        ej["lo"] = scalar_to_json(e.lo);
        ej["hi"] = scalar_to_json(e.hi);
        ej["involved"] = e.involved;
        ej["move"] = e.move_index;
        evs.push_back(std::move(ej));
    }
    out["events"] = std::move(evs);
    return dump(out);
}

std::string emit_stage_log(const std::vector<StageRecord>& stages) {
    Json out = Json::object();
    Json ss = Json::array();
    for (const StageRecord& s : stages) {
        Json sj = Json::object();
        sj["kind"] = s.kind;
        sj["from"] = scalar_to_json(s.from_time);
        sj["to"] = scalar_to_json(s.to_time);
        sj["delta"] = scalar_to_json(s.delta);
        sj["tau"] = scalar_to_json(s.tau);
        sj["steps"] = s.steps;
        sj["vertex_order"] = s.vertex_order;
        if (s.critical_polygon) sj["critical_polygon"] = polygon_to_json(*s.critical_polygon);
        sj["nonvisible_before"] = s.nonvisible_before;
        sj["nonvisible_after"] = s.nonvisible_after;
        sj["moves_emitted"] = s.moves_emitted;
        ss.push_back(std::move(sj));
    }
    out["stages"] = std::move(ss);
    return dump(out);
}

Polygon parse_polygon_file(const std::string& path) { return parse_polygon(read_file(path)); }
Transformation parse_transformation_file(const std::string& path) {
    return parse_transformation(read_file(path));
}
Plan parse_plan_file(const std::string& path) { return parse_plan(read_file(path)); }

namespace {

// Angular order around an interior reference point, exact. Half 0 is the open
// upper half plane plus the positive x axis, half 1 the rest.
int half_of(const Point& c, const Point& p) {
    int sy = sign(p.y - c.y);
    if (sy != 0) return sy > 0 ? 0 : 1;
    return sign(p.x - c.x) > 0 ? 0 : 1;
}

bool transversal_cross(const Segment& s, const Segment& t) {
    int o1 = orientation(s.a, s.b, t.a), o2 = orientation(s.a, s.b, t.b);
    int o3 = orientation(t.a, t.b, s.a), o4 = orientation(t.a, t.b, s.b);
    return o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 && o1 != o2 && o3 != o4;
}

}  // namespace

Polygon random_simple_polygon(std::size_t n, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("random_simple_polygon: need n >= 3");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const std::uint64_t grid = 4 * static_cast<std::uint64_t>(n) + 8;
    for (int attempt = 0; attempt < 100; ++attempt) {
        // Distinct grid points.
        std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
        std::vector<Point> pts;
        while (pts.size() < n) {
            std::uint64_t x = rng() % grid, y = rng() % grid;
            if (!seen.insert({x, y}).second) continue;
            pts.push_back(Point{Scalar(static_cast<unsigned long>(x)),
                                Scalar(static_cast<unsigned long>(y))});
        }
        // Star-shaped seed tour: sort by angle around the centroid.
        Point c{Scalar(0), Scalar(0)};
        for (const Point& p : pts) {
            c.x += p.x;
            c.y += p.y;
        }
        c.x /= Scalar(static_cast<unsigned long>(n));
        c.y /= Scalar(static_cast<unsigned long>(n));
        bool degenerate = false;
        for (const Point& p : pts)
            if (p.x == c.x && p.y == c.y) degenerate = true;
        if (degenerate) continue;
        std::sort(pts.begin(), pts.end(), [&](const Point& p, const Point& q) {
            int hp = half_of(c, p), hq = half_of(c, q);
            if (hp != hq) return hp < hq;
            int s = sign(cross(c, p, q));
            if (s != 0) return s > 0;
            return squared_distance(c, p) < squared_distance(c, q);
        });
        for (std::size_t i = 0; i + 1 < n && !degenerate; ++i) {
            if (half_of(c, pts[i]) == half_of(c, pts[i + 1]) &&
                sign(cross(c, pts[i], pts[i + 1])) == 0)
                degenerate = true;  // two points on one centroid ray
        }
        if (degenerate) continue;
        // 2-opt: reverse out transversal crossings; any other contact between
        // nonadjacent edges is a touch the reversal cannot remove, so resample.
        bool bad = false, changed = true;
        std::size_t flips = 0;
        const std::size_t flip_cap = 12 * n * n;
        while (changed && !bad) {
            changed = false;
            for (std::size_t i = 0; i < n && !changed && !bad; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (j == i + 1 || (i == 0 && j == n - 1)) continue;
                    Segment ei(pts[i], pts[(i + 1) % n]);
                    Segment ej(pts[j], pts[(j + 1) % n]);
                    if (transversal_cross(ei, ej)) {
                        std::reverse(pts.begin() + i + 1, pts.begin() + j + 1);
                        changed = true;
                        if (++flips > flip_cap) bad = true;
                        break;
                    }
                    if (segments_touch(ei, ej)) {
                        bad = true;
                        break;
                    }
                }
            }
        }
        if (bad) continue;
        try {
            return Polygon(std::move(pts));
        } catch (const std::invalid_argument&) {
            continue;  // e.g. collinear spike at adjacent edges
        }
    }
    throw std::runtime_error("random_simple_polygon: no simple tour found; try another seed");
}

Polygon random_simple_polygon_general_position(std::size_t n, std::uint64_t seed) {
    for (std::uint64_t bump = 0; bump < 400; ++bump) {
        Polygon p = random_simple_polygon(n, seed + bump);
        const std::vector<Point>& v = p.vertices();
        bool collinear = false;
        for (std::size_t i = 0; i < n && !collinear; ++i)
            for (std::size_t j = i + 1; j < n && !collinear; ++j)
                for (std::size_t k = j + 1; k < n; ++k)
                    if (orientation(v[i], v[j], v[k]) == 0) {
                        collinear = true;
                        break;
                    }
        if (!collinear) return p;
    }
    throw std::runtime_error("random_simple_polygon_general_position: out of attempts");
}

Polygon rational_circle_polygon(std::size_t n) {
    if (n < 3) throw std::invalid_argument("rational_circle_polygon: need n >= 3");
    const double pi = std::acos(-1.0);
    std::vector<Point> pts;
    pts.reserve(n);
    const Scalar one(1);
    for (std::size_t k = 0; k < n; ++k) {
        // Rational point on the unit circle near angle theta via the
        // tangent-half-angle substitution; angles stay inside (-pi, pi).
        double theta = -pi + 2.0 * pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
        long num = std::lround(std::tan(theta / 2.0) * 4096.0);
        Scalar t = Scalar(num) / Scalar(4096);
        Scalar t2 = t * t;
        Scalar den = one + t2;
        pts.push_back(Point{(one - t2) / den, (t + t) / den});
    }
    Polygon poly(std::move(pts));
    if (classify_convexity(poly) != Convexity::Strict)
        throw std::runtime_error("rational_circle_polygon: rounding collision; lower n");
    return poly;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(8);
    os << v;
    return os.str();
}

struct Box {
    double minx = 0, miny = 0, maxx = 1, maxy = 1;
    bool any = false;
    void add(const Point& p) {
        double x = scalar_to_double(p.x), y = scalar_to_double(p.y);
        if (!any) {
            minx = maxx = x;
            miny = maxy = y;
            any = true;
        } else {
            minx = std::min(minx, x);
            maxx = std::max(maxx, x);
            miny = std::min(miny, y);
            maxy = std::max(maxy, y);
        }
    }
};

struct Mapper {
    Box box;
    double scale = 1, margin = 24, width = 640, height = 640;
    void fit() {
        double dx = std::max(box.maxx - box.minx, 1e-9);
        double dy = std::max(box.maxy - box.miny, 1e-9);
        scale = std::min((width - 2 * margin) / dx, (height - 2 * margin) / dy);
        height = 2 * margin + dy * scale;
        width = 2 * margin + dx * scale;
    }
    double x(const Point& p) const { return margin + (scalar_to_double(p.x) - box.minx) * scale; }
    double y(const Point& p) const { return margin + (box.maxy - scalar_to_double(p.y)) * scale; }
};

std::string points_attr(const Mapper& m, const Polygon& poly) {
    std::string out;
    for (const Point& v : poly.vertices()) {
        if (!out.empty()) out += " ";
        out += fmt(m.x(v)) + "," + fmt(m.y(v));
    }
    return out;
}

void sight_lines(std::ostringstream& svg, const Mapper& m, const Polygon& poly,
                 const std::string& stroke) {
    const std::vector<Point>& v = poly.vertices();
    VisibilityGraph g = visibility_graph(poly);  // named: visible_pairs() refers into it
    for (const VertexPair& pr : g.visible_pairs())
        svg << "  <line x1=\"" << fmt(m.x(v[pr.first])) << "\" y1=\"" << fmt(m.y(v[pr.first]))
            << "\" x2=\"" << fmt(m.x(v[pr.second])) << "\" y2=\"" << fmt(m.y(v[pr.second]))
            << "\" stroke=\"" << stroke << "\" stroke-width=\"0.8\" opacity=\"0.45\"/>\n";
}

void critical_witnesses(std::ostringstream& svg, const Mapper& m, const Polygon& poly) {
    for (const CriticalTuple& tup : critical_tuples(poly))
        svg << "  <line x1=\"" << fmt(m.x(tup.witness.a)) << "\" y1=\"" << fmt(m.y(tup.witness.a))
            << "\" x2=\"" << fmt(m.x(tup.witness.b)) << "\" y2=\"" << fmt(m.y(tup.witness.b))
            << "\" stroke=\"#d32f2f\" stroke-width=\"2.5\" stroke-dasharray=\"6 3\" opacity=\"0.9\"/>\n";
}

// Polygon snapshots at the junctions between moves: boundary k is the polygon
// before move k; the last entry is the final polygon.
std::vector<Polygon> plan_boundaries(const Plan& plan) {
    std::vector<Polygon> out;
    out.push_back(plan.initial);
    Polygon cur = plan.initial;
    for (const SingleVertexMove& mv : plan.moves) {
        cur = apply_move(cur, mv);
        out.push_back(cur);
    }
    return out;
}

}  // namespace

std::string export_svg(const Plan& plan, double fps) {
    if (!(fps > 0)) throw std::invalid_argument("export_svg: fps must be positive");
    std::vector<Polygon> bounds = plan_boundaries(plan);
    Mapper m;
    for (const Polygon& p : bounds)
        for (const Point& v : p.vertices()) m.box.add(v);
    for (const SingleVertexMove& mv : plan.moves)
        for (const Keyframe& k : mv.path.keys()) m.box.add(k.p);
    m.fit();

    // Animation frames: exact samples along each move (keyframes plus enough
    // uniform cuts for the frame rate); the shape is static between moves.
    std::vector<std::pair<double, std::string>> frames;
    Scalar t0 = plan.moves.empty() ? Scalar(0) : plan.moves.front().path.domain_start();
    frames.emplace_back(scalar_to_double(t0), points_attr(m, plan.initial));
    Polygon cur = plan.initial;
    for (const SingleVertexMove& mv : plan.moves) {
        Scalar a = mv.path.domain_start(), b = mv.path.domain_end();
        if (frames.back().first < scalar_to_double(a))
            frames.emplace_back(scalar_to_double(a), points_attr(m, cur));  // hold over the gap
        std::set<Scalar> cuts;
        for (const Keyframe& k : mv.path.keys()) cuts.insert(k.t);
        double dur = scalar_to_double(b - a);
        unsigned long extra = static_cast<unsigned long>(std::ceil(std::max(dur, 0.0) * fps));
        extra = std::min(extra, 256ul);
        for (unsigned long s = 1; s < extra; ++s)
            cuts.insert(a + (b - a) * Scalar(s) / Scalar(extra));
        std::vector<Point> verts = cur.vertices();
        for (const Scalar& t : cuts) {
            if (t <= a) continue;
            verts[mv.vertex] = mv.path.at(t);
            frames.emplace_back(scalar_to_double(t),
                                points_attr(m, make_indexed_polygon(verts, "svg sample")));
        }
        cur = apply_move(cur, mv);
    }

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(m.width) << "\" height=\""
        << fmt(m.height) << "\" viewBox=\"0 0 " << fmt(m.width) << " " << fmt(m.height) << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"#fafafa\"/>\n";
    sight_lines(svg, m, plan.initial, "#2e7d32");
    sight_lines(svg, m, bounds.back(), "#1565c0");
    // Witness segments of critical junction shapes (strided so long plans
    // stay affordable; the ends are always included).
    std::size_t stride = std::max<std::size_t>(1, bounds.size() / 256);
    for (std::size_t i = 0; i + 1 < bounds.size(); i += stride) critical_witnesses(svg, m, bounds[i]);
    critical_witnesses(svg, m, bounds.back());

    double span = frames.back().first - frames.front().first;
    svg << "  <polygon fill=\"#90caf9\" fill-opacity=\"0.35\" stroke=\"#0d47a1\" stroke-width=\"2\" points=\""
        << frames.front().second << "\">\n";
    if (span > 0 && frames.size() > 1) {
        svg << "    <animate attributeName=\"points\" dur=\"" << fmt(span) << "s\" fill=\"freeze\"\n";
        svg << "      keyTimes=\"";
        for (std::size_t i = 0; i < frames.size(); ++i) {
            if (i) svg << ";";
            double kt = (frames[i].first - frames.front().first) / span;
            svg << fmt(i + 1 == frames.size() ? 1.0 : kt);
        }
        svg << "\"\n      values=\"";
        for (std::size_t i = 0; i < frames.size(); ++i) {
            if (i) svg << ";";
            svg << frames[i].second;
        }
        svg << "\" calcMode=\"linear\"/>\n";
    }
    svg << "  </polygon>\n";
    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::string> export_svg_frames(const Plan& plan, double fps) {
    if (!(fps > 0)) throw std::invalid_argument("export_svg_frames: fps must be positive");
    std::vector<Polygon> bounds = plan_boundaries(plan);
    Mapper m;
    for (const Polygon& p : bounds)
        for (const Point& v : p.vertices()) m.box.add(v);
    for (const SingleVertexMove& mv : plan.moves)
        for (const Keyframe& k : mv.path.keys()) m.box.add(k.p);
    m.fit();

    Scalar t0 = plan.moves.empty() ? Scalar(0) : plan.moves.front().path.domain_start();
    Scalar t1 = plan.moves.empty() ? Scalar(0) : plan.moves.back().path.domain_end();
    double span = scalar_to_double(t1 - t0);
    unsigned long count = static_cast<unsigned long>(std::ceil(span * fps)) + 1;
    if (count > 2000) throw std::invalid_argument("export_svg_frames: over 2000 frames; lower fps");

    std::vector<std::string> out;
    out.reserve(count);
    Polygon cur = plan.initial;
    std::size_t next_move = 0;
    for (unsigned long f = 0; f < count; ++f) {
        Scalar t = t0 + (t1 - t0) * Scalar(f) / Scalar(std::max(count - 1, 1ul));
        while (next_move < plan.moves.size() && plan.moves[next_move].path.domain_end() <= t) {
            cur = apply_move(cur, plan.moves[next_move]);
            ++next_move;
        }
        Polygon shape = cur;
        if (next_move < plan.moves.size() && plan.moves[next_move].path.domain_start() < t) {
            std::vector<Point> verts = cur.vertices();
            verts[plan.moves[next_move].vertex] = plan.moves[next_move].path.at(t);
            shape = make_indexed_polygon(std::move(verts), "svg frame");
        }
        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(m.width) << "\" height=\""
            << fmt(m.height) << "\" viewBox=\"0 0 " << fmt(m.width) << " " << fmt(m.height) << "\">\n";
        svg << "  <rect width=\"100%\" height=\"100%\" fill=\"#fafafa\"/>\n";
        sight_lines(svg, m, shape, "#2e7d32");
        critical_witnesses(svg, m, shape);
        svg << "  <polygon fill=\"#90caf9\" fill-opacity=\"0.35\" stroke=\"#0d47a1\" stroke-width=\"2\" points=\""
            << points_attr(m, shape) << "\"/>\n";
        svg << "</svg>\n";
        out.push_back(svg.str());
    }
    return out;
}

}  // namespace polymotion
