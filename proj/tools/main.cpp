#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polymotion/critical.hpp"
#include "polymotion/geometry.hpp"
#include "polymotion/io.hpp"
#include "polymotion/motion.hpp"
#include "polymotion/planner.hpp"
#include "polymotion/verifier.hpp"
#include "polymotion/visibility.hpp"

namespace pm = polymotion;

namespace {

// Exit codes: 0 ok / preserving, 1 violated or planner failure, 2 bad input,
// 3 critical polygon, 4 oracle failure.
constexpr int kOk = 0, kViolated = 1, kBadInput = 2, kCritical = 3, kOracleFailed = 4;

void emit_out(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        pm::write_file(path, content);
}

std::string show(const pm::Scalar& v) {
    return pm::scalar_to_string(v) + " (~" + std::to_string(pm::scalar_to_double(v)) + ")";
}

std::string show_point(const pm::Point& p) {
    return "(" + pm::scalar_to_string(p.x) + ", " + pm::scalar_to_string(p.y) + ")";
}

int do_visgraph(const std::string& path) {
    pm::Polygon poly = pm::parse_polygon_file(path);
    pm::VisibilityGraph g = pm::visibility_graph(poly);
    std::cout << poly.size() << " vertices, " << g.visible_pairs().size() << " visible pairs, "
              << g.nonvisible_pair_count() << " nonvisible pairs\n";
    for (const pm::VertexPair& pr : g.visible_pairs())
        std::cout << pr.first << " " << pr.second << "\n";
    return kOk;
}

int do_critical(const std::string& path) {
    pm::Polygon poly = pm::parse_polygon_file(path);
    std::vector<pm::CriticalTuple> tuples = pm::critical_tuples(poly);
    if (tuples.empty()) {
        std::cout << "not critical\n";
        return kOk;
    }
    std::cout << tuples.size() << " critical tuple" << (tuples.size() == 1 ? "" : "s") << "\n";
    for (const pm::CriticalTuple& t : tuples) {
        std::cout << " ";
        for (std::size_t i : t.indices) std::cout << " " << i;
        std::cout << "  witness " << show_point(t.witness.a) << " - " << show_point(t.witness.b)
                  << "\n";
    }
    return kCritical;
}

int do_safe_radius(const std::string& path) {
    pm::Polygon poly = pm::parse_polygon_file(path);
    pm::SafeRadius sr = pm::safe_radius(poly);
    const char* component = sr.component == pm::RadiusComponent::Altitude     ? "altitude"
                            : sr.component == pm::RadiusComponent::Clearance ? "clearance"
                                                                             : "vertex-edge";
    std::cout << "safe radius " << show(sr.value) << "\n";
    std::cout << "from " << component << " candidate, squared size " << show(sr.squared_bound)
              << ", witness indices " << sr.witness[0] << " " << sr.witness[1] << " "
              << sr.witness[2] << "\n";
    return kOk;
}

int do_verify(const std::string& path, const std::string& out, const std::string& eps) {
    std::string text = pm::read_file(path);
    pm::VerifyOptions opt;
    if (!eps.empty()) opt.epsilon_fraction = pm::parse_scalar(eps);
    if (pm::sign(opt.epsilon_fraction) <= 0)
        throw pm::ParseError("--epsilon-fraction must be positive");
    // A plan file carries "moves", a bare transformation carries "orbits".
    bool is_plan = text.find("\"moves\"") != std::string::npos;
    pm::EventCertificate cert;
    if (is_plan) {
        pm::Plan plan = pm::parse_plan(text);
        cert = pm::verify_plan(plan, opt);
    } else {
        pm::Transformation tr = pm::parse_transformation(text);
        cert = pm::verify_transformation(tr, opt);
    }
    emit_out(out, pm::emit_certificate(cert));
    std::cerr << (cert.violating ? "violated" : "preserving") << ", " << cert.events.size()
              << " event" << (cert.events.size() == 1 ? "" : "s") << "\n";
    return cert.violating ? kViolated : kOk;
}

int do_plan(const std::string& poly_path, const std::string& oracle_path, const std::string& out,
            const std::string& log_path, const std::string& cert_path) {
    pm::Polygon start = pm::parse_polygon_file(poly_path);
    pm::ConvexificationOracle oracle =
        oracle_path.empty() ? pm::greedy_oracle() : pm::oracle_from_file(oracle_path);
    pm::PlanResult result = pm::single_vertex_convexify(start, oracle);
    emit_out(out, pm::emit_plan(result.plan));
    if (!log_path.empty()) pm::write_file(log_path, pm::emit_stage_log(result.stages));
    if (!cert_path.empty()) {
        pm::EventCertificate cert = pm::verify_plan(result.plan);
        pm::write_file(cert_path, pm::emit_certificate(cert));
        if (cert.violating) {
            std::cerr << "plan failed re-verification\n";
            return kViolated;
        }
    }
    std::cerr << result.stages.size() << " stage" << (result.stages.size() == 1 ? "" : "s") << ", "
              << result.plan.moves.size() << " single-vertex move"
              << (result.plan.moves.size() == 1 ? "" : "s") << ", nonvisible pairs "
              << pm::nonvisible_pair_count(start) << " -> "
              << pm::nonvisible_pair_count(result.plan.final_polygon()) << "\n";
    return kOk;
}

int do_animate(const std::string& path, const std::string& out, double fps,
               const std::string& frames_prefix) {
    pm::Plan plan = pm::parse_plan_file(path);
    if (!frames_prefix.empty()) {
        std::vector<std::string> frames = pm::export_svg_frames(plan, fps);
        for (std::size_t i = 0; i < frames.size(); ++i) {
            char num[16];
            std::snprintf(num, sizeof num, "%04zu", i);
            pm::write_file(frames_prefix + num + ".svg", frames[i]);
        }
        std::cerr << frames.size() << " frames\n";
        return kOk;
    }
    emit_out(out, pm::export_svg(plan, fps));
    return kOk;
}

int do_random(std::size_t n, std::uint64_t seed, bool general, const std::string& out) {
    pm::Polygon poly = general ? pm::random_simple_polygon_general_position(n, seed)
                               : pm::random_simple_polygon(n, seed);
    emit_out(out, pm::emit_polygon(poly));
    return kOk;
}

int do_circle(std::size_t n, const std::string& out) {
    emit_out(out, pm::emit_polygon(pm::rational_circle_polygon(n)));
    return kOk;
}

int run(int argc, char** argv) {
    CLI::App app{"exact polygon visibility, critical configurations, motion verification, and "
                 "convexification planning"};
    app.require_subcommand(1);
    int rc = kOk;

    std::string vg_path;
    CLI::App* vg = app.add_subcommand("visgraph", "vertex-to-vertex visibility of a polygon");
    vg->add_option("polygon", vg_path, "polygon JSON file")->required();
    vg->callback([&] { rc = do_visgraph(vg_path); });

    std::string cr_path;
    CLI::App* cr = app.add_subcommand("critical", "critical tuples of a polygon (exit 3 if any)");
    cr->add_option("polygon", cr_path, "polygon JSON file")->required();
    cr->callback([&] { rc = do_critical(cr_path); });

    std::string sr_path;
    CLI::App* sr = app.add_subcommand("safe-radius", "perturbation radius that cannot create "
                                                     "criticality or break simplicity");
    sr->add_option("polygon", sr_path, "polygon JSON file")->required();
    sr->callback([&] { rc = do_safe_radius(sr_path); });

    std::string vf_path, vf_out, vf_eps;
    CLI::App* vf = app.add_subcommand("verify", "certify a transformation or plan as "
                                                "visibility-preserving (exit 1 if violated)");
    vf->add_option("file", vf_path, "transformation or plan JSON file")->required();
    vf->add_option("-o,--output", vf_out, "write the certificate JSON here (default stdout)");
    vf->add_option("--epsilon-fraction", vf_eps,
                   "event bracket width as a fraction of the duration, e.g. 1/65536");
    vf->callback([&] { rc = do_verify(vf_path, vf_out, vf_eps); });

    std::string pl_path, pl_oracle, pl_out, pl_log, pl_cert;
    CLI::App* pl = app.add_subcommand("plan", "convexify by verified single-vertex moves");
    pl->add_option("polygon", pl_path, "starting polygon JSON file")->required();
    pl->add_option("--oracle", pl_oracle,
                   "transformation JSON file to follow (default: built-in greedy oracle)");
    pl->add_option("-o,--output", pl_out, "write the plan JSON here (default stdout)");
    pl->add_option("--log", pl_log, "write the stage log JSON here");
    pl->add_option("--certificate", pl_cert, "re-verify the whole plan and write the certificate");
    pl->callback([&] { rc = do_plan(pl_path, pl_oracle, pl_out, pl_log, pl_cert); });

    std::string an_path, an_out, an_frames;
    double an_fps = 30.0;
    CLI::App* an = app.add_subcommand("animate", "render a plan as an animated SVG");
    an->add_option("plan", an_path, "plan JSON file")->required();
    an->add_option("-o,--output", an_out, "write the SVG here (default stdout)");
    an->add_option("--fps", an_fps, "sampling rate, frames per clock unit");
    an->add_option("--frames", an_frames, "write numbered still frames with this path prefix");
    an->callback([&] { rc = do_animate(an_path, an_out, an_fps, an_frames); });

    std::size_t rn_n = 8;
    std::uint64_t rn_seed = 1;
    bool rn_general = false;
    std::string rn_out;
    CLI::App* rn = app.add_subcommand("random", "generate a random simple polygon");
    rn->add_option("n", rn_n, "vertex count")->required();
    rn->add_option("seed", rn_seed, "RNG seed")->required();
    rn->add_flag("--general-position", rn_general, "reject any collinear vertex triple");
    rn->add_option("-o,--output", rn_out, "write the polygon JSON here (default stdout)");
    rn->callback([&] { rc = do_random(rn_n, rn_seed, rn_general, rn_out); });

    std::size_t ci_n = 8;
    std::string ci_out;
    CLI::App* ci = app.add_subcommand("circle", "strictly convex polygon with rational vertices "
                                                "on the unit circle");
    ci->add_option("n", ci_n, "vertex count")->required();
    ci->add_option("-o,--output", ci_out, "write the polygon JSON here (default stdout)");
    ci->callback([&] { rc = do_circle(ci_n, ci_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pm::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kBadInput;
    } catch (const pm::OracleError& e) {
        std::cerr << "oracle failure: " << e.what() << "\n";
        return kOracleFailed;
    } catch (const pm::PlannerError& e) {
        std::cerr << "planner failure: " << e.what() << "\n";
        return kViolated;
    } catch (const pm::CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return kViolated;
    } catch (const pm::MotionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kViolated;
    }
}
