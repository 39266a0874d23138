#ifndef POLYMOTION_PLANNER_HPP
#define POLYMOTION_PLANNER_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymotion/critical.hpp"
#include "polymotion/motion.hpp"
#include "polymotion/verifier.hpp"

namespace polymotion {

/* Answers a simple polygon with a transformation that is expected to keep
 * visibility and simplicity and end at a convex polygon; every answer is
 * re-verified before being trusted. */
struct ConvexificationOracle {
    std::string name;
    std::function<Transformation(const Polygon&)> supply;
};

/* The oracle misbehaved: wrong start polygon, unverifiable answer, or no
 * answer available. */
struct OracleError : std::runtime_error {
    explicit OracleError(const std::string& w) : std::runtime_error(w) {}
};

/* The planner itself could not make progress within its budgets. */
struct PlannerError : std::runtime_error {
    explicit PlannerError(const std::string& w) : std::runtime_error(w) {}
};

/* Replays one transformation file; answers exactly the polygon the file
 * starts at and refuses anything else. */
ConvexificationOracle oracle_from_file(const std::string& path);

/* Built-in oracle: straightens one reflex vertex per unit-time leg, with a
 * certified visibility-increasing nudge as fallback for flat corners; every
 * leg is verified before being adopted. Fails cleanly when stuck. */
ConvexificationOracle greedy_oracle();

/* Grid resolution for tracking a motion of bounded speed without any vertex
 * drifting as far as delta between grid times:
 * steps = max(1, ceil((c - a) * speed / delta) + 1), tau = (c - a) / steps,
 * so speed * tau < delta strictly. */
struct TauResult {
    Scalar tau;
    unsigned long steps;
};
TauResult compute_tau(const RootReported& speed, const Scalar& delta, const Scalar& a,
                      const Scalar& c);

/* One-vertex-at-a-time tracking of tr over [t0, t1] on a `steps`-point grid:
 * for each grid step, each vertex in `order` moves alone straight to its
 * next grid position. Move clocks run consecutively from clock0. The result
 * is not verified here. */
Plan discretize_interval(const Transformation& tr, const Scalar& t0, const Scalar& t1,
                         unsigned long steps, const std::vector<std::size_t>& order,
                         const Scalar& clock0);

struct StageRecord {
    std::string kind;           // "follow" or "observation"
    Scalar from_time, to_time;  // oracle-transformation interval requested
    Scalar delta;               // safe-radius lower bound used for the grid
    Scalar tau;                 // per-move duration on the plan clock
    unsigned long steps;
    std::vector<std::size_t> vertex_order;
    std::optional<Polygon> critical_polygon;  // set when the stage truncated
                                              // onto a critical configuration
    std::size_t nonvisible_before = 0, nonvisible_after = 0;
    std::size_t moves_emitted = 0;
};

struct PlanResult {
    Plan plan;
    std::vector<StageRecord> stages;
};

/* Turns oracle transformations into a verified plan of single-vertex moves
 * ending at a strictly convex polygon. Tracks the oracle motion on a grid
 * finer than the safe radius allows, lands exactly on the first critical
 * configuration, applies a certified visibility-increasing move there, and
 * re-queries the oracle. */
PlanResult single_vertex_convexify(const Polygon& start, const ConvexificationOracle& oracle);

}  // namespace polymotion

#endif
