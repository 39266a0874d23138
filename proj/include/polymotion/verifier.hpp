#ifndef POLYMOTION_VERIFIER_HPP
#define POLYMOTION_VERIFIER_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "polymotion/motion.hpp"

namespace polymotion {

/* c2 t^2 + c1 t + c0 whose sign at time t equals the orientation of a vertex
 * triple while all three vertices move linearly in t. */
struct EventPolynomial {
    Scalar c2, c1, c0;
    Scalar eval(const Scalar& t) const { return (c2 * t + c1) * t + c0; }
    bool identically_zero() const { return sign(c2) == 0 && sign(c1) == 0 && sign(c0) == 0; }
};

/* Collinearity polynomial of triple (i, j, k) on [piece_lo, piece_hi]; the
 * interval must not contain a keyframe of any of the three orbits in its
 * interior. */
EventPolynomial collinearity_event_polynomial(const Transformation& tr, std::size_t i,
                                              std::size_t j, std::size_t k, const Scalar& piece_lo,
                                              const Scalar& piece_hi);

enum class EventKind {
    VisibilityGain,
    VisibilityLoss,
    SimplicityViolation,
    CriticalConfiguration,
};

/* Something that happened during a motion, located by an exact rational time
 * bracket (lo == hi when the instant itself is rational). */
struct Event {
    EventKind kind;
    Scalar lo, hi;
    std::vector<std::size_t> involved;  // vertex pair, triple, or tuple
    std::size_t move_index = 0;         // which plan move; 0 for bare transformations
};

struct EventCertificate {
    bool violating = false;
    std::vector<Event> events;
    bool preserving() const { return !violating; }
};

struct VerifyOptions {
    /* Target event-bracket width, as a fraction of the verified duration. */
    Scalar epsilon_fraction = Scalar(1, 65536);
};

/* Checks that the polygon stays simple and that vertex-vertex visibility
 * never decreases over [start, end]. Candidate event times are the real
 * roots of every triple's collinearity polynomial on every linear piece;
 * visibility is compared at exact rational times between root clusters.
 * Violating certificates list the offending events. */
EventCertificate verify_transformation(const Transformation& tr, const VerifyOptions& opt = {});

/* Per-move verification plus chain checking; event move_index tells which
 * move an event belongs to. */
EventCertificate verify_plan(const Plan& plan, const VerifyOptions& opt = {});

struct TimeBracket {
    Scalar lo, hi;
    bool exact() const { return lo == hi; }
};

struct CriticalHit {
    TimeBracket when;
    std::vector<std::size_t> involved;
};

/* Earliest time in [start, end] at which the moving polygon is critical,
 * if any: rational instants are reported exactly, irrational ones by a
 * bracket of width at most epsilon. */
std::optional<CriticalHit> first_critical_time(const Transformation& tr,
                                               const VerifyOptions& opt = {});

}  // namespace polymotion

#endif
