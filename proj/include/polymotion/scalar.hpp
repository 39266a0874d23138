#ifndef POLYMOTION_SCALAR_HPP
#define POLYMOTION_SCALAR_HPP

#include <gmpxx.h>
#include <string>

namespace polymotion {

// Exact rational scalar. All geometry in this library is computed over
// arbitrary-precision rationals kept in canonical lowest terms; no floating
// point enters any predicate.
using Scalar = mpq_class;

/* Parse an integer ("41", "-7") or fraction ("3/4", "-41/152") string.
 * The result is canonicalized. Throws std::invalid_argument on malformed
 * input or a zero denominator. */
Scalar parse_scalar(const std::string& text);

/* Lowest-terms rendering: "p" when the denominator is 1, else "p/q". */
std::string scalar_to_string(const Scalar& value);

int sign(const Scalar& value);

/* Nearest double; for display and scaling only, never for predicates. */
double scalar_to_double(const Scalar& value);

/* Largest rational of the form k/2^shift not exceeding sqrt(value), with
 * relative error below 1% (tighter for large values). value must be >= 0.
 * Used wherever an exact lower bound on an irrational length is needed. */
Scalar sqrt_lower_bound(const Scalar& value);

/* Rational upper bound on sqrt(value), relative error below 1%. */
Scalar sqrt_upper_bound(const Scalar& value);

/* Smallest nonnegative integer k with k*k >= value (value >= 0). */
mpz_class ceil_sqrt(const Scalar& value);

}  // namespace polymotion

#endif
