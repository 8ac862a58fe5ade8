#ifndef DIGITFN_NUMBERS_HPP
#define DIGITFN_NUMBERS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "digitfn/digit_string.hpp"
#include "digitfn/number_system.hpp"
#include "digitfn/rational.hpp"

namespace digitfn {

struct Interval {
    Rational lo;
    Rational hi;
    Rational width() const { return hi - lo; }
    bool operator==(const Interval& other) const = default;
};

// Exact sum of the series the digit string denotes. Periodic tails are
// resummed by solving the linear fixed point of the per-period affine map.
Rational from_digits(const DigitString& digits);

// Canonical expansion of x in the given system, by exact nested-interval
// digit selection. Ties at shared cylinder endpoints take the representative
// whose remainder sits at the low end of the next interval, which is the
// form canonicalize() produces. For the nega-Q system the expansion of a
// rational need not be eventually periodic; this throws GuardError in that
// case (use nega_q_digits for a depth-bounded expansion with a residual).
DigitString to_digits(const Rational& x, const NumberSystem& system);

// Rewrites forbidden periodic tails to the canonical representative of the
// same value (e.g. trailing all-max digits roll over into the previous
// digit). Idempotent; keeps strings whose value admits no other form.
DigitString canonicalize(const DigitString& digits);

// Minimal re-encoding of the same digit sequence: all-zero periods become
// zero tails, repeated period blocks shrink, constant-alphabet prefixes fold
// into the period. The sequence itself is unchanged.
DigitString normalize_encoding(const NumberSystem& system, std::vector<int> prefix,
                               std::vector<int> period);

// Exact closed interval of all numbers whose expansion starts with `prefix`.
Interval cylinder(const std::vector<int>& prefix, const NumberSystem& system);

// Digit-level bijection between positive and alternating Cantor expansions
// over the same base: even-position digits are complemented. Both directions;
// the value is unchanged.
DigitString cantor_dual(const DigitString& digits);

// Positionwise digit complement d -> (radix-1) - d, kept in the same system.
DigitString complement_digits(const DigitString& digits);

struct NegaQExpansion {
    bool exact = false;
    std::optional<DigitString> digits;  // set when exact
    std::vector<int> prefix_digits;     // digits found before truncation
    Interval residual{0, 0};            // cylinder of prefix_digits (contains x)
};

// Nega-Q digit extraction: returns the full eventually periodic expansion
// when one is detected within `depth` positions, otherwise the prefix to
// `depth` together with the exact residual interval. No rounding anywhere.
NegaQExpansion nega_q_digits(const Rational& x, const QMatrix& matrix, std::size_t depth = 256);

}  // namespace digitfn

#endif
