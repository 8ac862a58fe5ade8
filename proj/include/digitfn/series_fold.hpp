#ifndef DIGITFN_SERIES_FOLD_HPP
#define DIGITFN_SERIES_FOLD_HPP

#include <cstddef>
#include <functional>

#include "digitfn/digit_string.hpp"
#include "digitfn/rational.hpp"

namespace digitfn {

// Coefficients of one stage of an affine digit recursion
// S_pos = offset(pos, digit) + slope(pos, digit) * S_{pos+1}.
using StepFn = std::function<AffineStep(std::size_t pos, int digit)>;

// Exact value of the recursion over an eventually periodic digit string.
// The coefficients must be eventually periodic themselves: individual up to
// position coeff_prefix_len, then repeating every coeff_period_len positions.
// The periodic tail is resummed by solving the linear fixed point of the
// affine map composed over one aligned period (its slope product must have
// magnitude < 1).
Rational fold_eventually_periodic(const StepFn& step_at, const DigitString& digits,
                                  std::size_t coeff_prefix_len, std::size_t coeff_period_len);

}  // namespace digitfn

#endif
