#include "digitfn/series_fold.hpp"

#include <numeric>
#include <vector>

#include "digitfn/error.hpp"

namespace digitfn {

Rational fold_eventually_periodic(const StepFn& step_at, const DigitString& digits,
                                  std::size_t coeff_prefix_len, std::size_t coeff_period_len) {
    if (coeff_period_len == 0) throw ValidationError("coefficient period must be nonempty");

    std::vector<int> head = digits.prefix();
    std::vector<int> block = digits.period();
    if (block.empty()) block.assign(coeff_period_len, 0);

    // Align the tail with the coefficient structure: it must start past the
    // coefficient prefix and span a whole number of coefficient periods.
    const std::size_t aligned = std::lcm(block.size(), coeff_period_len);
    {
        std::vector<int> replicated;
        replicated.reserve(aligned);
        while (replicated.size() < aligned) replicated.insert(replicated.end(), block.begin(), block.end());
        block = std::move(replicated);
    }
    std::size_t rotation = 0;
    while (head.size() < coeff_prefix_len) {
        head.push_back(block[rotation]);
        rotation = (rotation + 1) % block.size();
    }
    if (rotation != 0) {
        std::vector<int> rotated(block.begin() + static_cast<std::ptrdiff_t>(rotation), block.end());
        rotated.insert(rotated.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(rotation));
        block = std::move(rotated);
    }

    // Compose the affine maps over one tail period, innermost last.
    const std::size_t tail_start = head.size() + 1;
    Rational offset = 0;
    Rational slope = 1;
    for (std::size_t j = block.size(); j-- > 0;) {
        const AffineStep st = step_at(tail_start + j, block[j]);
        offset = st.offset + st.slope * offset;
        slope = st.slope * slope;
    }
    if (rat_abs(slope) >= 1) throw Error("tail map does not contract; series diverges");
    Rational value = offset / (1 - slope);

    for (std::size_t pos = head.size(); pos >= 1; --pos) {
        const AffineStep st = step_at(pos, head[pos - 1]);
        value = st.offset + st.slope * value;
    }
    return value;
}

}  // namespace digitfn
