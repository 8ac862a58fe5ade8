#include "digitfn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "digitfn/error.hpp"
#include "digitfn/numbers.hpp"

namespace digitfn {

namespace {

struct MapShape {
    int s = 0;
    int k = 1;
    bool nega_output = false;
};

MapShape shape_of(const DigitMap& map) {
    MapShape shape;
    if (const TableMap* table = std::get_if<TableMap>(&map)) {
        shape.s = table->radix();
        return shape;
    }
    const LambdaSFunction& fn = std::get<LambdaSFunction>(map);
    shape.s = fn.radix();
    shape.k = fn.theta().has_value() ? fn.theta()->block_length() : 1;
    shape.nega_output = fn.output_system().kind() == SystemKind::NegaSAdic;
    return shape;
}

// Image of a block-aligned digit vector under the map's digit action.
std::vector<int> image_digits(const DigitMap& map, const std::vector<int>& digits) {
    if (const TableMap* table = std::get_if<TableMap>(&map)) {
        std::vector<int> out(digits.size());
        for (std::size_t i = 0; i < digits.size(); ++i) out[i] = table->image(digits[i]);
        return out;
    }
    const LambdaSFunction& fn = std::get<LambdaSFunction>(map);
    if (!fn.theta().has_value()) return digits;
    const BlockPermutation& theta = *fn.theta();
    const std::size_t k = static_cast<std::size_t>(theta.block_length());
    if (digits.size() % k != 0) throw ValidationError("digit vector is not block aligned");
    std::vector<int> out(digits.size());
    std::vector<int> block(k);
    for (std::size_t start = 0; start < digits.size(); start += k) {
        std::copy_n(digits.begin() + static_cast<std::ptrdiff_t>(start), k, block.begin());
        const std::vector<int> image = theta.decode_block(theta.image_index(theta.encode_block(block)));
        std::copy(image.begin(), image.end(), out.begin() + static_cast<std::ptrdiff_t>(start));
    }
    return out;
}

void check_rank_guard(int max_rank, int guard) {
    if (max_rank < 1) throw ValidationError("rank must be >= 1");
    if (max_rank > guard) {
        throw GuardError("rank " + std::to_string(max_rank) + " exceeds the guard " +
                         std::to_string(guard));
    }
}

}  // namespace

Rational exact_integral(const DigitMap& map) {
    const MapShape shape = shape_of(map);
    const int s = shape.s;
    const int k = shape.k;

    // Mean image digit at each block offset under uniformly distributed
    // input blocks; every value expectation below is exact.
    std::vector<Rational> mean(static_cast<std::size_t>(k), Rational(0));
    if (const TableMap* table = std::get_if<TableMap>(&map)) {
        Rational sum = 0;
        for (int d = 0; d < s; ++d) sum += table->image(d);
        mean[0] = sum / s;
    } else {
        const LambdaSFunction& fn = std::get<LambdaSFunction>(map);
        if (fn.theta().has_value()) {
            const BlockPermutation& theta = *fn.theta();
            std::vector<BigInt> digit_sums(static_cast<std::size_t>(k), BigInt(0));
            for (std::size_t b = 0; b < theta.block_count(); ++b) {
                const std::vector<int> image = theta.decode_block(theta.image_index(b));
                for (int j = 0; j < k; ++j) digit_sums[static_cast<std::size_t>(j)] += image[static_cast<std::size_t>(j)];
            }
            for (int j = 0; j < k; ++j) {
                mean[static_cast<std::size_t>(j)] =
                    Rational(digit_sums[static_cast<std::size_t>(j)], BigInt(theta.block_count()));
            }
        } else {
            mean[0] = Rational(s - 1, 2);
        }
    }

    const Rational r = shape.nega_output ? Rational(-1, s) : Rational(1, s);
    Rational weighted = 0;
    Rational rj = 1;
    for (int j = 0; j < k; ++j) {
        rj *= r;
        weighted += mean[static_cast<std::size_t>(j)] * rj;
    }
    return weighted / (1 - rat_pow(r, k));
}

JumpReport one_sided_limits(const DigitMap& map, const Rational& x0) {
    const NumberSystem in = map_input_system(map);
    if (in.kind() != SystemKind::SAdic) {
        throw ValidationError("one-sided limits are computed over s-adic domains");
    }
    if (x0 <= 0 || x0 >= 1) throw DomainError("point must lie strictly inside (0,1)");
    const DigitString right_rep = to_digits(x0, in);
    if (!right_rep.zero_tail()) {
        throw ValidationError("point is not s-adic rational; the map is continuous there");
    }
    std::vector<int> lowered = right_rep.prefix();
    lowered.back() -= 1;
    const DigitString left_rep(in, std::move(lowered), std::vector<int>{in.radix() - 1});

    const Rational right = from_digits(apply_map(map, right_rep));
    const Rational left = from_digits(apply_map(map, left_rep));
    return {x0, left, right, right, right - left};
}

DimensionEstimate graph_box_count(const DigitMap& map, int max_rank, int guard) {
    check_rank_guard(max_rank, guard);
    const MapShape shape = shape_of(map);
    const int s = shape.s;
    const int k = shape.k;

    DimensionEstimate estimate;
    bool power_law = true;
    for (int rank = 1; rank <= max_rank; ++rank) {
        const int padded = ((rank + k - 1) / k) * k;
        std::size_t prefix_count = 1;
        for (int i = 0; i < rank; ++i) prefix_count *= static_cast<std::size_t>(s);
        std::size_t completion_count = 1;
        for (int i = rank; i < padded; ++i) completion_count *= static_cast<std::size_t>(s);

        BigInt total = 0;
        std::vector<int> digits(static_cast<std::size_t>(padded), 0);
        for (std::size_t p = 0; p < prefix_count; ++p) {
            std::size_t v = p;
            for (int i = rank; i-- > 0;) {
                digits[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::size_t>(s));
                v /= static_cast<std::size_t>(s);
            }
            std::set<std::vector<int>> image_prefixes;
            for (std::size_t c = 0; c < completion_count; ++c) {
                std::size_t w = c;
                for (int i = padded; i-- > rank;) {
                    digits[static_cast<std::size_t>(i)] = static_cast<int>(w % static_cast<std::size_t>(s));
                    w /= static_cast<std::size_t>(s);
                }
                std::vector<int> image = image_digits(map, digits);
                image.resize(static_cast<std::size_t>(rank));
                image_prefixes.insert(std::move(image));
            }
            total += BigInt(image_prefixes.size());
        }
        power_law = power_law && total == int_pow(BigInt(s), static_cast<unsigned long>(rank));
        estimate.counts.emplace_back(rank, std::move(total));
    }
    estimate.slope = fit_log_slope(estimate.counts, s);
    if (power_law) estimate.exact_law = std::to_string(s) + "^m";
    return estimate;
}

DimensionEstimate level_set_count(const TableMap& map, const Rational& y0, int max_rank, int guard) {
    check_rank_guard(max_rank, guard);
    if (y0 < 0 || y0 > 1) throw DomainError("level must lie in [0,1]");
    const int s = map.radix();
    const DigitString digits = to_digits(y0, NumberSystem::s_adic(s));

    std::vector<int> preimages(static_cast<std::size_t>(s), 0);
    for (int d = 0; d < s; ++d) preimages[static_cast<std::size_t>(map.image(d))] += 1;

    DimensionEstimate estimate;
    const std::size_t horizon = digits.prefix().size() + std::max<std::size_t>(digits.period().size(), 1);
    for (std::size_t pos = 1; pos <= horizon; ++pos) {
        if (preimages[static_cast<std::size_t>(digits.digit_at(pos))] == 0) {
            estimate.empty_set = true;
            return estimate;
        }
    }
    BigInt running = 1;
    for (int rank = 1; rank <= max_rank; ++rank) {
        running *= preimages[static_cast<std::size_t>(digits.digit_at(static_cast<std::size_t>(rank)))];
        estimate.counts.emplace_back(rank, running);
    }
    estimate.slope = fit_log_slope(estimate.counts, s);
    return estimate;
}

namespace {

// Incremental cylinder endpoints: the composed affine map (shift, scale)
// sends the remainder interval [L,U] onto the cylinder.
struct CylinderFrame {
    Rational shift{0};
    Rational scale{1};
};

Interval frame_interval(const CylinderFrame& frame, const NumberSystem& sys) {
    Rational a = frame.shift + frame.scale * sys.lower_bound();
    Rational b = frame.shift + frame.scale * sys.upper_bound();
    if (a > b) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

bool positive_overlap(const Interval& lhs, const Interval& rhs) {
    const Rational lo = std::max(lhs.lo, rhs.lo);
    const Rational hi = std::min(lhs.hi, rhs.hi);
    return lo < hi;
}

bool touch_or_overlap(const Interval& lhs, const Interval& rhs) {
    const Rational lo = std::max(lhs.lo, rhs.lo);
    const Rational hi = std::min(lhs.hi, rhs.hi);
    return lo <= hi;
}

struct InvariantCounter {
    const LambdaSFunction* chain = nullptr;
    NumberSystem in = NumberSystem::s_adic(2);
    NumberSystem out = NumberSystem::s_adic(2);
    int s = 0;
    int rank = 0;
    std::size_t block = 1;  // image digits resolve in chunks of this size
    BigInt count = 0;
    std::vector<int> pending;

    void search(int depth, const CylinderFrame& source, const CylinderFrame& image) {
        if (depth == rank) {
            count += positive_overlap(frame_interval(source, in), frame_interval(image, out)) ? 1 : 0;
            return;
        }
        const std::vector<int> saved_pending = pending;
        for (int digit = 0; digit < s; ++digit) {
            const AffineStep step_in = in.step(static_cast<std::size_t>(depth + 1), digit);
            const CylinderFrame next_source{source.shift + source.scale * step_in.offset,
                                            source.scale * step_in.slope};
            pending = saved_pending;
            pending.push_back(digit);
            CylinderFrame next_image = image;
            bool image_current = false;
            if (pending.size() == block) {
                std::vector<int> mapped = pending;
                if (chain->theta().has_value()) {
                    const BlockPermutation& theta = *chain->theta();
                    mapped = theta.decode_block(theta.image_index(theta.encode_block(mapped)));
                }
                for (std::size_t j = 0; j < mapped.size(); ++j) {
                    const std::size_t pos = static_cast<std::size_t>(depth + 1) - block + 1 + j;
                    const AffineStep step_out = out.step(pos, mapped[j]);
                    next_image = CylinderFrame{next_image.shift + next_image.scale * step_out.offset,
                                               next_image.scale * step_out.slope};
                }
                pending.clear();
                image_current = true;
            }
            // Once both prefixes are resolved and the intervals have separated,
            // no deeper refinement can bring them back together.
            if (!image_current ||
                touch_or_overlap(frame_interval(next_source, in), frame_interval(next_image, out))) {
                search(depth + 1, next_source, next_image);
            }
        }
        pending = saved_pending;
    }
};

}  // namespace

DimensionEstimate invariant_prefix_count(const LambdaSFunction& chain, int max_rank, int guard) {
    check_rank_guard(max_rank, guard);
    const ChainShape shape = chain.shape();
    if (shape != ChainShape::Block && shape != ChainShape::Plus && shape != ChainShape::PlusInv) {
        throw ValidationError("invariant counting supports block maps and the sign maps only");
    }
    const int step = shape == ChainShape::Block ? chain.theta()->block_length() : 2;
    if (max_rank < step) throw ValidationError("max rank is below the rank step");

    DimensionEstimate estimate;
    for (int rank = step; rank <= max_rank; rank += step) {
        InvariantCounter counter;
        counter.chain = &chain;
        counter.in = chain.input_system();
        counter.out = chain.output_system();
        counter.s = chain.radix();
        counter.rank = rank;
        counter.block = shape == ChainShape::Block
                            ? static_cast<std::size_t>(chain.theta()->block_length())
                            : 1;
        counter.search(0, CylinderFrame{}, CylinderFrame{});
        estimate.counts.emplace_back(rank, counter.count);
    }
    estimate.slope = fit_log_slope(estimate.counts, chain.radix());
    return estimate;
}

namespace {

DigitString reinterpret_digits(const DigitString& digits, const NumberSystem& system) {
    return DigitString(system, digits.prefix(), digits.period());
}

}  // namespace

IdentityReport identity_suite(std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw ValidationError("need at least one sample");
    const TableMap f = ternary_swap_table();
    const TableMap f01 = ternary_collapse(0, 1);
    const TableMap f02 = ternary_collapse(0, 2);
    const TableMap f12 = ternary_collapse(1, 2);
    const NumberSystem sys3 = NumberSystem::s_adic(3);
    const NumberSystem nega3 = NumberSystem::nega_s_adic(3);

    IdentityReport report;
    report.samples = samples;
    report.items = {
        {"f(x) = 2x - 3 f01(x)", 0, 0},
        {"f(x) = 3/2 - x - 3 f12(x)", 0, 0},
        {"f(x) = x/2 + (3/2) f02(x)", 0, 0},
        {"f01 + f02 + f12 = 1/2", 0, 0},
        {"2 f01 + f02 = x", 0, 0},
        {"f01 - f12 = x - 1/2", 0, 0},
        {"f(x) - f(1-x) = f01 - f12", 0, 0},
        {"f(x) + f(1-x) = 1/2 + 3 f02", 0, 0},
        {"fplus(x) + fplus(1-x) = -(s-1)/(s+1)", 0, 0},
        {"fplusinv(y) + fplusinv(-(s-1)/(s+1)-y) = 1", 0, 0},
    };
    const auto record = [&report](std::size_t item, bool ok) {
        report.items[item].checked += 1;
        if (!ok) report.items[item].failures += 1;
    };

    const std::vector<Rational> xs = sample_rationals(3, samples, seed);
    for (const Rational& x : xs) {
        const DigitString d = to_digits(x, sys3);
        const DigitString dc = complement_digits(d);

        const Rational fx = from_digits(apply_map(f, d));
        const Rational f01x = from_digits(apply_map(f01, d));
        const Rational f02x = from_digits(apply_map(f02, d));
        const Rational f12x = from_digits(apply_map(f12, d));
        const Rational fcx = from_digits(apply_map(f, dc));

        record(0, fx == 2 * x - 3 * f01x);
        record(1, fx == Rational(3, 2) - x - 3 * f12x);
        record(2, fx == x / 2 + Rational(3, 2) * f02x);
        record(3, f01x + f02x + f12x == Rational(1, 2));
        record(4, 2 * f01x + f02x == x);
        record(5, f01x - f12x == x - Rational(1, 2));
        record(6, fx - fcx == f01x - f12x);
        record(7, fx + fcx == Rational(1, 2) + 3 * f02x);

        const Rational plus_x = from_digits(reinterpret_digits(d, nega3));
        const Rational plus_xc = from_digits(reinterpret_digits(dc, nega3));
        record(8, plus_x + plus_xc == Rational(-1, 2));

        // Read the same digit strings as a nega-s-adic pair (y, -1/2 - y).
        const Rational inv_y = from_digits(reinterpret_digits(d, sys3));
        const Rational inv_yc = from_digits(reinterpret_digits(dc, sys3));
        record(9, inv_y + inv_yc == 1);
    }
    report.all_ok = std::all_of(report.items.begin(), report.items.end(),
                                [](const IdentityReport::Item& item) { return item.failures == 0; });
    return report;
}

QuotientProbe derivative_probe_string(const std::function<Rational(const DigitString&)>& evaluate,
                                      const NumberSystem& system, const Rational& x,
                                      std::size_t depth) {
    if (depth < 2) throw ValidationError("probe depth must be >= 2");
    const DigitString d = to_digits(x, system);
    const Rational y = evaluate(d);

    QuotientProbe probe;
    probe.point = x;
    probe.depth = depth;
    int previous_sign = 0;
    Rational max_abs = 0;
    for (std::size_t pos = 1; pos <= depth; ++pos) {
        const int digit = d.digit_at(pos);
        for (const int delta : {+1, -1}) {
            const int bumped = digit + delta;
            if (bumped < 0 || bumped >= system.alphabet_size(pos)) continue;
            const DigitString d2 = d.with_digit(pos, bumped);
            const Rational x2 = from_digits(d2);
            const Rational y2 = evaluate(d2);
            Rational quotient = (y2 - y) / (x2 - x);
            const int sign = quotient > 0 ? 1 : (quotient < 0 ? -1 : 0);
            if (sign > 0) probe.positive_count += 1;
            if (sign < 0) probe.negative_count += 1;
            if (sign != 0 && previous_sign != 0 && sign != previous_sign) probe.sign_flips += 1;
            if (sign != 0) previous_sign = sign;
            max_abs = std::max(max_abs, rat_abs(quotient));
            probe.quotients.push_back(std::move(quotient));
        }
    }
    if (probe.positive_count >= 3 && probe.negative_count >= 3) {
        probe.verdict = max_abs > 1000000 ? ProbeVerdict::OscillatingDivergent
                                          : ProbeVerdict::SignAlternating;
    } else {
        probe.verdict = ProbeVerdict::Inconclusive;
    }
    return probe;
}

QuotientProbe derivative_probe(const DigitMap& map, const Rational& x, std::size_t depth) {
    const NumberSystem in = map_input_system(map);
    return derivative_probe_string(
        [&map](const DigitString& digits) { return from_digits(apply_map(map, digits)); }, in, x,
        depth);
}

std::vector<Rational> sample_rationals(int radix, std::size_t count, std::uint64_t seed) {
    if (radix < 2) throw ValidationError("radix must be >= 2");
    std::mt19937_64 rng(seed);
    const auto draw = [&rng](std::uint64_t bound) { return rng() % bound; };
    std::vector<Rational> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const unsigned long j = 1 + static_cast<unsigned long>(draw(10));
        std::uint64_t power = 1;
        for (unsigned long e = 0; e < j; ++e) power *= static_cast<std::uint64_t>(radix);
        if (draw(2) == 0) {
            out.emplace_back(BigInt(draw(power + 1)), BigInt(power));  // terminating
        } else {
            out.emplace_back(BigInt(draw(power - 1)), BigInt(power - 1));  // periodic
        }
    }
    return out;
}

double fit_log_slope(const std::vector<std::pair<int, BigInt>>& counts, int radix) {
    if (counts.empty()) return 0.0;
    const double log_radix = std::log(static_cast<double>(radix));
    double sum_x = 0, sum_y = 0, sum_xx = 0, sum_xy = 0;
    for (const auto& [rank, count] : counts) {
        const double x = rank * log_radix;
        const double y = std::log(count.convert_to<double>());
        sum_x += x;
        sum_y += y;
        sum_xx += x * x;
        sum_xy += x * y;
    }
    const double n = static_cast<double>(counts.size());
    const double var = sum_xx - sum_x * sum_x / n;
    if (var == 0.0) return counts.size() == 1 && sum_x != 0.0 ? sum_y / sum_x : 0.0;
    return (sum_xy - sum_x * sum_y / n) / var;
}

}  // namespace digitfn
