#include "digitfn/numbers.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "digitfn/error.hpp"
#include "digitfn/series_fold.hpp"

namespace digitfn {

namespace {

constexpr std::size_t kExtractionCap = 100000;

bool all_zero(const std::vector<int>& digits) {
    return std::all_of(digits.begin(), digits.end(), [](int d) { return d == 0; });
}

// Alignment unit a periodic tail encoding must respect in this system.
std::size_t tail_alignment(const NumberSystem& sys) {
    switch (sys.kind()) {
        case SystemKind::Cantor:
        case SystemKind::AlternatingCantor:
            return sys.base().period.size();
        case SystemKind::NegaQ:
            return sys.qmatrix().period_length();
        default:
            return 1;
    }
}

}  // namespace

DigitString normalize_encoding(const NumberSystem& sys, std::vector<int> prefix, std::vector<int> period) {
    if (all_zero(period)) period.clear();
    if (period.empty()) {
        while (!prefix.empty() && prefix.back() == 0) prefix.pop_back();
        return DigitString(sys, std::move(prefix), std::move(period));
    }
    const std::size_t align = tail_alignment(sys);
    for (std::size_t len = align; len < period.size(); len += align) {
        if (period.size() % len != 0) continue;
        bool repeats = true;
        for (std::size_t j = len; j < period.size() && repeats; ++j) {
            repeats = period[j] == period[j % len];
        }
        if (repeats) {
            period.resize(len);
            break;
        }
    }
    if (sys.kind() == SystemKind::SAdic || sys.kind() == SystemKind::NegaSAdic) {
        // Constant alphabet: absorb prefix digits that merely restate the tail.
        while (!prefix.empty() && prefix.back() == period.back()) {
            prefix.pop_back();
            std::rotate(period.begin(), period.end() - 1, period.end());
        }
    }
    return DigitString(sys, std::move(prefix), std::move(period));
}

namespace {

struct Extraction {
    bool periodic = false;
    std::vector<int> prefix;
    std::vector<int> period;
    std::vector<int> digits;  // everything emitted (used when not periodic)
    Rational remainder = 0;   // remainder after the emitted digits (not periodic case)
};

Extraction extract_digits(const Rational& x, const NumberSystem& sys, std::size_t max_steps) {
    const Rational& lo = sys.lower_bound();
    const Rational& hi = sys.upper_bound();
    Extraction out;
    Rational t = x;
    std::map<std::pair<std::size_t, Rational>, std::size_t> seen;
    for (std::size_t pos = 1; pos <= max_steps; ++pos) {
        const auto key = std::make_pair(sys.phase_id(pos), t);
        const auto [it, inserted] = seen.emplace(key, out.digits.size());
        if (!inserted) {
            out.periodic = true;
            const std::size_t cut = it->second;
            out.prefix.assign(out.digits.begin(), out.digits.begin() + static_cast<std::ptrdiff_t>(cut));
            out.period.assign(out.digits.begin() + static_cast<std::ptrdiff_t>(cut), out.digits.end());
            return out;
        }
        // Pick the digit whose subinterval holds t. A shared endpoint admits
        // two digits; the canonical one parks the remainder at the low end.
        int chosen = -1;
        Rational chosen_rem;
        const int alphabet = sys.alphabet_size(pos);
        for (int digit = 0; digit < alphabet; ++digit) {
            const AffineStep st = sys.step(pos, digit);
            Rational rem = (t - st.offset) / st.slope;
            if (rem < lo || rem > hi) continue;
            if (rem == lo) {
                chosen = digit;
                chosen_rem = std::move(rem);
                break;
            }
            if (chosen < 0) {
                chosen = digit;
                chosen_rem = std::move(rem);
            }
        }
        if (chosen < 0) throw Error("digit selection failed; value drifted outside the interval");
        out.digits.push_back(chosen);
        t = std::move(chosen_rem);
    }
    out.remainder = std::move(t);
    return out;
}

int max_digit(const NumberSystem& sys, std::size_t pos) {
    return sys.alphabet_size(pos) - 1;
}

// The tail form a value shares with its neighbour representative, checked
// from position n0 onward. Alternating systems flip between 0 and the top
// digit; plain positional systems run the top digit forever.
int forbidden_pattern_digit(const NumberSystem& sys, std::size_t n0, std::size_t pos) {
    const bool even_offset = (pos - n0) % 2 == 0;
    switch (sys.kind()) {
        case SystemKind::SAdic:
        case SystemKind::Cantor:
            return max_digit(sys, pos);
        case SystemKind::NegaSAdic:
        case SystemKind::AlternatingCantor:
            return even_offset ? 0 : max_digit(sys, pos);
        case SystemKind::NegaQ:
            return even_offset ? max_digit(sys, pos) : 0;
    }
    throw Error("unreachable");
}

// The equal-valued replacement tail written after the adjusted digit.
int rewritten_tail_digit(const NumberSystem& sys, std::size_t n0, std::size_t pos) {
    const bool even_offset = (pos - n0) % 2 == 0;
    switch (sys.kind()) {
        case SystemKind::SAdic:
        case SystemKind::Cantor:
            return 0;
        case SystemKind::NegaSAdic:
        case SystemKind::AlternatingCantor:
            return even_offset ? max_digit(sys, pos) : 0;
        case SystemKind::NegaQ:
            return even_offset ? 0 : max_digit(sys, pos);
    }
    throw Error("unreachable");
}

}  // namespace

Rational from_digits(const DigitString& digits) {
    const NumberSystem& sys = digits.system();
    return fold_eventually_periodic(
        [&sys](std::size_t pos, int digit) { return sys.step(pos, digit); }, digits,
        sys.phase_prefix_length(), sys.phase_period_length());
}

DigitString to_digits(const Rational& x, const NumberSystem& system) {
    if (system.kind() == SystemKind::NegaQ) {
        if (x < 0 || x >= 1) throw DomainError("nega-Q expansions cover [0,1)");
        NegaQExpansion expansion = nega_q_digits(x, system.qmatrix(), 4096);
        if (!expansion.exact) {
            throw GuardError("nega-Q expansion is not eventually periodic within the guard depth; "
                             "use nega_q_digits for a truncated expansion");
        }
        return *expansion.digits;
    }
    if (x < system.lower_bound() || x > system.upper_bound()) {
        throw DomainError("value outside the representable interval");
    }
    Extraction extraction = extract_digits(x, system, kExtractionCap);
    if (!extraction.periodic) throw GuardError("expansion period exceeds the extraction cap");
    return normalize_encoding(system, std::move(extraction.prefix), std::move(extraction.period));
}

DigitString canonicalize(const DigitString& digits) {
    const NumberSystem& sys = digits.system();
    DigitString normalized = normalize_encoding(sys, digits.prefix(), digits.period());

    const std::size_t period_len = std::max<std::size_t>(normalized.period().size(), 1);
    const std::size_t cycle = std::lcm(std::lcm(period_len, sys.phase_period_length()), std::size_t{2});
    const std::size_t prefix_len = normalized.prefix().size();
    const std::size_t bound = std::max(prefix_len, sys.phase_prefix_length()) + 2 * cycle;

    std::size_t n0 = 0;
    for (std::size_t candidate = 1; candidate <= prefix_len + cycle + 1 && n0 == 0; ++candidate) {
        bool matches = true;
        for (std::size_t pos = candidate; pos <= bound && matches; ++pos) {
            matches = normalized.digit_at(pos) == forbidden_pattern_digit(sys, candidate, pos);
        }
        if (matches) n0 = candidate;
    }
    if (n0 <= 1) return normalized;  // no forbidden tail, or the value's only form

    const int carried = normalized.digit_at(n0 - 1);
    int replacement = carried;
    switch (sys.kind()) {
        case SystemKind::SAdic:
        case SystemKind::Cantor:
        case SystemKind::NegaSAdic:
        case SystemKind::AlternatingCantor:
            if (carried >= max_digit(sys, n0 - 1)) return normalized;  // nothing to roll into
            replacement = carried + 1;
            break;
        case SystemKind::NegaQ:
            if (carried == 0) return normalized;
            replacement = carried - 1;
            break;
    }

    // Rebuild the sequence with the adjusted digit and the flipped tail; the
    // period block must sit past the base prefix, so pattern digits that fall
    // inside it are materialized into the new prefix.
    const std::size_t head_len = std::max(n0 - 1, sys.phase_prefix_length());
    std::vector<int> prefix(head_len);
    for (std::size_t pos = 1; pos <= head_len; ++pos) {
        if (pos < n0 - 1) {
            prefix[pos - 1] = normalized.digit_at(pos);
        } else if (pos == n0 - 1) {
            prefix[pos - 1] = replacement;
        } else {
            prefix[pos - 1] = rewritten_tail_digit(sys, n0, pos);
        }
    }
    std::vector<int> period;
    if (sys.kind() != SystemKind::SAdic && sys.kind() != SystemKind::Cantor) {
        const std::size_t tail_cycle = std::lcm(sys.phase_period_length(), std::size_t{2});
        period.reserve(tail_cycle);
        for (std::size_t j = 0; j < tail_cycle; ++j) {
            period.push_back(rewritten_tail_digit(sys, n0, head_len + 1 + j));
        }
    }
    return normalize_encoding(sys, std::move(prefix), std::move(period));
}

Interval cylinder(const std::vector<int>& prefix, const NumberSystem& system) {
    Rational lo = system.lower_bound();
    Rational hi = system.upper_bound();
    for (std::size_t pos = prefix.size(); pos >= 1; --pos) {
        const AffineStep st = system.step(pos, prefix[pos - 1]);
        Rational a = st.offset + st.slope * lo;
        Rational b = st.offset + st.slope * hi;
        if (a <= b) {
            lo = std::move(a);
            hi = std::move(b);
        } else {
            lo = std::move(b);
            hi = std::move(a);
        }
    }
    return {std::move(lo), std::move(hi)};
}

DigitString cantor_dual(const DigitString& digits) {
    const NumberSystem& sys = digits.system();
    if (sys.kind() != SystemKind::Cantor && sys.kind() != SystemKind::AlternatingCantor) {
        throw ValidationError("cantor_dual needs a Cantor or alternating-Cantor string");
    }
    const CantorBase& base = sys.base();
    const NumberSystem out_sys = sys.kind() == SystemKind::Cantor
                                     ? NumberSystem::alternating_cantor(base)
                                     : NumberSystem::cantor(base);

    // The period block may only cover positions where the base is already
    // periodic, so the output prefix runs past the base prefix.
    const std::size_t head_len = std::max(digits.prefix().size(), base.prefix.size());
    std::vector<int> prefix(head_len);
    for (std::size_t pos = 1; pos <= head_len; ++pos) {
        const int d = digits.digit_at(pos);
        prefix[pos - 1] = pos % 2 == 0 ? base.radix_at(pos) - 1 - d : d;
    }
    std::vector<int> period;
    const std::size_t period_len = std::max<std::size_t>(digits.period().size(), 1);
    const std::size_t cycle = std::lcm(std::lcm(period_len, base.period.size()), std::size_t{2});
    period.reserve(cycle);
    for (std::size_t j = 0; j < cycle; ++j) {
        const std::size_t pos = head_len + 1 + j;
        const int d = digits.digit_at(pos);
        period.push_back(pos % 2 == 0 ? base.radix_at(pos) - 1 - d : d);
    }
    return normalize_encoding(out_sys, std::move(prefix), std::move(period));
}

DigitString complement_digits(const DigitString& digits) {
    const NumberSystem& sys = digits.system();
    if (sys.kind() == SystemKind::NegaQ) {
        throw ValidationError("digit complement is not defined for nega-Q strings");
    }
    const std::size_t head_len = std::max(digits.prefix().size(), sys.phase_prefix_length());
    std::vector<int> prefix(head_len);
    for (std::size_t pos = 1; pos <= head_len; ++pos) {
        prefix[pos - 1] = sys.alphabet_size(pos) - 1 - digits.digit_at(pos);
    }
    std::vector<int> period;
    const std::size_t period_len = std::max<std::size_t>(digits.period().size(), 1);
    const std::size_t cycle = std::lcm(period_len, sys.phase_period_length());
    period.reserve(cycle);
    for (std::size_t j = 0; j < cycle; ++j) {
        const std::size_t pos = head_len + 1 + j;
        period.push_back(sys.alphabet_size(pos) - 1 - digits.digit_at(pos));
    }
    return normalize_encoding(sys, std::move(prefix), std::move(period));
}

NegaQExpansion nega_q_digits(const Rational& x, const QMatrix& matrix, std::size_t depth) {
    if (x < 0 || x >= 1) throw DomainError("nega-Q expansions cover [0,1)");
    const NumberSystem sys = NumberSystem::nega_q(matrix);
    Extraction extraction = extract_digits(x, sys, depth);
    NegaQExpansion out;
    if (extraction.periodic) {
        out.exact = true;
        out.digits = normalize_encoding(sys, std::move(extraction.prefix), std::move(extraction.period));
        return out;
    }
    out.exact = false;
    out.prefix_digits = std::move(extraction.digits);
    out.residual = cylinder(out.prefix_digits, sys);
    return out;
}

}  // namespace digitfn
