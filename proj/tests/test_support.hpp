#ifndef DIGITFN_TEST_SUPPORT_HPP
#define DIGITFN_TEST_SUPPORT_HPP

#include <numeric>
#include <random>
#include <vector>

#include "digitfn/digit_string.hpp"
#include "digitfn/error.hpp"
#include "digitfn/number_system.hpp"
#include "digitfn/rational.hpp"

namespace digitfn::testing {

// Independent series oracle: sums the defining series term by term straight
// from the positional formulas, then closes the periodic tail with a scalar
// geometric ratio. No shared code with the library's affine resummation.
inline Rational direct_term(const DigitString& d, std::size_t n) {
    const NumberSystem& sys = d.system();
    const int digit = d.digit_at(n);
    switch (sys.kind()) {
        case SystemKind::SAdic:
            return Rational(digit) * rat_pow(Rational(1, sys.radix()), static_cast<long>(n));
        case SystemKind::NegaSAdic: {
            const Rational mag = Rational(digit) * rat_pow(Rational(1, sys.radix()), static_cast<long>(n));
            return n % 2 == 0 ? mag : -mag;
        }
        case SystemKind::Cantor: {
            Rational scale = 1;
            for (std::size_t j = 1; j <= n; ++j) scale *= sys.base().radix_at(j);
            return Rational(digit) / scale;
        }
        case SystemKind::AlternatingCantor: {
            Rational scale = 1;
            for (std::size_t j = 1; j <= n; ++j) scale *= sys.base().radix_at(j);
            const Rational mag = Rational(1 + digit) / scale;
            return n % 2 == 1 ? mag : -mag;
        }
        default:
            throw Error("direct_term: unsupported system");
    }
}

// Exact limit of the series by direct summation: prefix terms plus a
// geometric tail block (the block ratio is the per-period scale factor).
inline Rational oracle_value(const DigitString& d) {
    const NumberSystem& sys = d.system();
    // sum plainly until both the digits and the base radices repeat
    const std::size_t head_len = std::max(d.prefix().size(), sys.phase_prefix_length());
    Rational head = 0;
    for (std::size_t n = 1; n <= head_len; ++n) head += direct_term(d, n);
    if (d.zero_tail() &&
        (sys.kind() == SystemKind::SAdic || sys.kind() == SystemKind::Cantor ||
         sys.kind() == SystemKind::NegaSAdic)) {
        return head;  // zero digits contribute nothing in these systems
    }
    std::size_t block = std::max<std::size_t>(d.period().size(), 1);
    block = std::lcm(block, std::size_t{2});
    if (sys.kind() == SystemKind::Cantor || sys.kind() == SystemKind::AlternatingCantor) {
        block = std::lcm(block, sys.base().period.size());
    }
    Rational block_sum = 0;
    for (std::size_t j = 1; j <= block; ++j) block_sum += direct_term(d, head_len + j);
    Rational ratio = 1;  // |term(n+block) / term(n)| for a fixed digit value
    switch (sys.kind()) {
        case SystemKind::SAdic:
        case SystemKind::NegaSAdic:
            ratio = rat_pow(Rational(1, sys.radix()), static_cast<long>(block));
            break;
        case SystemKind::Cantor:
        case SystemKind::AlternatingCantor:
            for (std::size_t j = 1; j <= block; ++j) ratio /= sys.base().radix_at(head_len + j);
            break;
        default:
            throw Error("oracle_value: unsupported system");
    }
    return head + block_sum / (1 - ratio);
}

// Independent oracle for nega-Q values: evaluates the defining three-sum
// expansion (digit-selected cumulative weights with parity-twisted signs and
// scales) term by term, closing each sum with a scalar geometric ratio. It
// shares nothing with the library's remainder-interval formulation.
inline Rational negaq_series_oracle(const DigitString& d) {
    const QMatrix& qm = d.system().qmatrix();
    const auto q = [&qm](int i, std::size_t n) { return qm.column_at(n).q.at(static_cast<std::size_t>(i)); };
    const auto q_twisted = [&](int i, std::size_t n) {
        return n % 2 == 0 ? q(qm.m_at(n) - i, n) : q(i, n);
    };
    const auto delta = [&](int i, std::size_t n) -> Rational {
        const int m = qm.m_at(n);
        if (n % 2 == 0) {
            if (i == m) return 1;
            Rational sum = 0;
            for (int l = m - i; l <= m; ++l) sum += q(l, n);
            return sum;
        }
        if (i == 0) return 0;
        Rational sum = 0;
        for (int l = 0; l < i; ++l) sum += q(l, n);
        return sum;
    };

    const std::size_t digit_period = std::max<std::size_t>(d.period().size(), 1);
    const std::size_t block =
        std::lcm(std::lcm(digit_period, qm.period_length()), std::size_t{2});
    const std::size_t head = std::max(d.prefix().size(), qm.period_start);

    // weight products W(n) = q~(i_1,1) ... q~(i_n,n)
    const std::size_t horizon = head + 3 * block + 4;
    std::vector<Rational> weight(horizon + 1);
    weight[0] = 1;
    for (std::size_t n = 1; n <= horizon; ++n) {
        weight[n] = weight[n - 1] * q_twisted(d.digit_at(n), n);
    }
    Rational ratio = 1;  // per-block scale of every tail term
    for (std::size_t j = head + 1; j <= head + block; ++j) ratio *= q_twisted(d.digit_at(j), j);

    // first sum: digits below i_1 in column 1
    Rational value = delta(d.digit_at(1), 1);

    // middle sum: (-1)^(n-1) delta(i_n, n) W(n-1), geometric past `head`
    const std::size_t middle_start = std::max<std::size_t>(head + 1, 2);
    Rational middle_head = 0;
    for (std::size_t n = 2; n < middle_start; ++n) {
        const Rational term = delta(d.digit_at(n), n) * weight[n - 1];
        middle_head += n % 2 == 1 ? term : -term;
    }
    Rational middle_block = 0;
    for (std::size_t n = middle_start; n < middle_start + block; ++n) {
        const Rational term = delta(d.digit_at(n), n) * weight[n - 1];
        middle_block += n % 2 == 1 ? term : -term;
    }
    value += middle_head + middle_block / (1 - ratio);

    // third sum: W(2n-1), geometric once 2n-1 lands past `head`
    Rational third_head = 0;
    std::size_t first_tail_index = 1;
    while (2 * first_tail_index - 1 <= head) {
        third_head += weight[2 * first_tail_index - 1];
        first_tail_index += 1;
    }
    Rational third_block = 0;
    for (std::size_t n = first_tail_index; n < first_tail_index + block / 2; ++n) {
        third_block += weight[2 * n - 1];
    }
    value += third_head + third_block / (1 - ratio);
    return value;
}

// Deterministic random digit strings over a system (periods respect the
// base alignment).
inline DigitString random_digit_string(const NumberSystem& sys, std::mt19937_64& rng) {
    const auto draw = [&rng](std::size_t bound) { return rng() % bound; };
    std::size_t prefix_len = draw(7);
    const bool periodic = draw(4) != 0;
    if (periodic) {
        // a periodic tail must start where the base itself is periodic
        prefix_len = std::max(prefix_len, sys.phase_prefix_length());
    }
    std::vector<int> prefix;
    for (std::size_t i = 1; i <= prefix_len; ++i) {
        prefix.push_back(static_cast<int>(draw(static_cast<std::size_t>(sys.alphabet_size(i)))));
    }
    std::vector<int> period;
    if (periodic) {
        std::size_t unit = 1;
        if (sys.kind() == SystemKind::Cantor || sys.kind() == SystemKind::AlternatingCantor) {
            unit = sys.base().period.size();
        } else if (sys.kind() == SystemKind::NegaQ) {
            unit = sys.qmatrix().period_length();
        }
        const std::size_t len = unit * (1 + draw(3));
        for (std::size_t j = 1; j <= len; ++j) {
            const std::size_t pos = prefix_len + j;
            period.push_back(static_cast<int>(draw(static_cast<std::size_t>(sys.alphabet_size(pos)))));
        }
    }
    return DigitString(sys, std::move(prefix), std::move(period));
}

}  // namespace digitfn::testing

#endif
