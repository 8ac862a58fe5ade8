// Acceptance suite: every checkable claim the library is built around, run
// end to end at fixed tolerances. Prints one line per criterion and exits
// nonzero if any of them fails.

#include <cmath>
#include <iostream>
#include <random>
#include <set>
#include <vector>

#include "digitfn/analysis.hpp"
#include "digitfn/maps.hpp"
#include "digitfn/numbers.hpp"
#include "digitfn/salem.hpp"
#include "test_support.hpp"

using namespace digitfn;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << index << ". " << name;
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << "\n";
    if (!ok) failures += 1;
}

const NumberSystem s3 = NumberSystem::s_adic(3);

std::vector<std::vector<int>> all_prefixes(int s, int rank) {
    std::vector<std::vector<int>> prefixes{{}};
    for (int r = 0; r < rank; ++r) {
        std::vector<std::vector<int>> next;
        next.reserve(prefixes.size() * static_cast<std::size_t>(s));
        for (const auto& p : prefixes) {
            for (int d = 0; d < s; ++d) {
                auto q = p;
                q.push_back(d);
                next.push_back(std::move(q));
            }
        }
        prefixes = std::move(next);
    }
    return prefixes;
}

// criterion 1: exact integrals plus a rank-10 Riemann cross-check
void criterion_integrals() {
    bool ok = exact_integral(DigitMap(ternary_swap_table())) == Rational(1, 2);
    for (int m = 1; m <= 6; ++m) {
        ok = ok && exact_integral(DigitMap(ternary_permutation(m))) == Rational(1, 2);
    }
    ok = ok && exact_integral(DigitMap(ternary_collapse(0, 1))) == Rational(1, 6);
    ok = ok && exact_integral(DigitMap(ternary_collapse(0, 2))) == Rational(1, 6);
    ok = ok && exact_integral(DigitMap(ternary_collapse(1, 2))) == Rational(1, 6);

    // Riemann sums over rank-10 cylinders, integer arithmetic throughout:
    // the image value of a terminating prefix is sum phi(d_i) 3^(10-i) / 3^10.
    const int rank = 10;
    for (const TableMap& map : {ternary_swap_table(), ternary_collapse(0, 1)}) {
        BigInt scaled_sum = 0;  // sum of image-values scaled by 3^rank
        std::vector<int> digits(rank, 0);
        const std::size_t count = 59049;  // 3^10
        for (std::size_t p = 0; p < count; ++p) {
            std::size_t v = p;
            BigInt scaled = 0;
            for (int i = rank; i-- > 0;) {
                digits[static_cast<std::size_t>(i)] = static_cast<int>(v % 3);
                v /= 3;
            }
            for (int i = 0; i < rank; ++i) {
                scaled = scaled * 3 + map.image(digits[static_cast<std::size_t>(i)]);
            }
            scaled_sum += scaled;
        }
        const Rational riemann(scaled_sum, int_pow(BigInt(3), 2 * rank));
        ok = ok && rat_abs(exact_integral(DigitMap(map)) - riemann) <= rat_pow(Rational(1, 3), 9);
    }
    report(1, "integrals: f and its relatives, with Riemann cross-check", ok);
}

// criterion 2: jump sizes at every terminating ternary rational, ranks <= 8
void criterion_jumps() {
    const DigitMap f = DigitMap(ternary_swap_table());
    bool ok = true;
    long checked = 0;
    for (int rank = 1; rank <= 8 && ok; ++rank) {
        for (const auto& prefix : all_prefixes(3, rank)) {
            if (prefix.back() == 0) continue;
            const Rational x0 = from_digits(DigitString(s3, prefix, {}));
            const JumpReport report_at = one_sided_limits(f, x0);
            const Rational magnitude = Rational(1, 2) * rat_pow(Rational(1, 3), rank - 1);
            const Rational expected = prefix.back() == 1 ? magnitude : -magnitude;
            ok = ok && report_at.jump == expected &&
                 report_at.jump == report_at.right_limit - report_at.left_limit;
            checked += 1;
        }
    }
    report(2, "jumps: +-1/(2*3^(n-1)) by last digit, ranks <= 8", ok,
           std::to_string(checked) + " points, exact");
}

// criterion 3: the identity suite on 10^4 seeded rationals
void criterion_identities() {
    const IdentityReport suite = identity_suite(10000, 42);
    bool ok = suite.all_ok && suite.items.size() == 10;
    for (const auto& item : suite.items) {
        ok = ok && item.checked == 10000 && item.failures == 0;
    }
    report(3, "identities: all digit-map relations exact on 10^4 samples", ok);
}

// criterion 4: graph box counts 3^m and unit slope
void criterion_graph_dimension() {
    const DimensionEstimate est = graph_box_count(DigitMap(ternary_swap_table()), 10);
    bool ok = est.counts.size() == 10;
    for (const auto& [m, n] : est.counts) {
        ok = ok && n == int_pow(BigInt(3), static_cast<unsigned long>(m));
    }
    ok = ok && est.slope >= 0.999 && est.slope <= 1.001;
    report(4, "graph dimension: N(m) = 3^m, slope within [0.999, 1.001]", ok,
           "slope " + std::to_string(est.slope));
}

// criterion 5: level set counts
void criterion_level_sets() {
    const TableMap f01 = ternary_collapse(0, 1);
    const DimensionEstimate zero = level_set_count(f01, Rational(0), 10);
    bool ok = !zero.empty_set && zero.counts.size() == 10;
    for (const auto& [m, n] : zero.counts) {
        ok = ok && n == int_pow(BigInt(2), static_cast<unsigned long>(m));
    }
    const double log32 = std::log(2.0) / std::log(3.0);
    ok = ok && std::abs(zero.slope - log32) < 1e-3;
    ok = ok && level_set_count(f01, Rational(2, 3), 10).empty_set;
    ok = ok && level_set_count(f01, Rational(5, 9), 10).empty_set;  // digits 1,2
    report(5, "level sets: 2^m at y0 = 0 with slope log3(2); digit 2 empties", ok,
           "slope " + std::to_string(zero.slope));
}

// criterion 6: invariant sets of the sign map and block maps
void criterion_invariant_sets() {
    const DimensionEstimate plus = invariant_prefix_count(LambdaSFunction::plus(3), 12);
    bool ok = plus.counts.size() == 6;
    for (const auto& [m, n] : plus.counts) {
        ok = ok && n == int_pow(BigInt(3), static_cast<unsigned long>(m / 2));
    }
    ok = ok && std::abs(plus.slope - 0.5) < 2e-3;

    const auto fixed = fixed_blocks(ternary_swap());
    ok = ok && fixed.size() == 1 && fixed[0] == std::vector<int>{0};

    // five block maps whose fixed-block counts give dimensions (1/k) log_s j
    std::vector<BlockPermutation> thetas;
    thetas.push_back(block_identity(3, 1));  // j = 3, dim 1
    {
        std::vector<std::size_t> t(9);
        for (std::size_t i = 0; i < 9; ++i) t[i] = i;
        std::swap(t[7], t[8]);  // j = 7
        thetas.emplace_back(3, 2, t);
        std::vector<std::size_t> rot(9);
        for (std::size_t i = 0; i < 9; ++i) rot[i] = i;
        // j = 3: fix 0,1,2 and rotate the remaining six
        for (std::size_t i = 3; i < 9; ++i) rot[i] = 3 + (i - 3 + 1) % 6;
        thetas.emplace_back(3, 2, rot);
        std::vector<std::size_t> two(9);
        for (std::size_t i = 0; i < 9; ++i) two[i] = i;
        // j = 2: fix 0,1 and rotate the remaining seven
        for (std::size_t i = 2; i < 9; ++i) two[i] = 2 + (i - 2 + 1) % 7;
        thetas.emplace_back(3, 2, two);
        thetas.push_back(block_identity(3, 2));  // j = 9, dim 1
    }
    for (const BlockPermutation& theta : thetas) {
        const InvariantSetDimension dim = invariant_set_dimension(theta);
        const int max_rank = theta.block_length() == 1 ? 6 : 8;
        const DimensionEstimate counts =
            invariant_prefix_count(LambdaSFunction::block(theta), max_rank);
        for (const auto& [m, n] : counts.counts) {
            ok = ok && n == int_pow(BigInt(dim.fixed_count),
                                    static_cast<unsigned long>(m / theta.block_length()));
        }
        ok = ok && std::abs(counts.slope - dim.dimension) < 1e-9;
    }
    report(6, "invariant sets: 3^n for the sign map; (1/k) log_s j for blocks", ok,
           "sign-map slope " + std::to_string(plus.slope));
}

// criterion 7: group orders with exhaustive closure
void criterion_group() {
    const GroupReport g21 = group_enumerate(2, 1);
    const GroupReport g31 = group_enumerate(3, 1);
    const GroupReport g22 = group_enumerate(2, 2);
    const bool ok = g21.order == 2 && g21.closure_ok && g31.order == 6 && g31.closure_ok &&
                    g22.order == 24 && g22.closure_ok;
    report(7, "group: orders 2, 6, 24 with closure and inverses verified", ok);
}

// criterion 8: the weighted evaluators
void criterion_salem() {
    bool ok = true;
    const SalemParams half(Rational(1, 2));
    for (const Rational& x : sample_rationals(2, 1000, 7)) {
        ok = ok && salem_eval(half, x) == x;
    }
    const SalemParams third(Rational(1, 3));
    const PMatrix p13({PMatrix::Column{{Rational(1, 3), Rational(2, 3)}}}, 0);
    const CantorBase base2({}, {2});
    for (const Rational& x : sample_rationals(2, 1000, 8)) {
        ok = ok && eval_F_cantor(p13, base2, x) == salem_eval(third, x);
    }
    ok = ok && eval_F_cantor(p13, base2, Rational(0)) == 0 &&
         eval_F_cantor(p13, base2, Rational(1)) == 1;

    // cylinder-ratio identity over a period-2 base, exhaustive to rank 8
    const CantorBase base23({}, {2, 3});
    const PMatrix p23(
        {PMatrix::Column{{Rational(1, 3), Rational(2, 3)}},
         PMatrix::Column{{Rational(1, 4), Rational(1, 2), Rational(1, 4)}}},
        0);
    const NumberSystem c23 = NumberSystem::cantor(base23);
    std::vector<std::vector<int>> prefixes{{}};
    for (int rank = 1; rank <= 8; ++rank) {
        std::vector<std::vector<int>> next;
        for (const auto& p : prefixes) {
            for (int d = 0; d < base23.radix_at(static_cast<std::size_t>(rank)); ++d) {
                auto q = p;
                q.push_back(d);
                next.push_back(std::move(q));
            }
        }
        prefixes = std::move(next);
        for (const auto& p : prefixes) {
            const Interval cyl = cylinder(p, c23);
            const Rational increment =
                eval_F_cantor(p23, base23, cyl.hi) - eval_F_cantor(p23, base23, cyl.lo);
            ok = ok && cylinder_ratio(p23, base23, p) * cyl.width() == increment;
        }
    }
    report(8, "weighted evaluators: identity case, binary agreement, cylinder ratios", ok);
}

// criterion 9: difference-quotient probes
void criterion_probes() {
    bool ok = true;
    const DigitMap f = DigitMap(ternary_swap_table());
    std::mt19937_64 rng(4242);
    int sampled = 0;
    while (sampled < 100) {
        // random prefix plus a random period guaranteed to contain 0 and 1
        std::vector<int> prefix;
        const std::size_t plen = rng() % 4;
        for (std::size_t i = 0; i < plen; ++i) prefix.push_back(static_cast<int>(rng() % 3));
        std::vector<int> period{0, 1};
        const std::size_t extra = rng() % 3;
        for (std::size_t i = 0; i < extra; ++i) period.push_back(static_cast<int>(rng() % 3));
        const DigitString d = canonicalize(DigitString(s3, prefix, period));
        if (d.zero_tail()) continue;
        sampled += 1;
        const QuotientProbe probe = derivative_probe(f, from_digits(d), 40);
        std::size_t twos = 0;
        std::size_t minus_ones = 0;
        for (const Rational& q : probe.quotients) {
            if (q == 2) twos += 1;
            if (q == -1) minus_ones += 1;
        }
        ok = ok && probe.verdict == ProbeVerdict::SignAlternating && twos >= 3 && minus_ones >= 3;
    }

    const QuotientProbe flat =
        derivative_probe(DigitMap(ternary_permutation(1)), Rational(5, 27), 40);
    ok = ok && flat.verdict == ProbeVerdict::Inconclusive;
    for (const Rational& q : flat.quotients) ok = ok && q == 1;

    const PMatrix signed_p3(
        {PMatrix::Column{{Rational(1, 2), Rational(-1, 4), Rational(3, 4)}}}, 0);
    const NumberSystem c3 = NumberSystem::cantor(CantorBase({}, {3}));
    const QuotientProbe fprobe = derivative_probe_string(
        [&signed_p3](const DigitString& d) { return eval_F_cantor_digits(signed_p3, d); }, c3,
        from_digits(DigitString(c3, {}, {1, 0})), 20);
    ok = ok && fprobe.sign_flips >= 3;
    report(9, "probes: sign-alternating for the swap, flat identity, flips for signed weights", ok);
}

// criterion 10: duality across three bases on 10^3 random strings
void criterion_duality() {
    bool ok = true;
    std::mt19937_64 rng(31337);
    for (const CantorBase& base :
         {CantorBase({}, {2}), CantorBase({}, {3}), CantorBase({}, {2, 3})}) {
        const NumberSystem sys = NumberSystem::cantor(base);
        for (int i = 0; i < 334; ++i) {
            const DigitString d = digitfn::testing::random_digit_string(sys, rng);
            ok = ok && from_digits(d) == from_digits(cantor_dual(d));
        }
    }
    report(10, "duality: values invariant under the even-position complement", ok,
           "1002 strings over three bases");
}

// criterion 11: nega-Q round trips and dual representations
void criterion_negaq() {
    const QMatrix qm({QMatrix::Column{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}}}, 0);
    const NumberSystem nq = NumberSystem::nega_q(qm);
    bool ok = true;
    std::mt19937_64 rng(8);
    int checked = 0;
    while (checked < 100) {
        const std::uint64_t den = 2 + rng() % 500;
        const std::uint64_t num = rng() % den;
        const Rational x = Rational(BigInt(num), BigInt(den));
        const NegaQExpansion expansion = nega_q_digits(x, qm, 4096);
        ok = ok && expansion.exact && from_digits(*expansion.digits) == x;
        if (expansion.exact) {
            ok = ok && digitfn::testing::negaq_series_oracle(*expansion.digits) == x;
        }
        checked += 1;
    }
    // twenty constructed numbers with two representations each:
    // prefix ... i (m 0 m 0 ...)  ==  prefix ... [i-1] 0 (m 0 m 0 ...)
    int built = 0;
    for (int len = 2; len <= 3 && built < 20; ++len) {
        for (const auto& head : all_prefixes(3, len)) {
            if (head.back() == 0) continue;
            if (built >= 20) break;
            const DigitString rep_a(nq, head, {2, 0});
            std::vector<int> lowered = head;
            lowered.back() -= 1;
            lowered.push_back(0);
            const DigitString rep_b(nq, lowered, {2, 0});
            ok = ok && from_digits(rep_a) == from_digits(rep_b);
            ok = ok && digitfn::testing::negaq_series_oracle(rep_a) ==
                           digitfn::testing::negaq_series_oracle(rep_b);
            built += 1;
        }
    }
    ok = ok && built == 20;
    report(11, "nega-Q: exact round trips and equal-valued twin strings", ok,
           std::to_string(checked) + " round trips, " + std::to_string(built) + " twins");
}

}  // namespace

int main() {
    criterion_integrals();
    criterion_jumps();
    criterion_identities();
    criterion_graph_dimension();
    criterion_level_sets();
    criterion_invariant_sets();
    criterion_group();
    criterion_salem();
    criterion_probes();
    criterion_duality();
    criterion_negaq();
    if (failures == 0) {
        std::cout << "all criteria passed\n";
        return 0;
    }
    std::cout << failures << " criteria failed\n";
    return 1;
}
