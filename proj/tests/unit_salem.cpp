#include <doctest.h>

#include <random>

#include "digitfn/error.hpp"
#include "digitfn/numbers.hpp"
#include "digitfn/salem.hpp"
#include "digitfn/analysis.hpp"
#include "test_support.hpp"

using namespace digitfn;
using digitfn::testing::random_digit_string;

namespace {

PMatrix uniform_p(const Rational& v, std::size_t size) {
    std::vector<Rational> column(size, v);
    return PMatrix({PMatrix::Column{column}}, 0);
}

const PMatrix signed_p3 = PMatrix({PMatrix::Column{{Rational(1, 2), Rational(-1, 4), Rational(3, 4)}}}, 0);
const CantorBase base3({}, {3});
const CantorBase base2({}, {2});

}  // namespace

TEST_CASE("matrix invariants are enforced") {
    CHECK_THROWS_AS(PMatrix({PMatrix::Column{{Rational(-1, 2), Rational(3, 2)}}}, 0), ValidationError);
    CHECK_THROWS_AS(PMatrix({PMatrix::Column{{Rational(-1, 4), Rational(5, 4)}}}, 0), ValidationError);
    CHECK_THROWS_AS(PMatrix({PMatrix::Column{{Rational(1, 2), Rational(1, 4)}}}, 0), ValidationError);
    CHECK_NOTHROW(PMatrix({PMatrix::Column{{Rational(1, 2), Rational(-1, 4), Rational(3, 4)}}}, 0));
    CHECK(signed_p3.beta(0, 1) == 0);
    CHECK(signed_p3.beta(1, 1) == Rational(1, 2));
    CHECK(signed_p3.beta(2, 1) == Rational(1, 4));
}

TEST_CASE("binary digit redistribution") {
    const SalemParams third(Rational(1, 3));
    CHECK(salem_eval(third, Rational(0)) == 0);
    CHECK(salem_eval(third, Rational(1)) == 1);
    CHECK(salem_eval(third, Rational(1, 2)) == Rational(1, 3));
    CHECK(salem_eval(third, Rational(3, 4)) == Rational(5, 9));

    const SalemParams half(Rational(1, 2));
    for (const Rational& x : sample_rationals(2, 200, 7)) {
        CHECK(salem_eval(half, x) == x);
    }
    CHECK_THROWS_AS(SalemParams(Rational(1)), ValidationError);
    CHECK_THROWS_AS(salem_eval(third, Rational(2)), DomainError);
}

TEST_CASE("binary digit redistribution is strictly increasing") {
    const SalemParams third(Rational(1, 3));
    std::vector<Rational> xs = sample_rationals(2, 1000, 11);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        CHECK(salem_eval(third, xs[i - 1]) < salem_eval(third, xs[i]));
    }
}

TEST_CASE("the Cantor evaluator generalizes the binary one") {
    const PMatrix p13({PMatrix::Column{{Rational(1, 3), Rational(2, 3)}}}, 0);
    const SalemParams third(Rational(1, 3));
    CHECK(eval_F_cantor(p13, base2, Rational(0)) == 0);
    CHECK(eval_F_cantor(p13, base2, Rational(1)) == 1);
    for (const Rational& x : sample_rationals(2, 300, 13)) {
        CHECK(eval_F_cantor(p13, base2, x) == salem_eval(third, x));
    }
    // one-term expansion for a terminating string, signed weights included
    const NumberSystem c3 = NumberSystem::cantor(base3);
    CHECK(eval_F_cantor_digits(signed_p3, DigitString(c3, {1}, {})) == Rational(1, 2));
    CHECK(eval_F_cantor_digits(signed_p3, DigitString(c3, {}, {})) == 0);
    CHECK_THROWS_AS(eval_F_cantor(signed_p3, base2, Rational(1, 2)), ValidationError);
}

TEST_CASE("alternating evaluator equals the plain one on the dual string") {
    const NumberSystem ac3 = NumberSystem::alternating_cantor(base3);
    // hand expansion: digits (1,0,0,...), uniform thirds
    const PMatrix third3 = uniform_p(Rational(1, 3), 3);
    CHECK(eval_F_tilde_digits(third3, DigitString(ac3, {1}, {})) == Rational(7, 12));

    std::mt19937_64 rng(17);
    for (const PMatrix& weights : {third3, signed_p3}) {
        for (int i = 0; i < 150; ++i) {
            const DigitString d = random_digit_string(ac3, rng);
            CHECK(eval_F_tilde_digits(weights, d) == eval_F_cantor_digits(weights, cantor_dual(d)));
        }
    }
    // prefixed base and a prefixed weight matrix
    const CantorBase base_mixed({2}, {3});
    const PMatrix p_mixed(
        {PMatrix::Column{{Rational(1, 4), Rational(3, 4)}},
         PMatrix::Column{{Rational(1, 2), Rational(-1, 4), Rational(3, 4)}}},
        1);
    const NumberSystem ac_mixed = NumberSystem::alternating_cantor(base_mixed);
    for (int i = 0; i < 150; ++i) {
        const DigitString d = random_digit_string(ac_mixed, rng);
        CHECK(eval_F_tilde_digits(p_mixed, d) == eval_F_cantor_digits(p_mixed, cantor_dual(d)));
    }
    // and therefore the two evaluators agree as point functions wherever the
    // canonical strings are dual to each other
    for (int num = 1; num < 40; num += 2) {
        const Rational x(num, 40);
        const DigitString alt = to_digits(x, ac3);
        if (cantor_dual(alt).same_digits(to_digits(x, NumberSystem::cantor(base3)))) {
            CHECK(eval_F_tilde(third3, base3, x) == eval_F_cantor(third3, base3, x));
        }
    }
}

TEST_CASE("nega-Q evaluator: identity case and hand expansions") {
    const QMatrix q3({QMatrix::Column{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}}}, 0);
    const PMatrix p3 = uniform_p(Rational(1, 3), 3);
    for (int num = 0; num < 25; ++num) {
        const Rational x(num, 25);
        CHECK(eval_F_negaq(p3, q3, x) == x);
    }
    // binary uniform case at the string (1,0,0,...)
    const QMatrix q2({QMatrix::Column{{Rational(1, 2), Rational(1, 2)}}}, 0);
    const PMatrix p2 = uniform_p(Rational(1, 2), 2);
    const NumberSystem nq2 = NumberSystem::nega_q(q2);
    CHECK(eval_F_negaq_digits(p2, DigitString(nq2, {1}, {})) == Rational(5, 6));
    CHECK_THROWS_AS(eval_F_negaq(p2, q3, Rational(1, 2)), ValidationError);
}

TEST_CASE("nega-Q evaluator is well defined at twin representations") {
    // The remainder tails of the two representations evaluate to exactly 0
    // and 1, and column normalization telescopes the difference away, so the
    // evaluator agrees on both strings for signed weights too.
    const QMatrix q3({QMatrix::Column{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}}}, 0);
    const NumberSystem nq = NumberSystem::nega_q(q3);
    const PMatrix p_pos = uniform_p(Rational(1, 3), 3);
    for (int lead = 1; lead <= 2; ++lead) {
        const DigitString rep_a(nq, {lead}, {2, 0});
        const DigitString rep_b(nq, {lead - 1, 0}, {2, 0});
        REQUIRE(from_digits(rep_a) == from_digits(rep_b));
        CHECK(eval_F_negaq_digits(p_pos, rep_a) == eval_F_negaq_digits(p_pos, rep_b));
        CHECK(eval_F_negaq_digits(signed_p3, rep_a) == eval_F_negaq_digits(signed_p3, rep_b));
        // deeper twins as well
        const DigitString deep_a(nq, {0, 1, lead}, {2, 0});
        const DigitString deep_b(nq, {0, 1, lead - 1, 0}, {2, 0});
        REQUIRE(from_digits(deep_a) == from_digits(deep_b));
        CHECK(eval_F_negaq_digits(signed_p3, deep_a) == eval_F_negaq_digits(signed_p3, deep_b));
    }
}

TEST_CASE("nega-Q bounds bracket the exact value") {
    const QMatrix q3({QMatrix::Column{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}}}, 0);
    const PMatrix p3 = uniform_p(Rational(1, 3), 3);
    const Interval bracket = eval_F_negaq_bounds(p3, q3, Rational(7, 20), 24);
    CHECK(bracket.lo <= Rational(7, 20));
    CHECK(Rational(7, 20) <= bracket.hi);
}

TEST_CASE("sign condition and partial products") {
    // signs (+,-,+): both adjacent products negative
    const ConditionReport good = check_conditions(signed_p3, base3, 12);
    CHECK(good.sign_condition_ok);
    CHECK(good.products_low.size() == 12);
    CHECK(good.products_low[0] == Rational(3, 2));
    CHECK(good.products_high[0] == Rational(9, 4));
    CHECK(good.verdict_low == ProductVerdict::NonzeroLimitPlausible);
    CHECK(good.verdict_high == ProductVerdict::NonzeroLimitPlausible);

    // a leading negative weight would need a negative cumulative sum; the
    // constructor rejects it before any condition check can run
    CHECK_THROWS_AS(PMatrix({PMatrix::Column{{Rational(-1, 3), Rational(2, 3), Rational(2, 3)}}}, 0),
                    ValidationError);

    // valid mixed-sign column whose adjacent products are not all negative
    const PMatrix mixed(
        {PMatrix::Column{{Rational(3, 4), Rational(-1, 4), Rational(-1, 4), Rational(3, 4)}}}, 0);
    CHECK_FALSE(check_conditions(mixed, CantorBase({}, {4}), 8).sign_condition_ok);

    // all-positive uniform: d*p = 1 exactly, plausible nonzero limit
    const PMatrix p3 = uniform_p(Rational(1, 3), 3);
    const ConditionReport unit = check_conditions(p3, base3, 8);
    CHECK_FALSE(unit.sign_condition_ok);
    CHECK(unit.verdict_low == ProductVerdict::NonzeroLimitPlausible);
    CHECK(unit.products_low.back() == 1);

    // shrinking products: q0 = 1/3 over the binary base gives 2/3 and 4/3
    const PMatrix p13({PMatrix::Column{{Rational(1, 3), Rational(2, 3)}}}, 0);
    const ConditionReport shrink = check_conditions(p13, base2, 40);
    CHECK(shrink.verdict_low == ProductVerdict::TendsToZero);
    CHECK(shrink.verdict_high == ProductVerdict::NonzeroLimitPlausible);
    CHECK(shrink.products_low[1] == Rational(4, 9));
    CHECK_THROWS_AS(check_conditions(p13, base2, 0), ValidationError);
}

TEST_CASE("nega-Q condition ratios") {
    const QMatrix q3({QMatrix::Column{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}}}, 0);
    const ConditionReport report = check_conditions(signed_p3, q3, 10);
    CHECK(report.sign_condition_ok);
    CHECK(report.products_low[0] == Rational(3, 2));   // (1/2)/(1/3)
    CHECK(report.products_high[0] == Rational(9, 4));  // (3/4)/(1/3)
}

TEST_CASE("cylinder ratio tracks the F increment") {
    const PMatrix p13({PMatrix::Column{{Rational(1, 3), Rational(2, 3)}}}, 0);
    CHECK(cylinder_ratio(p13, base2, {}) == 1);
    CHECK(cylinder_ratio(p13, base2, {0}) == Rational(2, 3));

    // all-positive weights over a period-2 base: ratio * |cyl| = F(sup) - F(inf)
    const CantorBase base23({}, {2, 3});
    const PMatrix p23(
        {PMatrix::Column{{Rational(1, 3), Rational(2, 3)}},
         PMatrix::Column{{Rational(1, 4), Rational(1, 2), Rational(1, 4)}}},
        0);
    const NumberSystem c23 = NumberSystem::cantor(base23);
    std::vector<std::vector<int>> prefixes{{}};
    for (int rank = 1; rank <= 5; ++rank) {
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
            const Rational increment = eval_F_cantor(p23, base23, cyl.hi) -
                                       eval_F_cantor(p23, base23, cyl.lo);
            CHECK(cylinder_ratio(p23, base23, p) * cyl.width() == increment);
        }
    }
    CHECK_THROWS_AS(cylinder_ratio(p13, base2, {5}), ValidationError);
}

TEST_CASE("sign-condition weights flip the ratio when the digit steps down") {
    std::vector<std::vector<int>> prefixes{{}};
    for (int rank = 1; rank <= 5; ++rank) {
        std::vector<std::vector<int>> next;
        for (const auto& p : prefixes) {
            for (int d = 0; d < 3; ++d) {
                auto q = p;
                q.push_back(d);
                next.push_back(std::move(q));
            }
        }
        prefixes = std::move(next);
        for (const auto& p : prefixes) {
            for (int digit = 1; digit <= 2; ++digit) {
                auto hi = p;
                hi.push_back(digit);
                auto lo = p;
                lo.push_back(digit - 1);
                const Rational r_hi = cylinder_ratio(signed_p3, base3, hi);
                const Rational r_lo = cylinder_ratio(signed_p3, base3, lo);
                CHECK(((r_hi > 0 && r_lo < 0) || (r_hi < 0 && r_lo > 0)));
            }
        }
    }
}
