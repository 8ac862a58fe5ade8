#include "digitfn/salem.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "digitfn/error.hpp"
#include "digitfn/series_fold.hpp"

namespace digitfn {

PMatrix::PMatrix(std::vector<Column> columns, std::size_t period_start)
    : columns_(std::move(columns)), period_start_(period_start) {
    if (columns_.empty() || period_start_ >= columns_.size()) {
        throw ValidationError("weight matrix needs at least one periodic column");
    }
    for (const Column& col : columns_) {
        if (col.p.size() < 2) throw ValidationError("weight column needs at least two entries");
        Rational sum = 0;
        Rational beta = 0;
        for (std::size_t i = 0; i < col.p.size(); ++i) {
            const Rational& v = col.p[i];
            if (v <= -1 || v >= 1) throw ValidationError("weights must lie in (-1,1)");
            if (i != 0 && (beta <= 0 || beta >= 1)) {
                throw ValidationError("cumulative weights must lie in (0,1)");
            }
            beta += v;
            sum += v;
        }
        if (sum != 1) throw ValidationError("weight column must sum to 1");
    }
}

const PMatrix::Column& PMatrix::column_at(std::size_t pos) const {
    if (pos == 0) throw ValidationError("positions are 1-based");
    const std::size_t idx = pos - 1;
    if (idx < period_start_) return columns_[idx];
    return columns_[period_start_ + (idx - period_start_) % period_length()];
}

int PMatrix::m_at(std::size_t pos) const {
    return static_cast<int>(column_at(pos).p.size()) - 1;
}

Rational PMatrix::p(int digit, std::size_t pos) const {
    const Column& col = column_at(pos);
    if (digit < 0 || digit >= static_cast<int>(col.p.size())) {
        throw ValidationError("digit out of range for weight column");
    }
    return col.p[static_cast<std::size_t>(digit)];
}

Rational PMatrix::beta(int digit, std::size_t pos) const {
    const Column& col = column_at(pos);
    if (digit < 0 || digit >= static_cast<int>(col.p.size())) {
        throw ValidationError("digit out of range for weight column");
    }
    Rational sum = 0;
    for (int i = 0; i < digit; ++i) sum += col.p[static_cast<std::size_t>(i)];
    return sum;
}

Rational PMatrix::p_twisted(int digit, std::size_t pos) const {
    return pos % 2 == 0 ? p(m_at(pos) - digit, pos) : p(digit, pos);
}

Rational PMatrix::beta_twisted(int digit, std::size_t pos) const {
    return pos % 2 == 0 ? beta(m_at(pos) - digit, pos) : beta(digit, pos);
}

bool PMatrix::all_positive() const {
    for (const Column& col : columns_) {
        for (const Rational& v : col.p) {
            if (v <= 0) return false;
        }
    }
    return true;
}

SalemParams::SalemParams(Rational q0_in) : q0(std::move(q0_in)), q1(1 - q0) {
    if (q0 <= 0 || q0 >= 1) throw ValidationError("q0 must lie in (0,1)");
}

Rational salem_eval(const SalemParams& params, const Rational& x) {
    if (x < 0 || x > 1) throw DomainError("argument outside [0,1]");
    // Direct evaluation over the binary digits; the tail is resummed from its
    // own one-period fixed point. Kept independent of the generic series
    // machinery so the two evaluators can cross-check each other.
    const DigitString digits = to_digits(x, NumberSystem::s_adic(2));
    const auto weight = [&params](int bit) { return bit == 0 ? params.q0 : params.q1; };
    const auto base_value = [&params](int bit) { return bit == 0 ? Rational(0) : params.q0; };

    Rational tail = 0;
    if (!digits.zero_tail()) {
        Rational offset = 0;
        Rational slope = 1;
        const std::vector<int>& block = digits.period();
        for (std::size_t j = block.size(); j-- > 0;) {
            offset = base_value(block[j]) + weight(block[j]) * offset;
            slope = weight(block[j]) * slope;
        }
        tail = offset / (1 - slope);
    }
    Rational value = tail;
    const std::vector<int>& head = digits.prefix();
    for (std::size_t j = head.size(); j-- > 0;) {
        value = base_value(head[j]) + weight(head[j]) * value;
    }
    return value;
}

namespace {

void require_matching_base(const PMatrix& weights, const CantorBase& base) {
    const std::size_t check = std::max(weights.period_start(), base.prefix.size()) +
                              std::lcm(weights.period_length(), base.period.size());
    for (std::size_t pos = 1; pos <= check; ++pos) {
        if (weights.m_at(pos) + 1 != base.radix_at(pos)) {
            throw ValidationError("weight column sizes do not match the base");
        }
    }
}

void require_matching_matrix(const PMatrix& weights, const QMatrix& matrix) {
    const std::size_t check = std::max(weights.period_start(), matrix.period_start) +
                              std::lcm(weights.period_length(), matrix.period_length());
    for (std::size_t pos = 1; pos <= check; ++pos) {
        if (weights.m_at(pos) != matrix.m_at(pos)) {
            throw ValidationError("weight column sizes do not match the matrix");
        }
    }
}

Rational fold_plain(const PMatrix& weights, const DigitString& digits) {
    return fold_eventually_periodic(
        [&weights](std::size_t pos, int digit) {
            return AffineStep{weights.beta(digit, pos), weights.p(digit, pos)};
        },
        digits, weights.period_start(), weights.period_length());
}

Rational fold_twisted(const PMatrix& weights, const DigitString& digits) {
    return fold_eventually_periodic(
        [&weights](std::size_t pos, int digit) {
            return AffineStep{weights.beta_twisted(digit, pos), weights.p_twisted(digit, pos)};
        },
        digits, weights.period_start(), std::lcm(weights.period_length(), std::size_t{2}));
}

}  // namespace

Rational eval_F_cantor(const PMatrix& weights, const CantorBase& base, const Rational& x) {
    require_matching_base(weights, base);
    if (x < 0 || x > 1) throw DomainError("argument outside [0,1]");
    return fold_plain(weights, to_digits(x, NumberSystem::cantor(base)));
}

Rational eval_F_cantor_digits(const PMatrix& weights, const DigitString& digits) {
    if (digits.system().kind() != SystemKind::Cantor) {
        throw ValidationError("expected a positive Cantor digit string");
    }
    require_matching_base(weights, digits.system().base());
    return fold_plain(weights, digits);
}

Rational eval_F_tilde(const PMatrix& weights, const CantorBase& base, const Rational& x) {
    require_matching_base(weights, base);
    if (x < 0 || x > 1) throw DomainError("argument outside [0,1]");
    return fold_twisted(weights, to_digits(x, NumberSystem::alternating_cantor(base)));
}

Rational eval_F_tilde_digits(const PMatrix& weights, const DigitString& digits) {
    if (digits.system().kind() != SystemKind::AlternatingCantor) {
        throw ValidationError("expected an alternating-Cantor digit string");
    }
    require_matching_base(weights, digits.system().base());
    return fold_twisted(weights, digits);
}

Rational eval_F_negaq(const PMatrix& weights, const QMatrix& matrix, const Rational& x) {
    require_matching_matrix(weights, matrix);
    return fold_twisted(weights, to_digits(x, NumberSystem::nega_q(matrix)));
}

Rational eval_F_negaq_digits(const PMatrix& weights, const DigitString& digits) {
    if (digits.system().kind() != SystemKind::NegaQ) {
        throw ValidationError("expected a nega-Q digit string");
    }
    require_matching_matrix(weights, digits.system().qmatrix());
    return fold_twisted(weights, digits);
}

Interval eval_F_negaq_bounds(const PMatrix& weights, const QMatrix& matrix, const Rational& x,
                             std::size_t depth) {
    require_matching_matrix(weights, matrix);
    const NegaQExpansion expansion = nega_q_digits(x, matrix, depth);
    if (expansion.exact) {
        const Rational value = eval_F_negaq_digits(weights, *expansion.digits);
        return {value, value};
    }
    // Partial sum over the extracted digits plus an exact bracket on the tail:
    // |tail| <= |prod of twisted weights| * max|beta| / (1 - max|p| per period).
    Rational partial = 0;
    Rational prod = 1;
    const std::vector<int>& digits = expansion.prefix_digits;
    for (std::size_t pos = 1; pos <= digits.size(); ++pos) {
        partial += weights.beta_twisted(digits[pos - 1], pos) * prod;
        prod *= weights.p_twisted(digits[pos - 1], pos);
    }
    Rational max_abs_p = 0;
    Rational max_abs_beta = 0;
    for (const PMatrix::Column& col : weights.columns()) {
        Rational beta = 0;
        for (const Rational& v : col.p) {
            max_abs_p = std::max(max_abs_p, rat_abs(v));
            beta += v;
            max_abs_beta = std::max(max_abs_beta, rat_abs(beta));
        }
    }
    const Rational bound = rat_abs(prod) * max_abs_beta / (1 - max_abs_p);
    return {partial - bound, partial + bound};
}

namespace {

ConditionReport build_report(const PMatrix& weights, std::size_t depth,
                             const Rational& zero_threshold,
                             const std::function<Rational(std::size_t)>& factor_low,
                             const std::function<Rational(std::size_t)>& factor_high) {
    ConditionReport report;

    // Alternating-sign condition, exact over the prefix plus one full period.
    report.sign_condition_ok = true;
    const std::size_t span = weights.period_start() + weights.period_length();
    for (std::size_t pos = 1; pos <= span && report.sign_condition_ok; ++pos) {
        for (int digit = 1; digit <= weights.m_at(pos); ++digit) {
            if (weights.p(digit, pos) * weights.p(digit - 1, pos) >= 0) {
                report.sign_condition_ok = false;
                break;
            }
        }
    }

    Rational low = 1;
    Rational high = 1;
    for (std::size_t pos = 1; pos <= depth; ++pos) {
        low *= factor_low(pos);
        high *= factor_high(pos);
        report.products_low.push_back(low);
        report.products_high.push_back(high);
    }

    const auto verdict = [&](const std::function<Rational(std::size_t)>& factor,
                             const std::vector<Rational>& products) {
        Rational ratio = 1;
        const std::size_t period = weights.period_length();
        for (std::size_t j = 0; j < period; ++j) {
            ratio *= rat_abs(factor(weights.period_start() + 1 + j));
        }
        if (ratio >= 1) return ProductVerdict::NonzeroLimitPlausible;
        if (products.size() > period &&
            rat_abs(products.back()) < rat_abs(products[products.size() - 1 - period]) &&
            rat_abs(products.back()) < zero_threshold) {
            return ProductVerdict::TendsToZero;
        }
        return ProductVerdict::Inconclusive;
    };
    report.verdict_low = verdict(factor_low, report.products_low);
    report.verdict_high = verdict(factor_high, report.products_high);
    return report;
}

}  // namespace

ConditionReport check_conditions(const PMatrix& weights, const CantorBase& base, std::size_t depth,
                                 const Rational& zero_threshold) {
    require_matching_base(weights, base);
    if (depth < weights.period_start() + weights.period_length()) {
        throw ValidationError("depth must cover at least one full period");
    }
    return build_report(
        weights, depth, zero_threshold,
        [&](std::size_t pos) { return Rational(base.radix_at(pos)) * weights.p(0, pos); },
        [&](std::size_t pos) {
            return Rational(base.radix_at(pos)) * weights.p(weights.m_at(pos), pos);
        });
}

ConditionReport check_conditions(const PMatrix& weights, const QMatrix& matrix, std::size_t depth,
                                 const Rational& zero_threshold) {
    require_matching_matrix(weights, matrix);
    if (depth < weights.period_start() + weights.period_length()) {
        throw ValidationError("depth must cover at least one full period");
    }
    return build_report(
        weights, depth, zero_threshold,
        [&](std::size_t pos) { return weights.p(0, pos) / matrix.column_at(pos).q.front(); },
        [&](std::size_t pos) {
            return weights.p(weights.m_at(pos), pos) / matrix.column_at(pos).q.back();
        });
}

Rational cylinder_ratio(const PMatrix& weights, const CantorBase& base,
                        const std::vector<int>& prefix) {
    require_matching_base(weights, base);
    Rational ratio = 1;
    for (std::size_t pos = 1; pos <= prefix.size(); ++pos) {
        const int digit = prefix[pos - 1];
        if (digit < 0 || digit >= base.radix_at(pos)) {
            throw ValidationError("digit out of alphabet in prefix");
        }
        ratio *= Rational(base.radix_at(pos)) * weights.p(digit, pos);
    }
    return ratio;
}

}  // namespace digitfn
