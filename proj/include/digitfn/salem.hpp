#ifndef DIGITFN_SALEM_HPP
#define DIGITFN_SALEM_HPP

#include <cstddef>
#include <vector>

#include "digitfn/digit_string.hpp"
#include "digitfn/number_system.hpp"
#include "digitfn/numbers.hpp"
#include "digitfn/rational.hpp"

namespace digitfn {

// Weight matrix for the digit-redistribution evaluators. Columns are
// eventually periodic; entries may be negative but stay inside (-1,1), each
// column sums to 1, and all partial sums beta_i = p_0 + ... + p_{i-1} lie in
// (0,1) for i != 0.
class PMatrix {
public:
    struct Column {
        std::vector<Rational> p;  // size >= 2
    };

    PMatrix(std::vector<Column> columns, std::size_t period_start);

    const Column& column_at(std::size_t pos) const;  // 1-based
    int m_at(std::size_t pos) const;                 // top digit index
    std::size_t period_start() const { return period_start_; }
    std::size_t period_length() const { return columns_.size() - period_start_; }
    const std::vector<Column>& columns() const { return columns_; }

    Rational p(int digit, std::size_t pos) const;
    Rational beta(int digit, std::size_t pos) const;  // sum of p below `digit`
    // Parity-twisted coefficients: unchanged at odd positions, digit
    // reflected through the top of the column at even positions.
    Rational p_twisted(int digit, std::size_t pos) const;
    Rational beta_twisted(int digit, std::size_t pos) const;

    bool all_positive() const;

private:
    std::vector<Column> columns_;
    std::size_t period_start_;
};

struct SalemParams {
    Rational q0;
    Rational q1;
    explicit SalemParams(Rational q0_in);
};

// Binary digit-redistribution function: digit weights (q0, q1) replace the
// uniform (1/2, 1/2). Strictly increasing, s(0) = 0, s(1) = 1.
Rational salem_eval(const SalemParams& params, const Rational& x);

// Series evaluator over positive Cantor expansions:
// F = beta_{e1,1} + sum_k beta_{ek,k} * prod_{n<k} p_{en,n}.
Rational eval_F_cantor(const PMatrix& weights, const CantorBase& base, const Rational& x);
Rational eval_F_cantor_digits(const PMatrix& weights, const DigitString& digits);

// Alternating-Cantor variant: coefficients are parity-twisted.
Rational eval_F_tilde(const PMatrix& weights, const CantorBase& base, const Rational& x);
Rational eval_F_tilde_digits(const PMatrix& weights, const DigitString& digits);

// Nega-Q variant: digits come from the nega-Q expansion of x, coefficients
// are parity-twisted. Exact when the expansion is eventually periodic.
Rational eval_F_negaq(const PMatrix& weights, const QMatrix& matrix, const Rational& x);
Rational eval_F_negaq_digits(const PMatrix& weights, const DigitString& digits);

// Depth-bounded evaluation with an exact bracket around the tail, for
// expansions that do not close up periodically.
Interval eval_F_negaq_bounds(const PMatrix& weights, const QMatrix& matrix, const Rational& x,
                             std::size_t depth);

enum class ProductVerdict { NonzeroLimitPlausible, TendsToZero, Inconclusive };

struct ConditionReport {
    bool sign_condition_ok = false;
    std::vector<Rational> products_low;   // partial products for digit 0
    std::vector<Rational> products_high;  // partial products for the top digit
    ProductVerdict verdict_low = ProductVerdict::Inconclusive;
    ProductVerdict verdict_high = ProductVerdict::Inconclusive;
};

// Checks the alternating-sign column condition exactly over one period and
// reports the exact partial products d_k * p_{sel,k} (or p/q ratios for the
// nega-Q variant) to `depth`, with an honest verdict about their limit.
ConditionReport check_conditions(const PMatrix& weights, const CantorBase& base, std::size_t depth,
                                 const Rational& zero_threshold = Rational(1, 1000000));
ConditionReport check_conditions(const PMatrix& weights, const QMatrix& matrix, std::size_t depth,
                                 const Rational& zero_threshold = Rational(1, 1000000));

// prod_{k<=n} d_k p_{e_k,k}: the increment of F over the prefix cylinder
// divided by the cylinder length (exactly, for all-positive weights).
Rational cylinder_ratio(const PMatrix& weights, const CantorBase& base,
                        const std::vector<int>& prefix);

}  // namespace digitfn

#endif
