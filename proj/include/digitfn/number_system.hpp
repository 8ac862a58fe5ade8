#ifndef DIGITFN_NUMBER_SYSTEM_HPP
#define DIGITFN_NUMBER_SYSTEM_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "digitfn/rational.hpp"

namespace digitfn {

// Per-position radices of a Cantor series, eventually periodic:
// d_1, d_2, ... = prefix digits followed by the period repeated forever.
// A constant base s is prefix = {}, period = {s}.
struct CantorBase {
    std::vector<int> prefix;
    std::vector<int> period;

    CantorBase(std::vector<int> prefix_in, std::vector<int> period_in);

    int radix_at(std::size_t pos) const;  // pos is 1-based
    bool operator==(const CantorBase& other) const = default;
};

// Column-stochastic weight matrix with eventually periodic columns.
// Column n holds q_{0,n} .. q_{m_n,n} with every q > 0 and sum exactly 1.
struct QMatrix {
    struct Column {
        std::vector<Rational> q;  // size m+1, m >= 1
        bool operator==(const Column& other) const = default;
    };

    std::vector<Column> columns;
    std::size_t period_start = 0;  // columns[period_start..] repeat forever

    QMatrix(std::vector<Column> columns_in, std::size_t period_start_in);

    const Column& column_at(std::size_t pos) const;  // pos is 1-based
    int m_at(std::size_t pos) const;
    std::size_t period_length() const { return columns.size() - period_start; }
    bool operator==(const QMatrix& other) const = default;
};

enum class SystemKind { SAdic, NegaSAdic, Cantor, AlternatingCantor, NegaQ };

// One affine stage of a positional expansion: choosing digit i at position pos
// relates the remainders by  t_pos = offset + slope * t_{pos+1},
// with t at every position confined to [lower_bound, upper_bound].
struct AffineStep {
    Rational offset;
    Rational slope;
};

class NumberSystem {
public:
    static NumberSystem s_adic(int s);
    static NumberSystem nega_s_adic(int s);
    static NumberSystem cantor(CantorBase base);
    static NumberSystem alternating_cantor(CantorBase base);
    static NumberSystem nega_q(QMatrix matrix);

    SystemKind kind() const { return kind_; }
    int radix() const;                   // SAdic / NegaSAdic only
    const CantorBase& base() const;      // Cantor / AlternatingCantor only
    const QMatrix& qmatrix() const;      // NegaQ only

    int alphabet_size(std::size_t pos) const;  // digits at pos are 0 .. size-1

    // Exact value interval [L, U] of the whole representation.
    const Rational& lower_bound() const { return lower_; }
    const Rational& upper_bound() const { return upper_; }

    AffineStep step(std::size_t pos, int digit) const;

    // Steps repeat with this structure: positions 1..phase_prefix_length are
    // individual, after that they cycle with phase_period_length. NegaQ folds
    // the sign parity into the period, so its phase period is always even.
    std::size_t phase_prefix_length() const;
    std::size_t phase_period_length() const;
    std::size_t phase_id(std::size_t pos) const;

    std::string tag() const;  // "3", "-3", "D", "-D", "-Q"

    bool operator==(const NumberSystem& other) const;

private:
    NumberSystem() = default;

    SystemKind kind_ = SystemKind::SAdic;
    int s_ = 0;
    CantorBase base_{{}, {2}};
    QMatrix matrix_{{QMatrix::Column{{Rational(1, 2), Rational(1, 2)}}}, 0};
    Rational lower_;
    Rational upper_;
};

}  // namespace digitfn

#endif
