#include "digitfn/number_system.hpp"

#include <numeric>

#include "digitfn/error.hpp"

namespace digitfn {

CantorBase::CantorBase(std::vector<int> prefix_in, std::vector<int> period_in)
    : prefix(std::move(prefix_in)), period(std::move(period_in)) {
    if (period.empty()) throw ValidationError("Cantor base needs a nonempty period");
    for (int d : prefix) {
        if (d < 2) throw ValidationError("Cantor base entries must be >= 2");
    }
    for (int d : period) {
        if (d < 2) throw ValidationError("Cantor base entries must be >= 2");
    }
}

int CantorBase::radix_at(std::size_t pos) const {
    if (pos == 0) throw ValidationError("positions are 1-based");
    const std::size_t idx = pos - 1;
    if (idx < prefix.size()) return prefix[idx];
    return period[(idx - prefix.size()) % period.size()];
}

QMatrix::QMatrix(std::vector<Column> columns_in, std::size_t period_start_in)
    : columns(std::move(columns_in)), period_start(period_start_in) {
    if (columns.empty() || period_start >= columns.size()) {
        throw ValidationError("matrix needs at least one periodic column");
    }
    for (const Column& col : columns) {
        if (col.q.size() < 2) throw ValidationError("matrix column needs m >= 1 (at least two weights)");
        Rational sum = 0;
        for (const Rational& q : col.q) {
            if (q <= 0) throw ValidationError("matrix weights must be positive");
            sum += q;
        }
        if (sum != 1) throw ValidationError("matrix column weights must sum to 1");
    }
}

const QMatrix::Column& QMatrix::column_at(std::size_t pos) const {
    if (pos == 0) throw ValidationError("positions are 1-based");
    const std::size_t idx = pos - 1;
    if (idx < period_start) return columns[idx];
    return columns[period_start + (idx - period_start) % period_length()];
}

int QMatrix::m_at(std::size_t pos) const {
    return static_cast<int>(column_at(pos).q.size()) - 1;
}

NumberSystem NumberSystem::s_adic(int s) {
    if (s < 2) throw ValidationError("radix must be >= 2");
    NumberSystem sys;
    sys.kind_ = SystemKind::SAdic;
    sys.s_ = s;
    sys.lower_ = 0;
    sys.upper_ = 1;
    return sys;
}

NumberSystem NumberSystem::nega_s_adic(int s) {
    if (s < 2) throw ValidationError("radix must be >= 2");
    NumberSystem sys;
    sys.kind_ = SystemKind::NegaSAdic;
    sys.s_ = s;
    sys.lower_ = Rational(-s, s + 1);
    sys.upper_ = Rational(1, s + 1);
    return sys;
}

NumberSystem NumberSystem::cantor(CantorBase base) {
    NumberSystem sys;
    sys.kind_ = SystemKind::Cantor;
    sys.base_ = std::move(base);
    sys.lower_ = 0;
    sys.upper_ = 1;
    return sys;
}

NumberSystem NumberSystem::alternating_cantor(CantorBase base) {
    NumberSystem sys;
    sys.kind_ = SystemKind::AlternatingCantor;
    sys.base_ = std::move(base);
    sys.lower_ = 0;
    sys.upper_ = 1;
    return sys;
}

NumberSystem NumberSystem::nega_q(QMatrix matrix) {
    NumberSystem sys;
    sys.kind_ = SystemKind::NegaQ;
    sys.matrix_ = std::move(matrix);
    sys.lower_ = 0;
    sys.upper_ = 1;
    return sys;
}

int NumberSystem::radix() const {
    if (kind_ != SystemKind::SAdic && kind_ != SystemKind::NegaSAdic) {
        throw ValidationError("radix() needs an s-adic or nega-s-adic system");
    }
    return s_;
}

const CantorBase& NumberSystem::base() const {
    if (kind_ != SystemKind::Cantor && kind_ != SystemKind::AlternatingCantor) {
        throw ValidationError("base() needs a Cantor-series system");
    }
    return base_;
}

const QMatrix& NumberSystem::qmatrix() const {
    if (kind_ != SystemKind::NegaQ) throw ValidationError("qmatrix() needs the nega-Q system");
    return matrix_;
}

int NumberSystem::alphabet_size(std::size_t pos) const {
    switch (kind_) {
        case SystemKind::SAdic:
        case SystemKind::NegaSAdic:
            return s_;
        case SystemKind::Cantor:
        case SystemKind::AlternatingCantor:
            return base_.radix_at(pos);
        case SystemKind::NegaQ:
            return matrix_.m_at(pos) + 1;
    }
    throw Error("unreachable");
}

AffineStep NumberSystem::step(std::size_t pos, int digit) const {
    if (digit < 0 || digit >= alphabet_size(pos)) {
        throw ValidationError("digit " + std::to_string(digit) + " out of alphabet at position " +
                              std::to_string(pos));
    }
    switch (kind_) {
        case SystemKind::SAdic:
            return {Rational(digit, s_), Rational(1, s_)};
        case SystemKind::NegaSAdic:
            return {Rational(-digit, s_), Rational(-1, s_)};
        case SystemKind::Cantor: {
            const int d = base_.radix_at(pos);
            return {Rational(digit, d), Rational(1, d)};
        }
        case SystemKind::AlternatingCantor: {
            const int d = base_.radix_at(pos);
            return {Rational(1 + digit, d), Rational(-1, d)};
        }
        case SystemKind::NegaQ: {
            // Odd positions read the column left to right, even positions
            // reversed; the remainder interval flips orientation every step.
            const QMatrix::Column& col = matrix_.column_at(pos);
            const bool even = pos % 2 == 0;
            const int m = static_cast<int>(col.q.size()) - 1;
            Rational cumulative = 0;
            for (int i = 0; i <= digit; ++i) {
                cumulative += even ? col.q[static_cast<std::size_t>(m - i)] : col.q[static_cast<std::size_t>(i)];
            }
            const Rational width = even ? col.q[static_cast<std::size_t>(m - digit)]
                                        : col.q[static_cast<std::size_t>(digit)];
            return {cumulative, -width};
        }
    }
    throw Error("unreachable");
}

std::size_t NumberSystem::phase_prefix_length() const {
    switch (kind_) {
        case SystemKind::SAdic:
        case SystemKind::NegaSAdic:
            return 0;
        case SystemKind::Cantor:
        case SystemKind::AlternatingCantor:
            return base_.prefix.size();
        case SystemKind::NegaQ:
            return matrix_.period_start;
    }
    throw Error("unreachable");
}

std::size_t NumberSystem::phase_period_length() const {
    switch (kind_) {
        case SystemKind::SAdic:
        case SystemKind::NegaSAdic:
            return 1;
        case SystemKind::Cantor:
        case SystemKind::AlternatingCantor:
            return base_.period.size();
        case SystemKind::NegaQ:
            return std::lcm(matrix_.period_length(), std::size_t{2});
    }
    throw Error("unreachable");
}

std::size_t NumberSystem::phase_id(std::size_t pos) const {
    const std::size_t prefix = phase_prefix_length();
    if (pos <= prefix) return pos;
    return prefix + 1 + (pos - prefix - 1) % phase_period_length();
}

std::string NumberSystem::tag() const {
    switch (kind_) {
        case SystemKind::SAdic:
            return std::to_string(s_);
        case SystemKind::NegaSAdic:
            return "-" + std::to_string(s_);
        case SystemKind::Cantor:
            return "D";
        case SystemKind::AlternatingCantor:
            return "-D";
        case SystemKind::NegaQ:
            return "-Q";
    }
    throw Error("unreachable");
}

bool NumberSystem::operator==(const NumberSystem& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case SystemKind::SAdic:
        case SystemKind::NegaSAdic:
            return s_ == other.s_;
        case SystemKind::Cantor:
        case SystemKind::AlternatingCantor:
            return base_ == other.base_;
        case SystemKind::NegaQ:
            return matrix_ == other.matrix_;
    }
    return false;
}

}  // namespace digitfn
