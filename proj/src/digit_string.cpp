#include "digitfn/digit_string.hpp"

#include <numeric>
#include <sstream>

#include "digitfn/error.hpp"

namespace digitfn {

namespace {

std::string join_digits(const std::vector<int>& digits) {
    std::ostringstream out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0) out << ',';
        out << digits[i];
    }
    return out.str();
}

std::vector<int> split_digits(const std::string& text) {
    std::vector<int> digits;
    if (text.empty()) return digits;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string token = text.substr(start, comma == std::string::npos ? comma : comma - start);
        if (token.empty()) throw ValidationError("empty digit in '" + text + "'");
        try {
            digits.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw ValidationError("bad digit '" + token + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return digits;
}

}  // namespace

DigitString::DigitString(NumberSystem system, std::vector<int> prefix, std::vector<int> period)
    : system_(std::move(system)), prefix_(std::move(prefix)), period_(std::move(period)) {
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        const int d = prefix_[i];
        if (d < 0 || d >= system_.alphabet_size(i + 1)) {
            throw ValidationError("digit " + std::to_string(d) + " out of alphabet at position " +
                                  std::to_string(i + 1));
        }
    }
    if (!period_.empty()) {
        const SystemKind kind = system_.kind();
        if (kind == SystemKind::Cantor || kind == SystemKind::AlternatingCantor ||
            kind == SystemKind::NegaQ) {
            const std::size_t base_period = kind == SystemKind::NegaQ
                                                ? system_.qmatrix().period_length()
                                                : system_.base().period.size();
            if (period_.size() % base_period != 0) {
                throw ValidationError("tail period length must be a multiple of the base period");
            }
        }
        // Validate every (base phase, period offset) pairing the tail hits:
        // walk from the tail start until one full phase cycle past the point
        // where both the base and the tail repeat.
        const std::size_t start = prefix_.size() + 1;
        const std::size_t stop = std::max(prefix_.size(), system_.phase_prefix_length()) +
                                 std::lcm(period_.size(), system_.phase_period_length());
        for (std::size_t pos = start; pos <= stop; ++pos) {
            const int d = period_[(pos - start) % period_.size()];
            if (d < 0 || d >= system_.alphabet_size(pos)) {
                throw ValidationError("tail digit " + std::to_string(d) +
                                      " out of alphabet at position " + std::to_string(pos));
            }
        }
    }
}

int DigitString::digit_at(std::size_t pos) const {
    if (pos == 0) throw ValidationError("positions are 1-based");
    const std::size_t idx = pos - 1;
    if (idx < prefix_.size()) return prefix_[idx];
    if (period_.empty()) return 0;
    return period_[(idx - prefix_.size()) % period_.size()];
}

bool DigitString::same_digits(const DigitString& other) const {
    if (!(system_ == other.system_)) return false;
    const std::size_t p = std::max(prefix_.size(), other.prefix_.size());
    const std::size_t k = std::lcm(std::max<std::size_t>(period_.size(), 1),
                                   std::max<std::size_t>(other.period_.size(), 1));
    const std::size_t bound = p + 2 * k;
    for (std::size_t pos = 1; pos <= bound; ++pos) {
        if (digit_at(pos) != other.digit_at(pos)) return false;
    }
    return true;
}

std::vector<int> DigitString::first_digits(std::size_t count) const {
    std::vector<int> digits(count);
    for (std::size_t pos = 1; pos <= count; ++pos) digits[pos - 1] = digit_at(pos);
    return digits;
}

DigitString DigitString::with_digit(std::size_t pos, int digit) const {
    if (pos == 0) throw ValidationError("positions are 1-based");
    std::vector<int> prefix = prefix_;
    std::vector<int> period = period_;
    if (pos > prefix.size()) {
        // Grow the prefix over the tail, rotating the period so the remaining
        // tail still starts in the right phase.
        std::size_t rotation = 0;
        while (prefix.size() < pos) {
            if (period.empty()) {
                prefix.push_back(0);
            } else {
                prefix.push_back(period[rotation]);
                rotation = (rotation + 1) % period.size();
            }
        }
        if (!period.empty() && rotation != 0) {
            std::vector<int> rotated(period.begin() + static_cast<std::ptrdiff_t>(rotation), period.end());
            rotated.insert(rotated.end(), period.begin(), period.begin() + static_cast<std::ptrdiff_t>(rotation));
            period = std::move(rotated);
        }
    }
    prefix[pos - 1] = digit;
    return DigitString(system_, std::move(prefix), std::move(period));
}

std::string DigitString::to_string() const {
    return "Δ" + system_.tag() + ":" + join_digits(prefix_) + "(" + join_digits(period_) + ")";
}

DigitString DigitString::parse(const std::string& text, const std::optional<NumberSystem>& context) {
    std::string body = text;
    const std::string delta = "Δ";
    if (body.rfind(delta, 0) == 0) body = body.substr(delta.size());
    const std::size_t colon = body.find(':');
    if (colon == std::string::npos) throw ValidationError("digit string needs 'tag:prefix(period)'");
    const std::string tag = body.substr(0, colon);
    const std::size_t open = body.find('(', colon);
    const std::size_t close = body.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
        throw ValidationError("digit string needs '(period)'");
    }
    const std::string prefix_part = body.substr(colon + 1, open - colon - 1);
    const std::string period_part = body.substr(open + 1, close - open - 1);

    NumberSystem sys = NumberSystem::s_adic(2);
    if (tag == "D" || tag == "-D" || tag == "-Q") {
        if (!context.has_value() || context->tag() != tag) {
            throw ValidationError("digit string tag '" + tag + "' needs a matching base/matrix context");
        }
        sys = *context;
    } else {
        try {
            const int s = std::stoi(tag);
            sys = s < 0 ? NumberSystem::nega_s_adic(-s) : NumberSystem::s_adic(s);
        } catch (const std::exception&) {
            throw ValidationError("bad system tag '" + tag + "'");
        }
    }
    return DigitString(std::move(sys), split_digits(prefix_part), split_digits(period_part));
}

}  // namespace digitfn
