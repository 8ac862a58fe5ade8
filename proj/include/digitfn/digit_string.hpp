#ifndef DIGITFN_DIGIT_STRING_HPP
#define DIGITFN_DIGIT_STRING_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "digitfn/number_system.hpp"

namespace digitfn {

// An eventually periodic digit sequence in a declared number system:
// prefix digits followed either by zeros forever (empty period) or by the
// period block repeated forever. Every digit is validated against the
// alphabet of its position, and periodic tails over position-dependent
// systems must span a whole number of base periods so alphabets stay aligned.
class DigitString {
public:
    DigitString(NumberSystem system, std::vector<int> prefix, std::vector<int> period);

    const NumberSystem& system() const { return system_; }
    const std::vector<int>& prefix() const { return prefix_; }
    const std::vector<int>& period() const { return period_; }
    bool zero_tail() const { return period_.empty(); }

    int digit_at(std::size_t pos) const;  // 1-based, unrolls the tail

    // True when both strings denote the same infinite digit sequence,
    // regardless of how prefix/period split it.
    bool same_digits(const DigitString& other) const;

    // First `count` digits, materialized.
    std::vector<int> first_digits(std::size_t count) const;

    // Copy with the digit at `pos` replaced (prefix is grown over the tail as
    // needed so the tail structure is preserved).
    DigitString with_digit(std::size_t pos, int digit) const;

    std::string to_string() const;  // e.g. "Δ3:1()", "Δ-3:(0,2)"

    // Parses the textual form. Systems whose tag does not pin the base
    // ("D", "-D", "-Q") need `context` to supply it.
    static DigitString parse(const std::string& text,
                             const std::optional<NumberSystem>& context = std::nullopt);

private:
    NumberSystem system_;
    std::vector<int> prefix_;
    std::vector<int> period_;
};

}  // namespace digitfn

#endif
