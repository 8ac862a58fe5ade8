#include "digitfn/rational.hpp"

#include <cctype>

#include "digitfn/error.hpp"

namespace digitfn {

BigInt int_pow(const BigInt& base, unsigned long exp) {
    BigInt result = 1;
    BigInt b = base;
    unsigned long e = exp;
    while (e != 0) {
        if (e & 1UL) result *= b;
        b *= b;
        e >>= 1UL;
    }
    return result;
}

Rational rat_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0 && exp < 0) throw DomainError("rat_pow: zero base with negative exponent");
    const unsigned long mag = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
    const BigInt num = int_pow(numerator(base), mag);
    const BigInt den = int_pow(denominator(base), mag);
    return exp > 0 ? Rational(num, den) : Rational(den, num);
}

Rational rat_abs(const Rational& value) {
    return value < 0 ? Rational(-value) : value;
}

namespace {

bool valid_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string::npos) {
        if (!valid_integer_token(text)) throw ValidationError("not a rational: '" + text + "'");
        return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den)) {
        throw ValidationError("not a rational: '" + text + "'");
    }
    BigInt d(den);
    if (d == 0) throw ValidationError("zero denominator: '" + text + "'");
    return Rational(BigInt(num), d);
}

std::string format_rational(const Rational& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

}  // namespace digitfn
