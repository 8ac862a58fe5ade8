#ifndef DIGITFN_RATIONAL_HPP
#define DIGITFN_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace digitfn {

// Exact arbitrary-precision arithmetic carries every value in the library;
// no floating point enters until display time.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt int_pow(const BigInt& base, unsigned long exp);

// base^exp for integral exp (exp may be negative; base must be nonzero then).
Rational rat_pow(const Rational& base, long exp);

Rational rat_abs(const Rational& value);

// Parses "p/q" or a plain integer "p". Accepts an optional leading sign on p.
Rational parse_rational(const std::string& text);

// Prints integers bare and everything else as "p/q" with q > 0.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

}  // namespace digitfn

#endif
