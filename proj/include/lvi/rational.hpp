#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace lvi {

// Exact rational numbers. Always held in canonical form (gcd = 1, positive
// denominator), which GMP maintains for us after every operation.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;
using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int,
                                  boost::multiprecision::et_off>;

// Accepts "p", "p/q", and decimal forms such as "-0.35" or "1.25e-3".
// Decimal input is converted exactly (no binary floating point involved).
// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(num) / Rational(den);
}

inline Integer numerator(const Rational& value) {
  return boost::multiprecision::numerator(value);
}
inline Integer denominator(const Rational& value) {
  return boost::multiprecision::denominator(value);
}

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

// Integer power with a non-negative exponent.
Rational pow(const Rational& base, unsigned exponent);

// Smallest integer >= value.
Integer ceil(const Rational& value);

}  // namespace lvi
