#include "lvi/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace lvi {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("malformed rational: '" + std::string(text) +
                              "'");
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) bad(whole);
  std::size_t nz = s.find_first_not_of('0');
  s = nz == std::string_view::npos ? std::string_view("0") : s.substr(nz);
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  if (s.empty()) bad(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) bad(text);
    Integer den = parse_integer(den_text, text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" +
                                              std::string(text) + "'");
    return Rational(num) / Rational(den);
  }

  // Decimal with optional fraction and exponent.
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    Integer exp = parse_integer(s.substr(e + 1), text);
    if (abs(exp) > 10000) bad(text);
    exponent = exp.convert_to<long long>();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad(text);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      bad(text);
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long long>(frac_part.size());
  } else {
    if (!all_digits(s)) bad(text);
    digits = std::string(s);
  }
  // GMP reads a leading 0 as an octal prefix.
  std::size_t nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  Rational value{Integer(digits)};
  Rational ten(10);
  if (exponent > 0) value *= pow(ten, static_cast<unsigned>(exponent));
  if (exponent < 0) value /= pow(ten, static_cast<unsigned>(-exponent));
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

Integer ceil(const Rational& value) {
  Integer q = numerator(value) / denominator(value);  // truncates toward 0
  if (Rational(q) < value) q += 1;
  return q;
}

}  // namespace lvi
