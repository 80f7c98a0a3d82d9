#include "pmsched/rational.hpp"

#include <cctype>
#include <cstdio>

#include "pmsched/error.hpp"

namespace pmsched {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(unsigned k) {
  cpp_int r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

}  // namespace

std::string format_decimal(const Rational& r) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();

  cpp_int rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) rest /= 2, ++twos;
  while (rest % 5 == 0) rest /= 5, ++fives;
  if (rest == 1) {
    const unsigned k = std::max(twos, fives);
    cpp_int scaled = num * pow10(k) / den;
    const bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string digits = scaled.str();
    if (digits.size() <= k) digits.insert(0, k - digits.size() + 1, '0');
    digits.insert(digits.size() - k, ".");
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return neg ? "-" + digits : digits;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", r.convert_to<double>());
  return buf;
}

Rational parse_decimal(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ParseError(0, "not a number: '" + std::string(text) + "'");
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational a = parse_decimal(text.substr(0, slash));
    const Rational b = parse_decimal(text.substr(slash + 1));
    if (b == 0) return fail();
    return a / b;
  }
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
  cpp_int mantissa = 0;
  long long exp10 = 0;
  bool any_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    mantissa = mantissa * 10 + (text[i++] - '0');
    any_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mantissa = mantissa * 10 + (text[i++] - '0');
      --exp10;
      any_digit = true;
    }
  }
  if (!any_digit) return fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    long long e = 0;
    bool edigit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      e = e * 10 + (text[i++] - '0');
      edigit = true;
      if (e > 10000) return fail();
    }
    if (!edigit) return fail();
    exp10 += eneg ? -e : e;
  }
  if (i != text.size()) return fail();
  Rational value = exp10 >= 0 ? Rational(mantissa * pow10(static_cast<unsigned>(exp10)))
                              : Rational(mantissa, pow10(static_cast<unsigned>(-exp10)));
  return neg ? Rational(-value) : value;
}

}  // namespace pmsched
