#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace pmsched {

// Exact arbitrary-precision rational used for bounds and model coefficients.
using Rational = boost::multiprecision::cpp_rational;

// Exact decimal when the reduced denominator is of the form 2^a 5^b,
// otherwise a 15-significant-digit decimal. Integers print without a point.
std::string format_decimal(const Rational& r);

// Parses "12", "-0.5", "1e-9", "3/4". Throws ParseError(0, ...) on garbage.
Rational parse_decimal(std::string_view text);

}  // namespace pmsched
