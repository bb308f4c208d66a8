#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace weilad {

/// Exact arbitrary-precision rational scalar (GMP backed, no expression
/// templates so that `auto` and generic code see plain values).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

enum class ScalarMode { rational, binary_float };

std::string_view scalar_mode_name(ScalarMode mode) noexcept;

/// Accepts integers, fractions `p/q` and decimals with optional exponent
/// (`-1.25e-3`). Decimals are converted exactly. Throws ParseError.
Rational parse_rational(std::string_view text);

/// `p/q` in lowest terms, or `p` when the denominator is 1.
std::string format_rational(const Rational& q);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace weilad
