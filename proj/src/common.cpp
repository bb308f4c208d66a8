#include "weilad/error.hpp"
#include "weilad/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace weilad {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "Ok";
    case ErrorCode::bad_parameter: return "BadParameter";
    case ErrorCode::infinite_dimension: return "InfiniteDimension";
    case ErrorCode::duplicate_generator: return "DuplicateGenerator";
    case ErrorCode::not_well_defined: return "NotWellDefined";
    case ErrorCode::augmentation_violation: return "AugmentationViolation";
    case ErrorCode::source_target_mismatch: return "SourceTargetMismatch";
    case ErrorCode::algebra_mismatch: return "AlgebraMismatch";
    case ErrorCode::scalar_mode_mismatch: return "ScalarModeMismatch";
    case ErrorCode::not_a_unit: return "NotAUnit";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::unsupported_in_rational_mode: return "UnsupportedInRationalMode";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::unknown_function: return "UnknownFunction";
    case ErrorCode::unknown_variable: return "UnknownVariable";
    case ErrorCode::size_limit: return "SizeLimit";
    case ErrorCode::non_natural: return "NonNatural";
    case ErrorCode::unavailable_in_model: return "UnavailableInModel";
    case ErrorCode::invalid_instance: return "InvalidInstance";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::internal: return "Internal";
  }
  return "Unknown";
}

std::string_view scalar_mode_name(ScalarMode mode) noexcept {
  return mode == ScalarMode::rational ? "rational" : "float";
}

namespace {

Rational pow10(long e) {
  Rational r = 1;
  const Rational ten = 10;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= ten;
  return e < 0 ? Rational(1) / r : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const char* what) -> Rational {
    throw ParseError(pos + 1, std::string(what) + " in number '" + std::string(text) + "'");
  };
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
    if (text[pos] == '.') {
      if (seen_point) return fail("second decimal point");
      seen_point = true;
    } else {
      digits.push_back(text[pos]);
      if (seen_point) ++frac_digits;
    }
    ++pos;
  }
  if (digits.empty()) return fail("missing digits");
  Rational value{boost::multiprecision::mpz_int(digits)};
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    long exponent = 0;
    const char* first = text.data() + pos;
    if (pos < text.size() && text[pos] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), exponent);
    if (ec != std::errc{} || ptr == first) return fail("bad exponent");
    pos = static_cast<std::size_t>(ptr - text.data());
    frac_digits -= exponent;
  }
  value *= pow10(-frac_digits);
  if (pos < text.size() && text[pos] == '/') {
    if (seen_point) return fail("fraction with decimal numerator");
    ++pos;
    std::string den;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) den.push_back(text[pos++]);
    if (den.empty()) return fail("missing denominator");
    Rational d{boost::multiprecision::mpz_int(den)};
    if (d == 0) return fail("zero denominator");
    value /= d;
  }
  if (pos != text.size()) return fail("trailing characters");
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& q) {
  return q.str();
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace weilad
