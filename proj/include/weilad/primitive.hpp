#pragma once

#include "weilad/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace weilad {

enum class PrimitiveKind { exp, log, sin, cos, tan, sqrt, atan, tanh, pow_int, recip };

/// A smooth scalar function of one variable with a rule for its Taylor
/// coefficients f^(i)(a) / i! at a scalar point.
struct Primitive {
  PrimitiveKind kind = PrimitiveKind::exp;
  int exponent = 0;  // pow_int only

  static Primitive pow_int(int n) { return {PrimitiveKind::pow_int, n}; }

  std::string name() const;
  /// Whether the rational (exact) scalar mode supports this primitive.
  bool exact_capable() const { return kind == PrimitiveKind::pow_int || kind == PrimitiveKind::recip; }

  friend bool operator==(const Primitive&, const Primitive&) = default;
};

/// Looks up a function-call primitive by name (`exp`, `recip`, ...).
/// pow_int has no call syntax; it is written with `^`.
bool primitive_by_name(std::string_view name, Primitive& out);

/// Taylor coefficients c_i = f^(i)(a) / i! for i < count. Throws DomainError
/// outside the primitive's domain.
std::vector<double> taylor_coefficients(const Primitive& p, double a, unsigned count);

/// Exact variant; only pow_int and recip are available, everything else
/// throws UnsupportedInRationalMode.
std::vector<Rational> taylor_coefficients(const Primitive& p, const Rational& a, unsigned count);

/// Plain scalar evaluation, c_0 of the above.
double evaluate_primitive(const Primitive& p, double a);

}  // namespace weilad
