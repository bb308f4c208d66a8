#include "weilad/primitive.hpp"

#include "weilad/error.hpp"

#include <array>
#include <cmath>

namespace weilad {

std::string Primitive::name() const {
  switch (kind) {
    case PrimitiveKind::exp: return "exp";
    case PrimitiveKind::log: return "log";
    case PrimitiveKind::sin: return "sin";
    case PrimitiveKind::cos: return "cos";
    case PrimitiveKind::tan: return "tan";
    case PrimitiveKind::sqrt: return "sqrt";
    case PrimitiveKind::atan: return "atan";
    case PrimitiveKind::tanh: return "tanh";
    case PrimitiveKind::pow_int: return "pow_int(" + std::to_string(exponent) + ")";
    case PrimitiveKind::recip: return "recip";
  }
  return "?";
}

bool primitive_by_name(std::string_view name, Primitive& out) {
  static constexpr std::array<std::pair<std::string_view, PrimitiveKind>, 9> table{{
      {"exp", PrimitiveKind::exp},
      {"log", PrimitiveKind::log},
      {"sin", PrimitiveKind::sin},
      {"cos", PrimitiveKind::cos},
      {"tan", PrimitiveKind::tan},
      {"sqrt", PrimitiveKind::sqrt},
      {"atan", PrimitiveKind::atan},
      {"tanh", PrimitiveKind::tanh},
      {"recip", PrimitiveKind::recip},
  }};
  for (auto [n, k] : table)
    if (n == name) {
      out = Primitive{k, 0};
      return true;
    }
  return false;
}

namespace {

[[noreturn]] void domain_error(const Primitive& p, const std::string& point) {
  throw Error(ErrorCode::domain_error, p.name() + " is not defined at " + point);
}

using Poly = std::vector<double>;

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

double eval(const Poly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// tan^(i) = P_i(tan), P_{i+1} = (1 + sign t^2) P_i'  (sign -1 gives tanh).
std::vector<double> derivative_polynomial_coeffs(double t, unsigned count, double sign) {
  std::vector<double> c;
  Poly p{0.0, 1.0};
  const Poly factor{1.0, 0.0, sign};
  double fact = 1.0;
  for (unsigned i = 0; i < count; ++i) {
    if (i > 0) fact *= i;
    c.push_back(eval(p, t) / fact);
    p = multiply(factor, derivative(p));
  }
  return c;
}

template <class S>
S int_pow(S base, long e) {
  S acc = 1;
  bool invert = e < 0;
  unsigned long n = static_cast<unsigned long>(invert ? -e : e);
  while (n) {
    if (n & 1u) acc *= base;
    base *= base;
    n >>= 1u;
  }
  return invert ? S(1) / acc : acc;
}

/// binom(n, i) a^(n - i), zero past the end of a polynomial.
template <class S>
std::vector<S> pow_int_coeffs(int n, const S& a, unsigned count) {
  std::vector<S> c;
  S binom = 1;
  for (unsigned i = 0; i < count; ++i) {
    if (i > 0) binom = binom * S(n - static_cast<int>(i) + 1) / S(static_cast<int>(i));
    if (binom == 0) {
      c.push_back(S(0));
      continue;
    }
    c.push_back(binom * int_pow(a, static_cast<long>(n) - static_cast<long>(i)));
  }
  return c;
}

template <class S>
std::vector<S> recip_coeffs(const S& a, unsigned count) {
  std::vector<S> c;
  const S inv = S(1) / a;
  S term = inv;
  for (unsigned i = 0; i < count; ++i) {
    c.push_back(term);
    term = -term * inv;
  }
  return c;
}

}  // namespace

std::vector<double> taylor_coefficients(const Primitive& p, double a, unsigned count) {
  std::vector<double> c;
  c.reserve(count);
  switch (p.kind) {
    case PrimitiveKind::exp: {
      double term = std::exp(a);
      for (unsigned i = 0; i < count; ++i) {
        if (i > 0) term /= i;
        c.push_back(term);
      }
      break;
    }
    case PrimitiveKind::log: {
      if (!(a > 0)) domain_error(p, format_double(a));
      for (unsigned i = 0; i < count; ++i) {
        if (i == 0) c.push_back(std::log(a));
        else c.push_back((i % 2 == 1 ? 1.0 : -1.0) / (i * std::pow(a, static_cast<int>(i))));
      }
      break;
    }
    case PrimitiveKind::sin:
    case PrimitiveKind::cos: {
      const double s = std::sin(a), co = std::cos(a);
      const std::array<double, 4> cycle = p.kind == PrimitiveKind::sin ? std::array<double, 4>{s, co, -s, -co}
                                                                        : std::array<double, 4>{co, -s, -co, s};
      double fact = 1.0;
      for (unsigned i = 0; i < count; ++i) {
        if (i > 0) fact *= i;
        c.push_back(cycle[i % 4] / fact);
      }
      break;
    }
    case PrimitiveKind::tan: {
      if (std::cos(a) == 0.0) domain_error(p, format_double(a));
      c = derivative_polynomial_coeffs(std::tan(a), count, 1.0);
      break;
    }
    case PrimitiveKind::tanh:
      c = derivative_polynomial_coeffs(std::tanh(a), count, -1.0);
      break;
    case PrimitiveKind::sqrt: {
      if (!(a > 0)) domain_error(p, format_double(a));
      double term = std::sqrt(a);
      for (unsigned i = 0; i < count; ++i) {
        if (i > 0) term = term * (0.5 - (i - 1.0)) / (i * a);
        c.push_back(term);
      }
      break;
    }
    case PrimitiveKind::atan: {
      // atan^(i) = Q_{i-1}(a) / (1 + a^2)^i with Q_0 = 1 and
      // Q_{k+1} = (1 + x^2) Q_k' - 2 (k + 1) x Q_k.
      const double w = 1.0 + a * a;
      Poly q{1.0};
      double fact = 1.0;
      for (unsigned i = 0; i < count; ++i) {
        if (i == 0) {
          c.push_back(std::atan(a));
          continue;
        }
        fact *= i;
        c.push_back(eval(q, a) / std::pow(w, static_cast<int>(i)) / fact);
        const double k = i - 1.0;
        q = add(multiply({1.0, 0.0, 1.0}, derivative(q)), multiply({0.0, -2.0 * (k + 1.0)}, q));
      }
      break;
    }
    case PrimitiveKind::pow_int:
      if (p.exponent < 0 && a == 0.0) domain_error(p, "0");
      c = pow_int_coeffs<double>(p.exponent, a, count);
      break;
    case PrimitiveKind::recip:
      if (a == 0.0) domain_error(p, "0");
      c = recip_coeffs<double>(a, count);
      break;
  }
  return c;
}

std::vector<Rational> taylor_coefficients(const Primitive& p, const Rational& a, unsigned count) {
  switch (p.kind) {
    case PrimitiveKind::pow_int:
      if (p.exponent < 0 && a == 0) domain_error(p, "0");
      return pow_int_coeffs<Rational>(p.exponent, a, count);
    case PrimitiveKind::recip:
      if (a == 0) domain_error(p, "0");
      return recip_coeffs<Rational>(a, count);
    default:
      throw Error(ErrorCode::unsupported_in_rational_mode,
                  p.name() + " is transcendental and needs float scalars");
  }
}

double evaluate_primitive(const Primitive& p, double a) {
  return taylor_coefficients(p, a, 1).front();
}

}  // namespace weilad
