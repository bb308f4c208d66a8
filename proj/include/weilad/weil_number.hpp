#pragma once

#include "weilad/algebra.hpp"
#include "weilad/error.hpp"
#include "weilad/morphism.hpp"
#include "weilad/primitive.hpp"

#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace weilad {

template <class T>
class WeilNumber;

/// Operations the Weil-number kernel needs from its coefficient type.
/// Specialized for double, Rational and (recursively) WeilNumber<U>, which
/// is how nested Weil functors T^{W2}(T^{W1}(...)) are evaluated.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool is_float = true;
  static constexpr int depth = 0;
  static double zero_like(const double&) { return 0.0; }
  static double constant_like(const double&, const Rational& q) { return to_double(q); }
  static double scale(const double& x, const Rational& q) { return x * to_double(q); }
  static bool is_zero(const double& x) { return x == 0.0; }
  static double inverse(const double& x) {
    if (x == 0.0) throw Error(ErrorCode::not_a_unit, "division by zero");
    return 1.0 / x;
  }
  static std::string format(const double& x) { return format_double(x); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_float = false;
  static constexpr int depth = 0;
  static Rational zero_like(const Rational&) { return Rational(0); }
  static Rational constant_like(const Rational&, const Rational& q) { return q; }
  static Rational scale(const Rational& x, const Rational& q) { return x * q; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational inverse(const Rational& x) {
    if (x == 0) throw Error(ErrorCode::not_a_unit, "division by zero");
    return Rational(1) / x;
  }
  static std::string format(const Rational& x) { return format_rational(x); }
};

/// Element of R (x) W: a coefficient vector over the monomial basis of W.
template <class T>
class WeilNumber {
 public:
  using scalar_type = T;
  using traits = ScalarTraits<T>;

  WeilNumber(AlgebraPtr algebra, std::vector<T> coeffs) : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != algebra_->dim())
      throw Error(ErrorCode::algebra_mismatch, "coefficient vector length " + std::to_string(coeffs_.size()) +
                                                   " does not match dim " + std::to_string(algebra_->dim()));
  }

  /// c * 1; `c` also serves as the template for zero coefficients.
  static WeilNumber constant(AlgebraPtr algebra, const T& c) {
    std::vector<T> v(algebra->dim(), traits::zero_like(c));
    v[0] = c;
    return WeilNumber(std::move(algebra), std::move(v));
  }

  /// a * 1 + basis element `index` (the usual seed a + x).
  static WeilNumber seeded(AlgebraPtr algebra, const T& a, std::size_t index) {
    auto w = constant(std::move(algebra), a);
    w.coeffs_.at(index) += traits::constant_like(a, Rational(1));
    return w;
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t dim() const { return coeffs_.size(); }

  const T& augmentation() const { return coeffs_[0]; }
  WeilNumber nilpotent_part() const {
    WeilNumber n = *this;
    n.coeffs_[0] = traits::zero_like(coeffs_[0]);
    return n;
  }
  WeilNumber zero() const { return constant(algebra_, traits::zero_like(coeffs_[0])); }
  WeilNumber one() const { return constant(algebra_, traits::constant_like(coeffs_[0], Rational(1))); }

  WeilNumber& operator+=(const WeilNumber& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  WeilNumber& operator-=(const WeilNumber& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  WeilNumber operator-() const {
    WeilNumber r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend WeilNumber operator+(WeilNumber a, const WeilNumber& b) { return a += b; }
  friend WeilNumber operator-(WeilNumber a, const WeilNumber& b) { return a -= b; }

  /// Convolution through the structure constants.
  friend WeilNumber operator*(const WeilNumber& a, const WeilNumber& b) {
    a.check_same(b);
    const WeilAlgebra& w = *a.algebra_;
    std::vector<T> out(w.dim(), traits::zero_like(a.coeffs_[0]));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (traits::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        const auto& terms = w.product(i, j);
        if (terms.empty() || traits::is_zero(b.coeffs_[j])) continue;
        T ab = a.coeffs_[i] * b.coeffs_[j];
        for (const auto& t : terms) {
          if (t.coefficient == 1) out[t.index] += ab;
          else out[t.index] += traits::scale(ab, t.coefficient);
        }
      }
    }
    return WeilNumber(a.algebra_, std::move(out));
  }
  WeilNumber& operator*=(const WeilNumber& o) { return *this = *this * o; }

  /// Multiplication by an element of the coefficient ring.
  WeilNumber scalar_mul(const T& s) const {
    WeilNumber r = *this;
    for (auto& c : r.coeffs_) c = c * s;
    return r;
  }
  WeilNumber scaled(const Rational& q) const {
    WeilNumber r = *this;
    for (auto& c : r.coeffs_) c = traits::scale(c, q);
    return r;
  }
  WeilNumber plus_scalar(const T& s) const {
    WeilNumber r = *this;
    r.coeffs_[0] += s;
    return r;
  }

  friend bool operator==(const WeilNumber& a, const WeilNumber& b) {
    return same_algebra(a.algebra_, b.algebra_) && a.coeffs_ == b.coeffs_;
  }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!traits::is_zero(c)) return false;
    return true;
  }

  /// `c0 + c1*x + c2*x^2`; zero terms are skipped.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (traits::is_zero(coeffs_[i])) continue;
      if (!out.empty()) out += " + ";
      std::string c = traits::format(coeffs_[i]);
      if constexpr (traits::depth > 0) c = "(" + c + ")";
      out += i == 0 ? c : c + "*" + algebra_->basis_name(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check_same(const WeilNumber& o) const {
    if (!same_algebra(algebra_, o.algebra_))
      throw Error(ErrorCode::algebra_mismatch,
                  "Weil numbers over " + algebra_->name() + " and " + o.algebra_->name() + " cannot be combined");
  }

  AlgebraPtr algebra_;
  std::vector<T> coeffs_;
};

template <class U>
struct ScalarTraits<WeilNumber<U>> {
  using W = WeilNumber<U>;
  static constexpr bool is_float = ScalarTraits<U>::is_float;
  static constexpr int depth = ScalarTraits<U>::depth + 1;
  static W zero_like(const W& x) { return x.zero(); }
  static W constant_like(const W& x, const Rational& q) {
    return W::constant(x.algebra(), ScalarTraits<U>::constant_like(x.augmentation(), q));
  }
  static W scale(const W& x, const Rational& q) { return x.scaled(q); }
  static bool is_zero(const W& x) { return x.is_zero(); }
  static W inverse(const W& x);
  static std::string format(const W& x) { return x.to_string(); }
};

template <class T>
void require_nilpotent(const WeilNumber<T>& x) {
  if (x.algebra()->nilpotency_index() == 0)
    throw Error(ErrorCode::bad_parameter, "algebra " + x.algebra()->name() + " is not a Weil algebra");
}

/// Multiplicative inverse of a unit: a^{-1} sum_{i<r} (-n/a)^i with
/// a the augmentation and n the nilpotent part. Throws NotAUnit.
template <class T>
WeilNumber<T> invert(const WeilNumber<T>& x) {
  using traits = ScalarTraits<T>;
  if (traits::is_zero(x.augmentation()))
    throw Error(ErrorCode::not_a_unit, "cannot invert " + x.to_string() + ": augmentation is zero");
  require_nilpotent(x);
  const T a_inv = traits::inverse(x.augmentation());
  const WeilNumber<T> u = (-x.nilpotent_part()).scalar_mul(a_inv);
  const WeilNumber<T> one = x.one();
  WeilNumber<T> sum = one;
  const unsigned r = x.algebra()->nilpotency_index();
  for (unsigned i = 1; i < r; ++i) sum = one + u * sum;
  return sum.scalar_mul(a_inv);
}

template <class U>
WeilNumber<U> ScalarTraits<WeilNumber<U>>::inverse(const WeilNumber<U>& x) {
  return invert(x);
}

/// Taylor coefficients of a primitive at a Weil-number point a0 + n:
/// c_i(a0 + n) = sum_j C(i+j, j) c_{i+j}(a0) n^j.
template <class U>
std::vector<WeilNumber<U>> taylor_coefficients(const Primitive& p, const WeilNumber<U>& a, unsigned count) {
  require_nilpotent(a);
  const unsigned r = a.algebra()->nilpotency_index();
  const auto base = taylor_coefficients(p, a.augmentation(), count + r - 1);
  const WeilNumber<U> n = a.nilpotent_part();
  std::vector<WeilNumber<U>> out;
  out.reserve(count);
  for (unsigned i = 0; i < count; ++i) {
    // Horner in n over j = r-1 .. 0.
    Rational binom = 1;  // C(i + j, j) for j = 0
    std::vector<Rational> binoms(r);
    for (unsigned j = 0; j < r; ++j) {
      if (j > 0) binom = binom * Rational(i + j) / Rational(j);
      binoms[j] = binom;
    }
    WeilNumber<U> acc = WeilNumber<U>::constant(a.algebra(), ScalarTraits<U>::scale(base[i + r - 1], binoms[r - 1]));
    for (unsigned j = r - 1; j-- > 0;) acc = (acc * n).plus_scalar(ScalarTraits<U>::scale(base[i + j], binoms[j]));
    out.push_back(std::move(acc));
  }
  return out;
}

/// f(a + n) = sum_{i<r} f^(i)(a)/i! n^i, evaluated by Horner; exact
/// truncation because n^r = 0.
template <class T>
WeilNumber<T> apply_primitive(const Primitive& p, const WeilNumber<T>& x) {
  if constexpr (!ScalarTraits<T>::is_float) {
    if (!p.exact_capable())
      throw Error(ErrorCode::unsupported_in_rational_mode, p.name() + " is transcendental and needs float scalars");
  }
  require_nilpotent(x);
  const unsigned r = x.algebra()->nilpotency_index();
  const auto c = taylor_coefficients(p, x.augmentation(), r);
  const WeilNumber<T> n = x.nilpotent_part();
  WeilNumber<T> acc = WeilNumber<T>::constant(x.algebra(), c[r - 1]);
  for (unsigned i = r - 1; i-- > 0;) acc = (acc * n).plus_scalar(c[i]);
  return acc;
}

/// R (x) phi: the coefficient vector pushed through the morphism matrix.
template <class T>
WeilNumber<T> push_along(const WeilMorphism& phi, const WeilNumber<T>& x) {
  if (!same_algebra(phi.source(), x.algebra()))
    throw Error(ErrorCode::algebra_mismatch,
                "value over " + x.algebra()->name() + " pushed along a morphism from " + phi.source()->name());
  using traits = ScalarTraits<T>;
  const auto& m = phi.matrix();
  std::vector<T> out(m.rows(), traits::zero_like(x.augmentation()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& q = m(r, c);
      if (q == 0) continue;
      if (q == 1) out[r] += x[c];
      else out[r] += traits::scale(x[c], q);
    }
  return WeilNumber<T>(phi.target(), std::move(out));
}

/// Exact-to-float conversion of a coefficient vector.
inline WeilNumber<double> to_float(const WeilNumber<Rational>& x) {
  std::vector<double> v;
  for (const auto& c : x.coeffs()) v.push_back(to_double(c));
  return WeilNumber<double>(x.algebra(), std::move(v));
}

}  // namespace weilad
