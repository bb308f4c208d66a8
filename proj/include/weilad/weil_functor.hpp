#pragma once

#include "weilad/expr.hpp"
#include "weilad/weil_number.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace weilad {

namespace detail {

inline double lift_constant(const double&, const Rational& q) { return to_double(q); }
inline Rational lift_constant(const Rational&, const Rational& q) { return q; }
template <class U>
WeilNumber<U> lift_constant(const WeilNumber<U>& ref, const Rational& q) {
  return ScalarTraits<WeilNumber<U>>::constant_like(ref, q);
}

inline double apply_scalar(const Primitive& p, const double& x) { return evaluate_primitive(p, x); }
inline Rational apply_scalar(const Primitive& p, const Rational& x) { return taylor_coefficients(p, x, 1).front(); }
template <class U>
WeilNumber<U> apply_scalar(const Primitive& p, const WeilNumber<U>& x) {
  return apply_primitive(p, x);
}

template <class T>
T reciprocal(const T& x) {
  return ScalarTraits<T>::inverse(x);
}

}  // namespace detail

/// Evaluates every output of `f` at `inputs` with the arithmetic of T.
/// With T = WeilNumber<S> over W this is T^W(f) applied to a W-point.
/// `reference` supplies the shape of constants (needed when arity is 0).
template <class T>
std::vector<T> evaluate(const SmoothMap& f, std::span<const T> inputs, const T& reference) {
  if (inputs.size() != f.arity())
    throw Error(ErrorCode::bad_parameter,
                "expected " + std::to_string(f.arity()) + " inputs, got " + std::to_string(inputs.size()));
  const ExprGraph& g = f.graph();
  std::vector<std::optional<T>> value(g.size());
  for (auto id : f.schedule()) {
    const ExprNode& n = g.node(id);
    try {
      switch (n.kind) {
        case NodeKind::variable: value[id] = inputs[n.variable]; break;
        case NodeKind::constant: value[id] = detail::lift_constant(reference, n.value); break;
        case NodeKind::add: value[id] = *value[n.lhs] + *value[n.rhs]; break;
        case NodeKind::sub: value[id] = *value[n.lhs] - *value[n.rhs]; break;
        case NodeKind::mul: value[id] = *value[n.lhs] * *value[n.rhs]; break;
        case NodeKind::div: value[id] = *value[n.lhs] * detail::reciprocal(*value[n.rhs]); break;
        case NodeKind::neg: value[id] = -*value[n.lhs]; break;
        case NodeKind::pow_int:
          value[id] = detail::apply_scalar(Primitive::pow_int(n.exponent), *value[n.lhs]);
          break;
        case NodeKind::unary: value[id] = detail::apply_scalar(n.primitive, *value[n.lhs]); break;
      }
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " [in node #" + std::to_string(id) + ": " +
                                g.render(id, f.variables()) + "]");
    }
  }
  std::vector<T> out;
  out.reserve(f.output_count());
  for (auto o : f.outputs()) out.push_back(*value[o]);
  return out;
}

template <class T>
std::vector<T> evaluate(const SmoothMap& f, const std::vector<T>& inputs) {
  if (inputs.empty()) throw Error(ErrorCode::bad_parameter, "nullary maps need an explicit reference value");
  return evaluate<T>(f, std::span<const T>(inputs), inputs.front());
}

/// T^W(f) at a W-point: every input must live over W.
template <class S>
std::vector<WeilNumber<S>> lift_eval(const SmoothMap& f, const AlgebraPtr& w, const std::vector<WeilNumber<S>>& inputs) {
  for (const auto& x : inputs)
    if (!same_algebra(x.algebra(), w))
      throw Error(ErrorCode::algebra_mismatch, "input over " + x.algebra()->name() + " but lifting over " + w->name());
  return evaluate(f, inputs);
}

enum class Normalization { raw_coefficient, derivative };

/// Derivative data read off T^W(f) at a seeded point. Keys are basis
/// monomials of `algebra`; generator g stands for input variable g.
template <class S>
struct JetTable {
  AlgebraPtr algebra;
  std::vector<S> base_point;
  Normalization normalization = Normalization::derivative;
  std::map<Monomial, std::vector<S>> coefficients;

  const std::vector<S>& at(const Monomial& m) const { return coefficients.at(m); }
};

namespace detail {

inline Rational factorial_weight(const Monomial& m) {
  Rational w = 1;
  for (auto [g, e] : m.exponents())
    for (unsigned k = 2; k <= e; ++k) w *= k;
  return w;
}

template <class S>
JetTable<S> read_table(const AlgebraPtr& w, std::vector<S> point, const std::vector<WeilNumber<S>>& values,
                       Normalization norm) {
  JetTable<S> table{w, std::move(point), norm, {}};
  for (std::size_t i = 0; i < w->dim(); ++i) {
    const Monomial& m = w->basis()[i];
    const Rational weight = norm == Normalization::derivative ? factorial_weight(m) : Rational(1);
    std::vector<S> row;
    for (const auto& v : values) row.push_back(ScalarTraits<S>::scale(v[i], weight));
    table.coefficients.emplace(m, std::move(row));
  }
  return table;
}

}  // namespace detail

/// Seeds a + x over k[x]/(x^{r+1}); the x^i entry is f^(i)(a)/i! (raw) or
/// f^(i)(a) (derivative).
template <class S>
JetTable<S> jet(const SmoothMap& f, const S& a, unsigned order, Normalization norm = Normalization::derivative) {
  if (f.arity() != 1) throw Error(ErrorCode::bad_parameter, "jet needs a map of one variable");
  AlgebraPtr w = present_algebra({f.variables().front()}, {Monomial::power(0, order + 1)}, "jet:" + std::to_string(order));
  std::vector<WeilNumber<S>> in;
  if (order == 0) in.push_back(WeilNumber<S>::constant(w, a));
  else in.push_back(WeilNumber<S>::seeded(w, a, *w->index_of(Monomial::power(0, 1))));
  return detail::read_table(w, {a}, evaluate(f, in), norm);
}

/// Seeds a_i + x_i over k[x_1..x_n]/(x_i^{r_i+1}); in derivative mode the
/// entry at prod x_i^{e_i} is the mixed partial of order e at a.
template <class S>
JetTable<S> partials(const SmoothMap& f, const std::vector<S>& a, const std::vector<unsigned>& orders,
                     Normalization norm = Normalization::derivative) {
  if (a.size() != f.arity() || orders.size() != f.arity())
    throw Error(ErrorCode::bad_parameter, "point and orders must match the arity " + std::to_string(f.arity()));
  std::vector<Monomial> rels;
  for (std::size_t i = 0; i < orders.size(); ++i) rels.push_back(Monomial::power(i, orders[i] + 1));
  AlgebraPtr w = present_algebra(f.variables(), std::move(rels), "partials");
  std::vector<WeilNumber<S>> in;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (orders[i] == 0) in.push_back(WeilNumber<S>::constant(w, a[i]));
    else in.push_back(WeilNumber<S>::seeded(w, a[i], *w->index_of(Monomial::power(i, 1))));
  }
  return detail::read_table(w, a, evaluate(f, in), norm);
}

/// Reindexes a value over W1 (x) W2 into a W2-indexed vector of Weil
/// numbers over W1: nested[j][i] = value[(i, j)].
template <class S>
WeilNumber<WeilNumber<S>> nest(const AlgebraPtr& w1, const AlgebraPtr& w2, const WeilNumber<S>& value) {
  const std::size_t d1 = w1->dim(), d2 = w2->dim();
  const WeilAlgebra& t = *value.algebra();
  bool matches = t.dim() == d1 * d2;
  for (std::size_t j = 0; matches && j < d2; ++j)
    for (std::size_t i = 0; matches && i < d1; ++i)
      matches = t.basis()[pair_index(i, j, d1)] ==
                w1->basis()[i] * w2->basis()[j].shifted(w1->generator_names().size());
  if (!matches)
    throw Error(ErrorCode::algebra_mismatch, "value is not over " + w1->name() + "*" + w2->name());
  std::vector<WeilNumber<S>> outer;
  for (std::size_t j = 0; j < d2; ++j) {
    std::vector<S> inner;
    for (std::size_t i = 0; i < d1; ++i) inner.push_back(value[pair_index(i, j, d1)]);
    outer.emplace_back(w1, std::move(inner));
  }
  return WeilNumber<WeilNumber<S>>(w2, std::move(outer));
}

/// Inverse of nest, landing in `tensor` (which must be W1 (x) W2).
template <class S>
WeilNumber<S> unnest(const AlgebraPtr& tensor, const WeilNumber<WeilNumber<S>>& nested) {
  const std::size_t d2 = nested.dim();
  const std::size_t d1 = nested[0].dim();
  if (tensor->dim() != d1 * d2) throw Error(ErrorCode::algebra_mismatch, "tensor dimension mismatch in unnest");
  std::vector<S> flat(d1 * d2, ScalarTraits<S>::zero_like(nested[0][0]));
  for (std::size_t j = 0; j < d2; ++j) {
    if (nested[j].dim() != d1) throw Error(ErrorCode::algebra_mismatch, "ragged nested value");
    for (std::size_t i = 0; i < d1; ++i) flat[pair_index(i, j, d1)] = nested[j][i];
  }
  return WeilNumber<S>(tensor, std::move(flat));
}

/// Element of `w` written in its generators (`1 + 2*x - x*y/3`) or as a
/// coefficient list over the basis (`[1, 2, 0, -1/3]`). Throws ParseError,
/// UnknownVariable, BadParameter.
WeilNumber<Rational> parse_element(const AlgebraPtr& w, std::string_view text);

/// Independent derivative estimate: central differences of order e_i in
/// each variable with step h = 1e-3 * |e|, one Richardson step (h, h/2).
double fd_oracle(const SmoothMap& f, const std::vector<double>& a, const std::vector<unsigned>& e,
                 std::size_t output = 0);

}  // namespace weilad
