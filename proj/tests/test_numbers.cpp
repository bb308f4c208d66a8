#include "weilad/weil_functor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace weilad;

namespace {

const std::vector<std::string> kFamily{"base", "dual:1", "dual:2", "jet:2", "jet:3", "mixed:1,1", "dual:1*dual:1",
                                       "jet:2*dual:1"};

WeilNumber<Rational> rational_vector(const AlgebraPtr& w, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < w->dim(); ++i) c.push_back(Rational(num(rng)) / den(rng));
  return {w, c};
}

WeilNumber<Rational> wn(const AlgebraPtr& w, std::initializer_list<Rational> c) { return {w, std::vector<Rational>(c)}; }

// Truncated polynomial product in k[x]/(x^n), the oracle for jet arithmetic.
std::vector<Rational> truncated_product(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TEST(WeilNumber, DualProduct) {
  auto d = dual_algebra(1);
  const Rational a(2), b(-3), c(5), e(7);
  auto p = wn(d, {a, b}) * wn(d, {c, e});
  EXPECT_EQ(p.coeffs(), (std::vector<Rational>{a * c, a * e + b * c}));
}

TEST(WeilNumber, JetProductMatchesTruncatedPolynomial) {
  auto j2 = jet_algebra(2);
  EXPECT_EQ((wn(j2, {1, 1, 0}) * wn(j2, {1, -1, 1})).coeffs(), (std::vector<Rational>{1, 0, 0}));
  std::mt19937_64 rng(3);
  for (unsigned r : {2u, 3u, 5u}) {
    auto j = jet_algebra(r);
    for (int k = 0; k < 20; ++k) {
      auto x = rational_vector(j, rng), y = rational_vector(j, rng);
      EXPECT_EQ((x * y).coeffs(), truncated_product(x.coeffs(), y.coeffs()));
    }
  }
}

TEST(WeilNumber, RingLawsOnRandomVectors) {
  std::mt19937_64 rng(11);
  for (const auto& spec : kFamily) {
    auto w = load_algebra(spec);
    for (int k = 0; k < 20; ++k) {
      auto x = rational_vector(w, rng), y = rational_vector(w, rng), z = rational_vector(w, rng);
      EXPECT_EQ((x * y) * z, x * (y * z)) << spec;
      EXPECT_EQ(x * (y + z), x * y + x * z) << spec;
      EXPECT_EQ(x * y, y * x) << spec;
      EXPECT_EQ(x * x.one(), x) << spec;
    }
  }
}

TEST(WeilNumber, Inverse) {
  auto j2 = jet_algebra(2);
  EXPECT_EQ(invert(wn(j2, {1, 1, 0})).coeffs(), (std::vector<Rational>{1, -1, 1}));
  EXPECT_EQ(invert(wn(j2, {4, 0, 0})).coeffs(), (std::vector<Rational>{Rational(1, 4), 0, 0}));
  try {
    invert(wn(dual_algebra(1), {0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_a_unit);
  }
  std::mt19937_64 rng(5);
  for (const auto& spec : kFamily) {
    auto w = load_algebra(spec);
    for (int k = 0; k < 20; ++k) {
      auto x = rational_vector(w, rng);
      if (x.augmentation() == 0) continue;
      EXPECT_EQ(invert(x) * x, x.one()) << spec;
    }
  }
}

TEST(WeilNumber, AlgebraMismatch) {
  try {
    (void)(wn(dual_algebra(1), {1, 1}) + wn(jet_algebra(2), {1, 1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::algebra_mismatch);
  }
  EXPECT_THROW(wn(dual_algebra(1), {1, 2, 3}), Error);
}

TEST(Primitive, ExpOnThirdJet) {
  auto j3 = jet_algebra(3);
  auto y = apply_primitive({PrimitiveKind::exp}, WeilNumber<double>::seeded(j3, 0.0, 1));
  const double want[] = {1, 1, 0.5, 1.0 / 6};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(y[i], want[i], 1e-15);
}

TEST(Primitive, SinOnDual) {
  auto y = apply_primitive({PrimitiveKind::sin}, WeilNumber<double>::seeded(dual_algebra(1), 0.0, 1));
  EXPECT_EQ(y[0], 0.0);
  EXPECT_EQ(y[1], 1.0);
}

TEST(Primitive, ConstantPointGivesScalarValue) {
  auto j3 = jet_algebra(3);
  for (auto kind : {PrimitiveKind::exp, PrimitiveKind::log, PrimitiveKind::sin, PrimitiveKind::cos, PrimitiveKind::tan,
                    PrimitiveKind::sqrt, PrimitiveKind::atan, PrimitiveKind::tanh, PrimitiveKind::recip}) {
    Primitive p{kind};
    auto y = apply_primitive(p, WeilNumber<double>::constant(j3, 0.7));
    EXPECT_DOUBLE_EQ(y[0], evaluate_primitive(p, 0.7)) << p.name();
    for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(y[i], 0.0) << p.name();
  }
}

TEST(Primitive, TaylorCoefficientsMatchClosedForms) {
  const double a = 0.4;
  auto c = [&](PrimitiveKind k, unsigned n) { return taylor_coefficients(Primitive{k}, a, n); };
  auto tanc = c(PrimitiveKind::tan, 4);
  const double t = std::tan(a), s2 = 1 + t * t;
  EXPECT_NEAR(tanc[1], s2, 1e-14);
  EXPECT_NEAR(tanc[2], t * s2, 1e-14);
  EXPECT_NEAR(tanc[3], s2 * (1 + 3 * t * t) / 3, 1e-14);
  auto atanc = c(PrimitiveKind::atan, 3);
  EXPECT_NEAR(atanc[1], 1 / (1 + a * a), 1e-14);
  EXPECT_NEAR(atanc[2], -a / ((1 + a * a) * (1 + a * a)), 1e-14);
  auto th = c(PrimitiveKind::tanh, 3);
  const double u = std::tanh(a);
  EXPECT_NEAR(th[1], 1 - u * u, 1e-14);
  EXPECT_NEAR(th[2], -u * (1 - u * u), 1e-14);
  auto sq = c(PrimitiveKind::sqrt, 3);
  EXPECT_NEAR(sq[2], -0.125 * std::pow(a, -1.5), 1e-14);
  auto lg = c(PrimitiveKind::log, 4);
  EXPECT_NEAR(lg[3], 1 / (3 * a * a * a), 1e-12);
}

TEST(Primitive, DomainAndModeErrors) {
  try {
    taylor_coefficients(Primitive{PrimitiveKind::log}, 0.0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::domain_error);
  }
  try {
    taylor_coefficients(Primitive{PrimitiveKind::exp}, Rational(0), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported_in_rational_mode);
  }
  EXPECT_EQ(taylor_coefficients(Primitive::pow_int(3), Rational(2), 4), (std::vector<Rational>{8, 12, 6, 1}));
  EXPECT_EQ(taylor_coefficients(Primitive{PrimitiveKind::recip}, Rational(2), 3),
            (std::vector<Rational>{Rational(1, 2), Rational(-1, 4), Rational(1, 8)}));
}

TEST(PushAlong, Basics) {
  auto d = dual_algebra(1);
  auto aug = canonical_morphisms(d).augmentation;
  EXPECT_EQ(push_along(aug, wn(d, {3, 5})).coeffs(), (std::vector<Rational>{3}));
  auto t = tensor(d, d).algebra;
  auto sum = morphism_from_generator_images(jet_algebra(2), t, {{0, 1, 1, 0}});
  EXPECT_EQ(push_along(sum, wn(jet_algebra(2), {1, 1, 1})).coeffs(), (std::vector<Rational>{1, 1, 1, 2}));
  std::mt19937_64 rng(9);
  auto id = identity_morphism(jet_algebra(3));
  for (int k = 0; k < 20; ++k) {
    auto x = rational_vector(jet_algebra(3), rng);
    EXPECT_EQ(push_along(id, x), x);
  }
}

TEST(PushAlong, FunctorialAndCommutesWithPrimitives) {
  auto j3 = jet_algebra(3), j2 = jet_algebra(2), d = dual_algebra(1);
  auto phi = morphism_from_generator_images(j3, j2, {{0, 2, 1}});
  auto psi = morphism_from_generator_images(j2, d, {{0, -3}});
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    auto x = rational_vector(j3, rng);
    EXPECT_EQ(push_along(compose_morphisms(phi, psi), x), push_along(psi, push_along(phi, x)));
    x = x.plus_scalar(Rational(10));
    for (const auto& p : {Primitive::pow_int(3), Primitive::pow_int(-2), Primitive{PrimitiveKind::recip}})
      EXPECT_EQ(push_along(phi, apply_primitive(p, x)), apply_primitive(p, push_along(phi, x))) << p.name();
    auto xf = to_float(x);
    for (auto kind : {PrimitiveKind::exp, PrimitiveKind::sin, PrimitiveKind::log, PrimitiveKind::atan}) {
      auto lhs = push_along(phi, apply_primitive(Primitive{kind}, xf));
      auto rhs = apply_primitive(Primitive{kind}, push_along(phi, xf));
      for (std::size_t i = 0; i < lhs.dim(); ++i)
        EXPECT_NEAR(lhs[i], rhs[i], 1e-12 * std::max(1.0, std::abs(rhs[i])));
    }
  }
}

TEST(Expr, ParseShapes) {
  auto e = parse_expr("x^2 + 1", {"x"});
  const auto& root = e.node();
  ASSERT_EQ(root.kind, NodeKind::add);
  const auto& lhs = e.graph->node(root.lhs);
  EXPECT_EQ(lhs.kind, NodeKind::pow_int);
  EXPECT_EQ(lhs.exponent, 2);
  EXPECT_EQ(e.graph->node(lhs.lhs).kind, NodeKind::variable);
  EXPECT_EQ(e.graph->node(root.rhs).value, Rational(1));
}

TEST(Expr, SharedSubexpressions) {
  auto e = parse_expr("sin(x)*sin(x)", {"x"});
  ASSERT_EQ(e.node().kind, NodeKind::mul);
  EXPECT_EQ(e.node().lhs, e.node().rhs);
  EXPECT_EQ(e.graph->size(), 3u);
}

TEST(Expr, Errors) {
  try {
    parse_expr("log(x", {"x"});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
  try {
    parse_expr("foo(x)", {"x"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unknown_function);
  }
  try {
    parse_expr("x + q", {"x"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unknown_variable);
  }
  EXPECT_EQ(infer_variables("sin(b) * a + b"), (std::vector<std::string>{"b", "a"}));
}

TEST(Expr, ChildrenPrecedeParents) {
  auto f = parse_function_text("vars x y\nexp(x*y) + x/y\nsin(x)^3 - y\n");
  for (std::size_t id = 0; id < f.graph().size(); ++id) {
    const auto& n = f.graph().node(id);
    if (n.kind == NodeKind::variable) EXPECT_LT(n.variable, f.arity());
    if (n.kind == NodeKind::variable || n.kind == NodeKind::constant) continue;
    EXPECT_LT(n.lhs, id);
    if (n.kind == NodeKind::add || n.kind == NodeKind::sub || n.kind == NodeKind::mul || n.kind == NodeKind::div)
      EXPECT_LT(n.rhs, id);
  }
}

TEST(Lift, SquareOnDual) {
  auto f = function_from_expression("x^2");
  auto d = dual_algebra(1);
  auto y = lift_eval(f, d, std::vector<WeilNumber<Rational>>{wn(d, {3, 1})});
  EXPECT_EQ(y[0].coeffs(), (std::vector<Rational>{9, 6}));
}

TEST(Lift, BaseAlgebraIsScalarEvaluation) {
  auto k = base_algebra();
  auto f = parse_function_text("vars x y\nexp(x) * sin(y) + x / (1 + y^2)\n");
  const double x = 0.3, y = -1.2;
  auto lifted = lift_eval(f, k, std::vector<WeilNumber<double>>{WeilNumber<double>::constant(k, x), WeilNumber<double>::constant(k, y)});
  EXPECT_EQ(lifted[0][0], evaluate<double>(f, {x, y})[0]);
}

TEST(Jet, Examples) {
  auto c = jet(function_from_expression("5", {"x"}), Rational(2), 3);
  for (unsigned i = 0; i <= 3; ++i) EXPECT_EQ(c.at(Monomial::power(0, i))[0], i == 0 ? Rational(5) : Rational(0));
  auto sq = jet(function_from_expression("x^2"), Rational(3), 2, Normalization::raw_coefficient);
  EXPECT_EQ(sq.at(Monomial())[0], Rational(9));
  EXPECT_EQ(sq.at(Monomial::power(0, 1))[0], Rational(6));
  EXPECT_EQ(sq.at(Monomial::power(0, 2))[0], Rational(1));
  auto s = jet(function_from_expression("sin(x)"), 0.0, 5, Normalization::raw_coefficient);
  const double want[] = {0, 1, 0, -1.0 / 6, 0, 1.0 / 120};
  for (unsigned i = 0; i <= 5; ++i) EXPECT_NEAR(s.at(Monomial::power(0, i))[0], want[i], 1e-12);
  auto e = jet(function_from_expression("exp(x)"), 0.0, 3);
  for (unsigned i = 0; i <= 3; ++i) EXPECT_EQ(e.at(Monomial::power(0, i))[0], 1.0);
}

TEST(Partials, Examples) {
  auto f = function_from_expression("x*y");
  auto t = partials(f, std::vector<Rational>{2, 5}, {1, 1});
  EXPECT_EQ(t.at(Monomial({{0, 1}, {1, 1}}))[0], Rational(1));
  EXPECT_EQ(t.at(Monomial::power(0, 1))[0], Rational(5));
  EXPECT_EQ(t.at(Monomial::power(1, 1))[0], Rational(2));
  auto lin = partials(function_from_expression("3*x - 2*y + 1"), std::vector<Rational>{1, 1}, {2, 2});
  for (const auto& [m, v] : lin.coefficients)
    if (m.degree() >= 2) EXPECT_EQ(v[0], Rational(0));
  auto g = function_from_expression("exp(x*y)");
  auto gt = partials(g, std::vector<double>{0, 0}, {1, 1});
  EXPECT_NEAR(gt.at(Monomial({{0, 1}, {1, 1}}))[0], 1.0, 1e-12);
  EXPECT_NEAR(fd_oracle(g, {0, 0}, {1, 1}), 1.0, 1e-6);
}

TEST(FdOracle, Examples) {
  EXPECT_NEAR(fd_oracle(function_from_expression("x^3"), {1.0}, {2}), 6.0, 1e-6);
  EXPECT_NEAR(fd_oracle(function_from_expression("7", {"x"}), {0.5}, {2}), 0.0, 1e-6);
  EXPECT_NEAR(fd_oracle(function_from_expression("sin(x)*cos(y)"), {0.3, 0.7}, {1, 1}),
              -std::cos(0.3) * std::sin(0.7), 1e-5);
}

TEST(Nest, RoundTripAndUnit) {
  auto w1 = jet_algebra(2), w2 = dual_algebra(2);
  auto t = tensor_algebra(w1, w2);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    auto v = rational_vector(t, rng);
    EXPECT_EQ(unnest(t, nest(w1, w2, v)), v);
  }
  auto one = WeilNumber<Rational>::constant(t, Rational(1));
  auto n = nest(w1, w2, one);
  EXPECT_EQ(n[0], WeilNumber<Rational>::constant(w1, Rational(1)));
  for (std::size_t j = 1; j < n.dim(); ++j) EXPECT_TRUE(n[j].is_zero());
}

TEST(Nest, NestedEvaluationMatchesTensor) {
  auto d = dual_algebra(1);
  auto t = tensor_algebra(d, d);
  auto f = function_from_expression("x^2");
  // Lift over W1, then lift the result over W2: the input 3 + x_1 + x_2.
  using Inner = WeilNumber<Rational>;
  Inner a = Inner::seeded(d, Rational(3), 1);
  Inner da = Inner::constant(d, Rational(1));
  WeilNumber<Inner> nested(d, {a, da});
  auto lhs = evaluate<WeilNumber<Inner>>(f, {nested});
  auto rhs = lift_eval(f, t, std::vector<WeilNumber<Rational>>{wn(t, {3, 1, 1, 0})});
  EXPECT_EQ(unnest(t, lhs[0]), rhs[0]);
  EXPECT_EQ(rhs[0].coeffs(), (std::vector<Rational>{9, 6, 6, 2}));
}

TEST(Element, Parse) {
  auto t = tensor_algebra(dual_algebra(1), dual_algebra(1));
  EXPECT_EQ(parse_element(t, "1 + 2*x_1 - x_1*x_2/3").coeffs(),
            (std::vector<Rational>{1, 2, 0, Rational(-1, 3)}));
  EXPECT_EQ(parse_element(t, "[1, 2, 0, -1/3]").coeffs(), (std::vector<Rational>{1, 2, 0, Rational(-1, 3)}));
  EXPECT_EQ(parse_element(jet_algebra(2), "(1 + x)^3").coeffs(), (std::vector<Rational>{1, 3, 3}));
  EXPECT_THROW(parse_element(t, "[1, 2]"), Error);
  EXPECT_THROW(parse_element(t, "y + 1"), Error);
}

TEST(Rationals, ParseAndFormat) {
  EXPECT_EQ(parse_rational("-1.25e-3"), Rational(-1, 800));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  EXPECT_EQ(format_rational(Rational(-4, 2)), "-2");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), ParseError);
}
