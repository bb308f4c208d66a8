#include "weilad/morphism.hpp"
#include "weilad/weil_functor.hpp"

#include <gtest/gtest.h>


using namespace weilad;

namespace {

std::vector<Rational> vec(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

// Brute-force oracle: the linear map given by substitution on each basis
// monomial, tested for multiplicativity on every basis pair.
bool substitution_is_homomorphism(const AlgebraPtr& s, const AlgebraPtr& t, const std::vector<std::vector<Rational>>& img) {
  RationalMatrix m(t->dim(), s->dim());
  for (std::size_t b = 0; b < s->dim(); ++b) {
    std::vector<Rational> v(t->dim());
    v[0] = 1;
    for (auto [g, e] : s->basis()[b].exponents())
      for (unsigned k = 0; k < e; ++k) v = multiply(*t, v, img[g]);
    for (std::size_t r = 0; r < t->dim(); ++r) m(r, b) = v[r];
  }
  for (std::size_t i = 0; i < s->dim(); ++i)
    for (std::size_t j = 0; j < s->dim(); ++j) {
      std::vector<Rational> ei(s->dim()), ej(s->dim());
      ei[i] = 1;
      ej[j] = 1;
      auto lhs = multiply(*t, m.column(i), m.column(j));
      auto prod = multiply(*s, ei, ej);
      std::vector<Rational> rhs(t->dim());
      for (std::size_t c = 0; c < s->dim(); ++c)
        for (std::size_t r = 0; r < t->dim(); ++r) rhs[r] += m(r, c) * prod[c];
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace

TEST(Morphism, ScalingDualIsAlwaysValid) {
  auto d = dual_algebra(1);
  for (int c : {-3, 0, 1, 7}) {
    auto phi = morphism_from_generator_images(d, d, {vec({0, c})});
    EXPECT_EQ(phi.matrix()(1, 1), Rational(c));
  }
}

TEST(Morphism, SumIntoTensorFromSecondJet) {
  auto t = tensor(dual_algebra(1), dual_algebra(1)).algebra;
  auto j2 = jet_algebra(2);
  auto phi = morphism_from_generator_images(j2, t, {vec({0, 1, 1, 0})});
  // x^2 maps to (x_1 + x_2)^2 = 2 x_1 x_2.
  EXPECT_EQ(phi.matrix().column(2), vec({0, 0, 0, 2}));
}

TEST(Morphism, SumFromDualIsNotWellDefined) {
  auto t = tensor(dual_algebra(1), dual_algebra(1)).algebra;
  try {
    morphism_from_generator_images(dual_algebra(1), t, {vec({0, 1, 1, 0})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_well_defined);
    EXPECT_NE(std::string(e.what()).find("x"), std::string::npos);
  }
}

TEST(Morphism, ImageWithConstantTermViolatesAugmentation) {
  try {
    morphism_from_generator_images(dual_algebra(1), dual_algebra(1), {vec({1, 1})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::augmentation_violation);
  }
}

TEST(Morphism, ValidationAgreesWithBruteForce) {
  // Every image family with coefficients in {-1, 0, 1} between small algebras.
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"dual:1", "jet:2"}, {"jet:2", "dual:1*dual:1"}, {"dual:1", "dual:1*dual:1"},
      {"jet:2", "mixed:1,1"}, {"dual:2", "jet:2"}};
  for (const auto& [sa, ta] : pairs) {
    auto s = load_algebra(sa), t = load_algebra(ta);
    const std::size_t gens = s->generator_names().size();
    const std::size_t slots = gens * (t->dim() - 1);
    std::size_t total = 1;
    for (std::size_t k = 0; k < slots; ++k) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<std::vector<Rational>> img(gens, std::vector<Rational>(t->dim()));
      std::size_t c = code;
      for (std::size_t g = 0; g < gens; ++g)
        for (std::size_t r = 1; r < t->dim(); ++r, c /= 3) img[g][r] = Rational(int(c % 3) - 1);
      bool accepted = true;
      try {
        morphism_from_generator_images(s, t, img);
      } catch (const Error& e) {
        accepted = false;
        EXPECT_EQ(e.code(), ErrorCode::not_well_defined);
      }
      EXPECT_EQ(accepted, substitution_is_homomorphism(s, t, img)) << sa << " -> " << ta << " code " << code;
    }
  }
}

TEST(Morphism, Composition) {
  auto d = dual_algebra(1);
  auto two = morphism_from_generator_images(d, d, {vec({0, 2})});
  auto three = morphism_from_generator_images(d, d, {vec({0, 3})});
  auto six = compose_morphisms(two, three);
  EXPECT_EQ(six.matrix(), morphism_from_generator_images(d, d, {vec({0, 6})}).matrix());
  EXPECT_EQ(compose_morphisms(identity_morphism(d), two).matrix(), two.matrix());
  EXPECT_EQ(compose_morphisms(two, identity_morphism(d)).matrix(), two.matrix());
  auto can = canonical_morphisms(jet_algebra(3));
  EXPECT_EQ(compose_morphisms(can.unit, can.augmentation).matrix(), RationalMatrix::identity(1));
  EXPECT_THROW(compose_morphisms(can.augmentation, two), Error);
}

TEST(Morphism, CompositionIsAssociative) {
  auto j3 = jet_algebra(3), j2 = jet_algebra(2), d = dual_algebra(1);
  auto a = morphism_from_generator_images(j3, j3, {vec({0, 2, 1, 0})});
  auto b = morphism_from_generator_images(j3, j2, {vec({0, 1, -1})});
  auto c = morphism_from_generator_images(j2, d, {vec({0, 5})});
  EXPECT_EQ(compose_morphisms(compose_morphisms(a, b), c).matrix(), compose_morphisms(a, compose_morphisms(b, c)).matrix());
}

TEST(Morphism, Canonical) {
  auto can = canonical_morphisms(jet_algebra(3));
  EXPECT_EQ(can.augmentation.apply(vec({1, 1, 1, 0})), vec({1}));
  EXPECT_EQ(can.augmentation.apply(can.unit.apply(vec({7}))), vec({7}));
  EXPECT_EQ(canonical_morphisms(dual_algebra(1)).unit.apply(vec({4}))[1], Rational(0));
}

TEST(Morphism, TensorOfMorphisms) {
  auto d = dual_algebra(1);
  auto can = canonical_morphisms(d);
  auto killed = tensor_of_morphisms(identity_morphism(d), can.augmentation);
  // basis of D (x) D: 1, x_1, x_2, x_1 x_2; y = x_2 must die.
  EXPECT_EQ(killed.apply(vec({0, 0, 1, 0})), vec({0, 0}));
  EXPECT_EQ(killed.apply(vec({3, 5, 0, 0})), vec({3, 5}));
  auto id2 = tensor_of_morphisms(identity_morphism(d), identity_morphism(d));
  EXPECT_EQ(id2.matrix(), RationalMatrix::identity(4));
  auto two = morphism_from_generator_images(d, d, {vec({0, 2})});
  auto three = morphism_from_generator_images(d, d, {vec({0, 3})});
  EXPECT_EQ(tensor_of_morphisms(two, three).apply(vec({0, 0, 0, 1})), vec({0, 0, 0, 6}));
}

TEST(Morphism, TensorUnitIsIsomorphism) {
  for (const char* spec : {"dual:1", "jet:3", "mixed:1,1"}) {
    auto w = load_algebra(spec);
    auto iso = tensor_unit_iso(w);
    EXPECT_TRUE(is_isomorphism(iso)) << spec;
    EXPECT_EQ(iso.target()->dim(), w->dim());
  }
}

TEST(Morphism, UncheckedSkipsValidation) {
  auto d = dual_algebra(1);
  RationalMatrix m = RationalMatrix::identity(2);
  m(0, 1) = 1;
  EXPECT_THROW(WeilMorphism(d, d, m), Error);
  EXPECT_NO_THROW(WeilMorphism::unchecked(d, d, m));
  EXPECT_FALSE(validate_morphism(*d, *d, m).passed());
}
