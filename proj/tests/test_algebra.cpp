#include "weilad/algebra.hpp"
#include "weilad/error.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace weilad;

namespace {

// Same basis monomials and same products after matching bases by monomial.
bool same_up_to_basis_order(const WeilAlgebra& a, const WeilAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  std::map<Monomial, std::size_t> in_b;
  for (std::size_t i = 0; i < b.dim(); ++i) in_b.emplace(b.basis()[i], i);
  std::vector<std::size_t> to_b(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto it = in_b.find(a.basis()[i]);
    if (it == in_b.end()) return false;
    to_b[i] = it->second;
  }
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      std::map<std::size_t, Rational> pa, pb;
      for (const auto& t : a.product(i, j)) pa[to_b[t.index]] += t.coefficient;
      for (const auto& t : b.product(to_b[i], to_b[j])) pb[t.index] += t.coefficient;
      std::erase_if(pa, [](const auto& kv) { return kv.second == 0; });
      std::erase_if(pb, [](const auto& kv) { return kv.second == 0; });
      if (pa != pb) return false;
    }
  return true;
}

// Standard monomials by brute force: exponent vectors in a box that no
// relation divides.
std::set<std::vector<unsigned>> standard_monomials(std::size_t n, const std::vector<std::vector<unsigned>>& rels,
                                                   unsigned box) {
  std::set<std::vector<unsigned>> out;
  std::vector<unsigned> e(n, 0);
  while (true) {
    bool divisible = false;
    for (const auto& r : rels) {
      bool d = true;
      for (std::size_t i = 0; i < n; ++i) d &= r[i] <= e[i];
      divisible |= d;
    }
    if (!divisible) out.insert(e);
    std::size_t i = 0;
    while (i < n && ++e[i] > box) e[i++] = 0;
    if (i == n) break;
  }
  return out;
}

std::set<std::vector<unsigned>> basis_exponents(const WeilAlgebra& w) {
  std::set<std::vector<unsigned>> out;
  for (const auto& m : w.basis()) {
    std::vector<unsigned> e(w.generator_names().size(), 0);
    for (auto [g, k] : m.exponents()) e[g] = k;
    out.insert(e);
  }
  return out;
}

std::vector<std::string> names(const WeilAlgebra& w) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < w.dim(); ++i) out.push_back(w.basis_name(i));
  return out;
}

// Least r with m^r = 0, by multiplying basis monomials directly.
unsigned nilpotency_by_enumeration(const WeilAlgebra& w) {
  unsigned max_degree = 0;
  for (const auto& m : w.basis()) max_degree = std::max(max_degree, m.degree());
  return max_degree + 1;
}

}  // namespace

TEST(Presentation, EmptyPresentationIsTheGroundField) {
  auto k = present_algebra({}, {});
  EXPECT_EQ(k->dim(), 1u);
  EXPECT_EQ(k->nilpotency_index(), 1u);
  EXPECT_TRUE(validate_algebra(*k).passed());
}

TEST(Presentation, DualNumbers) {
  auto d = present_algebra({"x"}, {Monomial::power(0, 2)});
  EXPECT_EQ(names(*d), (std::vector<std::string>{"1", "x"}));
  EXPECT_EQ(d->nilpotency_index(), 2u);
}

TEST(Presentation, FirstOrderInTwoVariables) {
  auto d2 = present_algebra({"x", "y"}, {Monomial::power(0, 2), Monomial({{0, 1}, {1, 1}}), Monomial::power(1, 2)});
  EXPECT_EQ(names(*d2), (std::vector<std::string>{"1", "x", "y"}));
  EXPECT_EQ(basis_exponents(*d2), standard_monomials(2, {{2, 0}, {1, 1}, {0, 2}}, 4));
}

TEST(Presentation, ThirdJet) {
  auto j3 = present_algebra({"x"}, {Monomial::power(0, 4)});
  EXPECT_EQ(names(*j3), (std::vector<std::string>{"1", "x", "x^2", "x^3"}));
  EXPECT_EQ(basis_exponents(*j3), standard_monomials(1, {{4}}, 6));
}

TEST(Presentation, MissingPurePowerIsInfinite) {
  try {
    present_algebra({"x", "y"}, {Monomial::power(0, 2)});
    FAIL() << "expected InfiniteDimension";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::infinite_dimension);
  }
}

TEST(Presentation, DuplicateGenerator) {
  try {
    present_algebra({"x", "x"}, {Monomial::power(0, 2), Monomial::power(1, 2)});
    FAIL() << "expected DuplicateGenerator";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::duplicate_generator);
  }
}

TEST(Presentation, MixedRelationsMatchEnumeration) {
  auto w = present_algebra({"x", "y"}, {Monomial::power(0, 3), Monomial({{0, 1}, {1, 2}}), Monomial::power(1, 4)});
  EXPECT_EQ(basis_exponents(*w), standard_monomials(2, {{3, 0}, {1, 2}, {0, 4}}, 6));
  EXPECT_TRUE(validate_algebra(*w).passed());
}

TEST(Standard, Dimensions) {
  EXPECT_EQ(base_algebra()->dim(), 1u);
  EXPECT_EQ(dual_algebra(2)->dim(), 3u);
  EXPECT_TRUE(dual_algebra(2)->same_structure(
      *present_algebra({"x", "y"}, {Monomial::power(0, 2), Monomial({{0, 1}, {1, 1}}), Monomial::power(1, 2)})));
  auto m = mixed_algebra({1, 1});
  EXPECT_EQ(m->dim(), 4u);
  EXPECT_EQ(basis_exponents(*m), standard_monomials(2, {{2, 0}, {0, 2}}, 3));
}

TEST(Standard, RejectsBadParameters) {
  for (const char* spec : {"dual:0", "jet:0", "mixed:", "jet:x", "nonsense"}) {
    try {
      load_algebra(spec);
      ADD_FAILURE() << spec << " should be rejected";
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::bad_parameter || e.code() == ErrorCode::io_error) << spec;
    }
  }
}

TEST(Standard, BasisOrderIsDegreeThenDescendingExponents) {
  auto m = mixed_algebra({2, 1});
  EXPECT_EQ(names(*m), (std::vector<std::string>{"1", "x", "y", "x^2", "x*y", "x^2*y"}));
}

TEST(Validation, FamilyPasses) {
  for (const char* spec : {"base", "dual:1", "dual:2", "jet:2", "jet:3", "mixed:1,1", "dual:1*dual:1", "jet:2*dual:1"}) {
    auto w = load_algebra(spec);
    EXPECT_TRUE(validate_algebra(*w).passed()) << spec;
  }
}

TEST(Validation, SwappedEntryBreaksAssociativity) {
  auto j3 = jet_algebra(3);
  // x * x^2 := 2 x^3 while x^2 * x stays x^3.
  auto bad = with_struct_entry(*j3, 1, 2, {{3, Rational(2)}});
  const auto report = validate_algebra(*bad);
  EXPECT_FALSE(report.passed());
  const auto* assoc = report.find("associativity");
  ASSERT_NE(assoc, nullptr);
  EXPECT_FALSE(assoc->passed);
  EXPECT_EQ(assoc->witness.size(), 3u);
}

TEST(Validation, AsymmetricEntryBreaksCommutativity) {
  auto m = mixed_algebra({1, 1});
  auto bad = with_struct_entry(*m, 1, 2, {});
  const auto report = validate_algebra(*bad);
  const auto* comm = report.find("commutativity");
  ASSERT_NE(comm, nullptr);
  EXPECT_FALSE(comm->passed);
  EXPECT_EQ(comm->witness, (std::vector<std::size_t>{1, 2}));
}

TEST(Tensor, DualTimesDual) {
  auto t = tensor_algebra(dual_algebra(1), dual_algebra(1));
  EXPECT_EQ(t->dim(), 4u);
  EXPECT_EQ(names(*t), (std::vector<std::string>{"1", "x_1", "x_2", "x_1*x_2"}));
  EXPECT_EQ(t->nilpotency_index(), 3u);
}

TEST(Tensor, DimensionAndNilpotencyAcrossFamily) {
  const std::vector<std::string> family{"base", "dual:1", "dual:2", "jet:2", "jet:3", "mixed:1,1"};
  for (const auto& a : family)
    for (const auto& b : family) {
      auto wa = load_algebra(a), wb = load_algebra(b);
      auto t = tensor_algebra(wa, wb);
      EXPECT_EQ(t->dim(), wa->dim() * wb->dim()) << a << " * " << b;
      EXPECT_EQ(t->nilpotency_index(), wa->nilpotency_index() + wb->nilpotency_index() - 1) << a << " * " << b;
      EXPECT_EQ(t->nilpotency_index(), nilpotency_by_enumeration(*t)) << a << " * " << b;
      EXPECT_TRUE(validate_algebra(*t).passed()) << a << " * " << b;
    }
}

TEST(Tensor, PairIndexLayout) {
  auto a = jet_algebra(2), b = dual_algebra(1);
  auto t = tensor_algebra(a, b);
  EXPECT_EQ(t->dim(), 6u);
  for (std::size_t j = 0; j < b->dim(); ++j)
    for (std::size_t i = 0; i < a->dim(); ++i)
      EXPECT_EQ(t->basis()[pair_index(i, j, a->dim())], a->basis()[i] * b->basis()[j].shifted(1));
}

TEST(TextFormat, RoundTrip) {
  for (const char* spec : {"base", "dual:2", "jet:3", "mixed:2,1", "jet:2*dual:1"}) {
    auto w = load_algebra(spec);
    auto back = parse_algebra_text(format_algebra_text(*w));
    EXPECT_TRUE(same_up_to_basis_order(*back, *w)) << spec;
    EXPECT_EQ(back->generator_names(), w->generator_names());
  }
}

TEST(TextFormat, Errors) {
  EXPECT_THROW(parse_algebra_text("gens x\nrel x^2\nrel q^2\n"), Error);
  EXPECT_THROW(parse_algebra_text("gens x y\nrel x^2\n"), Error);
}
