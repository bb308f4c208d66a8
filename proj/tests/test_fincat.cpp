#include "weilad/fincat.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace weilad;
using namespace weilad::fincat;

namespace {

// Functor on `c` with the given non-identity maps; identities are filled in.
FinFunctor make(const CatPtr& c, std::vector<std::size_t> sizes, const std::map<std::string, Table>& maps) {
  FinFunctor f{c, std::move(sizes), {}, {}};
  for (std::size_t a = 0; a < c->arrow_count(); ++a) {
    const auto& arr = c->arrow(a);
    auto it = maps.find(arr.id);
    if (it != maps.end()) {
      f.maps.push_back(it->second);
    } else {
      Table t(f.sizes[arr.dom]);
      for (std::size_t x = 0; x < t.size(); ++x) t[x] = x;
      f.maps.push_back(t);
    }
  }
  return f;
}

std::size_t pow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

bool commutes_over_base(const SlicedObject& s, const SlicedObject& t, const Components& g) {
  for (std::size_t o = 0; o < g.size(); ++o)
    for (std::size_t x = 0; x < g[o].size(); ++x)
      if (t.structure.at(o, g[o][x]) != s.structure.at(o, x)) return false;
  return true;
}

ModelConfig small() { return ModelConfig{100000, false}; }

}  // namespace

TEST(Category, BundledAreValid) {
  for (const auto& c : bundled_categories()) EXPECT_TRUE(validate_category(*c).passed()) << c->name();
  EXPECT_EQ(bundled_categories().size(), 6u);
}

TEST(Category, CorruptedCompositionGivesWitnessTriple) {
  // Z/3 = {id, a, b}, then b∘b is rewired to b.
  std::vector<Arrow> arrows{{"id", 0, 0}, {"a", 0, 0}, {"b", 0, 0}};
  FinCat::CompTable comp(3, std::vector<std::optional<std::size_t>>(3));
  const std::size_t table[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (std::size_t g = 0; g < 3; ++g)
    for (std::size_t f = 0; f < 3; ++f) comp[g][f] = table[g][f];
  EXPECT_TRUE(validate_category(FinCat("z3", {"*"}, arrows, {0}, comp)).passed());
  comp[2][2] = 2;
  const auto report = validate_category(FinCat("z3_bad", {"*"}, arrows, {0}, comp));
  const auto* assoc = report.find("associativity");
  ASSERT_NE(assoc, nullptr);
  EXPECT_FALSE(assoc->passed);
  EXPECT_EQ(assoc->witness.size(), 3u);
}

TEST(Functor, Validation) {
  auto c = bundled_category("z2");
  EXPECT_TRUE(validate_functor(make(c, {2}, {{"t", {1, 0}}})).passed());
  EXPECT_FALSE(validate_functor(make(c, {2}, {{"t", {1, 1}}})).passed());  // t∘t must be the identity
  EXPECT_FALSE(validate_functor(make(c, {2}, {{"t", {0, 5}}})).passed());
}

TEST(Limits, ProductSizesAndTerminal) {
  auto c = bundled_category("arrow");
  auto m = make(c, {2, 1}, {{"f", {0, 0}}});
  auto n = make(c, {3, 2}, {{"f", {0, 1, 1}}});
  auto p = product(m, n);
  EXPECT_EQ(p.functor.sizes, (std::vector<std::size_t>{6, 2}));
  EXPECT_TRUE(validate_functor(p.functor).passed());
  auto t = product(m, terminal_functor(c));
  EXPECT_EQ(t.functor, m);
  EXPECT_EQ(t.proj1.components, identity_nat(m).components);
}

TEST(Limits, PairingIsUnique) {
  for (const auto& c : bundled_categories()) {
    const auto fs = enumerate_functors(c, 2);
    for (std::size_t i = 0; i < fs.size() && i < 4; ++i) {
      const auto& pr = fs[i];
      const auto& m = fs[(i + 1) % fs.size()];
      const auto& n = fs[(i + 2) % fs.size()];
      auto prod = product(m, n);
      auto to_m = enumerate_nat(pr, m, small());
      auto to_n = enumerate_nat(pr, n, small());
      auto to_prod = enumerate_nat(pr, prod.functor, small());
      for (const auto& f : to_m)
        for (const auto& g : to_n) {
          std::size_t hits = 0;
          for (const auto& h : to_prod) {
            FinNatTrans hn{pr, prod.functor, h};
            if (compose_nat(prod.proj1, hn).components == f && compose_nat(prod.proj2, hn).components == g) ++hits;
          }
          EXPECT_EQ(hits, 1u) << c->name();
          EXPECT_EQ(pair(prod, {pr, m, f}, {pr, n, g}).components.size(), c->object_count());
        }
    }
  }
}

TEST(Limits, Equalizers) {
  auto c = bundled_category("arrow");
  auto m = make(c, {3, 2}, {{"f", {0, 1, 1}}});
  auto id = identity_nat(m);
  auto e = equalizer(id, id);
  EXPECT_EQ(e.functor, m);
  auto n = make(c, {2, 2}, {{"f", {0, 1}}});
  // Two transformations M => N that disagree everywhere.
  auto homs = enumerate_nat(m, n, small());
  ASSERT_GE(homs.size(), 2u);
  for (const auto& f : homs)
    for (const auto& g : homs) {
      auto eq = equalizer({m, n, f}, {m, n, g});
      EXPECT_TRUE(validate_functor(eq.functor).passed());
      for (std::size_t o = 0; o < 2; ++o) {
        std::vector<std::size_t> want;
        for (std::size_t x = 0; x < m.size(o); ++x)
          if (f[o][x] == g[o][x]) want.push_back(x);
        EXPECT_EQ(eq.inclusion.components[o], want);
      }
    }
  bool found_empty = false;
  for (const auto& f : homs)
    for (const auto& g : homs) {
      auto eq = equalizer({m, n, f}, {m, n, g});
      if (eq.functor.total_size() == 0) found_empty = true;
    }
  EXPECT_TRUE(found_empty);
}

TEST(Exponential, TerminalCategoryIsSetExponential) {
  auto c = bundled_category("terminal");
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b) {
      auto e = exponential(constant_functor(c, a), constant_functor(c, b));
      EXPECT_EQ(e.functor.size(0), pow(a, b));
    }
}

TEST(Exponential, EmptyExponentHasOnePoint) {
  for (const auto& c : bundled_categories()) {
    auto m = enumerate_functors(c, 2).back();
    auto e = exponential(m, empty_functor(c));
    for (std::size_t o = 0; o < c->object_count(); ++o) EXPECT_EQ(e.functor.size(o), 1u) << c->name();
  }
}

TEST(Exponential, MatchesBruteForceOracle) {
  for (const auto& c : bundled_categories()) {
    const auto fs = enumerate_functors(c, 2);
    for (const auto& m : fs)
      for (const auto& n : fs) {
        auto e = exponential(m, n);
        EXPECT_TRUE(validate_functor(e.functor).passed());
        for (std::size_t o = 0; o < c->object_count(); ++o) {
          auto got = e.families[o];
          std::sort(got.begin(), got.end());
          EXPECT_EQ(got, exponential_oracle(m, n, o)) << c->name() << " object " << o;
        }
      }
  }
}

TEST(Exponential, ArrowWithIdentityActions) {
  auto c = bundled_category("arrow");
  auto m = make(c, {2, 2}, {{"f", {0, 1}}});
  auto e = exponential(m, m);
  for (std::size_t o = 0; o < 2; ++o) EXPECT_EQ(e.functor.size(o), exponential_oracle(m, m, o).size());
  // At b: all 4 maps. At a: pairs (s_id, s_f) with s_f determined by s_id.
  EXPECT_EQ(e.functor.size(1), 4u);
  EXPECT_EQ(e.functor.size(0), 4u);
}

TEST(Currying, HomSetCountsOnTerminalCategory) {
  auto c = bundled_category("terminal");
  auto two = constant_functor(c, 2);
  auto e = exponential(two, two);
  EXPECT_EQ(enumerate_nat(product(two, two).functor, two, small()).size(), 16u);
  EXPECT_EQ(enumerate_nat(two, e.functor, small()).size(), 16u);
  EXPECT_TRUE(verify_ccc(two, two, {two}).passed());
}

TEST(Currying, TerminalTargetAndProbe) {
  for (const auto& c : bundled_categories()) {
    const auto fs = enumerate_functors(c, 2);
    auto one = terminal_functor(c);
    for (const auto& n : fs) {
      EXPECT_EQ(enumerate_nat(product(one, n).functor, one, small()).size(), 1u);
      EXPECT_TRUE(verify_ccc(one, n, fs).passed()) << c->name();
      // Hom(1 x N, M) = Hom(N, M) = Hom(1, M^N).
      auto m = fs.back();
      EXPECT_EQ(enumerate_nat(n, m, small()).size(), enumerate_nat(one, exponential(m, n).functor, small()).size());
    }
  }
}

TEST(Currying, SweepOnSmallSets) {
  for (const auto& c : bundled_categories()) {
    const auto fs = enumerate_functors(c, 2);
    const auto probes = enumerate_functors(c, 1);
    for (const auto& m : fs)
      for (const auto& n : fs) EXPECT_TRUE(verify_ccc(m, n, probes).passed()) << c->name();
  }
}

TEST(Slice, TerminalBaseReducesToExponential) {
  for (const auto& c : bundled_categories()) {
    const auto fs = enumerate_functors(c, 2);
    for (const auto& m : fs)
      for (const auto& n : fs) {
        auto se = slice_exponential(over_terminal(m), over_terminal(n));
        EXPECT_EQ(se.object.total.sizes, exponential(m, n).functor.sizes);
      }
  }
}

TEST(Slice, SingletonFibersOverTwoPoints) {
  auto c = bundled_category("terminal");
  auto l = constant_functor(c, 2);
  auto a = identity_sliced(l);
  auto se = slice_exponential(a, a);
  EXPECT_EQ(se.object.total.size(0), 2u);
  EXPECT_EQ(se.object.structure.components[0], (Table{0, 1}));
  auto homs = enumerate_slice_homs(a, a, small());
  EXPECT_EQ(homs.size(), 1u);
  EXPECT_TRUE(verify_slice_ccc(a, a, {a}).passed());
}

TEST(Slice, EmptyFiberGivesUniqueMap) {
  auto c = bundled_category("terminal");
  auto l = constant_functor(c, 2);
  auto a = identity_sliced(l);
  auto one = constant_functor(c, 1);
  SlicedObject b{one, {one, l, {{0}}}};  // nothing over point 1
  auto se = slice_exponential(a, b);
  EXPECT_EQ(std::count(se.object.structure.components[0].begin(), se.object.structure.components[0].end(), 1u), 1);
}

TEST(Slice, DegenerationReproducesCurryingReport) {
  for (const auto& c : bundled_categories()) {
    const auto fs = enumerate_functors(c, 2);
    const auto probes = enumerate_functors(c, 1);
    std::vector<SlicedObject> sliced;
    for (const auto& p : probes) sliced.push_back(over_terminal(p));
    for (const auto& m : fs)
      for (const auto& n : fs) {
        auto plain = verify_ccc(m, n, probes);
        auto slice = verify_slice_ccc(over_terminal(m), over_terminal(n), sliced);
        ASSERT_EQ(plain.checks.size(), slice.checks.size());
        for (std::size_t k = 0; k < plain.checks.size(); ++k) {
          EXPECT_EQ(plain.checks[k].law, slice.checks[k].law);
          EXPECT_EQ(plain.checks[k].passed, slice.checks[k].passed);
          EXPECT_EQ(plain.checks[k].witness, slice.checks[k].witness);
          EXPECT_EQ(plain.checks[k].detail, slice.checks[k].detail);
        }
      }
  }
}

TEST(Slice, HomsExcludeMapsThatLeaveTheFiber) {
  auto c = bundled_category("terminal");
  auto l = constant_functor(c, 2);
  auto a = identity_sliced(l);
  auto two = constant_functor(c, 2);
  SlicedObject s{two, {two, l, {{0, 1}}}};
  auto all = enumerate_nat(s.total, a.total, small());
  auto homs = enumerate_slice_homs(s, a, small());
  std::set<Components> want;
  bool excluded = false;
  for (const auto& g : all) {
    if (commutes_over_base(s, a, g)) want.insert(g);
    else excluded = true;
  }
  EXPECT_TRUE(excluded);
  EXPECT_EQ(std::set<Components>(homs.begin(), homs.end()), want);
  // The swap {1, 0} is a plain transformation but not a slice morphism.
  EXPECT_EQ(std::count(homs.begin(), homs.end(), Components{{1, 0}}), 0);
}

TEST(Slice, SweepOverTwoObjectBases) {
  for (const char* name : {"arrow", "iso", "discrete"}) {
    auto c = bundled_category(name);
    for (const auto& l : enumerate_functors(c, 2)) {
      if (l.total_size() > 3) continue;
      auto objs = enumerate_sliced(l, 1);
      for (const auto& a : objs)
        for (const auto& b : objs) EXPECT_TRUE(verify_slice_ccc(a, b, objs).passed()) << name;
    }
  }
}

TEST(WeilStandIn, PrecomposeLaws) {
  for (const auto& c : bundled_categories()) {
    const auto fs = enumerate_functors(c, 2);
    const auto gs = bundled_endofunctors(c);
    for (const auto& m : fs) {
      EXPECT_EQ(precompose(identity_endofunctor(c), m), m);
      for (std::size_t o = 0; o < c->object_count(); ++o) {
        auto k = precompose(constant_endofunctor(c, o), m);
        for (std::size_t v = 0; v < c->object_count(); ++v) EXPECT_EQ(k.size(v), m.size(o));
      }
      for (const auto& g1 : gs)
        for (const auto& g2 : gs)
          EXPECT_EQ(precompose(g2, precompose(g1, m)), precompose(compose_endofunctors(g1, g2), m)) << c->name();
    }
  }
}

TEST(WeilStandIn, AlphaLaws) {
  for (const auto& c : bundled_categories()) {
    const auto fs = enumerate_functors(c, 2);
    for (const auto& g : bundled_endofunctors(c)) {
      std::vector<EndoTransformation> etas{identity_transformation(g)};
      if (auto i = unit_transformation(g)) etas.push_back(*i);
      if (auto p = counit_transformation(g)) etas.push_back(*p);
      for (const auto& m : fs) {
        EXPECT_EQ(alpha_of(identity_transformation(g), m).components, identity_nat(precompose(g, m)).components);
        for (const auto& e1 : etas)
          for (const auto& e2 : etas) {
            if (e1.to.on_objects != e2.from.on_objects || e1.to.on_arrows != e2.from.on_arrows) continue;
            EXPECT_EQ(alpha_of(compose_transformations(e2, e1), m).components,
                      compose_nat(alpha_of(e2, m), alpha_of(e1, m)).components);
          }
        for (const auto& n : fs)
          for (const auto& eta : etas)
            for (const auto& f : enumerate_nat(m, n, small())) {
              FinNatTrans fn{m, n, f};
              EXPECT_EQ(compose_nat(alpha_of(eta, n), precompose(eta.from, fn)).components,
                        compose_nat(precompose(eta.to, fn), alpha_of(eta, m)).components);
            }
      }
    }
  }
}

TEST(WeilStandIn, NonNaturalFamilyIsRejected) {
  auto c = bundled_category("arrow");
  auto id = identity_endofunctor(c);
  // eta_a = id_a, eta_b = id_b is natural; eta_a := f is not even well typed.
  EndoTransformation bad{"bad", id, id, {c->arrow_index("f"), c->identity(1)}};
  try {
    require_natural(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::non_natural);
  }
}

TEST(WeilStandIn, SlicedTIdentityAndTerminalBase) {
  for (const auto& c : bundled_categories()) {
    for (const auto& l : enumerate_functors(c, 2)) {
      for (const auto& a : enumerate_sliced(l, 1)) {
        auto t = sliced_T(identity_endofunctor(c), a);
        EXPECT_EQ(t.object.total, a.total);
        EXPECT_EQ(t.object.structure.components, a.structure.components);
      }
    }
    for (const auto& g : bundled_endofunctors(c)) {
      if (!g.p || !g.i) continue;
      for (const auto& m : enumerate_functors(c, 2))
        EXPECT_EQ(sliced_T(g, over_terminal(m)).object.total, precompose(g, m)) << c->name() << " " << g.name;
    }
  }
}

TEST(WeilStandIn, SlicedTMatchesSubsetFilter) {
  auto c = bundled_category("iso");
  const auto gs = bundled_endofunctors(c);
  const auto& swap = gs.at(1);
  ASSERT_EQ(swap.name, "swap");
  for (const auto& l : enumerate_functors(c, 2))
    for (const auto& a : enumerate_sliced(l, 2)) {
      auto t = sliced_T(swap, a);
      for (std::size_t v = 0; v < c->object_count(); ++v) {
        const std::size_t gv = swap.on_objects[v];
        Table want;
        for (std::size_t x = 0; x < a.total.size(gv); ++x) {
          const std::size_t tau = a.structure.at(gv, x);
          if (l.apply((*swap.i)[v], l.apply((*swap.p)[v], tau)) == tau) want.push_back(x);
        }
        EXPECT_EQ(t.elements[v], want);
      }
    }
}

TEST(ExpCompat, IdentityAndTerminal) {
  for (const auto& c : bundled_categories()) {
    const auto fs = enumerate_functors(c, 2);
    for (const auto& m : fs)
      for (const auto& n : fs) {
        auto r = exp_compat_check(identity_endofunctor(c), m, n);
        EXPECT_TRUE(r.passed()) << c->name();
      }
  }
  auto t = bundled_category("terminal");
  for (const auto& m : enumerate_functors(t, 3))
    for (const auto& n : enumerate_functors(t, 2)) EXPECT_TRUE(exp_compat_check(identity_endofunctor(t), m, n).passed());
}

TEST(ExpCompat, BundledEndofunctorsPass) {
  for (const auto& c : bundled_categories()) {
    const auto fs = enumerate_functors(c, 2);
    for (const auto& g : bundled_endofunctors(c))
      for (const auto& m : fs)
        for (const auto& n : fs) EXPECT_TRUE(exp_compat_check(g, m, n).passed()) << c->name() << " " << g.name;
  }
}

TEST(ExpCompat, ConstantAtSourceIsReportedNotThrown) {
  auto c = bundled_category("arrow");
  auto g = constant_endofunctor(c, 0);
  std::size_t failures = 0;
  const auto fs = enumerate_functors(c, 2);
  for (const auto& m : fs)
    for (const auto& n : fs) {
      ValidationReport r;
      ASSERT_NO_THROW(r = exp_compat_check(g, m, n));
      if (!r.passed()) {
        ++failures;
        const auto* b = r.find("comparison_bijective");
        ASSERT_NE(b, nullptr);
        EXPECT_FALSE(b->passed);
        EXPECT_FALSE(b->detail.empty());
      }
    }
  EXPECT_GT(failures, 0u);
}

TEST(Localization, FlattenRejectsWrongStructureMap) {
  auto c = bundled_category("terminal");
  auto l = constant_functor(c, 2);
  auto a = identity_sliced(l);
  auto fl = flatten_slice(a);
  auto one = constant_functor(c, 1);
  IteratedObject good{one, {{0}}, {{0}}};
  IteratedObject bad{one, {{1}}, {{0}}};
  EXPECT_TRUE(fl.is_object(good));
  EXPECT_FALSE(fl.is_object(bad));
  auto flat = fl.flatten(good);
  auto back = fl.unflatten(flat);
  EXPECT_EQ(back.x, good.x);
  EXPECT_EQ(back.sigma, good.sigma);
  EXPECT_EQ(back.f, good.f);
}

TEST(Localization, ChecksPass) {
  for (const auto& c : bundled_categories()) {
    const auto rs = enumerate_functors(c, 1);
    for (const auto& g : bundled_endofunctors(c)) {
      if (!g.p || !g.i) continue;
      for (const auto& l : enumerate_functors(c, 1))
        for (const auto& a : enumerate_sliced(l, 2)) {
          EXPECT_TRUE(verify_flatten(flatten_slice(a), rs).passed()) << c->name();
          for (const auto& r : rs) EXPECT_TRUE(localization_check(g, a, r).passed()) << c->name() << " " << g.name;
        }
    }
  }
}

TEST(Localization, NeedsBothFamilies) {
  auto c = bundled_category("arrow");
  auto g = bundled_endofunctors(c).at(1);  // const_b carries i only
  ASSERT_FALSE(g.p.has_value());
  auto l = terminal_functor(c);
  auto a = over_terminal(l);
  EXPECT_THROW(localization_check(g, a, l), Error);
}

TEST(Limits, EnumerationBound) {
  auto c = bundled_category("terminal");
  try {
    enumerate_nat(constant_functor(c, 3), constant_functor(c, 3), ModelConfig{10, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::size_limit);
  }
  EXPECT_THROW(exponential(constant_functor(c, 9), constant_functor(c, 9), ModelConfig{1000, false}), Error);
}
