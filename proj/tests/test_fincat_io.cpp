#include "weilad/fincat_io.hpp"

#include <gtest/gtest.h>

using namespace weilad;
using namespace weilad::fincat;

namespace {

ErrorCode code_of(const std::string& json) {
  try {
    parse_model_instance(json);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ok;
}

const char* kArrow = R"({
  "name": "tiny",
  "objects": ["a", "b"],
  "morphisms": [{"id": "f", "dom": "a", "cod": "b"}],
  "functors": {
    "M": {"sets": {"a": ["p", "q"], "b": 1}, "maps": {"f": [0, 0]}},
    "L": {"sets": {"a": 1, "b": 1}}
  },
  "nat_trans": {"tau": {"source": "M", "target": "L", "components": {"a": [0, 0], "b": [0]}}},
  "endofunctors": {"id": {"objects": {"a": "a", "b": "b"}, "morphisms": {"f": "f"},
                          "p": {"a": "id_a", "b": "id_b"}, "i": {"a": "id_a", "b": "id_b"}}}
})";

}  // namespace

TEST(InstanceFormat, ParsesExplicitCategory) {
  auto inst = parse_model_instance(kArrow);
  EXPECT_EQ(inst.cat->name(), "tiny");
  EXPECT_EQ(inst.cat->arrow_count(), 3u);
  const auto& m = inst.functor("M");
  EXPECT_EQ(m.sizes, (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(m.label(0, 1), "q");
  EXPECT_EQ(inst.nat_trans.size(), 1u);
  ASSERT_EQ(inst.endofunctors.size(), 1u);
  EXPECT_TRUE(inst.endofunctors[0].p.has_value());
}

TEST(InstanceFormat, RoundTrip) {
  for (const auto& name : bundled_instance_names()) {
    auto inst = load_model_instance("bundled:" + name);
    const auto text = model_instance_to_json(inst);
    auto back = parse_model_instance(text);
    EXPECT_EQ(model_instance_to_json(back), text) << name;
    ASSERT_EQ(back.functors.size(), inst.functors.size());
    for (std::size_t k = 0; k < inst.functors.size(); ++k) {
      EXPECT_EQ(back.functors[k].first, inst.functors[k].first);
      EXPECT_EQ(back.functors[k].second, inst.functors[k].second);
    }
  }
}

TEST(InstanceFormat, BundledNames) {
  EXPECT_EQ(bundled_instance_names(), (std::vector<std::string>{"arrow", "arrow_const_a", "discrete", "iso_swap", "z2"}));
}

TEST(InstanceFormat, Errors) {
  EXPECT_EQ(code_of("{ not json"), ErrorCode::parse_error);
  EXPECT_EQ(code_of(R"({"objects": "a"})"), ErrorCode::invalid_instance);
  EXPECT_EQ(code_of(R"({"category": "nope"})"), ErrorCode::invalid_instance);
  // f: a -> a would need f∘f.
  EXPECT_EQ(code_of(R"({"objects": ["a"], "morphisms": [{"id": "f", "dom": "a", "cod": "a"}]})"),
            ErrorCode::invalid_instance);
  // Map that breaks functoriality on Z/2.
  EXPECT_EQ(code_of(R"({"category": "z2", "functors": {"M": {"sets": {"*": 2}, "maps": {"t": [0, 0]}}}})"),
            ErrorCode::invalid_instance);
  // Transformation that is not natural.
  EXPECT_EQ(code_of(R"({"category": "z2", "functors": {"M": {"sets": {"*": 2}, "maps": {"t": [1, 0]}},
                        "N": {"sets": {"*": 2}, "maps": {"t": [0, 1]}}},
                        "nat_trans": {"e": {"source": "M", "target": "N", "components": {"*": [0, 1]}}}})"),
            ErrorCode::invalid_instance);
  try {
    load_model_instance("/nonexistent/instance.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io_error);
  }
}

TEST(ModelCheck, BundledInstancesPass) {
  ModelCheckOptions opt;
  for (const auto& name : bundled_instance_names()) {
    auto inst = load_model_instance("bundled:" + name);
    for (auto kind : {ModelCheckKind::ccc, ModelCheckKind::slice_ccc, ModelCheckKind::exp_compat,
                      ModelCheckKind::localization}) {
      auto r = run_model_check(inst, kind, opt);
      const bool negative = name == "arrow_const_a" && kind == ModelCheckKind::exp_compat;
      EXPECT_EQ(r.passed(), !negative) << name << " " << model_check_kind_name(kind);
      for (const auto& e : r.entries) EXPECT_TRUE(e.error.empty()) << name << ": " << e.error;
    }
  }
}

TEST(ModelCheck, NegativeExampleNamesTheFailure) {
  auto inst = load_model_instance("bundled:arrow_const_a");
  auto r = run_model_check(inst, ModelCheckKind::exp_compat, {});
  std::size_t failed = 0;
  for (const auto& e : r.entries)
    if (!e.passed()) {
      ++failed;
      EXPECT_NE(e.instance.find("const_a"), std::string::npos);
    }
  EXPECT_GT(failed, 0u);
  EXPECT_NE(model_check_to_text(r).find("comparison_bijective"), std::string::npos);
}

TEST(ModelCheck, KindNames) {
  for (auto k : {ModelCheckKind::ccc, ModelCheckKind::slice_ccc, ModelCheckKind::exp_compat,
                 ModelCheckKind::localization})
    EXPECT_EQ(parse_model_check_kind(model_check_kind_name(k)), k);
  EXPECT_THROW(parse_model_check_kind("bogus"), Error);
}
