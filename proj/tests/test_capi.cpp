#include "weilad/weilad.h"

#include <gtest/gtest.h>
#include <json.hpp>

#include <memory>
#include <string>

using Json = nlohmann::json;

namespace {

struct Ctx {
  weilad_context* c = weilad_context_new();
  ~Ctx() { weilad_context_free(c); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  weilad_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(weilad_version(), "");
  EXPECT_STREQ(weilad_status_name(WEILAD_PARSE_ERROR), "ParseError");
  EXPECT_STREQ(weilad_status_name(12345), "Unknown");
}

TEST(CApi, AlgebraLifecycle) {
  Ctx ctx;
  weilad_algebra* w = nullptr;
  ASSERT_EQ(weilad_algebra_load(ctx.c, "jet:2*dual:1", &w), WEILAD_OK);
  EXPECT_EQ(weilad_algebra_dim(w), 6u);
  char* out = nullptr;
  ASSERT_EQ(weilad_algebra_describe(ctx.c, w, WEILAD_JSON, &out), WEILAD_OK);
  auto j = Json::parse(take(out));
  EXPECT_EQ(j["dim"], 6);
  EXPECT_EQ(j["nilpotency_index"], 4);
  EXPECT_EQ(j["valid"], true);
  weilad_algebra* t = nullptr;
  ASSERT_EQ(weilad_algebra_tensor(ctx.c, w, w, &t), WEILAD_OK);
  EXPECT_EQ(weilad_algebra_dim(t), 36u);
  weilad_algebra_free(t);
  weilad_algebra_free(w);
}

TEST(CApi, ErrorsAreRecorded) {
  Ctx ctx;
  weilad_algebra* w = nullptr;
  EXPECT_EQ(weilad_algebra_load(ctx.c, "dual:0", &w), WEILAD_BAD_PARAMETER);
  EXPECT_EQ(w, nullptr);
  EXPECT_EQ(weilad_last_status(ctx.c), WEILAD_BAD_PARAMETER);
  EXPECT_STRNE(weilad_last_error(ctx.c), "");
  char* out = nullptr;
  ASSERT_EQ(weilad_last_error_json(ctx.c, &out), WEILAD_OK);
  auto j = Json::parse(take(out));
  EXPECT_EQ(j["error"]["code"], 1);
  EXPECT_EQ(j["error"]["name"], "BadParameter");
  weilad_function* f = nullptr;
  EXPECT_EQ(weilad_function_parse(ctx.c, "log(x", &f), WEILAD_PARSE_ERROR);
  EXPECT_EQ(weilad_algebra_load(ctx.c, "base", nullptr), WEILAD_BAD_PARAMETER);
}

TEST(CApi, JetRationalAndFloat) {
  Ctx ctx;
  weilad_function* f = nullptr;
  ASSERT_EQ(weilad_function_parse(ctx.c, "x^2", &f), WEILAD_OK);
  EXPECT_EQ(weilad_function_arity(f), 1u);
  char* out = nullptr;
  ASSERT_EQ(weilad_jet(ctx.c, f, "3", 2, WEILAD_RATIONAL, WEILAD_RAW, WEILAD_JSON, &out), WEILAD_OK);
  auto j = Json::parse(take(out));
  EXPECT_EQ(j["outputs"][0]["values"], Json::parse(R"(["9", "6", "1"])"));
  weilad_function_free(f);

  ASSERT_EQ(weilad_function_parse(ctx.c, "exp(x)", &f), WEILAD_OK);
  EXPECT_EQ(weilad_jet(ctx.c, f, "0", 3, WEILAD_RATIONAL, WEILAD_DERIVATIVE, WEILAD_JSON, &out),
            WEILAD_UNSUPPORTED_IN_RATIONAL_MODE);
  ASSERT_EQ(weilad_jet(ctx.c, f, "0", 3, WEILAD_FLOAT, WEILAD_DERIVATIVE, WEILAD_JSON, &out), WEILAD_OK);
  j = Json::parse(take(out));
  EXPECT_EQ(j["outputs"][0]["values"], Json::parse("[1.0, 1.0, 1.0, 1.0]"));
  weilad_function_free(f);
}

TEST(CApi, Partials) {
  Ctx ctx;
  weilad_function* f = nullptr;
  ASSERT_EQ(weilad_function_parse(ctx.c, "x*y", &f), WEILAD_OK);
  char* out = nullptr;
  ASSERT_EQ(weilad_partials(ctx.c, f, "2,5", "1,1", WEILAD_RATIONAL, WEILAD_DERIVATIVE, WEILAD_JSON, &out), WEILAD_OK);
  auto j = Json::parse(take(out));
  std::map<std::string, std::string> got;
  for (const auto& e : j["entries"]) got[e["monomial"]] = e["values"][0];
  EXPECT_EQ(got["x"], "5");
  EXPECT_EQ(got["y"], "2");
  EXPECT_EQ(got["x*y"], "1");
  EXPECT_EQ(weilad_partials(ctx.c, f, "2", "1,1", WEILAD_RATIONAL, WEILAD_DERIVATIVE, WEILAD_JSON, &out),
            WEILAD_BAD_PARAMETER);
  weilad_function_free(f);
}

TEST(CApi, MorphismApply) {
  Ctx ctx;
  weilad_algebra *a = nullptr, *b = nullptr;
  ASSERT_EQ(weilad_algebra_load(ctx.c, "jet:2", &a), WEILAD_OK);
  ASSERT_EQ(weilad_algebra_load(ctx.c, "dual:1*dual:1", &b), WEILAD_OK);
  weilad_morphism* m = nullptr;
  ASSERT_EQ(weilad_morphism_from_images(ctx.c, a, b, "x_1 + x_2", &m), WEILAD_OK);
  char* out = nullptr;
  ASSERT_EQ(weilad_morphism_apply(ctx.c, m, "1 + x + x^2", WEILAD_JSON, &out), WEILAD_OK);
  auto j = Json::parse(take(out));
  EXPECT_EQ(j["result"]["coefficients"], Json::parse(R"(["1", "1", "1", "2"])"));
  weilad_morphism_free(m);
  EXPECT_EQ(weilad_morphism_from_images(ctx.c, b, a, "x;x", &m), WEILAD_NOT_WELL_DEFINED);
  weilad_algebra_free(a);
  weilad_algebra_free(b);
}

TEST(CApi, LawsAndModel) {
  Ctx ctx;
  char* out = nullptr;
  int passed = 0;
  ASSERT_EQ(weilad_laws_run(ctx.c, "L5", WEILAD_RATIONAL, 1, nullptr, WEILAD_JSON, &passed, &out), WEILAD_OK);
  EXPECT_EQ(passed, 1);
  auto j = Json::parse(take(out));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["law_id"], "L5");
  ASSERT_EQ(weilad_laws_run(ctx.c, "L11", WEILAD_RATIONAL, 1, "non_natural", WEILAD_JSON, &passed, &out), WEILAD_OK);
  EXPECT_EQ(passed, 0);
  take(out);
  EXPECT_EQ(weilad_laws_run(ctx.c, "L99", WEILAD_RATIONAL, 1, nullptr, WEILAD_JSON, &passed, &out),
            WEILAD_BAD_PARAMETER);
  ASSERT_EQ(weilad_model_check(ctx.c, "bundled:z2", "localization", 2, WEILAD_JSON, &passed, &out), WEILAD_OK);
  EXPECT_EQ(passed, 1);
  j = Json::parse(take(out));
  EXPECT_EQ(j["check"], "localization");
  EXPECT_EQ(weilad_model_check(ctx.c, "bundled:z2", "nope", 2, WEILAD_JSON, &passed, &out), WEILAD_BAD_PARAMETER);
}

TEST(CApi, EnumerationBoundIsApplied) {
  Ctx ctx;
  ASSERT_EQ(weilad_set_max_enum(ctx.c, 3), WEILAD_OK);
  char* out = nullptr;
  int passed = 0;
  EXPECT_EQ(weilad_model_check(ctx.c, "bundled:arrow", "ccc", 2, WEILAD_JSON, &passed, &out), WEILAD_OK);
  auto j = Json::parse(take(out));
  EXPECT_EQ(passed, 0);
  bool size_limit = false;
  for (const auto& e : j["entries"])
    if (e.contains("error") && e["error"]["code"] == "SizeLimit") size_limit = true;
  EXPECT_TRUE(size_limit);
}
