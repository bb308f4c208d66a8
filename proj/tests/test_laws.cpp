#include "weilad/error.hpp"
#include "weilad/laws.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace weilad;

namespace {

std::size_t failures_of(const std::vector<LawReport>& rs, const std::string& law, LawModel model) {
  for (const auto& r : rs)
    if (r.law_id == law && r.model == model) return r.failures;
  ADD_FAILURE() << "no report for " << law;
  return 0;
}

}  // namespace

TEST(LawCatalog, TwelveLawsWithAvailability) {
  const auto& laws = enumerate_laws();
  ASSERT_EQ(laws.size(), 12u);
  for (const char* id : {"L4", "L7", "L10", "L12"}) {
    EXPECT_TRUE(law_info(id).finset) << id;
    EXPECT_FALSE(law_info(id).numeric) << id;
  }
  for (const char* id : {"L8", "L9"}) {
    EXPECT_TRUE(law_info(id).numeric) << id;
    EXPECT_FALSE(law_info(id).finset) << id;
  }
  EXPECT_THROW(law_info("L13"), Error);
}

TEST(LawCatalog, DocsMatchGeneratedTable) {
  std::ifstream in(WEILAD_SOURCE_DIR "/docs/laws.md");
  ASSERT_TRUE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), laws_markdown());
}

TEST(RunLaw, UnavailableInModel) {
  LawInstance in;
  in.law_id = "L8";
  in.model = LawModel::finset;
  try {
    run_law(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unavailable_in_model);
  }
}

TEST(RunLaw, TensorCompositionOnOnePair) {
  LawInstance in;
  in.law_id = "L3";
  in.algebras = {"dual:1", "jet:2"};
  auto r = run_law(in);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.exact);
  EXPECT_GE(r.instances_run, 10u);
}

TEST(RunLaw, CustomMapsAndCategories) {
  LawInstance in;
  in.law_id = "L2";
  in.maps = {"x^3 - x/(1 + x^2)", "r01_square"};
  auto r = run_law(in);
  EXPECT_TRUE(r.passed());
  LawInstance fin;
  fin.law_id = "L10";
  fin.model = LawModel::finset;
  fin.categories = {"terminal"};
  EXPECT_TRUE(run_law(fin).passed());
}

TEST(Suite, DefaultConfigPasses) {
  auto rs = run_all({});
  EXPECT_EQ(rs.size(), 18u);
  for (const auto& r : rs) EXPECT_TRUE(r.passed()) << r.law_id << " " << law_model_name(r.model);
}

TEST(Suite, FloatModeWithinTolerance) {
  SuiteConfig cfg;
  cfg.mode = ScalarMode::binary_float;
  for (const auto& r : run_all(cfg)) {
    EXPECT_TRUE(r.passed()) << r.law_id;
    if (r.model == LawModel::numeric) EXPECT_LT(r.max_rel_error, 1e-10) << r.law_id;
  }
}

TEST(Suite, DeterministicForSeed) {
  SuiteConfig cfg;
  cfg.seed = 42;
  cfg.laws = {"L3", "L9", "L11"};
  EXPECT_EQ(laws_to_json(run_all(cfg)), laws_to_json(run_all(cfg)));
  cfg.mode = ScalarMode::binary_float;
  EXPECT_EQ(laws_to_json(run_all(cfg)), laws_to_json(run_all(cfg)));
}

TEST(Suite, PassesForOtherSeeds) {
  SuiteConfig a, b;
  a.laws = b.laws = {"L6"};
  a.seed = 1;
  b.seed = 2;
  auto ra = run_all(a), rb = run_all(b);
  EXPECT_TRUE(ra[0].passed());
  EXPECT_TRUE(rb[0].passed());
}

TEST(Defects, StructConstCaughtByTensorAndLineLaws) {
  SuiteConfig cfg;
  cfg.defect = Defect::struct_const;
  cfg.laws = {"L3", "L8"};
  for (auto mode : {ScalarMode::rational, ScalarMode::binary_float}) {
    cfg.mode = mode;
    auto rs = run_all(cfg);
    EXPECT_GT(failures_of(rs, "L3", LawModel::numeric), 0u);
    EXPECT_GT(failures_of(rs, "L8", LawModel::numeric), 0u);
    for (const auto& r : rs)
      if (r.model == LawModel::numeric) {
        ASSERT_FALSE(r.witnesses.empty());
        EXPECT_NE(r.witnesses[0].detail.find("coefficient"), std::string::npos);
      }
  }
}

TEST(Defects, NonNaturalCaughtByNaturality) {
  SuiteConfig cfg;
  cfg.defect = Defect::non_natural;
  cfg.laws = {"L11"};
  auto rs = run_all(cfg);
  EXPECT_GT(failures_of(rs, "L11", LawModel::finset), 0u);
  EXPECT_EQ(failures_of(rs, "L11", LawModel::numeric), 0u);
}

TEST(Defects, WrongReindexingCaughtByExponentialLaws) {
  SuiteConfig cfg;
  cfg.defect = Defect::exp_reindex;
  cfg.laws = {"L4", "L7", "L10"};
  auto rs = run_all(cfg);
  for (const auto& r : rs) {
    EXPECT_GT(r.failures, 0u) << r.law_id;
    EXPECT_FALSE(r.witnesses.empty()) << r.law_id;
    EXPECT_LE(r.witnesses.size(), 10u);
  }
}

TEST(Defects, Names) {
  for (auto d : {Defect::none, Defect::struct_const, Defect::non_natural, Defect::exp_reindex})
    EXPECT_EQ(parse_defect(defect_name(d)), d);
  EXPECT_THROW(parse_defect("typo"), Error);
}

TEST(Extraction, JetAndPartialsAgreeWithFiniteDifferences) {
  auto r = check_extraction(1, 3, 1e-5);
  EXPECT_TRUE(r.passed());
  EXPECT_LT(r.max_rel_error, 1e-5);
  EXPECT_GE(r.instances_run, 12u);
}

TEST(Corpus, TwelveMapsPerKind) {
  EXPECT_EQ(corpus("rational").size(), 12u);
  EXPECT_EQ(corpus("float").size(), 12u);
}
