// Runs the weilad executable and checks output shape and exit codes.

#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

using Json = nlohmann::json;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(WEILAD_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Json json_of(const Result& r) {
  Json j;
  EXPECT_NO_THROW(j = Json::parse(r.out)) << r.out;
  return j;
}

void expect_keys(const Json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys) EXPECT_TRUE(j.contains(k)) << "missing key " << k << " in " << j.dump();
}

}  // namespace

TEST(Cli, JetOfExpAtZero) {
  auto r = run("jet --fn 'exp(x)' --at 0 --order 3");
  ASSERT_EQ(r.status, 0);
  auto j = json_of(r);
  expect_keys(j, {"command", "function", "variables", "scalar", "normalization", "at", "order", "outputs"});
  EXPECT_EQ(j["outputs"][0]["values"], Json::parse("[1.0, 1.0, 1.0, 1.0]"));
}

TEST(Cli, JetFromFunctionFile) {
  auto r = run("jet --fn-file " WEILAD_SOURCE_DIR "/data/corpus/rational/r01_square.fn --at 2 --order 2 --scalar rational");
  ASSERT_EQ(r.status, 0);
  auto j = json_of(r);
  EXPECT_EQ(j["scalar"], "rational");
  EXPECT_TRUE(j["outputs"][0]["values"][0].is_string());
}

TEST(Cli, AlgebraInfoBase) {
  auto r = run("algebra info base");
  ASSERT_EQ(r.status, 0);
  auto j = json_of(r);
  expect_keys(j, {"name", "generators", "relations", "dim", "nilpotency_index", "basis", "table", "valid"});
  EXPECT_EQ(j["dim"], 1);
  EXPECT_EQ(j["nilpotency_index"], 1);
}

TEST(Cli, AlgebraTensor) {
  auto r = run("algebra tensor jet:2 dual:1");
  ASSERT_EQ(r.status, 0);
  auto j = json_of(r);
  expect_keys(j, {"factors", "pair_index", "pairs", "algebra"});
  EXPECT_EQ(j["algebra"]["dim"], 6);
}

TEST(Cli, Partials) {
  auto r = run("partials --fn 'x*y' --at 2,5 --orders 1,1 --scalar rational");
  ASSERT_EQ(r.status, 0);
  auto j = json_of(r);
  expect_keys(j, {"entries"});
  EXPECT_EQ(j["entries"].size(), 4u);
}

TEST(Cli, MorphismApply) {
  auto r = run("morphism apply --from jet:2 --to 'dual:1*dual:1' --images 'x_1 + x_2' --value '1 + x + x^2'");
  ASSERT_EQ(r.status, 0);
  auto j = json_of(r);
  expect_keys(j, {"from", "to", "images", "matrix", "value", "result"});
  EXPECT_EQ(j["result"]["coefficients"], Json::parse(R"(["1", "1", "1", "2"])"));
}

TEST(Cli, LawsRunTensorComposition) {
  auto r = run("laws run --law L3 --scalar rational");
  ASSERT_EQ(r.status, 0);
  auto j = json_of(r);
  ASSERT_TRUE(j.is_array());
  for (const auto& rep : j) {
    expect_keys(rep, {"law_id", "name", "model", "scalar", "instances_run", "failures", "passed", "exact",
                      "max_abs_error", "max_rel_error", "tolerance", "witnesses"});
    EXPECT_EQ(rep["passed"], true);
  }
}

TEST(Cli, LawFailureExitsOne) {
  auto r = run("laws run --law L3 --defect struct_const");
  EXPECT_EQ(r.status, 1);
  auto j = json_of(r);
  EXPECT_EQ(j[0]["passed"], false);
  EXPECT_FALSE(j[0]["witnesses"].empty());
}

TEST(Cli, ModelCheck) {
  auto r = run("model check --input bundled:iso_swap --check exp-compat");
  ASSERT_EQ(r.status, 0);
  auto j = json_of(r);
  expect_keys(j, {"check", "category", "passed", "instances", "failures", "entries", "skipped"});
  auto neg = run("model check --input " WEILAD_SOURCE_DIR "/data/instances/arrow_const_a.json --check exp-compat");
  EXPECT_EQ(neg.status, 1);
  EXPECT_EQ(json_of(neg)["passed"], false);
}

TEST(Cli, Lists) {
  auto l = run("laws list");
  ASSERT_EQ(l.status, 0);
  EXPECT_EQ(json_of(l).size(), 12u);
  auto m = run("model list");
  ASSERT_EQ(m.status, 0);
  json_of(m);
}

TEST(Cli, ComputationErrorIsJson) {
  auto r = run("jet --fn 'log(x)' --at 0 --order 2");
  EXPECT_EQ(r.status, 1);
  auto j = json_of(r);
  EXPECT_EQ(j["error"]["name"], "DomainError");
  auto p = run("jet --fn 'log(x' --at 1 --order 2");
  EXPECT_EQ(p.status, 1);
  EXPECT_EQ(json_of(p)["error"]["name"], "ParseError");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("jet --at 0 --order 1").status, 2);
  EXPECT_EQ(run("jet --fn x --fn-file /etc/hostname --at 0 --order 1").status, 2);
  EXPECT_EQ(run("laws run --scalar complex").status, 2);
  EXPECT_EQ(run("model check --input bundled:z2 --check nope").status, 2);
  auto r = run("algebra info");
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ByteIdenticalOutput) {
  for (const char* args : {"laws run --seed 7", "laws run --scalar float --law L11", "model check --input bundled:arrow --check ccc",
                           "algebra info 'jet:2*dual:1'"}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.status, b.status) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, HumanFormat) {
  auto r = run("--format human algebra info dual:1");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("nilpotency index 2"), std::string::npos);
  auto after = run("algebra info dual:1 --format human");
  EXPECT_EQ(after.out, r.out);
}

TEST(Cli, EnumerationBoundFromEnvironment) {
  auto r = run("model check --input bundled:arrow --check ccc --max-enum 3");
  EXPECT_EQ(r.status, 1);
  auto e = run("model check --input bundled:arrow --check ccc");
  EXPECT_EQ(e.status, 0);
  const std::string env_cmd = "WEILAD_MAX_ENUM=3 ";
  Result viaenv;
  {
    FILE* p = popen((env_cmd + WEILAD_CLI + " model check --input bundled:arrow --check ccc >/dev/null 2>&1").c_str(), "r");
    ASSERT_NE(p, nullptr);
    const int st = pclose(p);
    viaenv.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  }
  EXPECT_EQ(viaenv.status, 1);
}
