#include "laws_internal.hpp"

#include "weilad/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <future>
#include <iomanip>
#include <sstream>

namespace weilad {

std::string_view law_model_name(LawModel m) noexcept { return m == LawModel::numeric ? "numeric" : "finset"; }

const std::vector<LawInfo>& enumerate_laws() {
  static const std::vector<LawInfo> laws{
      {"L1", "limits", "T^W preserves finite limits (products, terminal object, equalizers).", true, true},
      {"L2", "unit", "T^k is the identity functor.", true, true},
      {"L3", "tensor composition", "T^{W2} o T^{W1} = T^{W1 (x) W2} under the nesting isomorphism.", true, true},
      {"L4", "exponential compatibility of T", "T^W(M^N) is isomorphic to (T^W M)^(T^W N) via the comparison map.",
       false, true},
      {"L5", "alpha identity", "alpha_id is the identity transformation.", true, true},
      {"L6", "alpha composition", "alpha_psi . alpha_phi = alpha_{psi o phi}.", true, true},
      {"L7", "alpha exponential compatibility",
       "The two composites T1(M^N) -> T2(M)^(T1 N) built from alpha agree.", false, true},
      {"L8", "T^W on the line", "T^W(R) = R (x) W: lifted maps agree with monomial arithmetic in W.", true, false},
      {"L9", "alpha on the line", "alpha_phi(R) = R (x) phi: pushforward is substitution of generator images.", true,
       false},
      {"L10", "slice exponentials",
       "Every slice is cartesian closed and the sliced T is compatible with slice exponentials.", false, true},
      {"L11", "alpha naturality", "alpha_phi is natural: alpha . T1(f) = T2(f) . alpha.", true, true},
      {"L12", "localization", "The sliced T over L is the localization of T at L; iterated slices flatten.", false,
       true},
  };
  return laws;
}

const LawInfo& law_info(const std::string& id) {
  for (const auto& l : enumerate_laws())
    if (l.id == id) return l;
  throw Error(ErrorCode::bad_parameter, "unknown law '" + id + "' (expected L1..L12)");
}

std::string_view defect_name(Defect d) noexcept {
  switch (d) {
    case Defect::none: return "none";
    case Defect::struct_const: return "struct_const";
    case Defect::non_natural: return "non_natural";
    case Defect::exp_reindex: return "exp_reindex";
  }
  return "none";
}

Defect parse_defect(std::string_view name) {
  for (auto d : {Defect::none, Defect::struct_const, Defect::non_natural, Defect::exp_reindex})
    if (defect_name(d) == name) return d;
  throw Error(ErrorCode::bad_parameter, "unknown defect '" + std::string(name) + "'");
}

LawReport run_law(const LawInstance& instance) {
  const LawInfo& info = law_info(instance.law_id);
  const bool available = instance.model == LawModel::numeric ? info.numeric : info.finset;
  if (!available)
    throw Error(ErrorCode::unavailable_in_model,
                info.id + " is not available in the " + std::string(law_model_name(instance.model)) + " model");
  return instance.model == LawModel::numeric ? detail::run_numeric_law(instance) : detail::run_finset_law(instance);
}

std::vector<LawReport> run_all(const SuiteConfig& config) {
  std::vector<LawInstance> plan;
  for (const auto& info : enumerate_laws()) {
    if (!config.laws.empty() && std::find(config.laws.begin(), config.laws.end(), info.id) == config.laws.end())
      continue;
    for (auto model : {LawModel::numeric, LawModel::finset}) {
      if (!(model == LawModel::numeric ? info.numeric : info.finset)) continue;
      LawInstance in;
      in.law_id = info.id;
      in.model = model;
      in.mode = config.mode;
      in.seed = config.seed;
      in.max_enum = config.max_enum;
      in.defect = config.defect;
      plan.push_back(std::move(in));
    }
  }
  for (const auto& id : config.laws) law_info(id);
  // Laws are independent; results are collected in plan order.
  std::vector<std::future<LawReport>> running;
  for (const auto& in : plan) running.push_back(std::async(std::launch::async, [in] { return run_law(in); }));
  std::vector<LawReport> out;
  for (auto& f : running) out.push_back(f.get());
  return out;
}

namespace {

nlohmann::ordered_json report_json(const LawReport& r) {
  nlohmann::ordered_json j;
  j["law_id"] = r.law_id;
  j["name"] = law_info(r.law_id).name;
  j["model"] = law_model_name(r.model);
  j["scalar"] = scalar_mode_name(r.mode);
  j["instances_run"] = r.instances_run;
  j["failures"] = r.failures;
  j["passed"] = r.passed();
  j["exact"] = r.exact;
  j["max_abs_error"] = r.max_abs_error;
  j["max_rel_error"] = r.max_rel_error;
  j["tolerance"] = r.tolerance;
  auto w = nlohmann::ordered_json::array();
  for (const auto& x : r.witnesses) {
    nlohmann::ordered_json e;
    e["instance"] = x.instance;
    e["detail"] = x.detail;
    e["indices"] = x.indices;
    w.push_back(std::move(e));
  }
  j["witnesses"] = std::move(w);
  return j;
}

}  // namespace

std::string laws_to_json(const std::vector<LawReport>& reports) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& r : reports) a.push_back(report_json(r));
  return a.dump(2);
}

namespace {

std::string short_error(double e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", e);
  return buf;
}

}  // namespace

std::string laws_to_table(const std::vector<LawReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(5) << "law" << std::setw(8) << "model" << std::setw(10) << "scalar" << std::setw(11)
     << "instances" << std::setw(10) << "failures" << std::setw(14) << "max rel err"
     << "result\n";
  std::size_t failed = 0;
  for (const auto& r : reports) {
    os << std::setw(5) << r.law_id << std::setw(8) << law_model_name(r.model) << std::setw(10)
       << (r.model == LawModel::finset ? "-" : std::string(scalar_mode_name(r.mode))) << std::setw(11)
       << r.instances_run << std::setw(10) << r.failures << std::setw(14)
       << (r.exact ? std::string("exact") : short_error(r.max_rel_error)) << (r.passed() ? "pass" : "FAIL") << "\n";
    for (const auto& w : r.witnesses) os << "    witness: " << w.instance << ": " << w.detail << "\n";
    if (!r.passed()) ++failed;
  }
  os << reports.size() - failed << "/" << reports.size() << " law runs passed\n";
  return os.str();
}

std::string laws_markdown() {
  std::ostringstream os;
  os << "# Laws\n\n"
     << "Generated from `enumerate_laws()`; `docs/laws.md` is compared against it in the test suite.\n\n"
     << "| id | name | statement | numeric | finset |\n"
     << "|----|------|-----------|---------|--------|\n";
  for (const auto& l : enumerate_laws())
    os << "| " << l.id << " | " << l.name << " | " << l.statement << " | " << (l.numeric ? "yes" : "no") << " | "
       << (l.finset ? "yes" : "no") << " |\n";
  return os.str();
}

}  // namespace weilad
