#pragma once

#include "weilad/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace weilad {

enum class LawModel { numeric, finset };

std::string_view law_model_name(LawModel m) noexcept;

struct LawInfo {
  std::string id;  // L1 .. L12
  std::string name;
  std::string statement;
  bool numeric = false;
  bool finset = false;
};

/// The twelve laws in id order.
const std::vector<LawInfo>& enumerate_laws();
const LawInfo& law_info(const std::string& id);

/// Planted defects for mutation testing.
enum class Defect { none, struct_const, non_natural, exp_reindex };

std::string_view defect_name(Defect d) noexcept;
Defect parse_defect(std::string_view name);

struct LawInstance {
  std::string law_id;
  LawModel model = LawModel::numeric;
  ScalarMode mode = ScalarMode::rational;
  std::uint64_t seed = 1;
  /// Numeric model: algebra specs overriding the curated family.
  std::vector<std::string> algebras;
  /// Numeric model: function-file texts (or corpus names) overriding the corpus.
  std::vector<std::string> maps;
  /// Finite model: bundled category names overriding the full list.
  std::vector<std::string> categories;
  std::uint64_t max_enum = 0;  // 0: default bound
  Defect defect = Defect::none;
};

struct LawWitness {
  std::string instance;
  std::string detail;
  std::vector<std::size_t> indices;
};

struct LawReport {
  std::string law_id;
  LawModel model = LawModel::numeric;
  ScalarMode mode = ScalarMode::rational;
  std::size_t instances_run = 0;
  std::size_t failures = 0;
  /// Every comparison was an exact equality (rational or combinatorial).
  bool exact = true;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  /// At most the first 10 failures.
  std::vector<LawWitness> witnesses;

  bool passed() const { return failures == 0; }
};

/// Throws UnavailableInModel when the law has no implementation in
/// instance.model; SizeLimit propagates.
LawReport run_law(const LawInstance& instance);

struct SuiteConfig {
  ScalarMode mode = ScalarMode::rational;
  std::uint64_t seed = 1;
  std::uint64_t max_enum = 0;
  Defect defect = Defect::none;
  /// Empty: every law.
  std::vector<std::string> laws;
};

/// Every requested law in every model where it is available.
std::vector<LawReport> run_all(const SuiteConfig& config);

/// JSON array of reports (stable key order, deterministic).
std::string laws_to_json(const std::vector<LawReport>& reports);
std::string laws_to_table(const std::vector<LawReport>& reports);
/// Markdown traceability table generated from enumerate_laws.
std::string laws_markdown();

// ---- curated numeric data -------------------------------------------------

struct CorpusEntry {
  std::string name;  // file stem, e.g. "r01_square"
  std::string text;  // function-file text
};

/// Function files bundled under data/corpus/<kind>/ ("rational" or "float").
std::vector<CorpusEntry> corpus(const std::string& kind);

/// Jet and partials of every float-corpus map against the finite-difference
/// oracle for all multi-indices of total order <= max_order.
LawReport check_extraction(std::uint64_t seed, unsigned max_order = 3, double tolerance = 1e-5);

}  // namespace weilad
