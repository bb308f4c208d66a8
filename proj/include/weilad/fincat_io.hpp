#pragma once

#include "weilad/fincat.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace weilad::fincat {

/// A category with named functors, transformations and endofunctors, as
/// read from an instance file (format in docs/instance-format.md).
struct ModelInstance {
  CatPtr cat;
  std::vector<std::pair<std::string, FinFunctor>> functors;
  std::vector<std::pair<std::string, FinNatTrans>> nat_trans;
  std::vector<EndofunctorData> endofunctors;

  const FinFunctor& functor(const std::string& name) const;
};

/// Throws ParseError for malformed JSON and InvalidInstance for schema or
/// validation failures (the message names the offending key).
ModelInstance parse_model_instance(std::string_view json_text);
/// A path, or `bundled:<name>` for data/instances/<name>.json. Throws IoError.
ModelInstance load_model_instance(const std::string& source);
/// Names of the bundled instance files.
std::vector<std::string> bundled_instance_names();
std::string model_instance_to_json(const ModelInstance& instance);

enum class ModelCheckKind { ccc, slice_ccc, exp_compat, localization };

ModelCheckKind parse_model_check_kind(std::string_view name);
std::string_view model_check_kind_name(ModelCheckKind kind) noexcept;

struct ModelCheckOptions {
  /// Probes (plain or sliced) have every set of size <= this bound.
  std::size_t probe_max_size = 2;
  ModelConfig config;
};

struct ModelCheckEntry {
  std::string instance;
  ValidationReport report;
  /// Set when the check raised instead of reporting; the entry then fails.
  std::string error;
  std::string error_code;

  bool passed() const { return error.empty() && report.passed(); }
};

struct ModelCheckResult {
  ModelCheckKind kind = ModelCheckKind::ccc;
  std::string category;
  std::vector<ModelCheckEntry> entries;
  /// Endofunctors or objects left out, with the reason.
  std::vector<std::string> skipped;

  bool passed() const;
};

/// ccc: every ordered pair of functors. slice-ccc: every pair of
/// transformations with a common target L (sliced objects over L).
/// exp-compat: every endofunctor with every functor pair, and the slice form
/// for endofunctors carrying p and i. localization: facts 1-4 and the
/// flattening round trip for every endofunctor with p and i, every sliced
/// object and every functor R. Errors become failing entries.
ModelCheckResult run_model_check(const ModelInstance& instance, ModelCheckKind kind, const ModelCheckOptions& options);

std::string model_check_to_json(const ModelCheckResult& result);
std::string model_check_to_text(const ModelCheckResult& result);

}  // namespace weilad::fincat
