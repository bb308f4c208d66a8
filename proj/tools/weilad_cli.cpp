// weilad command-line front end; talks to the library only through weilad.h.

#include "weilad/weilad.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Options {
  std::string format = "json";
  std::uint64_t max_enum = 0;

  // algebra
  std::string spec, spec_b;
  // jet / partials
  std::string fn, fn_file, at, orders, scalar = "float", normalization = "derivative";
  unsigned order = 0;
  // morphism
  std::string from, to, value;
  std::vector<std::string> images;
  // laws
  std::string law, law_scalar = "rational", defect = "none";
  std::uint64_t seed = 1;
  // model
  std::string input, check;
  unsigned probe_size = 2;
};

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Context = std::unique_ptr<weilad_context, Deleter<weilad_context, weilad_context_free>>;
using Algebra = std::unique_ptr<weilad_algebra, Deleter<weilad_algebra, weilad_algebra_free>>;
using Function = std::unique_ptr<weilad_function, Deleter<weilad_function, weilad_function_free>>;
using Morphism = std::unique_ptr<weilad_morphism, Deleter<weilad_morphism, weilad_morphism_free>>;

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o), ctx_(weilad_context_new()) {
    format_ = o.format == "human" ? WEILAD_HUMAN : WEILAD_JSON;
    if (o.max_enum) weilad_set_max_enum(ctx_.get(), o.max_enum);
  }

  /// Prints `out` (or the error) and maps the status to an exit code.
  int emit(weilad_status s, char* out, int passed = 1) {
    if (s != WEILAD_OK) {
      if (format_ == WEILAD_JSON) {
        char* err = nullptr;
        weilad_last_error_json(ctx_.get(), &err);
        std::fputs(err, stdout);
        weilad_string_free(err);
      }
      std::cerr << "error (" << weilad_status_name(s) << "): " << weilad_last_error(ctx_.get()) << "\n";
      return kFailure;
    }
    std::fputs(out, stdout);
    weilad_string_free(out);
    return passed ? kOk : kFailure;
  }

  int fail() { return emit(weilad_last_status(ctx_.get()), nullptr); }

  bool algebra(const std::string& spec, Algebra& out) {
    weilad_algebra* w = nullptr;
    if (weilad_algebra_load(ctx_.get(), spec.c_str(), &w) != WEILAD_OK) return false;
    out.reset(w);
    return true;
  }

  bool function(Function& out) {
    weilad_function* f = nullptr;
    const auto s = o_.fn_file.empty() ? weilad_function_parse(ctx_.get(), o_.fn.c_str(), &f)
                                      : weilad_function_load(ctx_.get(), o_.fn_file.c_str(), &f);
    if (s != WEILAD_OK) return false;
    out.reset(f);
    return true;
  }

  int algebra_info() {
    Algebra w;
    if (!algebra(o_.spec, w)) return fail();
    char* out = nullptr;
    const auto s = weilad_algebra_describe(ctx_.get(), w.get(), format_, &out);
    return emit(s, out);
  }

  int algebra_tensor() {
    Algebra a, b;
    if (!algebra(o_.spec, a) || !algebra(o_.spec_b, b)) return fail();
    char* out = nullptr;
    const auto s = weilad_tensor_describe(ctx_.get(), a.get(), b.get(), format_, &out);
    return emit(s, out);
  }

  int jet() {
    Function f;
    if (!function(f)) return fail();
    char* out = nullptr;
    const auto s =
        weilad_jet(ctx_.get(), f.get(), o_.at.c_str(), o_.order, scalar(o_.scalar), norm(), format_, &out);
    return emit(s, out);
  }

  int partials() {
    Function f;
    if (!function(f)) return fail();
    char* out = nullptr;
    const auto s = weilad_partials(ctx_.get(), f.get(), o_.at.c_str(), o_.orders.c_str(), scalar(o_.scalar), norm(),
                                   format_, &out);
    return emit(s, out);
  }

  int morphism_apply() {
    Algebra a, b;
    if (!algebra(o_.from, a) || !algebra(o_.to, b)) return fail();
    std::string joined;
    for (const auto& s : o_.images) joined += (joined.empty() ? "" : ";") + s;
    weilad_morphism* m = nullptr;
    if (weilad_morphism_from_images(ctx_.get(), a.get(), b.get(), joined.c_str(), &m) != WEILAD_OK) return fail();
    Morphism phi(m);
    char* out = nullptr;
    const auto s = weilad_morphism_apply(ctx_.get(), phi.get(), o_.value.c_str(), format_, &out);
    return emit(s, out);
  }

  int laws_run() {
    char* out = nullptr;
    int passed = 0;
    const auto s = weilad_laws_run(ctx_.get(), o_.law.c_str(), scalar(o_.law_scalar), o_.seed, o_.defect.c_str(),
                                   format_, &passed, &out);
    return emit(s, out, passed);
  }

  int laws_list() {
    char* out = nullptr;
    const auto s = weilad_laws_list(ctx_.get(), format_, &out);
    return emit(s, out);
  }

  int model_check() {
    char* out = nullptr;
    int passed = 0;
    const auto s =
        weilad_model_check(ctx_.get(), o_.input.c_str(), o_.check.c_str(), o_.probe_size, format_, &passed, &out);
    return emit(s, out, passed);
  }

  int model_list() {
    char* out = nullptr;
    const auto s = weilad_model_list(ctx_.get(), format_, &out);
    return emit(s, out);
  }

 private:
  static weilad_scalar scalar(const std::string& s) { return s == "rational" ? WEILAD_RATIONAL : WEILAD_FLOAT; }
  weilad_normalization norm() const { return o_.normalization == "raw" ? WEILAD_RAW : WEILAD_DERIVATIVE; }

  const Options& o_;
  Context ctx_;
  weilad_format format_ = WEILAD_JSON;
};

std::uint64_t env_max_enum() {
  const char* v = std::getenv("WEILAD_MAX_ENUM");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  return end && *end == '\0' ? n : 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Weil algebras, Weil functors and finite functor-category checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(weilad_version()));
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "human"}));
  app.add_option("--max-enum", o.max_enum, "Enumeration bound for the finite model (overrides WEILAD_MAX_ENUM)")
      ->check(CLI::PositiveNumber);

  const auto scalar_check = CLI::IsMember({"rational", "float"});

  auto* algebra = app.add_subcommand("algebra", "Inspect Weil algebras")->require_subcommand(1)->fallthrough();
  auto* info = algebra->add_subcommand("info", "Basis, nilpotency index and multiplication table");
  info->add_option("spec", o.spec, "base, dual:n, jet:r, mixed:r1,..., A*B or a file")->required();
  auto* tensor = algebra->add_subcommand("tensor", "Tensor product of two algebras");
  tensor->add_option("first", o.spec, "First factor")->required();
  tensor->add_option("second", o.spec_b, "Second factor")->required();

  auto add_function = [&](CLI::App* cmd) {
    auto* group = cmd->add_option_group("function");
    group->add_option("--fn", o.fn, "Inline single-output expression");
    group->add_option("--fn-file", o.fn_file, "Function file (vars line, one output per line)")
        ->check(CLI::ExistingFile);
    group->require_option(1);
    cmd->add_option("--scalar", o.scalar, "Scalar mode")->check(scalar_check)->capture_default_str();
    cmd->add_option("--normalization", o.normalization, "derivative: f^(i)(a); raw: f^(i)(a)/i!")
        ->check(CLI::IsMember({"derivative", "raw"}))
        ->capture_default_str();
  };
  auto* jet = app.add_subcommand("jet", "Derivatives of a one-variable map up to an order")->fallthrough();
  add_function(jet);
  jet->add_option("--at", o.at, "Base point")->required();
  jet->add_option("--order", o.order, "Highest derivative order")->required()->check(CLI::Range(0u, 64u));
  auto* partials = app.add_subcommand("partials", "Mixed partial derivatives")->fallthrough();
  add_function(partials);
  partials->add_option("--at", o.at, "Base point, comma-separated")->required();
  partials->add_option("--orders", o.orders, "Order per variable, comma-separated")->required();

  auto* morphism = app.add_subcommand("morphism", "Algebra morphisms")->require_subcommand(1)->fallthrough();
  auto* apply = morphism->add_subcommand("apply", "Push an element along the morphism given by generator images");
  apply->add_option("--from", o.from, "Source algebra")->required();
  apply->add_option("--to", o.to, "Target algebra")->required();
  apply->add_option("--images", o.images, "Generator images in the target (repeat or separate with ';')")
      ->required()
      ->allow_extra_args(false);
  apply->add_option("--value", o.value, "Element of the source")->required();

  auto* laws = app.add_subcommand("laws", "Law suite")->require_subcommand(1)->fallthrough();
  auto* run = laws->add_subcommand("run", "Run one law or all of them");
  run->add_option("--law", o.law, "Law id (L1..L12); all when omitted");
  run->add_option("--scalar", o.law_scalar, "Scalar mode for the numeric model")->check(scalar_check)->capture_default_str();
  run->add_option("--seed", o.seed, "Seed for sampled inputs")->capture_default_str();
  run->add_option("--defect", o.defect, "Planted defect for mutation runs")
      ->check(CLI::IsMember({"none", "struct_const", "non_natural", "exp_reindex"}))
      ->capture_default_str();
  auto* list = laws->add_subcommand("list", "List the laws and where they run");

  auto* model = app.add_subcommand("model", "Finite functor-category model")->require_subcommand(1)->fallthrough();
  auto* check = model->add_subcommand("check", "Run a check over an instance file");
  check->add_option("--input", o.input, "Instance file, or bundled:<name>")->required();
  check->add_option("--check", o.check, "Check kind")
      ->required()
      ->check(CLI::IsMember({"ccc", "slice-ccc", "exp-compat", "localization"}));
  check->add_option("--probe-size", o.probe_size, "Largest set size of enumerated probes")
      ->check(CLI::Range(0u, 3u))
      ->capture_default_str();
  auto* mlist = model->add_subcommand("list", "List the bundled instances");

  for (auto* sub : {info, tensor, apply, run, list, check, mlist}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (!o.max_enum) o.max_enum = env_max_enum();

  Runner r(o);
  if (*info) return r.algebra_info();
  if (*tensor) return r.algebra_tensor();
  if (*jet) return r.jet();
  if (*partials) return r.partials();
  if (*apply) return r.morphism_apply();
  if (*run) return r.laws_run();
  if (*list) return r.laws_list();
  if (*check) return r.model_check();
  if (*mlist) return r.model_list();
  std::cerr << app.help();
  return kUsage;
}
