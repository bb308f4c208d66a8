#include "weilad/weilad.h"

#include "weilad/fincat_io.hpp"
#include "weilad/laws.hpp"
#include "weilad/weil_functor.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>

using Json = nlohmann::ordered_json;
using namespace weilad;

struct weilad_context {
  std::uint64_t max_enum = 0;
  weilad_status status = WEILAD_OK;
  std::string message;
};

struct weilad_algebra {
  AlgebraPtr w;
};

struct weilad_function {
  SmoothMap f;
};

struct weilad_morphism {
  WeilMorphism phi;
  std::vector<WeilNumber<Rational>> images;
};

namespace {

template <class Body>
weilad_status guarded(weilad_context* ctx, Body&& body) {
  weilad_status s = WEILAD_OK;
  std::string msg;
  try {
    body();
  } catch (const Error& e) {
    s = static_cast<weilad_status>(e.code());
    msg = e.what();
  } catch (const std::bad_alloc&) {
    s = WEILAD_INTERNAL;
    msg = "out of memory";
  } catch (const std::exception& e) {
    s = WEILAD_INTERNAL;
    msg = e.what();
  }
  if (ctx) {
    ctx->status = s;
    ctx->message = std::move(msg);
  }
  return s;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require_out(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::bad_parameter, std::string(what) + " must not be null");
}

std::string text_of(const char* s, const char* what) {
  require_out(s, what);
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& x : out) {
    const auto b = x.find_first_not_of(" \t");
    const auto e = x.find_last_not_of(" \t");
    x = b == std::string::npos ? "" : x.substr(b, e - b + 1);
  }
  return out;
}

Json scalar_json(const Rational& q) { return format_rational(q); }
Json scalar_json(double x) { return x; }
std::string scalar_text(const Rational& q) { return format_rational(q); }
std::string scalar_text(double x) { return format_double(x); }

std::string combination(const WeilAlgebra& w, const std::vector<StructTerm>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& t : terms) {
    std::string c = format_rational(t.coefficient);
    std::string m = w.basis_name(t.index);
    std::string term = m == "1" ? c : c == "1" ? m : c == "-1" ? "-" + m : c + "*" + m;
    if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out;
}

std::string vector_text(const WeilAlgebra& w, const std::vector<Rational>& v) {
  std::vector<StructTerm> terms;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) terms.push_back({i, v[i]});
  return combination(w, terms);
}

Json algebra_json(const WeilAlgebra& w) {
  Json j;
  j["name"] = w.name();
  j["generators"] = w.generator_names();
  Json rels = Json::array();
  for (const auto& m : w.vanishing_monomials()) rels.push_back(m.to_string(w.generator_names()));
  j["relations"] = rels;
  j["dim"] = w.dim();
  j["nilpotency_index"] = w.nilpotency_index();
  Json basis = Json::array();
  for (std::size_t i = 0; i < w.dim(); ++i) basis.push_back(w.basis_name(i));
  j["basis"] = basis;
  Json table = Json::array();
  for (std::size_t a = 0; a < w.dim(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < w.dim(); ++b) row.push_back(combination(w, w.product(a, b)));
    table.push_back(row);
  }
  j["table"] = table;
  const auto report = validate_algebra(w);
  j["valid"] = report.passed();
  Json failed = Json::array();
  for (const auto& c : report.checks)
    if (!c.passed) failed.push_back({{"law", c.law}, {"witness", c.witness}, {"detail", c.detail}});
  j["failed_checks"] = failed;
  return j;
}

std::string algebra_text(const WeilAlgebra& w) {
  std::ostringstream os;
  os << "algebra " << w.name() << "\n";
  os << "dim " << w.dim() << ", nilpotency index " << w.nilpotency_index() << "\n";
  os << "basis:";
  for (std::size_t i = 0; i < w.dim(); ++i) os << " " << w.basis_name(i);
  os << "\nrelations:";
  for (const auto& m : w.vanishing_monomials()) os << " " << m.to_string(w.generator_names());
  os << "\nmultiplication table (row * column):\n";
  std::size_t width = 1;
  std::vector<std::vector<std::string>> cells(w.dim(), std::vector<std::string>(w.dim()));
  for (std::size_t a = 0; a < w.dim(); ++a)
    for (std::size_t b = 0; b < w.dim(); ++b) {
      cells[a][b] = combination(w, w.product(a, b));
      width = std::max({width, cells[a][b].size(), w.basis_name(a).size()});
    }
  auto pad = [&](const std::string& s) { return s + std::string(width + 2 - s.size(), ' '); };
  os << pad("");
  for (std::size_t b = 0; b < w.dim(); ++b) os << pad(w.basis_name(b));
  os << "\n";
  for (std::size_t a = 0; a < w.dim(); ++a) {
    os << pad(w.basis_name(a));
    for (std::size_t b = 0; b < w.dim(); ++b) os << pad(cells[a][b]);
    os << "\n";
  }
  const auto report = validate_algebra(w);
  os << "validation: " << (report.passed() ? "pass" : "FAIL") << "\n";
  for (const auto& c : report.checks)
    if (!c.passed) os << "  " << c.law << ": " << c.detail << "\n";
  return os.str();
}

Monomial power_of_x(unsigned i) { return i == 0 ? Monomial() : Monomial::power(0, i); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <class S>
S parse_scalar(const std::string& s) {
  const Rational q = parse_rational(s);
  if constexpr (std::is_same_v<S, Rational>) return q;
  else return to_double(q);
}

template <class S>
std::string jet_output(const SmoothMap& f, const std::string& at, unsigned order, Normalization norm,
                       weilad_format format) {
  const S a = parse_scalar<S>(at);
  const auto table = jet<S>(f, a, order, norm);
  const bool derivative = norm == Normalization::derivative;
  if (format == WEILAD_HUMAN) {
    std::ostringstream os;
    os << "jet of order " << order << " at " << f.variables().front() << " = " << scalar_text(a) << " ("
       << (derivative ? "derivatives" : "Taylor coefficients") << ")\n";
    for (std::size_t o = 0; o < f.output_count(); ++o) {
      if (f.output_count() > 1) os << "output " << o << ": " << f.component(o).to_string() << "\n";
      for (unsigned i = 0; i <= order; ++i)
        os << "  " << (derivative ? "f^(" + std::to_string(i) + ")" : "c_" + std::to_string(i)) << " = "
           << scalar_text(table.at(power_of_x(i))[o]) << "\n";
    }
    return os.str();
  }
  Json j;
  j["command"] = "jet";
  j["function"] = f.to_string();
  j["variables"] = f.variables();
  j["scalar"] = std::is_same_v<S, Rational> ? "rational" : "float";
  j["normalization"] = derivative ? "derivative" : "raw";
  j["at"] = scalar_json(a);
  j["order"] = order;
  Json outs = Json::array();
  for (std::size_t o = 0; o < f.output_count(); ++o) {
    Json vals = Json::array();
    for (unsigned i = 0; i <= order; ++i) vals.push_back(scalar_json(table.at(power_of_x(i))[o]));
    outs.push_back({{"expression", f.component(o).to_string()}, {"values", vals}});
  }
  j["outputs"] = outs;
  return dump(j);
}

template <class S>
std::string partials_output(const SmoothMap& f, const std::string& at, const std::string& orders, Normalization norm,
                            weilad_format format) {
  std::vector<S> a;
  for (const auto& s : split(at, ',')) a.push_back(parse_scalar<S>(s));
  std::vector<unsigned> r;
  for (const auto& s : split(orders, ',')) {
    const Rational q = parse_rational(s);
    if (q < 0 || denominator(q) != 1 || q > 64) throw Error(ErrorCode::bad_parameter, "order '" + s + "' is not a small non-negative integer");
    r.push_back(q.convert_to<unsigned>());
  }
  const auto table = partials<S>(f, a, r, norm);
  const WeilAlgebra& w = *table.algebra;
  const bool derivative = norm == Normalization::derivative;
  if (format == WEILAD_HUMAN) {
    std::ostringstream os;
    os << "partials at (";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? ", " : "") << f.variables()[i] << " = " << scalar_text(a[i]);
    os << ") (" << (derivative ? "derivatives" : "Taylor coefficients") << ")\n";
    for (std::size_t b = 0; b < w.dim(); ++b) {
      os << "  d[" << w.basis_name(b) << "] =";
      for (const auto& v : table.at(w.basis()[b])) os << " " << scalar_text(v);
      os << "\n";
    }
    return os.str();
  }
  Json j;
  j["command"] = "partials";
  j["function"] = f.to_string();
  j["variables"] = f.variables();
  j["scalar"] = std::is_same_v<S, Rational> ? "rational" : "float";
  j["normalization"] = derivative ? "derivative" : "raw";
  Json at_j = Json::array();
  for (const auto& x : a) at_j.push_back(scalar_json(x));
  j["at"] = at_j;
  j["orders"] = r;
  Json entries = Json::array();
  for (std::size_t b = 0; b < w.dim(); ++b) {
    std::vector<unsigned> idx;
    for (std::size_t v = 0; v < f.arity(); ++v) idx.push_back(w.basis()[b].exponent(v));
    Json vals = Json::array();
    for (const auto& v : table.at(w.basis()[b])) vals.push_back(scalar_json(v));
    entries.push_back({{"index", idx}, {"monomial", w.basis_name(b)}, {"values", vals}});
  }
  j["entries"] = entries;
  return dump(j);
}

}  // namespace

extern "C" {

const char* weilad_version(void) { return "0.1.0"; }

const char* weilad_status_name(int status) {
  switch (status) {
    case 0: case 1: case 2: case 3: case 4: case 5: case 6: case 7: case 8: case 9: case 10:
    case 11: case 12: case 13: case 14: case 15: case 16: case 17: case 18: case 19: case 99:
      return error_code_name(static_cast<ErrorCode>(status)).data();
    default: return "Unknown";
  }
}

weilad_context* weilad_context_new(void) { return new (std::nothrow) weilad_context(); }
void weilad_context_free(weilad_context* ctx) { delete ctx; }

weilad_status weilad_set_max_enum(weilad_context* ctx, uint64_t max_enum) {
  return guarded(ctx, [&] {
    require_out(ctx, "context");
    ctx->max_enum = max_enum;
  });
}

const char* weilad_last_error(const weilad_context* ctx) { return ctx ? ctx->message.c_str() : "no context"; }
weilad_status weilad_last_status(const weilad_context* ctx) { return ctx ? ctx->status : WEILAD_BAD_PARAMETER; }

weilad_status weilad_last_error_json(weilad_context* ctx, char** out) {
  if (!ctx || !out) return WEILAD_BAD_PARAMETER;
  Json j;
  j["error"] = {{"code", static_cast<int>(ctx->status)}, {"name", weilad_status_name(ctx->status)}, {"message", ctx->message}};
  try {
    *out = dup(dump(j));
  } catch (...) {
    return WEILAD_INTERNAL;
  }
  return WEILAD_OK;
}

void weilad_string_free(char* s) { std::free(s); }

weilad_status weilad_algebra_load(weilad_context* ctx, const char* spec, weilad_algebra** out) {
  return guarded(ctx, [&] {
    require_out(out, "out");
    *out = new weilad_algebra{load_algebra(text_of(spec, "spec"))};
  });
}

weilad_status weilad_algebra_tensor(weilad_context* ctx, const weilad_algebra* a, const weilad_algebra* b,
                                    weilad_algebra** out) {
  return guarded(ctx, [&] {
    require_out(a, "first algebra");
    require_out(b, "second algebra");
    require_out(out, "out");
    *out = new weilad_algebra{tensor_algebra(a->w, b->w)};
  });
}

void weilad_algebra_free(weilad_algebra* w) { delete w; }
size_t weilad_algebra_dim(const weilad_algebra* w) { return w ? w->w->dim() : 0; }

weilad_status weilad_algebra_describe(weilad_context* ctx, const weilad_algebra* w, weilad_format format, char** out) {
  return guarded(ctx, [&] {
    require_out(w, "algebra");
    require_out(out, "out");
    if (format == WEILAD_HUMAN) {
      *out = dup(algebra_text(*w->w));
      return;
    }
    Json j{{"command", "algebra info"}};
    j.update(algebra_json(*w->w));
    *out = dup(dump(j));
  });
}

weilad_status weilad_tensor_describe(weilad_context* ctx, const weilad_algebra* a, const weilad_algebra* b,
                                     weilad_format format, char** out) {
  return guarded(ctx, [&] {
    require_out(a, "first algebra");
    require_out(b, "second algebra");
    require_out(out, "out");
    const AlgebraPtr t = tensor_algebra(a->w, b->w);
    if (format == WEILAD_HUMAN) {
      std::ostringstream os;
      os << a->w->name() << " (x) " << b->w->name() << ": basis element i + j*" << a->w->dim()
         << " is (A-basis i) * (B-basis j)\n"
         << algebra_text(*t);
      *out = dup(os.str());
      return;
    }
    Json j{{"command", "algebra tensor"}};
    j["factors"] = {a->w->name(), b->w->name()};
    j["pair_index"] = "i + j*" + std::to_string(a->w->dim());
    Json pairs = Json::array();
    for (std::size_t jj = 0; jj < b->w->dim(); ++jj)
      for (std::size_t i = 0; i < a->w->dim(); ++i)
        pairs.push_back({{"index", pair_index(i, jj, a->w->dim())}, {"first", a->w->basis_name(i)}, {"second", b->w->basis_name(jj)}});
    j["pairs"] = pairs;
    j["algebra"] = algebra_json(*t);
    *out = dup(dump(j));
  });
}

weilad_status weilad_function_parse(weilad_context* ctx, const char* text, weilad_function** out) {
  return guarded(ctx, [&] {
    require_out(out, "out");
    const std::string s = text_of(text, "text");
    const auto b = s.find_first_not_of(" \t\r\n");
    const bool file_text = b != std::string::npos && s.compare(b, 4, "vars") == 0 &&
                           (s.size() == b + 4 || std::isspace(static_cast<unsigned char>(s[b + 4])));
    *out = new weilad_function{file_text ? parse_function_text(s) : function_from_expression(s)};
  });
}

weilad_status weilad_function_load(weilad_context* ctx, const char* path, weilad_function** out) {
  return guarded(ctx, [&] {
    require_out(out, "out");
    std::ifstream in(text_of(path, "path"), std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, std::string("cannot read '") + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = new weilad_function{parse_function_text(ss.str())};
  });
}

void weilad_function_free(weilad_function* f) { delete f; }
size_t weilad_function_arity(const weilad_function* f) { return f ? f->f.arity() : 0; }

weilad_status weilad_jet(weilad_context* ctx, const weilad_function* f, const char* at, unsigned order,
                         weilad_scalar scalar, weilad_normalization norm, weilad_format format, char** out) {
  return guarded(ctx, [&] {
    require_out(f, "function");
    require_out(out, "out");
    const auto n = norm == WEILAD_RAW ? Normalization::raw_coefficient : Normalization::derivative;
    const std::string a = text_of(at, "at");
    *out = dup(scalar == WEILAD_RATIONAL ? jet_output<Rational>(f->f, a, order, n, format)
                                         : jet_output<double>(f->f, a, order, n, format));
  });
}

weilad_status weilad_partials(weilad_context* ctx, const weilad_function* f, const char* at, const char* orders,
                              weilad_scalar scalar, weilad_normalization norm, weilad_format format, char** out) {
  return guarded(ctx, [&] {
    require_out(f, "function");
    require_out(out, "out");
    const auto n = norm == WEILAD_RAW ? Normalization::raw_coefficient : Normalization::derivative;
    const std::string a = text_of(at, "at"), r = text_of(orders, "orders");
    *out = dup(scalar == WEILAD_RATIONAL ? partials_output<Rational>(f->f, a, r, n, format)
                                         : partials_output<double>(f->f, a, r, n, format));
  });
}

weilad_status weilad_morphism_from_images(weilad_context* ctx, const weilad_algebra* source,
                                          const weilad_algebra* target, const char* images, weilad_morphism** out) {
  return guarded(ctx, [&] {
    require_out(source, "source");
    require_out(target, "target");
    require_out(out, "out");
    const std::string s = text_of(images, "images");
    std::vector<std::string> parts = s.empty() ? std::vector<std::string>{} : split(s, ';');
    const std::size_t gens = source->w->generator_names().size();
    if (parts.size() != gens)
      throw Error(ErrorCode::bad_parameter, "expected " + std::to_string(gens) + " generator images, got " +
                                                std::to_string(parts.size()));
    std::vector<WeilNumber<Rational>> elems;
    std::vector<std::vector<Rational>> coeffs;
    for (const auto& p : parts) {
      elems.push_back(parse_element(target->w, p));
      coeffs.push_back(elems.back().coeffs());
    }
    *out = new weilad_morphism{morphism_from_generator_images(source->w, target->w, coeffs), std::move(elems)};
  });
}

void weilad_morphism_free(weilad_morphism* m) { delete m; }

weilad_status weilad_morphism_apply(weilad_context* ctx, const weilad_morphism* m, const char* value,
                                    weilad_format format, char** out) {
  return guarded(ctx, [&] {
    require_out(m, "morphism");
    require_out(out, "out");
    const WeilNumber<Rational> x = parse_element(m->phi.source(), text_of(value, "value"));
    const WeilNumber<Rational> y = push_along(m->phi, x);
    const WeilAlgebra& src = *m->phi.source();
    const WeilAlgebra& tgt = *m->phi.target();
    if (format == WEILAD_HUMAN) {
      std::ostringstream os;
      os << src.name() << " -> " << tgt.name() << "\n";
      for (std::size_t g = 0; g < m->images.size(); ++g)
        os << "  " << src.generator_names()[g] << " |-> " << vector_text(tgt, m->images[g].coeffs()) << "\n";
      os << vector_text(src, x.coeffs()) << "  |->  " << vector_text(tgt, y.coeffs()) << "\n";
      *out = dup(os.str());
      return;
    }
    Json j{{"command", "morphism apply"}, {"from", src.name()}, {"to", tgt.name()}};
    Json imgs = Json::object();
    for (std::size_t g = 0; g < m->images.size(); ++g) imgs[src.generator_names()[g]] = vector_text(tgt, m->images[g].coeffs());
    j["images"] = imgs;
    Json matrix = Json::array();
    for (std::size_t r = 0; r < m->phi.matrix().rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m->phi.matrix().cols(); ++c) row.push_back(format_rational(m->phi.matrix()(r, c)));
      matrix.push_back(row);
    }
    j["matrix"] = matrix;
    Json xin = Json::array(), yout = Json::array();
    for (const auto& c : x.coeffs()) xin.push_back(format_rational(c));
    for (const auto& c : y.coeffs()) yout.push_back(format_rational(c));
    j["value"] = {{"coefficients", xin}, {"text", vector_text(src, x.coeffs())}};
    j["result"] = {{"coefficients", yout}, {"text", vector_text(tgt, y.coeffs())}};
    *out = dup(dump(j));
  });
}

weilad_status weilad_laws_run(weilad_context* ctx, const char* law, weilad_scalar scalar, uint64_t seed,
                              const char* defect, weilad_format format, int* all_passed, char** out) {
  return guarded(ctx, [&] {
    require_out(ctx, "context");
    require_out(out, "out");
    SuiteConfig config;
    config.mode = scalar == WEILAD_RATIONAL ? ScalarMode::rational : ScalarMode::binary_float;
    config.seed = seed;
    config.max_enum = ctx->max_enum;
    if (defect && *defect) config.defect = parse_defect(defect);
    if (law && *law) config.laws = {law};
    const auto reports = run_all(config);
    bool ok = std::all_of(reports.begin(), reports.end(), [](const LawReport& r) { return r.passed(); });
    if (all_passed) *all_passed = ok ? 1 : 0;
    *out = dup(format == WEILAD_HUMAN ? laws_to_table(reports) : laws_to_json(reports) + "\n");
  });
}

weilad_status weilad_laws_list(weilad_context* ctx, weilad_format format, char** out) {
  return guarded(ctx, [&] {
    require_out(out, "out");
    if (format == WEILAD_HUMAN) {
      *out = dup(laws_markdown());
      return;
    }
    Json a = Json::array();
    for (const auto& l : enumerate_laws())
      a.push_back({{"law_id", l.id}, {"name", l.name}, {"statement", l.statement}, {"numeric", l.numeric}, {"finset", l.finset}});
    *out = dup(dump(a));
  });
}

weilad_status weilad_model_check(weilad_context* ctx, const char* input, const char* check, unsigned probe_max_size,
                                 weilad_format format, int* passed, char** out) {
  return guarded(ctx, [&] {
    require_out(ctx, "context");
    require_out(out, "out");
    const auto kind = fincat::parse_model_check_kind(text_of(check, "check"));
    const auto inst = fincat::load_model_instance(text_of(input, "input"));
    fincat::ModelCheckOptions options;
    options.probe_max_size = probe_max_size;
    if (ctx->max_enum) options.config.max_enum = ctx->max_enum;
    const auto result = fincat::run_model_check(inst, kind, options);
    if (passed) *passed = result.passed() ? 1 : 0;
    *out = dup(format == WEILAD_HUMAN ? fincat::model_check_to_text(result) : fincat::model_check_to_json(result) + "\n");
  });
}

weilad_status weilad_model_list(weilad_context* ctx, weilad_format format, char** out) {
  return guarded(ctx, [&] {
    require_out(out, "out");
    const auto names = fincat::bundled_instance_names();
    if (format == WEILAD_HUMAN) {
      std::string s;
      for (const auto& n : names) s += "bundled:" + n + "\n";
      *out = dup(s);
      return;
    }
    Json a = Json::array();
    for (const auto& n : names) a.push_back("bundled:" + n);
    *out = dup(dump(Json{{"instances", a}}));
  });
}

}  // extern "C"
