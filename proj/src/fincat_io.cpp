#include "weilad/fincat_io.hpp"

#include "weilad/embedded_data.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace weilad::fincat {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::invalid_instance, where + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) invalid(where, std::string("missing key '") + key + "'");
  return j.at(key);
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) invalid(where, "expected a string");
  return j.get<std::string>();
}

std::size_t as_index(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) invalid(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

CatPtr parse_category(const Json& root) {
  if (root.contains("category")) {
    const std::string name = as_string(root["category"], "category");
    try {
      return bundled_category(name);
    } catch (const Error&) {
      invalid("category", "unknown bundled category '" + name + "'");
    }
  }
  std::vector<std::string> objects;
  const Json& objs = member(root, "objects", "root");
  if (!objs.is_array() || objs.empty()) invalid("objects", "expected a non-empty array of strings");
  for (const auto& o : objs) objects.push_back(as_string(o, "objects"));
  auto object_of = [&](const std::string& s, const std::string& where) {
    auto it = std::find(objects.begin(), objects.end(), s);
    if (it == objects.end()) invalid(where, "unknown object '" + s + "'");
    return static_cast<std::size_t>(it - objects.begin());
  };
  std::vector<Arrow> arrows;
  std::vector<std::size_t> identities;
  const Json ids = root.value("identities", Json::object());
  for (std::size_t o = 0; o < objects.size(); ++o) {
    identities.push_back(arrows.size());
    const std::string id = ids.contains(objects[o]) ? as_string(ids[objects[o]], "identities." + objects[o])
                                                     : "id_" + objects[o];
    arrows.push_back({id, o, o});
  }
  for (const auto& [k, _] : ids.items()) object_of(k, "identities");
  if (root.contains("morphisms")) {
    if (!root["morphisms"].is_array()) invalid("morphisms", "expected an array");
    for (const auto& m : root["morphisms"]) {
      const std::string id = as_string(member(m, "id", "morphisms"), "morphisms.id");
      for (const auto& a : arrows)
        if (a.id == id) invalid("morphisms", "duplicate morphism id '" + id + "'");
      arrows.push_back({id, object_of(as_string(member(m, "dom", "morphisms." + id), "morphisms." + id + ".dom"),
                                      "morphisms." + id),
                        object_of(as_string(member(m, "cod", "morphisms." + id), "morphisms." + id + ".cod"),
                                  "morphisms." + id)});
    }
  }
  auto arrow_of = [&](const std::string& s, const std::string& where) {
    for (std::size_t a = 0; a < arrows.size(); ++a)
      if (arrows[a].id == s) return a;
    invalid(where, "unknown morphism '" + s + "'");
  };
  const std::size_t n = arrows.size();
  FinCat::CompTable comp(n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t f = 0; f < n; ++f) {
    comp[identities[arrows[f].cod]][f] = f;
    comp[f][identities[arrows[f].dom]] = f;
  }
  if (root.contains("comp")) {
    if (!root["comp"].is_object()) invalid("comp", "expected an object {g: {f: g∘f}}");
    for (const auto& [g, row] : root["comp"].items()) {
      const std::size_t gi = arrow_of(g, "comp");
      if (!row.is_object()) invalid("comp." + g, "expected an object {f: g∘f}");
      for (const auto& [f, gf] : row.items())
        comp[gi][arrow_of(f, "comp." + g)] = arrow_of(as_string(gf, "comp." + g + "." + f), "comp." + g + "." + f);
    }
  }
  auto cat = std::make_shared<const FinCat>(root.value("name", std::string("instance")), objects, arrows, identities,
                                            std::move(comp));
  require(validate_category(*cat), "category");
  return cat;
}

/// Reads an element reference: an index or a label of `object` in `f`.
std::size_t element(const Json& j, const FinFunctor& f, std::size_t object, const std::string& where) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (object < f.labels.size())
      for (std::size_t x = 0; x < f.labels[object].size(); ++x)
        if (f.labels[object][x] == s) return x;
    invalid(where, "unknown element '" + s + "'");
  }
  const std::size_t x = as_index(j, where);
  if (x >= f.size(object)) invalid(where, "element " + std::to_string(x) + " out of range");
  return x;
}

FinFunctor parse_functor(const CatPtr& c, const std::string& name, const Json& j) {
  const std::string where = "functors." + name;
  FinFunctor f{c, std::vector<std::size_t>(c->object_count(), 0), std::vector<Table>(c->arrow_count()),
               std::vector<std::vector<std::string>>(c->object_count())};
  const Json& sets = member(j, "sets", where);
  for (std::size_t o = 0; o < c->object_count(); ++o) {
    const std::string& obj = c->objects()[o];
    const Json& s = member(sets, obj.c_str(), where + ".sets");
    if (s.is_array()) {
      for (const auto& l : s) f.labels[o].push_back(as_string(l, where + ".sets." + obj));
      f.sizes[o] = f.labels[o].size();
    } else {
      f.sizes[o] = as_index(s, where + ".sets." + obj);
    }
  }
  const Json maps = j.value("maps", Json::object());
  for (const auto& [k, _] : maps.items()) c->arrow_index(k);
  for (std::size_t a = 0; a < c->arrow_count(); ++a) {
    const Arrow& ar = c->arrow(a);
    const std::string w = where + ".maps." + ar.id;
    if (!maps.contains(ar.id)) {
      // Identities and maps into a one-element set may be omitted.
      const bool forced = f.sizes[ar.cod] == 1 || f.sizes[ar.dom] == 0;
      if (a != c->identity(ar.dom) && !forced) invalid(where + ".maps", "missing morphism '" + ar.id + "'");
      for (std::size_t x = 0; x < f.sizes[ar.dom]; ++x) f.maps[a].push_back(a == c->identity(ar.dom) ? x : 0);
      continue;
    }
    const Json& t = maps[ar.id];
    if (!t.is_array() || t.size() != f.sizes[ar.dom]) invalid(w, "expected " + std::to_string(f.sizes[ar.dom]) + " images");
    for (const auto& y : t) f.maps[a].push_back(element(y, f, ar.cod, w));
  }
  require(validate_functor(f), where);
  return f;
}

FinNatTrans parse_nat(const ModelInstance& inst, const std::string& name, const Json& j) {
  const std::string where = "nat_trans." + name;
  auto lookup = [&](const char* key) -> const FinFunctor& {
    const std::string s = as_string(member(j, key, where), where + "." + key);
    for (const auto& [n, f] : inst.functors)
      if (n == s) return f;
    invalid(where + "." + key, "unknown functor '" + s + "'");
  };
  FinNatTrans t{lookup("source"), lookup("target"), {}};
  const Json& comps = member(j, "components", where);
  const FinCat& c = *inst.cat;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    const std::string w = where + ".components." + c.objects()[o];
    const Json& col = member(comps, c.objects()[o].c_str(), where + ".components");
    if (!col.is_array() || col.size() != t.source.size(o))
      invalid(w, "expected " + std::to_string(t.source.size(o)) + " images");
    Table tab;
    for (const auto& y : col) tab.push_back(element(y, t.target, o, w));
    t.components.push_back(std::move(tab));
  }
  require(validate_nat(t), where);
  return t;
}

EndofunctorData parse_endofunctor(const CatPtr& c, const std::string& name, const Json& j) {
  const std::string where = "endofunctors." + name;
  EndofunctorData g{name, c, {}, {}, std::nullopt, std::nullopt};
  auto object_of = [&](const Json& v, const std::string& w) {
    const std::string s = as_string(v, w);
    for (std::size_t o = 0; o < c->object_count(); ++o)
      if (c->objects()[o] == s) return o;
    invalid(w, "unknown object '" + s + "'");
  };
  auto arrow_of = [&](const Json& v, const std::string& w) {
    const std::string s = as_string(v, w);
    for (std::size_t a = 0; a < c->arrow_count(); ++a)
      if (c->arrow(a).id == s) return a;
    invalid(w, "unknown morphism '" + s + "'");
  };
  const Json& objs = member(j, "objects", where);
  for (const auto& obj : c->objects()) g.on_objects.push_back(object_of(member(objs, obj.c_str(), where + ".objects"), where + ".objects." + obj));
  const Json mors = j.value("morphisms", Json::object());
  for (std::size_t a = 0; a < c->arrow_count(); ++a) {
    const Arrow& ar = c->arrow(a);
    if (mors.contains(ar.id)) g.on_arrows.push_back(arrow_of(mors[ar.id], where + ".morphisms." + ar.id));
    else if (a == c->identity(ar.dom)) g.on_arrows.push_back(c->identity(g.on_objects[ar.dom]));
    else invalid(where + ".morphisms", "missing morphism '" + ar.id + "'");
  }
  for (const char* key : {"p", "i"}) {
    if (!j.contains(key)) continue;
    std::vector<std::size_t> fam;
    for (const auto& obj : c->objects())
      fam.push_back(arrow_of(member(j[key], obj.c_str(), where + "." + key), where + "." + key + "." + obj));
    (std::string(key) == "p" ? g.p : g.i) = std::move(fam);
  }
  require(validate_endofunctor(g), where);
  return g;
}

Json element_json(const FinFunctor& f, std::size_t object, std::size_t x) {
  if (object < f.labels.size() && x < f.labels[object].size()) return f.labels[object][x];
  return x;
}

Json report_json(const ValidationReport& r) {
  Json a = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["law"] = c.law;
    e["passed"] = c.passed;
    e["witness"] = c.witness;
    e["detail"] = c.detail;
    a.push_back(std::move(e));
  }
  return a;
}

}  // namespace

const FinFunctor& ModelInstance::functor(const std::string& name) const {
  for (const auto& [n, f] : functors)
    if (n == name) return f;
  throw Error(ErrorCode::bad_parameter, "no functor named '" + name + "'");
}

ModelInstance parse_model_instance(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) invalid("root", "expected a JSON object");
  ModelInstance inst;
  inst.cat = parse_category(root);
  for (const char* key : {"functors", "nat_trans", "endofunctors"})
    if (root.contains(key) && !root[key].is_object()) invalid(key, "expected an object keyed by name");
  const Json functors = root.value("functors", Json::object());
  const Json nats = root.value("nat_trans", Json::object());
  const Json endos = root.value("endofunctors", Json::object());
  for (const auto& [name, f] : functors.items()) inst.functors.emplace_back(name, parse_functor(inst.cat, name, f));
  for (const auto& [name, t] : nats.items()) inst.nat_trans.emplace_back(name, parse_nat(inst, name, t));
  for (const auto& [name, g] : endos.items()) inst.endofunctors.push_back(parse_endofunctor(inst.cat, name, g));
  return inst;
}

std::vector<std::string> bundled_instance_names() {
  std::vector<std::string> out;
  const std::string prefix = "instances/";
  for (const auto& [path, _] : embedded_data())
    if (path.rfind(prefix, 0) == 0) out.push_back(path.substr(prefix.size(), path.size() - prefix.size() - 5));
  return out;
}

ModelInstance load_model_instance(const std::string& source) {
  const std::string tag = "bundled:";
  if (source.rfind(tag, 0) == 0) {
    const auto& data = embedded_data();
    auto it = data.find("instances/" + source.substr(tag.size()) + ".json");
    if (it == data.end()) throw Error(ErrorCode::io_error, "no bundled instance named '" + source.substr(tag.size()) + "'");
    return parse_model_instance(it->second);
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read '" + source + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_instance(ss.str());
}

std::string model_instance_to_json(const ModelInstance& inst) {
  const FinCat& c = *inst.cat;
  Json root;
  root["name"] = c.name();
  root["objects"] = c.objects();
  Json ids = Json::object(), mors = Json::array(), comp = Json::object();
  for (std::size_t o = 0; o < c.object_count(); ++o) ids[c.objects()[o]] = c.arrow(c.identity(o)).id;
  std::vector<bool> is_id(c.arrow_count(), false);
  for (auto i : c.identities()) is_id[i] = true;
  for (std::size_t a = 0; a < c.arrow_count(); ++a) {
    if (is_id[a]) continue;
    const Arrow& ar = c.arrow(a);
    mors.push_back({{"id", ar.id}, {"dom", c.objects()[ar.dom]}, {"cod", c.objects()[ar.cod]}});
  }
  for (std::size_t g = 0; g < c.arrow_count(); ++g)
    for (std::size_t f = 0; f < c.arrow_count(); ++f) {
      const auto gf = c.composite(g, f);
      if (!gf || is_id[g] || is_id[f]) continue;
      comp[c.arrow(g).id][c.arrow(f).id] = c.arrow(*gf).id;
    }
  root["identities"] = ids;
  root["morphisms"] = mors;
  root["comp"] = comp;
  Json fs = Json::object();
  for (const auto& [name, f] : inst.functors) {
    Json sets = Json::object(), maps = Json::object();
    for (std::size_t o = 0; o < c.object_count(); ++o) {
      if (o < f.labels.size() && !f.labels[o].empty()) sets[c.objects()[o]] = f.labels[o];
      else sets[c.objects()[o]] = f.sizes[o];
    }
    for (std::size_t a = 0; a < c.arrow_count(); ++a) {
      if (is_id[a]) continue;
      Json t = Json::array();
      for (auto y : f.maps[a]) t.push_back(element_json(f, c.arrow(a).cod, y));
      maps[c.arrow(a).id] = t;
    }
    fs[name] = {{"sets", sets}, {"maps", maps}};
  }
  root["functors"] = fs;
  auto functor_name = [&](const FinFunctor& f) {
    for (const auto& [n, g] : inst.functors)
      if (g == f) return n;
    return std::string();
  };
  Json ts = Json::object();
  for (const auto& [name, t] : inst.nat_trans) {
    Json comps = Json::object();
    for (std::size_t o = 0; o < c.object_count(); ++o) {
      Json col = Json::array();
      for (auto y : t.components[o]) col.push_back(element_json(t.target, o, y));
      comps[c.objects()[o]] = col;
    }
    ts[name] = {{"source", functor_name(t.source)}, {"target", functor_name(t.target)}, {"components", comps}};
  }
  root["nat_trans"] = ts;
  Json gs = Json::object();
  for (const auto& g : inst.endofunctors) {
    Json objs = Json::object(), arrows = Json::object();
    for (std::size_t o = 0; o < c.object_count(); ++o) objs[c.objects()[o]] = c.objects()[g.on_objects[o]];
    for (std::size_t a = 0; a < c.arrow_count(); ++a) arrows[c.arrow(a).id] = c.arrow(g.on_arrows[a]).id;
    Json e{{"objects", objs}, {"morphisms", arrows}};
    auto family = [&](const std::vector<std::size_t>& fam) {
      Json m = Json::object();
      for (std::size_t o = 0; o < c.object_count(); ++o) m[c.objects()[o]] = c.arrow(fam[o]).id;
      return m;
    };
    if (g.p) e["p"] = family(*g.p);
    if (g.i) e["i"] = family(*g.i);
    gs[g.name] = e;
  }
  root["endofunctors"] = gs;
  return root.dump(2);
}

// ---- model checks -------------------------------------------------------------

ModelCheckKind parse_model_check_kind(std::string_view name) {
  for (auto k : {ModelCheckKind::ccc, ModelCheckKind::slice_ccc, ModelCheckKind::exp_compat, ModelCheckKind::localization})
    if (model_check_kind_name(k) == name) return k;
  throw Error(ErrorCode::bad_parameter,
              "unknown check '" + std::string(name) + "' (expected ccc, slice-ccc, exp-compat or localization)");
}

std::string_view model_check_kind_name(ModelCheckKind kind) noexcept {
  switch (kind) {
    case ModelCheckKind::ccc: return "ccc";
    case ModelCheckKind::slice_ccc: return "slice-ccc";
    case ModelCheckKind::exp_compat: return "exp-compat";
    case ModelCheckKind::localization: return "localization";
  }
  return "ccc";
}

bool ModelCheckResult::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const ModelCheckEntry& e) { return e.passed(); });
}

ModelCheckResult run_model_check(const ModelInstance& inst, ModelCheckKind kind, const ModelCheckOptions& options) {
  ModelCheckResult out;
  out.kind = kind;
  out.category = inst.cat->name();
  const ModelConfig& config = options.config;
  auto add = [&](std::string label, auto&& make) {
    ModelCheckEntry e{std::move(label), {}, {}, {}};
    try {
      e.report = make();
    } catch (const Error& err) {
      e.error = err.what();
      e.error_code = std::string(error_code_name(err.code()));
    }
    out.entries.push_back(std::move(e));
  };
  auto functor_name = [&](const FinFunctor& f) {
    for (const auto& [n, g] : inst.functors)
      if (g == f) return n;
    return std::string("?");
  };
  std::vector<std::pair<std::string, SlicedObject>> sliced;
  for (const auto& [name, t] : inst.nat_trans) sliced.emplace_back(name, SlicedObject{t.source, t});
  std::vector<const EndofunctorData*> with_pi;
  if (kind == ModelCheckKind::exp_compat || kind == ModelCheckKind::localization)
    for (const auto& g : inst.endofunctors) {
      if (g.p && g.i) with_pi.push_back(&g);
      else out.skipped.push_back(g.name + (kind == ModelCheckKind::exp_compat ? ": slice form" : "") +
                                 " needs p and i");
    }

  switch (kind) {
    case ModelCheckKind::ccc: {
      const auto probes = enumerate_functors(inst.cat, options.probe_max_size);
      for (const auto& [mn, m] : inst.functors)
        for (const auto& [nn, n] : inst.functors)
          add("M=" + mn + " N=" + nn, [&] { return verify_ccc(m, n, probes, config); });
      break;
    }
    case ModelCheckKind::slice_ccc:
      for (const auto& [an, a] : sliced)
        for (const auto& [bn, b] : sliced) {
          if (!(a.base() == b.base())) continue;
          add("A=" + an + " B=" + bn + " L=" + functor_name(a.base()), [&] {
            return verify_slice_ccc(a, b, enumerate_sliced(a.base(), options.probe_max_size, config), config);
          });
        }
      break;
    case ModelCheckKind::exp_compat:
      for (const auto& g : inst.endofunctors)
        for (const auto& [mn, m] : inst.functors)
          for (const auto& [nn, n] : inst.functors)
            add("G=" + g.name + " M=" + mn + " N=" + nn, [&] { return exp_compat_check(g, m, n, config); });
      for (const auto* g : with_pi)
        for (const auto& [an, a] : sliced)
          for (const auto& [bn, b] : sliced) {
            if (!(a.base() == b.base())) continue;
            add("G=" + g->name + " A=" + an + " B=" + bn + " sliced",
                [&] { return exp_compat_check_slice(*g, a, b, config); });
          }
      break;
    case ModelCheckKind::localization: {
      const auto xs = enumerate_functors(inst.cat, std::min<std::size_t>(options.probe_max_size, 1));
      for (const auto& [an, a] : sliced) {
        add("flatten A=" + an, [&] { return verify_flatten(flatten_slice(a), xs, config); });
        for (const auto* g : with_pi)
          for (const auto& [rn, r] : inst.functors)
            add("G=" + g->name + " A=" + an + " R=" + rn, [&] { return localization_check(*g, a, r, config); });
      }
      break;
    }
  }
  return out;
}

std::string model_check_to_json(const ModelCheckResult& r) {
  Json root;
  root["check"] = model_check_kind_name(r.kind);
  root["category"] = r.category;
  root["passed"] = r.passed();
  root["instances"] = r.entries.size();
  root["failures"] = std::count_if(r.entries.begin(), r.entries.end(), [](const ModelCheckEntry& e) { return !e.passed(); });
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j;
    j["instance"] = e.instance;
    j["passed"] = e.passed();
    j["checks"] = report_json(e.report);
    if (!e.error.empty()) j["error"] = {{"code", e.error_code}, {"message", e.error}};
    entries.push_back(std::move(j));
  }
  root["entries"] = std::move(entries);
  root["skipped"] = r.skipped;
  return root.dump(2);
}

std::string model_check_to_text(const ModelCheckResult& r) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& e : r.entries) {
    os << (e.passed() ? "pass  " : "FAIL  ") << e.instance << "\n";
    if (!e.error.empty()) os << "      error " << e.error_code << ": " << e.error << "\n";
    for (const auto& c : e.report.checks)
      if (!c.passed) os << "      " << c.law << ": " << c.detail << "\n";
    if (!e.passed()) ++failed;
  }
  for (const auto& s : r.skipped) os << "skip  " << s << "\n";
  os << model_check_kind_name(r.kind) << " on " << r.category << ": " << r.entries.size() - failed << "/"
     << r.entries.size() << " instances passed\n";
  return os.str();
}

}  // namespace weilad::fincat
