#include "weilad/fincat.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>

namespace weilad::fincat {

std::uint64_t ModelConfig::default_max_enum() {
  if (const char* env = std::getenv("WEILAD_MAX_ENUM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 10'000'000;
}

FinCat::FinCat(std::string name, std::vector<std::string> objects, std::vector<Arrow> arrows,
               std::vector<std::size_t> identities, CompTable comp)
    : name_(std::move(name)),
      objects_(std::move(objects)),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      comp_(std::move(comp)),
      out_(objects_.size()) {
  if (identities_.size() != objects_.size())
    throw Error(ErrorCode::invalid_instance, "category " + name_ + ": one identity per object required");
  if (comp_.size() != arrows_.size())
    throw Error(ErrorCode::invalid_instance, "category " + name_ + ": composition table has wrong size");
  for (const auto& row : comp_)
    if (row.size() != arrows_.size())
      throw Error(ErrorCode::invalid_instance, "category " + name_ + ": composition table has wrong size");
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    if (arrows_[a].dom >= objects_.size() || arrows_[a].cod >= objects_.size())
      throw Error(ErrorCode::invalid_instance, "arrow " + arrows_[a].id + " has an unknown endpoint");
    out_[arrows_[a].dom].push_back(a);
  }
  for (auto id : identities_)
    if (id >= arrows_.size()) throw Error(ErrorCode::invalid_instance, "identity refers to an unknown arrow");
}

std::size_t FinCat::compose(std::size_t g, std::size_t f) const {
  const auto c = comp_.at(g).at(f);
  if (!c)
    throw Error(ErrorCode::bad_parameter, "arrows " + arrows_.at(g).id + " and " + arrows_.at(f).id +
                                              " are not composable in " + name_);
  return *c;
}

std::size_t FinCat::object_index(const std::string& label) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == label) return i;
  throw Error(ErrorCode::invalid_instance, "unknown object '" + label + "'");
}

std::size_t FinCat::arrow_index(const std::string& label) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].id == label) return i;
  throw Error(ErrorCode::invalid_instance, "unknown morphism '" + label + "'");
}

std::string FinFunctor::label(std::size_t object, std::size_t x) const {
  if (object < labels.size() && x < labels[object].size()) return labels[object][x];
  return std::to_string(x);
}

std::size_t FinFunctor::total_size() const {
  std::size_t t = 0;
  for (auto s : sizes) t += s;
  return t;
}

// ---- validation ---------------------------------------------------------

ValidationReport validate_category(const FinCat& c) {
  ValidationReport report;
  const std::size_t n = c.arrow_count();

  CheckResult defined{"composition_defined"};
  for (std::size_t g = 0; g < n && defined.passed; ++g)
    for (std::size_t f = 0; f < n && defined.passed; ++f) {
      const bool composable = c.arrow(f).cod == c.arrow(g).dom;
      const auto gf = c.composite(g, f);
      if (composable != gf.has_value()) {
        defined.passed = false;
        defined.witness = {g, f};
        defined.detail = composable ? c.arrow(g).id + "∘" + c.arrow(f).id + " missing"
                                    : c.arrow(g).id + "∘" + c.arrow(f).id + " defined but not composable";
      } else if (gf && (*gf >= n || c.arrow(*gf).dom != c.arrow(f).dom || c.arrow(*gf).cod != c.arrow(g).cod)) {
        defined.passed = false;
        defined.witness = {g, f};
        defined.detail = c.arrow(g).id + "∘" + c.arrow(f).id + " has the wrong endpoints";
      }
    }
  report.checks.push_back(defined);
  if (!defined.passed) return report;

  CheckResult ident{"identities"};
  for (std::size_t o = 0; o < c.object_count() && ident.passed; ++o) {
    const auto id = c.identity(o);
    if (c.arrow(id).dom != o || c.arrow(id).cod != o) {
      ident.passed = false;
      ident.witness = {id};
      ident.detail = "identity of " + c.objects()[o] + " is not an endomorphism of it";
    }
  }
  for (std::size_t f = 0; f < n && ident.passed; ++f) {
    const auto& a = c.arrow(f);
    if (c.compose(f, c.identity(a.dom)) != f || c.compose(c.identity(a.cod), f) != f) {
      ident.passed = false;
      ident.witness = {f};
      ident.detail = "identities are not neutral for " + a.id;
    }
  }
  report.checks.push_back(ident);

  CheckResult assoc{"associativity"};
  for (std::size_t h = 0; h < n && assoc.passed; ++h)
    for (std::size_t g = 0; g < n && assoc.passed; ++g) {
      if (c.arrow(g).cod != c.arrow(h).dom) continue;
      for (std::size_t f = 0; f < n && assoc.passed; ++f) {
        if (c.arrow(f).cod != c.arrow(g).dom) continue;
        if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f)) {
          assoc.passed = false;
          assoc.witness = {h, g, f};
          assoc.detail = "(" + c.arrow(h).id + "∘" + c.arrow(g).id + ")∘" + c.arrow(f).id + " != " +
                         c.arrow(h).id + "∘(" + c.arrow(g).id + "∘" + c.arrow(f).id + ")";
        }
      }
    }
  report.checks.push_back(assoc);
  return report;
}

ValidationReport validate_functor(const FinFunctor& f) {
  ValidationReport report;
  const FinCat& c = *f.cat;
  CheckResult shape{"functor_shape"};
  if (f.sizes.size() != c.object_count() || f.maps.size() != c.arrow_count()) {
    shape.passed = false;
    shape.detail = "functor does not match the category's objects and morphisms";
  }
  for (std::size_t a = 0; a < f.maps.size() && shape.passed; ++a) {
    const auto& ar = c.arrow(a);
    if (f.maps[a].size() != f.sizes[ar.dom]) {
      shape.passed = false;
      shape.witness = {a};
      shape.detail = "table for " + ar.id + " has the wrong length";
    }
    for (std::size_t x = 0; x < f.maps[a].size() && shape.passed; ++x)
      if (f.maps[a][x] >= f.sizes[ar.cod]) {
        shape.passed = false;
        shape.witness = {a, x};
        shape.detail = "table for " + ar.id + " leaves the codomain";
      }
  }
  report.checks.push_back(shape);
  if (!shape.passed) return report;

  CheckResult ident{"functor_identities"};
  for (std::size_t o = 0; o < c.object_count() && ident.passed; ++o) {
    const auto& t = f.maps[c.identity(o)];
    for (std::size_t x = 0; x < t.size() && ident.passed; ++x)
      if (t[x] != x) {
        ident.passed = false;
        ident.witness = {c.identity(o), x};
        ident.detail = "identity of " + c.objects()[o] + " moves element " + f.label(o, x);
      }
  }
  report.checks.push_back(ident);

  CheckResult comp{"functor_composition"};
  for (std::size_t g = 0; g < c.arrow_count() && comp.passed; ++g)
    for (std::size_t h = 0; h < c.arrow_count() && comp.passed; ++h) {
      const auto gh = c.composite(g, h);
      if (!gh) continue;
      for (std::size_t x = 0; x < f.sizes[c.arrow(h).dom] && comp.passed; ++x)
        if (f.maps[*gh][x] != f.maps[g][f.maps[h][x]]) {
          comp.passed = false;
          comp.witness = {g, h, x};
          comp.detail = "F(" + c.arrow(g).id + "∘" + c.arrow(h).id + ") != F(" + c.arrow(g).id + ")∘F(" +
                        c.arrow(h).id + ") at " + f.label(c.arrow(h).dom, x);
        }
    }
  report.checks.push_back(comp);
  return report;
}

ValidationReport validate_nat(const FinNatTrans& eta) {
  ValidationReport report;
  const FinCat& c = *eta.source.cat;
  CheckResult shape{"transformation_shape"};
  if (eta.source.cat != eta.target.cat && eta.source.cat->name() != eta.target.cat->name()) {
    shape.passed = false;
    shape.detail = "source and target live over different categories";
  }
  if (shape.passed && eta.components.size() != c.object_count()) {
    shape.passed = false;
    shape.detail = "one component per object required";
  }
  for (std::size_t o = 0; o < eta.components.size() && shape.passed; ++o) {
    if (eta.components[o].size() != eta.source.size(o)) {
      shape.passed = false;
      shape.witness = {o};
      shape.detail = "component at " + c.objects()[o] + " has the wrong length";
    }
    for (std::size_t x = 0; x < eta.components[o].size() && shape.passed; ++x)
      if (eta.components[o][x] >= eta.target.size(o)) {
        shape.passed = false;
        shape.witness = {o, x};
        shape.detail = "component at " + c.objects()[o] + " leaves the target";
      }
  }
  report.checks.push_back(shape);
  if (!shape.passed) return report;

  CheckResult nat{"naturality"};
  for (std::size_t a = 0; a < c.arrow_count() && nat.passed; ++a) {
    const auto& ar = c.arrow(a);
    for (std::size_t x = 0; x < eta.source.size(ar.dom) && nat.passed; ++x)
      if (eta.target.apply(a, eta.at(ar.dom, x)) != eta.at(ar.cod, eta.source.apply(a, x))) {
        nat.passed = false;
        nat.witness = {a, x};
        nat.detail = "square for " + ar.id + " fails at " + eta.source.label(ar.dom, x);
      }
  }
  report.checks.push_back(nat);
  return report;
}

ValidationReport validate_sliced(const SlicedObject& a) {
  ValidationReport report = validate_functor(a.total);
  for (auto& r : validate_functor(a.base()).checks) {
    r.law = "base_" + r.law;
    report.checks.push_back(std::move(r));
  }
  CheckResult same{"structure_source"};
  if (!(a.structure.source == a.total)) {
    same.passed = false;
    same.detail = "structure map does not start at the total functor";
  }
  report.checks.push_back(same);
  if (!report.passed()) return report;
  for (auto& r : validate_nat(a.structure).checks) report.checks.push_back(std::move(r));
  return report;
}

ValidationReport validate_endofunctor(const EndofunctorData& g) {
  ValidationReport report;
  const FinCat& c = *g.cat;
  CheckResult shape{"endofunctor_shape"};
  if (g.on_objects.size() != c.object_count() || g.on_arrows.size() != c.arrow_count()) {
    shape.passed = false;
    shape.detail = "endofunctor does not cover the category";
  }
  for (std::size_t a = 0; a < g.on_arrows.size() && shape.passed; ++a) {
    const auto& ar = c.arrow(a);
    const auto ga = g.on_arrows[a];
    if (ga >= c.arrow_count() || g.on_objects[ar.dom] >= c.object_count() ||
        c.arrow(ga).dom != g.on_objects[ar.dom] || c.arrow(ga).cod != g.on_objects[ar.cod]) {
      shape.passed = false;
      shape.witness = {a};
      shape.detail = "G(" + ar.id + ") has the wrong endpoints";
    }
  }
  report.checks.push_back(shape);
  if (!shape.passed) return report;

  CheckResult funct{"endofunctor_functoriality"};
  for (std::size_t o = 0; o < c.object_count() && funct.passed; ++o)
    if (g.on_arrows[c.identity(o)] != c.identity(g.on_objects[o])) {
      funct.passed = false;
      funct.witness = {c.identity(o)};
      funct.detail = "G does not preserve the identity of " + c.objects()[o];
    }
  for (std::size_t x = 0; x < c.arrow_count() && funct.passed; ++x)
    for (std::size_t y = 0; y < c.arrow_count() && funct.passed; ++y) {
      const auto xy = c.composite(x, y);
      if (!xy) continue;
      if (g.on_arrows[*xy] != c.compose(g.on_arrows[x], g.on_arrows[y])) {
        funct.passed = false;
        funct.witness = {x, y};
        funct.detail = "G does not preserve " + c.arrow(x).id + "∘" + c.arrow(y).id;
      }
    }
  report.checks.push_back(funct);
  if (!funct.passed) return report;

  auto check_family = [&](const std::vector<std::size_t>& fam, bool is_p) {
    CheckResult r{is_p ? "counit_naturality" : "unit_naturality"};
    const std::string nm = is_p ? "p" : "i";
    if (fam.size() != c.object_count()) {
      r.passed = false;
      r.detail = nm + " needs one arrow per object";
      return r;
    }
    for (std::size_t o = 0; o < c.object_count() && r.passed; ++o) {
      const auto& ar = c.arrow(fam[o]);
      const std::size_t want_dom = is_p ? g.on_objects[o] : o;
      const std::size_t want_cod = is_p ? o : g.on_objects[o];
      if (fam[o] >= c.arrow_count() || ar.dom != want_dom || ar.cod != want_cod) {
        r.passed = false;
        r.witness = {o};
        r.detail = nm + " at " + c.objects()[o] + " has the wrong endpoints";
      }
    }
    for (std::size_t a = 0; a < c.arrow_count() && r.passed; ++a) {
      const auto& ar = c.arrow(a);
      // p: f∘p_V = p_V'∘G(f);  i: G(f)∘i_V = i_V'∘f
      const bool ok = is_p ? c.compose(a, fam[ar.dom]) == c.compose(fam[ar.cod], g.on_arrows[a])
                           : c.compose(g.on_arrows[a], fam[ar.dom]) == c.compose(fam[ar.cod], a);
      if (!ok) {
        r.passed = false;
        r.witness = {a};
        r.detail = nm + " is not natural along " + ar.id;
      }
    }
    return r;
  };
  if (g.p) report.checks.push_back(check_family(*g.p, true));
  if (g.i) report.checks.push_back(check_family(*g.i, false));
  if (g.p && g.i && report.passed()) {
    CheckResult retract{"counit_after_unit"};
    for (std::size_t o = 0; o < c.object_count() && retract.passed; ++o)
      if (c.compose((*g.p)[o], (*g.i)[o]) != c.identity(o)) {
        retract.passed = false;
        retract.witness = {o};
        retract.detail = "p∘i is not the identity at " + c.objects()[o];
      }
    report.checks.push_back(retract);
  }
  return report;
}

void require(const ValidationReport& report, const std::string& what) {
  for (const auto& c : report.checks)
    if (!c.passed) throw Error(ErrorCode::invalid_instance, what + ": " + c.law + " fails: " + c.detail);
}

// ---- basic constructions ------------------------------------------------

FinFunctor constant_functor(const CatPtr& c, std::size_t size) {
  FinFunctor f{c, std::vector<std::size_t>(c->object_count(), size), {}, {}};
  Table id(size);
  for (std::size_t x = 0; x < size; ++x) id[x] = x;
  f.maps.assign(c->arrow_count(), id);
  return f;
}

FinNatTrans identity_nat(const FinFunctor& f) {
  Components comps;
  for (auto s : f.sizes) {
    Table t(s);
    for (std::size_t x = 0; x < s; ++x) t[x] = x;
    comps.push_back(std::move(t));
  }
  return {f, f, std::move(comps)};
}

FinNatTrans compose_nat(const FinNatTrans& g, const FinNatTrans& f) {
  if (!(f.target == g.source))
    throw Error(ErrorCode::source_target_mismatch, "transformations are not composable");
  Components comps(f.components.size());
  for (std::size_t o = 0; o < comps.size(); ++o)
    for (auto x : f.components[o]) comps[o].push_back(g.components[o][x]);
  return {f.source, g.target, std::move(comps)};
}

FinNatTrans to_terminal(const FinFunctor& f) {
  Components comps;
  for (auto s : f.sizes) comps.emplace_back(s, 0);
  return {f, terminal_functor(f.cat), std::move(comps)};
}

Product product(const FinFunctor& m, const FinFunctor& n) {
  const FinCat& c = *m.cat;
  FinFunctor p{m.cat, {}, {}, {}};
  for (std::size_t o = 0; o < c.object_count(); ++o) p.sizes.push_back(m.size(o) * n.size(o));
  for (std::size_t a = 0; a < c.arrow_count(); ++a) {
    const auto& ar = c.arrow(a);
    Table t;
    for (std::size_t x = 0; x < m.size(ar.dom); ++x)
      for (std::size_t y = 0; y < n.size(ar.dom); ++y) t.push_back(m.apply(a, x) * n.size(ar.cod) + n.apply(a, y));
    p.maps.push_back(std::move(t));
  }
  Components c1, c2;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    Table t1, t2;
    for (std::size_t x = 0; x < m.size(o); ++x)
      for (std::size_t y = 0; y < n.size(o); ++y) {
        t1.push_back(x);
        t2.push_back(y);
      }
    c1.push_back(std::move(t1));
    c2.push_back(std::move(t2));
  }
  return {p, {p, m, std::move(c1)}, {p, n, std::move(c2)}};
}

FinNatTrans pair(const Product& prod, const FinNatTrans& f, const FinNatTrans& g) {
  const FinFunctor& n = prod.proj2.target;
  Components comps(f.components.size());
  for (std::size_t o = 0; o < comps.size(); ++o)
    for (std::size_t x = 0; x < f.components[o].size(); ++x)
      comps[o].push_back(f.components[o][x] * n.size(o) + g.components[o][x]);
  return {f.source, prod.functor, std::move(comps)};
}

Equalizer equalizer(const FinNatTrans& f, const FinNatTrans& g) {
  const FinFunctor& m = f.source;
  const FinCat& c = *m.cat;
  std::vector<Table> members(c.object_count());
  std::vector<std::vector<std::size_t>> position(c.object_count());
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    position[o].assign(m.size(o), SIZE_MAX);
    for (std::size_t x = 0; x < m.size(o); ++x)
      if (f.at(o, x) == g.at(o, x)) {
        position[o][x] = members[o].size();
        members[o].push_back(x);
      }
  }
  FinFunctor e{m.cat, {}, {}, {}};
  for (const auto& mem : members) e.sizes.push_back(mem.size());
  for (std::size_t a = 0; a < c.arrow_count(); ++a) {
    const auto& ar = c.arrow(a);
    Table t;
    for (auto x : members[ar.dom]) {
      const auto y = position[ar.cod][m.apply(a, x)];
      if (y == SIZE_MAX)
        throw Error(ErrorCode::non_natural, "equalizer is not closed under " + ar.id + "; the pair is not natural");
      t.push_back(y);
    }
    e.maps.push_back(std::move(t));
  }
  if (!m.labels.empty()) {
    e.labels.resize(c.object_count());
    for (std::size_t o = 0; o < c.object_count(); ++o)
      for (auto x : members[o]) e.labels[o].push_back(m.label(o, x));
  }
  return {e, {e, m, std::move(members)}};
}

// ---- natural transformation enumeration ----------------------------------

Table flatten(const Components& c) {
  Table out;
  for (const auto& t : c) out.insert(out.end(), t.begin(), t.end());
  return out;
}

NatRows enumerate_nat_rows(const FinFunctor& s, const FinFunctor& t, const ModelConfig& config,
                           const Candidates& candidates) {
  const FinCat& c = *s.cat;
  struct Cell {
    std::size_t object, element;
  };
  std::vector<Cell> cells;
  std::vector<std::vector<std::size_t>> cell_id(c.object_count());
  for (std::size_t o = 0; o < c.object_count(); ++o)
    for (std::size_t x = 0; x < s.size(o); ++x) {
      cell_id[o].push_back(cells.size());
      cells.push_back({o, x});
    }

  // Constraint T(f)(eta(a)) == eta(b), checked once both cells are assigned.
  struct Constraint {
    std::size_t arrow, a, b;
  };
  std::vector<std::vector<Constraint>> due(cells.size());
  std::vector<bool> is_identity(c.arrow_count(), false);
  for (std::size_t o = 0; o < c.object_count(); ++o) is_identity[c.identity(o)] = true;
  for (std::size_t a = 0; a < c.arrow_count(); ++a) {
    if (is_identity[a]) continue;
    const auto& ar = c.arrow(a);
    for (std::size_t x = 0; x < s.size(ar.dom); ++x) {
      const auto ca = cell_id[ar.dom][x];
      const auto cb = cell_id[ar.cod][s.apply(a, x)];
      due[std::max(ca, cb)].push_back({a, ca, cb});
    }
  }

  std::vector<std::vector<std::size_t>> options(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (!candidates.empty()) {
      options[k] = candidates[cells[k].object][cells[k].element];
      std::sort(options[k].begin(), options[k].end());
    } else {
      for (std::size_t v = 0; v < t.size(cells[k].object); ++v) options[k].push_back(v);
    }
  }

  NatRows out;
  out.stride = cells.size();
  std::vector<std::uint32_t> value(cells.size());
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == cells.size()) {
      if (out.count >= config.max_enum)
        throw Error(ErrorCode::size_limit, "more than " + std::to_string(config.max_enum) +
                                               " natural transformations; raise the enumeration bound");
      out.data.insert(out.data.end(), value.begin(), value.end());
      ++out.count;
      return;
    }
    for (auto v : options[k]) {
      value[k] = static_cast<std::uint32_t>(v);
      bool ok = true;
      for (const auto& con : due[k])
        if (t.apply(con.arrow, value[con.a]) != value[con.b]) {
          ok = false;
          break;
        }
      if (ok) go(k + 1);
    }
  };
  go(0);
  return out;
}

std::optional<std::size_t> NatRows::find(const std::uint32_t* r) const {
  std::size_t lo = 0, hi = count;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const std::uint32_t* m = row(mid);
    if (std::lexicographical_compare(m, m + stride, r, r + stride))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < count && std::equal(r, r + stride, row(lo))) return lo;
  return std::nullopt;
}

std::vector<Components> enumerate_nat(const FinFunctor& s, const FinFunctor& t, const ModelConfig& config,
                                      const Candidates& candidates) {
  const NatRows rows = enumerate_nat_rows(s, t, config, candidates);
  std::vector<Components> found;
  found.reserve(rows.count);
  for (std::size_t k = 0; k < rows.count; ++k) {
    Components comp(s.cat->object_count());
    const std::uint32_t* r = rows.row(k);
    for (std::size_t o = 0; o < comp.size(); ++o) {
      comp[o].assign(r, r + s.size(o));
      r += s.size(o);
    }
    found.push_back(std::move(comp));
  }
  return found;
}

}  // namespace weilad::fincat
