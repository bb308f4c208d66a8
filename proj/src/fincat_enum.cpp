#include "weilad/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace weilad::fincat {

namespace {

bool preserves_composition(const FinCat& c, const std::vector<Table>& maps) {
  for (std::size_t g = 0; g < c.arrow_count(); ++g)
    for (std::size_t f = 0; f < c.arrow_count(); ++f) {
      const auto gf = c.composite(g, f);
      if (!gf) continue;
      const auto& tf = maps[f];
      for (std::size_t x = 0; x < tf.size(); ++x)
        if (maps[*gf][x] != maps[g][tf[x]]) return false;
    }
  return true;
}

/// Calls `visit` for every permutation tuple (one permutation per object).
template <class Visit>
void for_each_relabelling(const std::vector<std::size_t>& sizes, Visit&& visit) {
  std::vector<Table> perm(sizes.size());
  for (std::size_t o = 0; o < sizes.size(); ++o) {
    perm[o].resize(sizes[o]);
    std::iota(perm[o].begin(), perm[o].end(), 0);
  }
  for (;;) {
    visit(perm);
    std::size_t o = 0;
    while (o < perm.size() && !std::next_permutation(perm[o].begin(), perm[o].end())) ++o;
    if (o == perm.size()) break;
  }
}

std::vector<Table> relabel_maps(const FinCat& c, const std::vector<Table>& maps, const std::vector<Table>& perm) {
  std::vector<Table> out(maps.size());
  for (std::size_t a = 0; a < maps.size(); ++a) {
    const auto& ar = c.arrow(a);
    out[a].resize(maps[a].size());
    for (std::size_t x = 0; x < maps[a].size(); ++x) out[a][perm[ar.dom][x]] = perm[ar.cod][maps[a][x]];
  }
  return out;
}

/// All functors with the given object sizes.
std::vector<std::vector<Table>> functors_with_sizes(const FinCat& c, const std::vector<std::size_t>& sizes) {
  std::vector<bool> is_id(c.arrow_count(), false);
  for (std::size_t o = 0; o < c.object_count(); ++o) is_id[c.identity(o)] = true;
  std::vector<Table> maps(c.arrow_count());
  std::vector<std::size_t> free;
  for (std::size_t a = 0; a < c.arrow_count(); ++a) {
    const auto& ar = c.arrow(a);
    maps[a].assign(sizes[ar.dom], 0);
    if (is_id[a]) {
      std::iota(maps[a].begin(), maps[a].end(), 0);
    } else {
      if (sizes[ar.dom] > 0 && sizes[ar.cod] == 0) return {};
      free.push_back(a);
    }
  }
  std::vector<std::vector<Table>> result;
  for (;;) {
    if (preserves_composition(c, maps)) result.push_back(maps);
    // Odometer over all cells of all free tables.
    bool carried = true;
    for (std::size_t fi = 0; fi < free.size() && carried; ++fi) {
      auto& t = maps[free[fi]];
      const std::size_t cod = sizes[c.arrow(free[fi]).cod];
      for (std::size_t x = 0; x < t.size(); ++x) {
        if (t[x] + 1 < cod) {
          ++t[x];
          carried = false;
          break;
        }
        t[x] = 0;
      }
    }
    if (carried) break;
  }
  return result;
}

}  // namespace

std::vector<FinFunctor> enumerate_functors(const CatPtr& c, std::size_t max_size, bool up_to_iso) {
  std::vector<FinFunctor> out;
  std::vector<std::size_t> sizes(c->object_count(), 0);
  for (;;) {
    std::set<std::vector<Table>> seen;
    for (auto& maps : functors_with_sizes(*c, sizes)) {
      if (!up_to_iso) {
        out.push_back({c, sizes, std::move(maps), {}});
        continue;
      }
      std::vector<Table> best = maps;
      for_each_relabelling(sizes, [&](const std::vector<Table>& perm) {
        auto r = relabel_maps(*c, maps, perm);
        if (r < best) best = std::move(r);
      });
      if (seen.insert(best).second) out.push_back({c, sizes, best, {}});
    }
    std::size_t o = 0;
    while (o < sizes.size() && sizes[o] == max_size) sizes[o++] = 0;
    if (o == sizes.size()) break;
    ++sizes[o];
  }
  if (up_to_iso)
    std::stable_sort(out.begin(), out.end(), [](const FinFunctor& a, const FinFunctor& b) {
      return std::tie(a.sizes, a.maps) < std::tie(b.sizes, b.maps);
    });
  return out;
}

std::vector<SlicedObject> enumerate_sliced(const FinFunctor& l, std::size_t max_size, const ModelConfig& config) {
  const FinCat& c = *l.cat;
  std::vector<SlicedObject> out;
  std::set<std::pair<std::vector<Table>, Components>> seen;
  for (const auto& a : enumerate_functors(l.cat, max_size, false))
    for (const auto& tau : enumerate_nat(a, l, config)) {
      std::pair<std::vector<Table>, Components> best{a.maps, tau};
      for_each_relabelling(a.sizes, [&](const std::vector<Table>& perm) {
        std::pair<std::vector<Table>, Components> r{relabel_maps(c, a.maps, perm), Components(tau.size())};
        for (std::size_t o = 0; o < tau.size(); ++o) {
          r.second[o].resize(tau[o].size());
          for (std::size_t x = 0; x < tau[o].size(); ++x) r.second[o][perm[o][x]] = tau[o][x];
        }
        if (r < best) best = std::move(r);
      });
      if (seen.insert(best).second) {
        FinFunctor total{l.cat, a.sizes, best.first, {}};
        out.push_back({total, {total, l, best.second}});
      }
    }
  return out;
}

// ---- bundled categories ----------------------------------------------------------

namespace {

struct CatBuilder {
  std::string name;
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<std::size_t> identities;
  std::vector<std::tuple<std::string, std::string, std::string>> rules;  // g, f, g∘f

  explicit CatBuilder(std::string n, std::vector<std::string> objs) : name(std::move(n)), objects(std::move(objs)) {
    for (std::size_t o = 0; o < objects.size(); ++o) {
      identities.push_back(arrows.size());
      arrows.push_back({"id_" + objects[o], o, o});
    }
  }

  std::size_t obj(const std::string& s) const {
    return static_cast<std::size_t>(std::find(objects.begin(), objects.end(), s) - objects.begin());
  }
  std::size_t arr(const std::string& s) const {
    for (std::size_t a = 0; a < arrows.size(); ++a)
      if (arrows[a].id == s) return a;
    throw Error(ErrorCode::internal, "unknown arrow " + s);
  }
  CatBuilder& arrow(std::string id, const std::string& dom, const std::string& cod) {
    arrows.push_back({std::move(id), obj(dom), obj(cod)});
    return *this;
  }
  CatBuilder& rule(std::string g, std::string f, std::string gf) {
    rules.emplace_back(std::move(g), std::move(f), std::move(gf));
    return *this;
  }
  CatPtr build() const {
    const std::size_t n = arrows.size();
    FinCat::CompTable comp(n, std::vector<std::optional<std::size_t>>(n));
    for (std::size_t f = 0; f < n; ++f) {
      comp[identities[arrows[f].cod]][f] = f;
      comp[f][identities[arrows[f].dom]] = f;
    }
    for (const auto& [g, f, gf] : rules) comp[arr(g)][arr(f)] = arr(gf);
    return std::make_shared<const FinCat>(name, objects, arrows, identities, std::move(comp));
  }
};

}  // namespace

std::vector<CatPtr> bundled_categories() {
  std::vector<CatPtr> cats;
  cats.push_back(CatBuilder("terminal", {"*"}).build());
  cats.push_back(CatBuilder("discrete", {"a", "b"}).build());
  cats.push_back(CatBuilder("arrow", {"a", "b"}).arrow("f", "a", "b").build());
  cats.push_back(CatBuilder("z2", {"*"}).arrow("t", "*", "*").rule("t", "t", "id_*").build());
  cats.push_back(CatBuilder("idempotent", {"*"}).arrow("e", "*", "*").rule("e", "e", "e").build());
  cats.push_back(CatBuilder("iso", {"a", "b"})
                     .arrow("f", "a", "b")
                     .arrow("g", "b", "a")
                     .rule("g", "f", "id_a")
                     .rule("f", "g", "id_b")
                     .build());
  return cats;
}

CatPtr bundled_category(const std::string& name) {
  for (auto& c : bundled_categories())
    if (c->name() == name) return c;
  throw Error(ErrorCode::bad_parameter, "no bundled category named '" + name + "'");
}

EndofunctorData constant_endofunctor(const CatPtr& c, std::size_t object) {
  EndofunctorData g{"const_" + c->objects().at(object), c, {}, {}, std::nullopt, std::nullopt};
  g.on_objects.assign(c->object_count(), object);
  g.on_arrows.assign(c->arrow_count(), c->identity(object));
  return g;
}

std::vector<EndofunctorData> bundled_endofunctors(const CatPtr& c) {
  std::vector<EndofunctorData> out{identity_endofunctor(c)};
  const std::string& n = c->name();
  auto a = [&](const std::string& id) { return c->arrow_index(id); };
  if (n == "iso") {
    EndofunctorData g{"swap", c, {1, 0}, {}, std::nullopt, std::nullopt};
    g.on_arrows = {a("id_b"), a("id_a"), a("g"), a("f")};
    g.i = std::vector<std::size_t>{a("f"), a("g")};
    g.p = std::vector<std::size_t>{a("g"), a("f")};
    out.push_back(std::move(g));
  } else if (n == "discrete") {
    EndofunctorData g{"swap", c, {1, 0}, {a("id_b"), a("id_a")}, std::nullopt, std::nullopt};
    out.push_back(std::move(g));
  } else if (n == "arrow") {
    EndofunctorData g = constant_endofunctor(c, 1);
    g.i = std::vector<std::size_t>{a("f"), a("id_b")};
    out.push_back(std::move(g));
  } else if (n == "z2") {
    EndofunctorData g = identity_endofunctor(c);
    g.name = "id_t";
    g.p = std::vector<std::size_t>{a("t")};
    g.i = std::vector<std::size_t>{a("t")};
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace weilad::fincat
