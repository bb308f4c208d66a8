#include "weilad/fincat.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>

namespace weilad::fincat {

namespace {

/// Position of each arrow inside out(dom arrow).
std::vector<std::size_t> out_positions(const FinCat& c) {
  std::vector<std::size_t> pos(c.arrow_count());
  for (std::size_t o = 0; o < c.object_count(); ++o)
    for (std::size_t k = 0; k < c.out(o).size(); ++k) pos[c.out(o)[k]] = k;
  return pos;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base == 0) return 0;
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

std::vector<bool> identity_flags(const FinCat& c) {
  std::vector<bool> id(c.arrow_count(), false);
  for (std::size_t o = 0; o < c.object_count(); ++o) id[c.identity(o)] = true;
  return id;
}

/// Shared engine for plain (l == nullptr) and sliced exponentials.
Exponential build_exponential(const FinFunctor& m, const FinFunctor& n, const FinFunctor* l, const Components* tau_m,
                              const Components* tau_n, const ModelConfig& config) {
  const FinCat& c = *m.cat;
  const auto pos = out_positions(c);
  const auto is_id = identity_flags(c);
  Exponential e;
  e.functor.cat = m.cat;
  e.families.resize(c.object_count());
  e.domains.resize(c.object_count());
  e.index.resize(c.object_count());

  for (std::size_t w = 0; w < c.object_count(); ++w) {
    const auto& out = c.out(w);
    const std::size_t bases = l ? l->size(w) : 1;
    e.domains[w].resize(bases);
    std::uint64_t raw_total = 0;
    for (std::size_t base = 0; base < bases; ++base) {
      // Domains (N-side) and codomain options (M-side) of every s_phi.
      std::vector<std::vector<std::size_t>> dom(out.size()), cod(out.size());
      for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t v = c.arrow(out[k]).cod;
        const std::size_t fiber = l ? l->apply(out[k], base) : 0;
        for (std::size_t y = 0; y < n.size(v); ++y)
          if (!l || (*tau_n)[v][y] == fiber) dom[k].push_back(y);
        for (std::size_t x = 0; x < m.size(v); ++x)
          if (!l || (*tau_m)[v][x] == fiber) cod[k].push_back(x);
      }
      std::uint64_t raw = 1;
      for (std::size_t k = 0; k < out.size() && raw <= config.max_enum; ++k) {
        const auto p = saturating_pow(cod[k].size(), dom[k].size(), config.max_enum);
        raw = (p != 0 && raw > config.max_enum / p) ? config.max_enum + 1 : raw * p;
      }
      raw_total += raw;
      if (raw_total > config.max_enum)
        throw Error(ErrorCode::size_limit, "exponential at " + c.objects()[w] + " has more than " +
                                               std::to_string(config.max_enum) + " candidate families");

      // Cells are (k, j): the value of s_{out[k]} on dom[k][j].
      std::vector<std::size_t> cell_start(out.size() + 1, 0);
      for (std::size_t k = 0; k < out.size(); ++k) cell_start[k + 1] = cell_start[k] + dom[k].size();
      const std::size_t cells = cell_start.back();
      std::vector<std::size_t> cell_arrow(cells);
      for (std::size_t k = 0; k < out.size(); ++k)
        for (std::size_t j = cell_start[k]; j < cell_start[k + 1]; ++j) cell_arrow[j] = k;

      // M(phi2)(s_phi1(y)) == s_(phi2∘phi1)(N(phi2)(y))
      struct Constraint {
        std::size_t arrow, a, b;
      };
      std::vector<std::vector<Constraint>> due(cells);
      for (std::size_t k1 = 0; k1 < out.size(); ++k1) {
        const std::size_t v1 = c.arrow(out[k1]).cod;
        for (auto phi2 : c.out(v1)) {
          if (is_id[phi2]) continue;
          const std::size_t k2 = pos[c.compose(phi2, out[k1])];
          for (std::size_t j1 = 0; j1 < dom[k1].size(); ++j1) {
            const std::size_t y2 = n.apply(phi2, dom[k1][j1]);
            const auto it = std::find(dom[k2].begin(), dom[k2].end(), y2);
            if (it == dom[k2].end())
              throw Error(ErrorCode::internal, "fiber domains are not closed under the action");
            const std::size_t a = cell_start[k1] + j1;
            const std::size_t b = cell_start[k2] + static_cast<std::size_t>(it - dom[k2].begin());
            due[std::max(a, b)].push_back({phi2, a, b});
          }
        }
      }

      std::vector<std::size_t> value(cells);
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == cells) {
          Family f{base, {}};
          f.maps.resize(out.size());
          for (std::size_t k = 0; k < out.size(); ++k)
            f.maps[k].assign(value.begin() + cell_start[k], value.begin() + cell_start[k + 1]);
          e.families[w].push_back(std::move(f));
          return;
        }
        for (auto v : cod[cell_arrow[i]]) {
          value[i] = v;
          bool ok = true;
          for (const auto& con : due[i])
            if (m.apply(con.arrow, value[con.a]) != value[con.b]) {
              ok = false;
              break;
            }
          if (ok) go(i + 1);
        }
      };
      go(0);
      e.domains[w][base] = std::move(dom);
    }
    for (std::size_t i = 0; i < e.families[w].size(); ++i) e.index[w].emplace(e.families[w][i], i);
    e.functor.sizes.push_back(e.families[w].size());
  }

  // Action of psi: W1 -> W2 sends s to (phi' |-> s_(phi'∘psi)).
  for (std::size_t a = 0; a < c.arrow_count(); ++a) {
    const auto& ar = c.arrow(a);
    Table t;
    for (const auto& s : e.families[ar.dom]) {
      Family r{l ? l->apply(a, s.base) : 0, {}};
      for (auto phi : c.out(ar.cod)) r.maps.push_back(s.maps[pos[c.compose(phi, a)]]);
      const auto it = e.index[ar.cod].find(r);
      if (it == e.index[ar.cod].end())
        throw Error(ErrorCode::internal, "reindexed family is not compatible along " + ar.id);
      std::size_t idx = it->second;
      if (config.defect_exp_reindex && !is_id[a]) idx = (idx + 1) % e.families[ar.cod].size();
      t.push_back(idx);
    }
    e.functor.maps.push_back(std::move(t));
  }
  return e;
}

}  // namespace

std::optional<std::size_t> Exponential::index_of(std::size_t object, const Family& f) const {
  const auto it = index.at(object).find(f);
  if (it == index[object].end()) return std::nullopt;
  return it->second;
}

Exponential exponential(const FinFunctor& m, const FinFunctor& n, const ModelConfig& config) {
  return build_exponential(m, n, nullptr, nullptr, nullptr, config);
}

std::vector<Family> exponential_oracle(const FinFunctor& m, const FinFunctor& n, std::size_t object) {
  const FinCat& c = *m.cat;
  const auto& out = c.out(object);
  // Every table N(V) -> M(V) for every arrow out of the object.
  std::vector<std::vector<Table>> tables(out.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::size_t v = c.arrow(out[k]).cod;
    const std::size_t dn = n.size(v), dm = m.size(v);
    Table t(dn, 0);
    if (dn > 0 && dm == 0) continue;
    for (;;) {
      tables[k].push_back(t);
      std::size_t i = 0;
      while (i < dn && t[i] + 1 == dm) t[i++] = 0;
      if (i == dn) break;
      ++t[i];
    }
  }
  std::vector<Family> result;
  std::vector<std::size_t> choice(out.size(), 0);
  for (const auto& ts : tables)
    if (ts.empty()) return result;
  for (;;) {
    Family f{0, {}};
    for (std::size_t k = 0; k < out.size(); ++k) f.maps.push_back(tables[k][choice[k]]);
    bool ok = true;
    for (std::size_t k1 = 0; k1 < out.size() && ok; ++k1) {
      const auto phi1 = out[k1];
      const std::size_t v1 = c.arrow(phi1).cod;
      for (std::size_t phi2 = 0; phi2 < c.arrow_count() && ok; ++phi2) {
        if (c.arrow(phi2).dom != v1) continue;
        const auto composite = c.compose(phi2, phi1);
        const auto k2 = static_cast<std::size_t>(std::find(out.begin(), out.end(), composite) - out.begin());
        for (std::size_t y = 0; y < n.size(v1) && ok; ++y)
          ok = m.apply(phi2, f.maps[k1][y]) == f.maps[k2][n.apply(phi2, y)];
      }
    }
    if (ok) result.push_back(std::move(f));
    std::size_t i = out.size();
    while (i > 0 && choice[i - 1] + 1 == tables[i - 1].size()) choice[--i] = 0;
    if (i == 0) break;
    ++choice[i - 1];
  }
  std::sort(result.begin(), result.end());
  return result;
}

FinNatTrans evaluation(const Exponential& e, const FinFunctor& m, const FinFunctor& n) {
  const FinCat& c = *m.cat;
  const auto pos = out_positions(c);
  const Product p = product(e.functor, n);
  Components comps(c.object_count());
  for (std::size_t v = 0; v < c.object_count(); ++v) {
    const std::size_t k = pos[c.identity(v)];
    for (const auto& s : e.families[v])
      for (std::size_t y = 0; y < n.size(v); ++y) comps[v].push_back(s.maps[k][y]);
  }
  return {p.functor, m, std::move(comps)};
}

// ---- currying verification ----------------------------------------------------

namespace {

constexpr std::uint32_t npos32 = std::numeric_limits<std::uint32_t>::max();

/// Looks up families by an integer key when the family cells fit in 63 bits.
class FamilyLookup {
 public:
  explicit FamilyLookup(const Exponential& e) : e_(e), fast_(e.families.size()) {
    std::uint64_t radix = 2;
    for (const auto& fams : e.families)
      for (const auto& f : fams)
        for (const auto& t : f.maps)
          for (auto v : t) radix = std::max<std::uint64_t>(radix, v + 1);
    radix_ = radix;
    encodable_ = true;
    for (std::size_t w = 0; w < e.families.size() && encodable_; ++w)
      for (std::size_t b = 0; b < e.domains[w].size() && encodable_; ++b) {
        std::size_t cells = 0;
        for (const auto& d : e.domains[w][b]) cells += d.size();
        long double bits = std::log2(static_cast<long double>(e.domains[w].size()) + 1) +
                           static_cast<long double>(cells) * std::log2(static_cast<long double>(radix));
        encodable_ = bits < 62;
      }
    if (!encodable_) return;
    for (const auto& d : e.domains) bases_.push_back(std::max<std::uint64_t>(1, d.size()));
    for (std::size_t w = 0; w < e.families.size(); ++w) {
      fast_[w].reserve(e.families[w].size() * 2);
      for (std::size_t i = 0; i < e.families[w].size(); ++i) {
        const Family& f = e.families[w][i];
        std::uint64_t key = 0;
        for (const auto& t : f.maps)
          for (auto v : t) key = key * radix_ + v;
        fast_[w].emplace(key * bases_[w] + f.base, static_cast<std::uint32_t>(i));
      }
    }
  }

  /// Family at object w with the given base whose cells read values[refs[0..n)].
  std::uint32_t find(std::size_t w, std::size_t base, const std::uint32_t* values, const std::uint32_t* refs,
                     std::size_t n) const {
    if (encodable_) {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t v = values[refs[i]];
        if (v >= radix_) return npos32;
        key = key * radix_ + v;
      }
      const auto it = fast_[w].find(key * bases_[w] + base);
      return it == fast_[w].end() ? npos32 : it->second;
    }
    Family f{base, {}};
    std::size_t i = 0;
    for (const auto& d : e_.domains[w][base]) {
      Table t;
      for (std::size_t j = 0; j < d.size(); ++j) t.push_back(values[refs[i++]]);
      f.maps.push_back(std::move(t));
    }
    const auto idx = e_.index_of(w, f);
    return idx ? static_cast<std::uint32_t>(*idx) : npos32;
  }

 private:
  const Exponential& e_;
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> fast_;
  std::vector<std::uint64_t> bases_;
  std::uint64_t radix_ = 2;
  bool encodable_ = false;
};

/// One probe P. Source cells are the pairs (x, y) of P x N (or P x_L B) in
/// object-major order; target cells are the elements of P.
struct Side {
  const FinFunctor* p = nullptr;
  std::vector<std::uint32_t> p_offset;                // first P cell of each object
  std::vector<std::uint32_t> base;                    // per P cell
  std::vector<std::uint32_t> b_size;                  // |B(v)|
  std::vector<std::vector<std::uint32_t>> source_of;  // [v][x*|B(v)|+y] -> source cell
  std::vector<std::array<std::uint32_t, 3>> pairs;    // per source cell: v, x, y
  std::vector<std::uint32_t> ref_start, refs;         // curry: source cells read by each P cell
  std::vector<std::uint32_t> back_j;                  // uncurry: position of y in the identity domain
  NatRows homs_product, homs_exp;
  std::vector<std::uint32_t> curried;                 // homs_product.count rows of |P| cells
  std::size_t p_cells = 0;
};

Side make_side(const FinCat& c, const Exponential& e, const FinFunctor& p, const Table* p_base,
               const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& pairs,
               const std::vector<std::size_t>& b_size) {
  const auto pos = out_positions(c);
  Side s;
  s.p = &p;
  for (std::size_t v = 0; v < c.object_count(); ++v) {
    s.p_offset.push_back(static_cast<std::uint32_t>(s.p_cells));
    for (std::size_t x = 0; x < p.size(v); ++x) s.base.push_back(p_base ? static_cast<std::uint32_t>((*p_base)[s.p_cells + x]) : 0);
    s.p_cells += p.size(v);
  }
  s.source_of.resize(c.object_count());
  for (std::size_t v = 0; v < c.object_count(); ++v) {
    s.b_size.push_back(static_cast<std::uint32_t>(b_size[v]));
    s.source_of[v].assign(p.size(v) * b_size[v], npos32);
    for (auto [x, y] : pairs[v]) {
      s.source_of[v][x * b_size[v] + y] = static_cast<std::uint32_t>(s.pairs.size());
      s.pairs.push_back({static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)});
    }
  }
  for (std::size_t w = 0; w < c.object_count(); ++w)
    for (std::size_t x = 0; x < p.size(w); ++x) {
      const std::uint32_t base = s.base[s.p_offset[w] + x];
      s.ref_start.push_back(static_cast<std::uint32_t>(s.refs.size()));
      const auto& out = c.out(w);
      for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t v = c.arrow(out[k]).cod;
        const std::size_t px = p.apply(out[k], x);
        for (auto y : e.domains[w][base][k]) {
          const std::uint32_t src = s.source_of[v][px * b_size[v] + y];
          if (src == npos32) throw Error(ErrorCode::internal, "curried family reads outside the source");
          s.refs.push_back(src);
        }
      }
    }
  s.ref_start.push_back(static_cast<std::uint32_t>(s.refs.size()));
  for (const auto& [v, x, y] : s.pairs) {
    const auto& dom = e.domains[v][s.base[s.p_offset[v] + x]][pos[c.identity(v)]];
    const auto it = std::find(dom.begin(), dom.end(), y);
    s.back_j.push_back(it == dom.end() ? npos32 : static_cast<std::uint32_t>(it - dom.begin()));
  }
  return s;
}

/// Curries one source row into `theta`; false when a family is missing.
bool curry_row(const FinCat& c, const FamilyLookup& lookup, const Side& s, const std::uint32_t* eta,
               std::uint32_t* theta) {
  std::size_t cell = 0;
  for (std::size_t w = 0; w < c.object_count(); ++w)
    for (std::size_t x = 0; x < s.p->size(w); ++x, ++cell) {
      const std::uint32_t* refs = s.refs.data() + s.ref_start[cell];
      theta[cell] = lookup.find(w, s.base[cell], eta, refs, s.ref_start[cell + 1] - s.ref_start[cell]);
      if (theta[cell] == npos32) return false;
    }
  return true;
}

CheckResult currying_result(const FinCat& c, const Exponential& e, const FamilyLookup& lookup, std::size_t probe,
                            Side& side) {
  const auto pos = out_positions(c);
  const FinFunctor& p = *side.p;
  const std::size_t n = side.homs_product.count, pc = side.p_cells;
  CheckResult r{"currying[" + std::to_string(probe) + "]"};
  r.detail = "|Hom(PxN,M)|=" + std::to_string(n) + " |Hom(P,M^N)|=" + std::to_string(side.homs_exp.count);
  auto fail = [&](std::vector<std::size_t> witness, const std::string& why) {
    r.passed = false;
    r.witness = std::move(witness);
    r.detail += "; " + why;
    return r;
  };

  side.curried.assign(n * pc, 0);
  std::vector<std::uint8_t> hit(side.homs_exp.count, 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::uint32_t* theta = side.curried.data() + k * pc;
    if (!curry_row(c, lookup, side, side.homs_product.row(k), theta))
      return fail({probe, k}, "curried family of transformation " + std::to_string(k) + " is not compatible");
    for (std::size_t a = 0; a < c.arrow_count(); ++a) {
      const auto& ar = c.arrow(a);
      for (std::size_t x = 0; x < p.size(ar.dom); ++x)
        if (e.functor.apply(a, theta[side.p_offset[ar.dom] + x]) != theta[side.p_offset[ar.cod] + p.apply(a, x)])
          return fail({probe, k, a, x},
                      "curry of transformation " + std::to_string(k) + " is not natural along arrow " + std::to_string(a));
    }
    const auto idx = side.homs_exp.find(theta);
    if (!idx) return fail({probe, k}, "curry of transformation " + std::to_string(k) + " is not in Hom(P,M^N)");
    if (hit[*idx]++) return fail({probe}, "currying is not injective");
  }
  if (n != side.homs_exp.count) return fail({probe}, "currying is not onto Hom(P,M^N)");

  std::vector<std::uint32_t> eta(side.homs_product.stride);
  for (std::size_t k = 0; k < side.homs_exp.count; ++k) {
    const std::uint32_t* theta = side.homs_exp.row(k);
    bool inside = true;
    for (std::size_t src = 0; src < side.pairs.size(); ++src) {
      const auto [v, x, y] = side.pairs[src];
      const Family& f = e.families[v][theta[side.p_offset[v] + x]];
      const std::uint32_t j = side.back_j[src];
      inside = inside && j != npos32 && f.base == side.base[side.p_offset[v] + x];
      eta[src] = inside ? static_cast<std::uint32_t>(f.maps[pos[c.identity(v)]][j]) : npos32;
    }
    const auto idx = inside ? side.homs_product.find(eta.data()) : std::nullopt;
    if (!idx) return fail({probe, k}, "uncurry of " + std::to_string(k) + " is not a transformation P x N => M");
    if (!std::equal(theta, theta + pc, side.curried.data() + *idx * pc))
      return fail({probe, k}, "curry(uncurry) differs at " + std::to_string(k));
  }
  return r;
}

/// Naturality in P: curry(eta∘(mu x N)) = curry(eta)∘mu for every mu: P_j => P_i.
CheckResult probe_naturality(const FinCat& c, const std::vector<Side>& sides,
                             const std::function<NatRows(std::size_t, std::size_t)>& probe_homs) {
  CheckResult nat{"probe_naturality"};
  std::size_t squares = 0;
  for (std::size_t i = 0; i < sides.size(); ++i)
    for (std::size_t j = 0; j < sides.size(); ++j) {
      const Side& si = sides[i];
      const Side& sj = sides[j];
      const NatRows mus = probe_homs(j, i);
      std::vector<std::uint32_t> pull(sj.pairs.size()), theta_at(sj.p_cells), pulled(sj.pairs.size());
      for (std::size_t m = 0; m < mus.count; ++m) {
        const std::uint32_t* mu = mus.row(m);
        bool defined = true;
        for (std::size_t src = 0; src < sj.pairs.size(); ++src) {
          const auto [v, q, y] = sj.pairs[src];
          const std::uint32_t x = mu[sj.p_offset[v] + q];
          pull[src] = si.source_of[v][x * si.b_size[v] + y];
          defined = defined && pull[src] != npos32;
        }
        for (std::size_t v = 0, cell = 0; v < c.object_count(); ++v)
          for (std::size_t q = 0; q < sj.p->size(v); ++q, ++cell) theta_at[cell] = si.p_offset[v] + mu[cell];
        for (std::size_t k = 0; k < si.homs_product.count; ++k) {
          const std::uint32_t* eta = si.homs_product.row(k);
          const std::uint32_t* theta = si.curried.data() + k * si.p_cells;
          ++squares;
          bool ok = defined;
          if (ok) {
            for (std::size_t src = 0; src < pull.size(); ++src) pulled[src] = eta[pull[src]];
            const auto idx = sj.homs_product.find(pulled.data());
            ok = idx.has_value();
            const std::uint32_t* lhs = ok ? sj.curried.data() + *idx * sj.p_cells : nullptr;
            for (std::size_t q = 0; q < sj.p_cells && ok; ++q) ok = lhs[q] == theta[theta_at[q]];
          }
          if (!ok) {
            nat.passed = false;
            nat.witness = {j, i, m, k};
            nat.detail = "currying is not natural along a transformation from probe " + std::to_string(j) +
                         " to probe " + std::to_string(i);
            return nat;
          }
        }
      }
    }
  nat.detail = std::to_string(squares) + " squares";
  return nat;
}

CheckResult functor_result(const std::string& law, const FinFunctor& e) {
  CheckResult r{law};
  for (const auto& c : validate_functor(e).checks)
    if (!c.passed) {
      r.passed = false;
      r.witness = c.witness;
      r.detail = c.law + ": " + c.detail;
      break;
    }
  return r;
}

}  // namespace

ValidationReport verify_ccc(const FinFunctor& m, const FinFunctor& n, const std::vector<FinFunctor>& probes,
                            const ModelConfig& config) {
  const FinCat& c = *m.cat;
  const Exponential e = exponential(m, n, config);
  const FamilyLookup lookup(e);
  ValidationReport report;
  report.checks.push_back(functor_result("exponential_functor", e.functor));

  std::vector<Side> sides;
  bool curried = true;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const FinFunctor& p = probes[i];
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(c.object_count());
    for (std::size_t v = 0; v < c.object_count(); ++v)
      for (std::size_t x = 0; x < p.size(v); ++x)
        for (std::size_t y = 0; y < n.size(v); ++y) pairs[v].emplace_back(x, y);
    Side side = make_side(c, e, p, nullptr, pairs, n.sizes);
    side.homs_product = enumerate_nat_rows(product(p, n).functor, m, config);
    side.homs_exp = enumerate_nat_rows(p, e.functor, config);
    report.checks.push_back(currying_result(c, e, lookup, i, side));
    curried &= report.checks.back().passed;
    sides.push_back(std::move(side));
  }
  if (!curried)
    report.checks.push_back({"probe_naturality", false, {}, "not checked: currying failed"});
  else
    report.checks.push_back(probe_naturality(
        c, sides, [&](std::size_t j, std::size_t i) { return enumerate_nat_rows(probes[j], probes[i], config); }));
  return report;
}

// ---- slices -----------------------------------------------------------------

FiberedProduct fibered_product(const SlicedObject& a, const SlicedObject& b) {
  const FinCat& c = *a.total.cat;
  FiberedProduct fp;
  fp.pairs.resize(c.object_count());
  std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> index(c.object_count());
  FinFunctor total{a.total.cat, {}, {}, {}};
  Components structure(c.object_count()), p1(c.object_count()), p2(c.object_count());
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    for (std::size_t x = 0; x < a.total.size(o); ++x)
      for (std::size_t y = 0; y < b.total.size(o); ++y)
        if (a.structure.at(o, x) == b.structure.at(o, y)) {
          index[o][{x, y}] = fp.pairs[o].size();
          fp.pairs[o].push_back({x, y});
          structure[o].push_back(a.structure.at(o, x));
          p1[o].push_back(x);
          p2[o].push_back(y);
        }
    total.sizes.push_back(fp.pairs[o].size());
  }
  for (std::size_t ar = 0; ar < c.arrow_count(); ++ar) {
    const auto& arr = c.arrow(ar);
    Table t;
    for (auto [x, y] : fp.pairs[arr.dom]) t.push_back(index[arr.cod].at({a.total.apply(ar, x), b.total.apply(ar, y)}));
    total.maps.push_back(std::move(t));
  }
  fp.object = {total, {total, a.base(), std::move(structure)}};
  fp.proj1 = {total, a.total, std::move(p1)};
  fp.proj2 = {total, b.total, std::move(p2)};
  return fp;
}

SliceExponential slice_exponential(const SlicedObject& a, const SlicedObject& b, const ModelConfig& config) {
  if (!(a.base() == b.base())) throw Error(ErrorCode::bad_parameter, "sliced objects live over different bases");
  SliceExponential r;
  r.exp = build_exponential(a.total, b.total, &a.base(), &a.structure.components, &b.structure.components, config);
  Components structure;
  for (const auto& fams : r.exp.families) {
    Table t;
    for (const auto& f : fams) t.push_back(f.base);
    structure.push_back(std::move(t));
  }
  r.object = {r.exp.functor, {r.exp.functor, a.base(), std::move(structure)}};
  return r;
}

namespace {

Candidates slice_candidates(const SlicedObject& s, const SlicedObject& t) {
  if (!(s.base() == t.base())) throw Error(ErrorCode::bad_parameter, "sliced objects live over different bases");
  const FinCat& c = *s.total.cat;
  Candidates cand(c.object_count());
  for (std::size_t o = 0; o < c.object_count(); ++o)
    for (std::size_t x = 0; x < s.total.size(o); ++x) {
      std::vector<std::size_t> allowed;
      for (std::size_t y = 0; y < t.total.size(o); ++y)
        if (t.structure.at(o, y) == s.structure.at(o, x)) allowed.push_back(y);
      cand[o].push_back(std::move(allowed));
    }
  return cand;
}

}  // namespace

std::vector<Components> enumerate_slice_homs(const SlicedObject& s, const SlicedObject& t, const ModelConfig& config) {
  return enumerate_nat(s.total, t.total, config, slice_candidates(s, t));
}

ValidationReport verify_slice_ccc(const SlicedObject& a, const SlicedObject& b, const std::vector<SlicedObject>& probes,
                                  const ModelConfig& config) {
  const FinCat& c = *a.total.cat;
  const SliceExponential se = slice_exponential(a, b, config);
  const Exponential& e = se.exp;
  const FamilyLookup lookup(e);
  ValidationReport report;
  report.checks.push_back(functor_result("exponential_functor", e.functor));

  std::vector<Side> sides;
  bool curried = true;
  std::vector<Table> bases;
  for (const auto& p : probes) bases.push_back(flatten(p.structure.components));
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const FiberedProduct fp = fibered_product(probes[i], b);
    Side side = make_side(c, e, probes[i].total, &bases[i], fp.pairs, b.total.sizes);
    side.homs_product = enumerate_nat_rows(fp.object.total, a.total, config, slice_candidates(fp.object, a));
    side.homs_exp = enumerate_nat_rows(probes[i].total, se.object.total, config, slice_candidates(probes[i], se.object));
    report.checks.push_back(currying_result(c, e, lookup, i, side));
    curried &= report.checks.back().passed;
    sides.push_back(std::move(side));
  }
  if (!curried)
    report.checks.push_back({"probe_naturality", false, {}, "not checked: currying failed"});
  else
    report.checks.push_back(probe_naturality(c, sides, [&](std::size_t j, std::size_t i) {
      return enumerate_nat_rows(probes[j].total, probes[i].total, config, slice_candidates(probes[j], probes[i]));
    }));
  return report;
}

SlicedObject over_terminal(const FinFunctor& m) { return {m, to_terminal(m)}; }

SlicedObject identity_sliced(const FinFunctor& l) { return {l, identity_nat(l)}; }

}  // namespace weilad::fincat
