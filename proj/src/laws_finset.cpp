#include "laws_internal.hpp"
#include "weilad/fincat.hpp"

namespace weilad::detail {
namespace {

using namespace fincat;

std::string first_failure(const ValidationReport& r) {
  for (const auto& c : r.checks)
    if (!c.passed) return c.law + ": " + c.detail;
  return {};
}

const CheckResult* first_failed(const ValidationReport& r) {
  for (const auto& c : r.checks)
    if (!c.passed) return &c;
  return nullptr;
}

bool same_components(const FinNatTrans& a, const FinNatTrans& b) {
  return a.source == b.source && a.target == b.target && a.components == b.components;
}

class FinsetLaws {
 public:
  explicit FinsetLaws(const LawInstance& in, LawReport& report) : in_(in), rec_(report) {
    if (in.max_enum) config_.max_enum = in.max_enum;
    config_.defect_exp_reindex = in.defect == Defect::exp_reindex;
    if (in.categories.empty()) cats_ = bundled_categories();
    else
      for (const auto& n : in.categories) cats_.push_back(bundled_category(n));
  }

  void run() {
    const std::string& id = in_.law_id;
    for (const auto& c : cats_) {
      if (id == "L1") l1(c);
      else if (id == "L2") l2(c);
      else if (id == "L3") l3(c);
      else if (id == "L4") l4(c);
      else if (id == "L5") l5(c);
      else if (id == "L6") l6(c);
      else if (id == "L7") l7(c);
      else if (id == "L10") l10(c);
      else if (id == "L11") l11(c);
      else if (id == "L12") l12(c);
      else throw Error(ErrorCode::unavailable_in_model, id + " is not available in the finite-set model");
    }
  }

 private:
  /// Size limits propagate; any other error fails the instance.
  template <class Body>
  void instance(const std::string& label, std::vector<std::size_t> idx, Body&& body) {
    std::string detail;
    bool ok = false;
    extra_.clear();
    try {
      detail = body();
      ok = detail.empty();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::size_limit) throw;
      detail = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    idx.insert(idx.end(), extra_.begin(), extra_.end());
    rec_.record(ok, label, detail, std::move(idx));
  }

  /// A validation report as one instance; the failing check's witness is
  /// appended to the indices.
  template <class Make>
  void report_instance(const std::string& label, std::vector<std::size_t> idx, Make&& make) {
    instance(label, std::move(idx), [&]() {
      const ValidationReport r = make();
      if (const auto* f = first_failed(r)) extra_ = f->witness;
      return first_failure(r);
    });
  }

  static std::string where(const CatPtr& c, const std::string& rest) { return "cat=" + c->name() + " " + rest; }

  std::vector<EndofunctorData> endofunctors(const CatPtr& c, bool with_constants) const {
    auto gs = bundled_endofunctors(c);
    if (with_constants)
      for (std::size_t o = 0; o < c->object_count(); ++o) gs.push_back(constant_endofunctor(c, o));
    return gs;
  }

  static std::vector<EndofunctorData> with_p_and_i(std::vector<EndofunctorData> gs) {
    std::erase_if(gs, [](const EndofunctorData& g) { return !g.p || !g.i; });
    return gs;
  }

  /// Transformations between endofunctors of c: identities, i, p and their composites.
  std::vector<EndoTransformation> transformations(const CatPtr& c) const {
    std::vector<EndoTransformation> out;
    for (const auto& g : endofunctors(c, false)) {
      out.push_back(identity_transformation(g));
      const auto i = unit_transformation(g);
      const auto p = counit_transformation(g);
      if (i) out.push_back(*i);
      if (p) out.push_back(*p);
      if (i && p) {
        out.push_back(compose_transformations(*p, *i));
        out.push_back(compose_transformations(*i, *p));
      }
    }
    return out;
  }

  std::vector<Components> some_nats(const FinFunctor& m, const FinFunctor& n, std::size_t limit) const {
    auto all = enumerate_nat(m, n, config_);
    if (all.size() > limit) all.resize(limit);
    return all;
  }

  // T^W preserves finite products, the terminal object and equalizers.
  void l1(const CatPtr& c) {
    const auto fs = enumerate_functors(c, 2);
    for (const auto& g : endofunctors(c, true)) {
      instance(where(c, "G=" + g.name + " terminal"), {}, [&]() -> std::string {
        return precompose(g, terminal_functor(c)) == terminal_functor(c) ? "" : "T(1) is not terminal";
      });
      for (std::size_t a = 0; a < fs.size(); ++a)
        for (std::size_t b = 0; b < fs.size(); ++b) {
          const std::string at = "G=" + g.name + " M=#" + std::to_string(a) + " N=#" + std::to_string(b);
          instance(where(c, at + " product"), {a, b}, [&]() -> std::string {
            const Product lhs = product(fs[a], fs[b]);
            const Product rhs = product(precompose(g, fs[a]), precompose(g, fs[b]));
            if (!(precompose(g, lhs.functor) == rhs.functor)) return "T(MxN) differs from TM x TN";
            if (!same_components(precompose(g, lhs.proj1), rhs.proj1) ||
                !same_components(precompose(g, lhs.proj2), rhs.proj2))
              return "projections differ";
            return "";
          });
          const auto nats = some_nats(fs[a], fs[b], 3);
          for (std::size_t i = 0; i < nats.size(); ++i)
            for (std::size_t j = 0; j < nats.size(); ++j)
              instance(where(c, at + " equalizer f=#" + std::to_string(i) + " g=#" + std::to_string(j)), {a, b, i, j},
                       [&]() -> std::string {
                         const FinNatTrans f{fs[a], fs[b], nats[i]}, h{fs[a], fs[b], nats[j]};
                         const Equalizer lhs = equalizer(f, h);
                         const Equalizer rhs = equalizer(precompose(g, f), precompose(g, h));
                         if (!(precompose(g, lhs.functor) == rhs.functor)) return "T(Eq) differs from Eq(Tf, Tg)";
                         if (!same_components(precompose(g, lhs.inclusion), rhs.inclusion)) return "inclusions differ";
                         return "";
                       });
        }
    }
  }

  // T^k is the identity functor.
  void l2(const CatPtr& c) {
    const auto fs = enumerate_functors(c, 2);
    const auto id = identity_endofunctor(c);
    for (std::size_t a = 0; a < fs.size(); ++a)
      for (std::size_t b = 0; b < fs.size(); ++b) {
        if (b != a && b != 0) continue;
        instance(where(c, "M=#" + std::to_string(a) + " N=#" + std::to_string(b)), {a, b}, [&]() -> std::string {
          if (!(precompose(id, fs[a]) == fs[a])) return "T(M) differs from M";
          for (const auto& n : some_nats(fs[a], fs[b], 4))
            if (precompose(id, FinNatTrans{fs[a], fs[b], n}).components != n) return "T(f) differs from f";
          return "";
        });
      }
  }

  // T^{W2} after T^{W1} is T^{W1 (x) W2}: precomposition with the composite.
  void l3(const CatPtr& c) {
    const auto fs = enumerate_functors(c, 2);
    const auto gs = endofunctors(c, true);
    for (const auto& g1 : gs)
      for (const auto& g2 : gs) {
        const auto g12 = compose_endofunctors(g1, g2);
        for (std::size_t a = 0; a < fs.size(); ++a)
          instance(where(c, "G1=" + g1.name + " G2=" + g2.name + " M=#" + std::to_string(a)), {a}, [&]() -> std::string {
            if (!(precompose(g12, fs[a]) == precompose(g2, precompose(g1, fs[a])))) return "functor values differ";
            for (std::size_t b = 0; b < fs.size(); b += 3)
              for (const auto& n : some_nats(fs[a], fs[b], 2)) {
                const FinNatTrans f{fs[a], fs[b], n};
                if (precompose(g12, f).components != precompose(g2, precompose(g1, f)).components)
                  return "transformation values differ for N=#" + std::to_string(b);
              }
            return "";
          });
      }
  }

  // T^W(M^N) is (T^W M)^(T^W N): the comparison map is a natural bijection.
  void l4(const CatPtr& c) {
    const auto fs = enumerate_functors(c, 2);
    for (const auto& g : endofunctors(c, false))
      for (std::size_t a = 0; a < fs.size(); ++a)
        for (std::size_t b = 0; b < fs.size(); ++b)
          report_instance(where(c, "G=" + g.name + " M=#" + std::to_string(a) + " N=#" + std::to_string(b)), {a, b},
                          [&]() {
                            ValidationReport r = exp_compat_check(g, fs[a], fs[b], config_);
                            std::erase_if(r.checks, [](const CheckResult& k) { return k.law.rfind("comparison", 0) != 0; });
                            return r;
                          });
  }

  // alpha_id is the identity.
  void l5(const CatPtr& c) {
    const auto fs = enumerate_functors(c, 2);
    for (const auto& g : endofunctors(c, true))
      for (std::size_t a = 0; a < fs.size(); ++a)
        instance(where(c, "G=" + g.name + " M=#" + std::to_string(a)), {a}, [&]() -> std::string {
          return same_components(alpha_of(identity_transformation(g), fs[a]), identity_nat(precompose(g, fs[a])))
                     ? ""
                     : "alpha_id(M) is not the identity";
        });
  }

  // alpha_{eta2 . eta1} = alpha_eta2 . alpha_eta1.
  void l6(const CatPtr& c) {
    const auto fs = enumerate_functors(c, 2);
    const auto ts = transformations(c);
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = 0; j < ts.size(); ++j) {
        if (ts[i].to.on_objects != ts[j].from.on_objects || ts[i].to.on_arrows != ts[j].from.on_arrows) continue;
        const auto comp = compose_transformations(ts[j], ts[i]);
        for (std::size_t a = 0; a < fs.size(); ++a)
          instance(where(c, "eta1=" + ts[i].name + " eta2=" + ts[j].name + " M=#" + std::to_string(a)), {i, j, a},
                   [&]() -> std::string {
                     const auto lhs = compose_nat(alpha_of(ts[j], fs[a]), alpha_of(ts[i], fs[a]));
                     return same_components(lhs, alpha_of(comp, fs[a])) ? "" : "composite differs";
                   });
      }
  }

  // alpha is compatible with exponentials (the two composites agree).
  void l7(const CatPtr& c) {
    const auto fs = enumerate_functors(c, 2);
    const auto ts = transformations(c);
    for (std::size_t t = 0; t < ts.size(); ++t)
      for (std::size_t a = 0; a < fs.size(); ++a)
        for (std::size_t b = 0; b < fs.size(); ++b)
          report_instance(where(c, "eta=" + ts[t].name + " M=#" + std::to_string(a) + " N=#" + std::to_string(b)),
                          {t, a, b}, [&]() { return composite_check(ts[t], fs[a], fs[b], config_); });
  }

  // Slices are cartesian closed and T_L is compatible with slice exponentials.
  void l10(const CatPtr& c) {
    const auto gs = with_p_and_i(endofunctors(c, false));
    const auto ls = enumerate_functors(c, 2);
    for (std::size_t l = 0; l < ls.size(); ++l) {
      if (ls[l].total_size() > 2) continue;
      const auto sl = enumerate_sliced(ls[l], 2, config_);
      for (std::size_t a = 0; a < sl.size(); ++a)
        for (std::size_t b = 0; b < sl.size(); ++b) {
          const std::string at = "L=#" + std::to_string(l) + " A=#" + std::to_string(a) + " B=#" + std::to_string(b);
          report_instance(where(c, at + " ccc"), {l, a, b}, [&]() { return verify_slice_ccc(sl[a], sl[b], sl, config_); });
          for (const auto& g : gs)
            report_instance(where(c, at + " G=" + g.name), {l, a, b},
                            [&]() { return exp_compat_check_slice(g, sl[a], sl[b], config_); });
        }
    }
  }

  /// alpha_eta(M) with one component value moved (the non-natural defect).
  static FinNatTrans corrupted(FinNatTrans t) {
    for (std::size_t v = 0; v < t.components.size(); ++v) {
      const std::size_t n = t.target.size(v);
      if (n >= 2 && !t.components[v].empty()) {
        t.components[v][0] = (t.components[v][0] + 1) % n;
        break;
      }
    }
    return t;
  }

  // alpha_eta is natural: alpha(N) . T1(f) = T2(f) . alpha(M).
  void l11(const CatPtr& c) {
    const auto fs = enumerate_functors(c, 2);
    const auto ts = transformations(c);
    const bool plant = in_.defect == Defect::non_natural;
    for (std::size_t t = 0; t < ts.size(); ++t)
      for (std::size_t a = 0; a < fs.size(); ++a)
        instance(where(c, "eta=" + ts[t].name + " M=#" + std::to_string(a)), {t, a}, [&]() -> std::string {
          auto alpha_m = alpha_of(ts[t], fs[a]);
          if (plant) alpha_m = corrupted(alpha_m);
          if (const std::string v = first_failure(validate_nat(alpha_m)); !v.empty()) return v;
          for (std::size_t b = 0; b < fs.size(); ++b) {
            auto alpha_n = alpha_of(ts[t], fs[b]);
            if (plant) alpha_n = corrupted(alpha_n);
            for (const auto& n : some_nats(fs[a], fs[b], 4)) {
              const FinNatTrans f{fs[a], fs[b], n};
              const auto lhs = compose_nat(alpha_n, precompose(ts[t].from, f));
              const auto rhs = compose_nat(precompose(ts[t].to, f), alpha_m);
              if (lhs.components != rhs.components) return "square fails for N=#" + std::to_string(b);
            }
          }
          return "";
        });
  }

  // T_L is the localization of T at L; flattening iterated slices round-trips.
  void l12(const CatPtr& c) {
    const auto gs = with_p_and_i(endofunctors(c, false));
    const auto ls = enumerate_functors(c, 2);
    const auto rs = enumerate_functors(c, 1);
    for (std::size_t l = 0; l < ls.size(); ++l) {
      if (ls[l].total_size() > 2) continue;
      const auto sl = enumerate_sliced(ls[l], 2, config_);
      for (std::size_t a = 0; a < sl.size(); ++a) {
        const std::string at = "L=#" + std::to_string(l) + " A=#" + std::to_string(a);
        report_instance(where(c, at + " flatten"), {l, a}, [&]() { return verify_flatten(flatten_slice(sl[a]), rs, config_); });
        for (const auto& g : gs)
          for (std::size_t r = 0; r < rs.size(); ++r)
            report_instance(where(c, at + " G=" + g.name + " R=#" + std::to_string(r)), {l, a, r},
                            [&]() { return localization_check(g, sl[a], rs[r], config_); });
      }
    }
  }

  const LawInstance& in_;
  Recorder rec_;
  ModelConfig config_;
  std::vector<CatPtr> cats_;
  std::vector<std::size_t> extra_;
};

}  // namespace

LawReport run_finset_law(const LawInstance& in) {
  LawReport r;
  r.law_id = in.law_id;
  r.model = LawModel::finset;
  r.mode = in.mode;
  FinsetLaws(in, r).run();
  return r;
}

}  // namespace weilad::detail
