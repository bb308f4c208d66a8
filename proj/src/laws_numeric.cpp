#include "laws_internal.hpp"
#include "weilad/embedded_data.hpp"
#include "weilad/weil_functor.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <functional>
#include <map>
#include <sstream>

namespace weilad {

std::vector<CorpusEntry> corpus(const std::string& kind) {
  const std::string prefix = "corpus/" + kind + "/";
  std::vector<CorpusEntry> out;
  for (const auto& [path, text] : embedded_data())
    if (path.rfind(prefix, 0) == 0 && path.size() > 3 && path.substr(path.size() - 3) == ".fn")
      out.push_back({path.substr(prefix.size(), path.size() - prefix.size() - 3), text});
  return out;
}

namespace detail {
namespace {

struct NamedAlgebra {
  std::string name;
  AlgebraPtr w;
};

struct NamedMap {
  std::string name;
  SmoothMap f;
};

struct NamedMorphism {
  std::string name;
  WeilMorphism phi;
  /// Generator images over the target, used by the multiplicative oracle.
  std::vector<WeilNumber<Rational>> images;
};

const std::vector<std::string>& family_specs() {
  static const std::vector<std::string> specs{"base",      "dual:1",        "dual:2",       "jet:2",
                                              "jet:3",     "mixed:1,1",     "dual:1*dual:1", "jet:2*dual:1"};
  return specs;
}

/// Doubles the first nonzero product of two non-unit basis elements
/// (x*x = 2x^2 in jet:2); the augmentation ideal stays nilpotent.
std::optional<AlgebraPtr> planted_struct_const(const AlgebraPtr& w) {
  for (std::size_t i = 1; i < w->dim(); ++i)
    for (std::size_t j = 1; j < w->dim(); ++j) {
      auto terms = w->product(i, j);
      if (terms.empty()) continue;
      for (auto& t : terms) t.coefficient *= 2;
      return with_struct_entry(*w, i, j, std::move(terms));
    }
  return std::nullopt;
}

std::vector<NamedAlgebra> algebra_family(const LawInstance& in) {
  std::vector<NamedAlgebra> out;
  bool planted = false;
  for (const auto& spec : in.algebras.empty() ? family_specs() : in.algebras) {
    AlgebraPtr w = load_algebra(spec);
    if (in.defect == Defect::struct_const && !planted)
      if (auto m = planted_struct_const(w)) {
        w = *m;
        planted = true;
      }
    out.push_back({spec, w});
  }
  return out;
}

std::vector<NamedMap> map_family(const LawInstance& in) {
  std::vector<NamedMap> out;
  if (in.maps.empty()) {
    for (const auto& e : corpus(in.mode == ScalarMode::rational ? "rational" : "float"))
      out.push_back({e.name, parse_function_text(e.text)});
    return out;
  }
  const auto all = corpus("rational");
  const auto floats = corpus("float");
  for (const auto& m : in.maps) {
    const CorpusEntry* hit = nullptr;
    for (const auto* list : {&all, &floats})
      for (const auto& e : *list)
        if (e.name == m) hit = &e;
    if (hit) out.push_back({hit->name, parse_function_text(hit->text)});
    else if (m.find("vars") != std::string::npos) out.push_back({"map" + std::to_string(out.size()), parse_function_text(m)});
    else out.push_back({m, function_from_expression(m)});
  }
  return out;
}

NamedMorphism by_images(const std::string& name, const AlgebraPtr& src, const AlgebraPtr& tgt,
                        const std::vector<std::string>& images) {
  std::vector<WeilNumber<Rational>> elems;
  std::vector<std::vector<Rational>> coeffs;
  for (const auto& t : images) {
    elems.push_back(parse_element(tgt, t));
    coeffs.push_back(elems.back().coeffs());
  }
  return {name, morphism_from_generator_images(src, tgt, coeffs), std::move(elems)};
}

NamedMorphism from_matrix(const std::string& name, WeilMorphism phi) {
  std::vector<WeilNumber<Rational>> images;
  const auto& src = *phi.source();
  for (std::size_t g = 0; g < src.generator_names().size(); ++g) {
    std::vector<Rational> e(src.dim(), Rational(0));
    e.at(*src.index_of(Monomial::power(g, 1))) = 1;
    images.emplace_back(phi.target(), phi.apply(e));
  }
  return {name, std::move(phi), std::move(images)};
}

std::vector<NamedMorphism> morphism_family() {
  const auto k = base_algebra(), d = dual_algebra(1), d2 = dual_algebra(2), j2 = jet_algebra(2), j3 = jet_algebra(3),
             m11 = mixed_algebra({1, 1});
  const auto dd = tensor(d, d);
  std::vector<NamedMorphism> out;
  out.push_back(from_matrix("id_dual:1", identity_morphism(d)));
  out.push_back(by_images("x->2x", d, d, {"2*x"}));
  out.push_back(by_images("x->3x", d, d, {"3*x"}));
  out.push_back(by_images("x->x+y", j2, dd.algebra, {"x_1 + x_2"}));
  out.push_back(from_matrix("aug*id", tensor_of_morphisms(canonical_morphisms(d).augmentation, identity_morphism(d))));
  out.push_back(by_images("jet:3->jet:2", j3, j2, {"x"}));
  out.push_back(by_images("jet:2->dual:1", j2, d, {"x"}));
  out.push_back(from_matrix("aug_jet:3", canonical_morphisms(j3).augmentation));
  out.push_back(from_matrix("unit_jet:3", canonical_morphisms(j3).unit));
  out.push_back(from_matrix("incl_1", dd.incl_first));
  out.push_back(by_images("mixed->dual:2", m11, d2, {"x", "y"}));
  out.push_back(by_images("x->x-y/2", j2, m11, {"x - y/2"}));
  return out;
}

/// Pairs (phi, psi) with target(phi) = source(psi), by index into morphism_family.
const std::vector<std::pair<std::size_t, std::size_t>>& composable_pairs() {
  static const std::vector<std::pair<std::size_t, std::size_t>> pairs{
      {1, 2}, {0, 1}, {3, 4}, {5, 6}, {8, 7}, {7, 8}, {9, 4}, {6, 1}, {11, 10}};
  return pairs;
}

// ---- scalar helpers ------------------------------------------------------------

template <class S>
S sample_augmentation(Rng& rng) {
  if constexpr (std::is_same_v<S, Rational>) return Rational(rng.range(1, 8)) / Rational(4);
  else return 0.25 + rng.unit();
}

template <class S>
S sample_coefficient(Rng& rng) {
  if constexpr (std::is_same_v<S, Rational>) return Rational(rng.range(-6, 6)) / Rational(rng.range(1, 4));
  else return -1.0 + 2.0 * rng.unit();
}

template <class S>
WeilNumber<S> sample_point(const AlgebraPtr& w, Rng& rng) {
  std::vector<S> c;
  c.push_back(sample_augmentation<S>(rng));
  for (std::size_t i = 1; i < w->dim(); ++i) c.push_back(sample_coefficient<S>(rng));
  return WeilNumber<S>(w, std::move(c));
}

template <class S>
S from_rational(const Rational& q) {
  if constexpr (std::is_same_v<S, Rational>) return q;
  else return to_double(q);
}

template <class S>
std::string show(const S& x) {
  return ScalarTraits<S>::format(x);
}

double magnitude(const Rational& x) { return std::fabs(to_double(x)); }
double magnitude(double x) { return std::fabs(x); }

/// Coefficientwise comparison; exact for Rational, relative (floor 1) for double.
template <class S>
struct Comparison {
  bool ok = true;
  double abs = 0, rel = 0;
  std::string first;
  std::vector<std::size_t> where;
};

template <class S>
void compare(const std::vector<S>& got, const std::vector<S>& want, double tol, Comparison<S>& c,
             std::size_t output = 0) {
  if (got.size() != want.size()) {
    c.ok = false;
    if (c.first.empty()) c.first = "length " + std::to_string(got.size()) + " vs " + std::to_string(want.size());
    return;
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double abs = magnitude(S(got[i] - want[i]));
    const double rel = abs / std::max(1.0, magnitude(want[i]));
    c.abs = std::max(c.abs, abs);
    c.rel = std::max(c.rel, rel);
    bool same;
    if constexpr (std::is_same_v<S, Rational>) same = got[i] == want[i];
    else same = rel <= tol && std::isfinite(got[i]) == std::isfinite(want[i]);
    if (!same) {
      if (c.ok) {
        c.first = "output " + std::to_string(output) + " coefficient " + std::to_string(i) + ": got " +
                  show(got[i]) + ", expected " + show(want[i]);
        c.where = {output, i};
      }
      c.ok = false;
    }
  }
}

template <class S>
void compare(const std::vector<WeilNumber<S>>& got, const std::vector<WeilNumber<S>>& want, double tol,
             Comparison<S>& c) {
  for (std::size_t o = 0; o < std::min(got.size(), want.size()); ++o) compare(got[o].coeffs(), want[o].coeffs(), tol, c, o);
  if (got.size() != want.size()) {
    c.ok = false;
    if (c.first.empty()) c.first = "output count differs";
  }
}

// ---- independent monomial arithmetic (used as an oracle) ----------------------

/// Products recomputed from the monomial presentation, not from struct_const.
class MonomialOracle {
 public:
  explicit MonomialOracle(const WeilAlgebra& w) : w_(w) {
    const std::size_t d = w.dim();
    table_.assign(d * d, std::nullopt);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Monomial m = w.basis()[i] * w.basis()[j];
        const bool vanishes = std::any_of(w.vanishing_monomials().begin(), w.vanishing_monomials().end(),
                                          [&](const Monomial& v) { return v.divides(m); });
        if (!vanishes) table_[i * d + j] = w.index_of(m);
      }
    // Any product of more than sum(p_g - 1) generators vanishes.
    std::vector<unsigned> bound(w.generator_names().size(), 0);
    for (const auto& v : w.vanishing_monomials())
      if (v.exponents().size() == 1) {
        auto [g, e] = *v.exponents().begin();
        if (bound[g] == 0 || e < bound[g]) bound[g] = e;
      }
    order_ = 1;
    for (auto b : bound) order_ = b == 0 ? std::max(order_, w.nilpotency_index()) : order_ + b - 1;
  }

  template <class S>
  std::vector<S> mul(const std::vector<S>& a, const std::vector<S>& b) const {
    const std::size_t d = w_.dim();
    std::vector<S> out(d, S(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (table_[i * d + j]) out[*table_[i * d + j]] += a[i] * b[j];
    return out;
  }

  /// Truncated Taylor series sum_i c_i n^i with powers built by repeated products.
  template <class S>
  std::vector<S> series(const std::vector<S>& c, const std::vector<S>& x) const {
    std::vector<S> n = x;
    n[0] = S(0);
    std::vector<S> power(w_.dim(), S(0)), out(w_.dim(), S(0));
    power[0] = S(1);
    for (unsigned i = 0; i < order_; ++i) {
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += c[i] * power[k];
      power = mul(power, n);
    }
    return out;
  }

  template <class S>
  std::vector<S> primitive(const Primitive& p, const std::vector<S>& x) const {
    return series(taylor_coefficients(p, x[0], order_), x);
  }

  unsigned order() const { return order_; }

 private:
  const WeilAlgebra& w_;
  std::vector<std::optional<std::size_t>> table_;
  unsigned order_ = 1;
};

/// Interprets the expression graph with oracle arithmetic.
template <class S>
std::vector<std::vector<S>> oracle_eval(const SmoothMap& f, const MonomialOracle& o, std::size_t dim,
                                        const std::vector<std::vector<S>>& inputs) {
  const ExprGraph& g = f.graph();
  std::vector<std::vector<S>> value(g.size());
  for (auto id : f.schedule()) {
    const ExprNode& n = g.node(id);
    auto& v = value[id];
    switch (n.kind) {
      case NodeKind::variable: v = inputs[n.variable]; break;
      case NodeKind::constant:
        v.assign(dim, S(0));
        v[0] = from_rational<S>(n.value);
        break;
      case NodeKind::add:
      case NodeKind::sub:
        v = value[n.lhs];
        for (std::size_t k = 0; k < dim; ++k) v[k] += n.kind == NodeKind::add ? value[n.rhs][k] : S(-value[n.rhs][k]);
        break;
      case NodeKind::neg:
        v = value[n.lhs];
        for (auto& c : v) c = -c;
        break;
      case NodeKind::mul: v = o.mul(value[n.lhs], value[n.rhs]); break;
      case NodeKind::div:
        v = o.mul(value[n.lhs], o.primitive(Primitive{PrimitiveKind::recip, 0}, value[n.rhs]));
        break;
      case NodeKind::pow_int: v = o.primitive(Primitive::pow_int(n.exponent), value[n.lhs]); break;
      case NodeKind::unary: v = o.primitive(n.primitive, value[n.lhs]); break;
    }
  }
  std::vector<std::vector<S>> out;
  for (auto id : f.outputs()) out.push_back(value[id]);
  return out;
}

// ---- the laws ------------------------------------------------------------------

template <class S>
class NumericLaws {
 public:
  NumericLaws(const LawInstance& in, LawReport& report)
      : in_(in), rec_(report), rng_(in.seed), algebras_(algebra_family(in)), maps_(map_family(in)) {
    tol_ = std::is_same_v<S, Rational> ? 0.0 : 1e-10;
    report.exact = std::is_same_v<S, Rational>;
    report.tolerance = tol_;
  }

  void run() {
    const std::string& id = in_.law_id;
    if (id == "L1") l1();
    else if (id == "L2") l2();
    else if (id == "L3") l3();
    else if (id == "L5") l5();
    else if (id == "L6") l6();
    else if (id == "L8") l8();
    else if (id == "L9") l9();
    else if (id == "L11") l11();
    else throw Error(ErrorCode::unavailable_in_model, id + " is not available in the numeric model");
  }

 private:
  static constexpr int kPoints = 2;

  std::vector<WeilNumber<S>> points(const AlgebraPtr& w, std::size_t arity) {
    std::vector<WeilNumber<S>> x;
    for (std::size_t i = 0; i < arity; ++i) x.push_back(sample_point<S>(w, rng_));
    return x;
  }

  /// Runs one instance; exceptions become failures carrying the message.
  template <class Body>
  void instance(const std::string& label, std::vector<std::size_t> idx, Body&& body) {
    Comparison<S> c;
    try {
      body(c);
    } catch (const Error& e) {
      c.ok = false;
      c.first = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    rec_.error(c.abs, c.rel);
    if (!c.where.empty()) idx.insert(idx.end(), c.where.begin(), c.where.end());
    rec_.record(c.ok, label, c.first, std::move(idx));
  }

  static std::string label(const NamedMap& m, const std::string& where, int point) {
    return "map=" + m.name + " " + where + " point=" + std::to_string(point);
  }

  // T^W preserves finite products (tupling, projections) and the terminal object.
  void l1() {
    for (std::size_t a = 0; a < algebras_.size(); ++a) {
      const auto& w = algebras_[a].w;
      for (std::size_t m = 0; m < maps_.size(); ++m) {
        const SmoothMap& f = maps_[m].f;
        const SmoothMap g = parse_function(f.variables(), {f.variables().front() + "^2 + 1"});
        const SmoothMap fg = tuple_maps({f, g});
        for (int p = 0; p < kPoints; ++p) {
          const auto x = points(w, f.arity());
          instance(label(maps_[m], "W=" + algebras_[a].name, p), {m, a, std::size_t(p)}, [&](Comparison<S>& c) {
            auto want = lift_eval(f, w, x);
            const auto second = lift_eval(g, w, x);
            want.insert(want.end(), second.begin(), second.end());
            compare(lift_eval(fg, w, x), want, tol_, c);
            for (std::size_t o = 0; o < f.output_count(); ++o)
              compare(lift_eval(f.component(o), w, x).front().coeffs(), want[o].coeffs(), tol_, c, o);
          });
        }
      }
      // Maps into the terminal object: the nullary constant lifts to c*1.
      instance("terminal W=" + algebras_[a].name, {a}, [&](Comparison<S>& c) {
        const SmoothMap k = parse_function({}, {"5/3"});
        const auto ref = WeilNumber<S>::constant(w, from_rational<S>(Rational(0)));
        const auto got = evaluate<WeilNumber<S>>(k, std::span<const WeilNumber<S>>(), ref);
        compare(got.front().coeffs(), WeilNumber<S>::constant(w, from_rational<S>(Rational(5) / 3)).coeffs(), tol_, c);
      });
    }
  }

  // T^k is the identity: lifting over k is scalar evaluation, and T^k
  // composed with T^W on either side is T^W.
  void l2() {
    const AlgebraPtr k = base_algebra();
    for (std::size_t a = 0; a < algebras_.size(); ++a) {
      const auto& w = algebras_[a].w;
      for (std::size_t m = 0; m < maps_.size(); ++m) {
        const SmoothMap& f = maps_[m].f;
        for (int p = 0; p < kPoints; ++p) {
          const auto x = points(w, f.arity());
          instance(label(maps_[m], "W=" + algebras_[a].name, p), {m, a, std::size_t(p)}, [&](Comparison<S>& c) {
            const auto tw = lift_eval(f, w, x);
            // Over k itself.
            std::vector<S> scalars;
            std::vector<WeilNumber<S>> on_k;
            for (const auto& xi : x) {
              scalars.push_back(xi.augmentation());
              on_k.push_back(WeilNumber<S>::constant(k, xi.augmentation()));
            }
            const auto plain = evaluate(f, scalars);
            const auto lifted = lift_eval(f, k, on_k);
            for (std::size_t o = 0; o < plain.size(); ++o) compare(lifted[o].coeffs(), {plain[o]}, tol_, c, o);
            // T^k over T^W: outer k, inner W.
            std::vector<WeilNumber<WeilNumber<S>>> outer_k;
            for (const auto& xi : x) outer_k.push_back(WeilNumber<WeilNumber<S>>::constant(k, xi));
            const auto kw = evaluate(f, outer_k);
            for (std::size_t o = 0; o < kw.size(); ++o) compare(kw[o][0].coeffs(), tw[o].coeffs(), tol_, c, o);
            // T^W over T^k: outer W, inner k.
            std::vector<WeilNumber<WeilNumber<S>>> outer_w;
            for (const auto& xi : x) {
              std::vector<WeilNumber<S>> cs;
              for (const auto& ci : xi.coeffs()) cs.push_back(WeilNumber<S>::constant(k, ci));
              outer_w.emplace_back(w, std::move(cs));
            }
            const auto wk = evaluate(f, outer_w);
            for (std::size_t o = 0; o < wk.size(); ++o) {
              std::vector<S> flat;
              for (const auto& ci : wk[o].coeffs()) flat.push_back(ci[0]);
              compare(flat, tw[o].coeffs(), tol_, c, o);
            }
          });
        }
      }
    }
  }

  // T^{W2} after T^{W1} equals T^{W1 (x) W2} under the nesting isomorphism.
  // The right-hand side is evaluated over the tensor algebra presented from
  // the combined relations, independently of the factor tables.
  void l3() {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    auto find = [&](const std::string& s) {
      for (std::size_t i = 0; i < algebras_.size(); ++i)
        if (algebras_[i].name == s) return i;
      return algebras_.size();
    };
    if (in_.algebras.empty()) {
      for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{{"dual:1", "jet:2"},
                                                                          {"dual:1", "dual:1"},
                                                                          {"jet:2", "dual:1"},
                                                                          {"mixed:1,1", "dual:1"},
                                                                          {"dual:2", "jet:2"},
                                                                          {"jet:3", "dual:1"}})
        pairs.emplace_back(find(a), find(b));
    } else {
      for (std::size_t a = 0; a < algebras_.size(); ++a)
        for (std::size_t b = 0; b < algebras_.size(); ++b) pairs.emplace_back(a, b);
    }
    for (auto [a, b] : pairs) {
      const AlgebraPtr w1 = algebras_[a].w, w2 = algebras_[b].w;
      const AlgebraPtr t = tensor_algebra(w1, w2);
      const AlgebraPtr presented = present_algebra(t->generator_names(), t->vanishing_monomials(), t->name());
      std::vector<std::size_t> perm(t->dim());
      for (std::size_t i = 0; i < t->dim(); ++i) perm[i] = *presented->index_of(t->basis()[i]);
      const std::string where = "W1=" + algebras_[a].name + " W2=" + algebras_[b].name;
      for (std::size_t m = 0; m < maps_.size(); ++m) {
        const SmoothMap& f = maps_[m].f;
        for (int p = 0; p < kPoints; ++p) {
          const auto u = points(t, f.arity());
          instance(label(maps_[m], where, p), {m, a, b, std::size_t(p)}, [&](Comparison<S>& c) {
            std::vector<WeilNumber<WeilNumber<S>>> nested;
            std::vector<WeilNumber<S>> flat;
            for (const auto& ui : u) {
              nested.push_back(nest(w1, w2, ui));
              std::vector<S> v(t->dim());
              for (std::size_t i = 0; i < t->dim(); ++i) v[perm[i]] = ui[i];
              flat.emplace_back(presented, std::move(v));
            }
            const auto lhs = evaluate(f, nested);
            const auto rhs = lift_eval(f, presented, flat);
            for (std::size_t o = 0; o < lhs.size(); ++o) {
              const auto un = unnest(t, lhs[o]);
              std::vector<S> want(t->dim());
              for (std::size_t i = 0; i < t->dim(); ++i) want[i] = rhs[o][perm[i]];
              compare(un.coeffs(), want, tol_, c, o);
            }
          });
        }
      }
    }
  }

  // alpha_id is the identity.
  void l5() {
    for (std::size_t a = 0; a < algebras_.size(); ++a) {
      const auto& w = algebras_[a].w;
      const WeilMorphism id = WeilMorphism::unchecked(w, w, RationalMatrix::identity(w->dim()));
      for (std::size_t m = 0; m < maps_.size(); ++m)
        for (int p = 0; p < kPoints; ++p) {
          const auto x = points(w, maps_[m].f.arity());
          instance(label(maps_[m], "W=" + algebras_[a].name, p), {m, a, std::size_t(p)}, [&](Comparison<S>& c) {
            const auto y = lift_eval(maps_[m].f, w, x);
            for (std::size_t o = 0; o < y.size(); ++o) compare(push_along(id, y[o]).coeffs(), y[o].coeffs(), tol_, c, o);
            if (!(identity_morphism(w).matrix() == id.matrix())) {
              c.ok = false;
              c.first = "identity_morphism is not the identity matrix";
            }
          });
        }
    }
  }

  // alpha_psi . alpha_phi = alpha_{psi o phi}; the composite matrix is also
  // checked against an explicit triple-loop product.
  void l6() {
    const auto mors = morphism_family();
    for (auto [i, j] : composable_pairs()) {
      const auto& phi = mors[i].phi;
      const auto& psi = mors[j].phi;
      const std::string where = "phi=" + mors[i].name + " psi=" + mors[j].name;
      instance("matrix " + where, {i, j}, [&](Comparison<S>& c) {
        const auto comp = compose_morphisms(phi, psi);
        const auto& a = psi.matrix();
        const auto& b = phi.matrix();
        for (std::size_t r = 0; r < a.rows(); ++r)
          for (std::size_t col = 0; col < b.cols(); ++col) {
            Rational sum = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) sum += a(r, k) * b(k, col);
            if (sum != comp.matrix()(r, col) && c.ok) {
              c.ok = false;
              c.first = "composite matrix entry (" + std::to_string(r) + "," + std::to_string(col) + ")";
              c.where = {r, col};
            }
          }
      });
      const auto comp = compose_morphisms(phi, psi);
      for (std::size_t m = 0; m < maps_.size(); ++m)
        for (int p = 0; p < kPoints; ++p) {
          const auto x = points(phi.source(), maps_[m].f.arity());
          instance(label(maps_[m], where, p), {i, j, m, std::size_t(p)}, [&](Comparison<S>& c) {
            for (const auto& y : lift_eval(maps_[m].f, phi.source(), x))
              compare(push_along(comp, y).coeffs(), push_along(psi, push_along(phi, y)).coeffs(), tol_, c);
          });
        }
    }
  }

  // T^W(R) = R (x) W: lifted maps agree with an evaluation that uses only the
  // monomial presentation of W (products reduced by the vanishing monomials).
  void l8() {
    for (std::size_t a = 0; a < algebras_.size(); ++a) {
      const auto& w = algebras_[a].w;
      const MonomialOracle oracle(*w);
      std::vector<NamedMap> maps = maps_;
      for (const char* ring : {"x + y", "x - y", "x*y", "x/y", "-x"})
        maps.push_back({std::string("ring:") + ring, parse_function({"x", "y"}, {ring})});
      for (std::size_t m = 0; m < maps.size(); ++m)
        for (int p = 0; p < kPoints; ++p) {
          const auto x = points(w, maps[m].f.arity());
          instance(label(maps[m], "W=" + algebras_[a].name, p), {m, a, std::size_t(p)}, [&](Comparison<S>& c) {
            std::vector<std::vector<S>> raw;
            for (const auto& xi : x) raw.push_back(xi.coeffs());
            const auto want = oracle_eval(maps[m].f, oracle, w->dim(), raw);
            const auto got = lift_eval(maps[m].f, w, x);
            for (std::size_t o = 0; o < got.size(); ++o) compare(got[o].coeffs(), want[o], tol_, c, o);
          });
        }
    }
  }

  // alpha_phi(R) = R (x) phi: pushing along phi agrees with substituting the
  // generator images into each monomial and multiplying in the target.
  void l9() {
    const auto mors = morphism_family();
    for (std::size_t i = 0; i < mors.size(); ++i) {
      const auto& nm = mors[i];
      const auto& src = *nm.phi.source();
      const MonomialOracle oracle(*nm.phi.target());
      const std::size_t dt = nm.phi.target()->dim();
      auto image = [&](const std::vector<S>& u) {
        std::vector<S> out(dt, S(0));
        for (std::size_t b = 0; b < src.dim(); ++b) {
          std::vector<S> term(dt, S(0));
          term[0] = u[b];
          for (auto [g, e] : src.basis()[b].exponents())
            for (unsigned k = 0; k < e; ++k) {
              std::vector<S> img;
              for (const auto& q : nm.images[g].coeffs()) img.push_back(from_rational<S>(q));
              term = oracle.mul(term, img);
            }
          for (std::size_t k = 0; k < dt; ++k) out[k] += term[k];
        }
        return out;
      };
      for (std::size_t m = 0; m < maps_.size(); ++m)
        for (int p = 0; p < kPoints; ++p) {
          const auto x = points(nm.phi.source(), maps_[m].f.arity());
          instance(label(maps_[m], "phi=" + nm.name, p), {i, m, std::size_t(p)}, [&](Comparison<S>& c) {
            const auto y = lift_eval(maps_[m].f, nm.phi.source(), x);
            for (std::size_t o = 0; o < y.size(); ++o) compare(push_along(nm.phi, y[o]).coeffs(), image(y[o].coeffs()), tol_, c, o);
            // Ring homomorphism on the sampled inputs.
            if (x.size() >= 1) {
              const auto& u = x.front();
              const auto v = sample_point<S>(nm.phi.source(), rng_);
              compare((push_along(nm.phi, u) * push_along(nm.phi, v)).coeffs(), push_along(nm.phi, u * v).coeffs(), tol_, c);
              compare((push_along(nm.phi, u) + push_along(nm.phi, v)).coeffs(), push_along(nm.phi, u + v).coeffs(), tol_, c);
              compare(push_along(nm.phi, u.one()).coeffs(),
                      WeilNumber<S>::constant(nm.phi.target(), from_rational<S>(Rational(1))).coeffs(), tol_, c);
            }
          });
        }
    }
  }

  // alpha is natural: phi_*(T^{W1} f (x)) = T^{W2} f (phi_* x).
  void l11() {
    const auto mors = morphism_family();
    for (std::size_t i = 0; i < mors.size(); ++i) {
      const auto& phi = mors[i].phi;
      for (std::size_t m = 0; m < maps_.size(); ++m)
        for (int p = 0; p < kPoints; ++p) {
          const auto x = points(phi.source(), maps_[m].f.arity());
          instance(label(maps_[m], "phi=" + mors[i].name, p), {i, m, std::size_t(p)}, [&](Comparison<S>& c) {
            std::vector<WeilNumber<S>> pushed;
            for (const auto& xi : x) pushed.push_back(push_along(phi, xi));
            std::vector<WeilNumber<S>> lhs;
            for (const auto& y : lift_eval(maps_[m].f, phi.source(), x)) lhs.push_back(push_along(phi, y));
            compare(lhs, lift_eval(maps_[m].f, phi.target(), pushed), tol_, c);
          });
        }
    }
  }

  const LawInstance& in_;
  Recorder rec_;
  Rng rng_;
  std::vector<NamedAlgebra> algebras_;
  std::vector<NamedMap> maps_;
  double tol_ = 0;
};

}  // namespace

LawReport run_numeric_law(const LawInstance& in) {
  LawReport r;
  r.law_id = in.law_id;
  r.model = LawModel::numeric;
  r.mode = in.mode;
  if (in.mode == ScalarMode::rational) NumericLaws<Rational>(in, r).run();
  else NumericLaws<double>(in, r).run();
  return r;
}

}  // namespace detail

// ---- derivative extraction against finite differences -------------------------

LawReport check_extraction(std::uint64_t seed, unsigned max_order, double tolerance) {
  LawReport r;
  r.law_id = "extraction";
  r.model = LawModel::numeric;
  r.mode = ScalarMode::binary_float;
  r.exact = false;
  r.tolerance = tolerance;
  detail::Recorder rec(r);
  detail::Rng rng(seed);
  for (const auto& e : corpus("float")) {
    const SmoothMap f = parse_function_text(e.text);
    std::vector<double> a;
    for (std::size_t i = 0; i < f.arity(); ++i) a.push_back(0.25 + rng.unit());
    // Every multi-index with total order <= max_order.
    std::vector<std::vector<unsigned>> indices{{}};
    for (std::size_t v = 0; v < f.arity(); ++v) {
      std::vector<std::vector<unsigned>> next;
      for (const auto& idx : indices)
        for (unsigned k = 0; k <= max_order; ++k) {
          unsigned total = k;
          for (auto x : idx) total += x;
          if (total > max_order) break;
          auto n = idx;
          n.push_back(k);
          next.push_back(std::move(n));
        }
      indices = std::move(next);
    }
    const std::vector<unsigned> orders(f.arity(), max_order);
    const auto table = partials(f, a, orders);
    const auto j = f.arity() == 1 ? std::optional(jet(f, a[0], max_order)) : std::nullopt;
    for (const auto& idx : indices) {
      std::map<std::size_t, unsigned> exps;
      for (std::size_t v = 0; v < idx.size(); ++v)
        if (idx[v]) exps.emplace(v, idx[v]);
      const Monomial mono(exps);
      std::string name = e.name + " e=(";
      for (std::size_t v = 0; v < idx.size(); ++v) name += (v ? "," : "") + std::to_string(idx[v]);
      name += ")";
      const double want = fd_oracle(f, a, idx);
      std::vector<double> got{table.at(mono).front()};
      if (j) got.push_back(j->at(mono).front());
      bool ok = true;
      std::string detail;
      for (double g : got) {
        const double abs = std::fabs(g - want);
        const double rel = abs / std::max(1.0, std::fabs(want));
        rec.error(abs, rel);
        if (!(rel <= tolerance)) {
          ok = false;
          detail = "AD " + format_double(g) + " vs finite differences " + format_double(want);
        }
      }
      rec.record(ok, name, detail, idx.empty() ? std::vector<std::size_t>{} : std::vector<std::size_t>(idx.begin(), idx.end()));
    }
  }
  return r;
}

}  // namespace weilad
