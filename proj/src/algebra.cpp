#include "weilad/algebra.hpp"

#include "weilad/error.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace weilad {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::map<std::size_t, unsigned> exponents) {
  for (auto [g, e] : exponents)
    if (e > 0) exponents_.emplace(g, e);
}

Monomial Monomial::power(std::size_t generator, unsigned exponent) {
  return Monomial({{generator, exponent}});
}

unsigned Monomial::exponent(std::size_t generator) const {
  auto it = exponents_.find(generator);
  return it == exponents_.end() ? 0u : it->second;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto [g, e] : exponents_) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (auto [g, e] : exponents_)
    if (other.exponent(g) < e) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  auto result = exponents_;
  for (auto [g, e] : other.exponents_) result[g] += e;
  Monomial m;
  m.exponents_ = std::move(result);
  return m;
}

Monomial Monomial::shifted(std::size_t offset) const {
  Monomial m;
  for (auto [g, e] : exponents_) m.exponents_.emplace(g + offset, e);
  return m;
}

std::string Monomial::to_string(const std::vector<std::string>& names) const {
  if (exponents_.empty()) return "1";
  std::string out;
  for (auto [g, e] : exponents_) {
    if (!out.empty()) out += '*';
    out += g < names.size() ? names[g] : "g" + std::to_string(g);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

unsigned parse_unsigned(std::string_view s, std::string_view context) {
  s = trim(s);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error(ErrorCode::bad_parameter, "expected a non-negative integer in '" + std::string(context) + "'");
  return static_cast<unsigned>(std::stoul(std::string(s)));
}

}  // namespace

Monomial parse_monomial(std::string_view text, const std::vector<std::string>& names) {
  text = trim(text);
  if (text == "1") return {};
  std::map<std::size_t, unsigned> exps;
  for (auto factor : split(text, '*')) {
    factor = trim(factor);
    auto caret = factor.find('^');
    auto name = trim(factor.substr(0, caret));
    unsigned e = caret == std::string_view::npos ? 1u : parse_unsigned(factor.substr(caret + 1), text);
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      throw Error(ErrorCode::unknown_variable, "unknown generator '" + std::string(name) + "' in monomial '" + std::string(text) + "'");
    exps[static_cast<std::size_t>(it - names.begin())] += e;
  }
  return Monomial(std::move(exps));
}

// ------------------------------------------------------------- WeilAlgebra

namespace {

using DenseVec = std::vector<Rational>;

DenseVec times_basis(const WeilAlgebra& w, const DenseVec& v, std::size_t i) {
  DenseVec out(w.dim());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (const auto& t : w.product(k, i)) out[t.index] += v[k] * t.coefficient;
  }
  return out;
}

/// Row-reduces `rows` in place and drops zero rows; returns the rank.
std::size_t reduce_rows(std::vector<DenseVec>& rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rational inv = Rational(1) / rows[rank][c];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Rational f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

unsigned compute_nilpotency_index(const WeilAlgebra& w) {
  const std::size_t d = w.dim();
  std::vector<DenseVec> power;
  for (std::size_t i = 1; i < d; ++i) {
    DenseVec e(d);
    e[i] = 1;
    power.push_back(std::move(e));
  }
  for (unsigned k = 1; k <= d + 1; ++k) {
    if (power.empty()) return k;
    std::vector<DenseVec> next;
    for (const auto& v : power)
      for (std::size_t i = 1; i < d; ++i) next.push_back(times_basis(w, v, i));
    reduce_rows(next);
    power = std::move(next);
  }
  return 0;
}

}  // namespace

WeilAlgebra::WeilAlgebra(std::string name, std::vector<std::string> generator_names,
                         std::vector<Monomial> vanishing_monomials, std::vector<Monomial> basis,
                         std::vector<std::vector<StructTerm>> struct_const)
    : name_(std::move(name)),
      generator_names_(std::move(generator_names)),
      vanishing_(std::move(vanishing_monomials)),
      basis_(std::move(basis)),
      struct_const_(std::move(struct_const)) {
  if (basis_.empty()) throw Error(ErrorCode::bad_parameter, "algebra basis must be non-empty");
  if (struct_const_.size() != basis_.size() * basis_.size())
    throw Error(ErrorCode::bad_parameter, "multiplication table has wrong size");
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  nilpotency_index_ = compute_nilpotency_index(*this);
}

std::optional<std::size_t> WeilAlgebra::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> WeilAlgebra::generator_index(std::string_view name) const {
  for (std::size_t g = 0; g < generator_names_.size(); ++g)
    if (generator_names_[g] == name) return g;
  return std::nullopt;
}

bool WeilAlgebra::same_structure(const WeilAlgebra& other) const {
  return basis_ == other.basis_ && struct_const_ == other.struct_const_;
}

// ------------------------------------------------------------ construction

namespace {

std::vector<std::vector<StructTerm>> monomial_table(const std::vector<Monomial>& basis,
                                                    const std::vector<Monomial>& vanishing) {
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  const std::size_t d = basis.size();
  std::vector<std::vector<StructTerm>> table(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Monomial m = basis[i] * basis[j];
      bool killed = std::any_of(vanishing.begin(), vanishing.end(), [&](const Monomial& v) { return v.divides(m); });
      if (killed) continue;
      auto it = index.find(m);
      if (it != index.end()) table[i * d + j].push_back({it->second, Rational(1)});
    }
  }
  return table;
}

std::vector<unsigned> dense_exponents(const Monomial& m, std::size_t n) {
  std::vector<unsigned> e(n, 0);
  for (auto [g, k] : m.exponents()) e[g] = k;
  return e;
}

std::vector<std::string> default_names(std::size_t n) {
  static const char* small[] = {"x", "y", "z"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(n <= 3 ? small[i] : "x" + std::to_string(i + 1));
  return names;
}

}  // namespace

AlgebraPtr present_algebra(std::vector<std::string> names, std::vector<Monomial> vanishing, std::string name) {
  const std::size_t n = names.size();
  {
    std::set<std::string> seen;
    for (const auto& g : names) {
      if (g.empty()) throw Error(ErrorCode::bad_parameter, "empty generator name");
      if (!seen.insert(g).second) throw Error(ErrorCode::duplicate_generator, "duplicate generator '" + g + "'");
    }
  }
  for (const auto& v : vanishing) {
    if (v.is_unit())
      throw Error(ErrorCode::bad_parameter, "the unit monomial cannot vanish in a Weil algebra");
    for (auto [g, e] : v.exponents())
      if (g >= n) throw Error(ErrorCode::bad_parameter, "vanishing monomial refers to generator index " + std::to_string(g));
  }
  // Bound on each generator: least pure power in the ideal.
  std::vector<unsigned> bound(n, 0);
  for (const auto& v : vanishing) {
    if (v.exponents().size() != 1) continue;
    auto [g, e] = *v.exponents().begin();
    if (bound[g] == 0 || e < bound[g]) bound[g] = e;
  }
  for (std::size_t g = 0; g < n; ++g)
    if (bound[g] == 0)
      throw Error(ErrorCode::infinite_dimension, "generator '" + names[g] + "' has no vanishing pure power");

  std::vector<Monomial> basis;
  std::vector<unsigned> exps(n, 0);
  std::function<void(std::size_t)> enumerate = [&](std::size_t g) {
    if (g == n) {
      std::map<std::size_t, unsigned> m;
      for (std::size_t i = 0; i < n; ++i)
        if (exps[i]) m.emplace(i, exps[i]);
      Monomial mono(std::move(m));
      if (std::none_of(vanishing.begin(), vanishing.end(), [&](const Monomial& v) { return v.divides(mono); }))
        basis.push_back(std::move(mono));
      return;
    }
    for (unsigned e = 0; e < bound[g]; ++e) {
      exps[g] = e;
      enumerate(g + 1);
    }
    exps[g] = 0;
  };
  enumerate(0);
  std::sort(basis.begin(), basis.end(), [n](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return dense_exponents(a, n) > dense_exponents(b, n);
  });
  auto table = monomial_table(basis, vanishing);
  if (name.empty()) name = "k[" + std::to_string(n) + "]";
  return std::make_shared<const WeilAlgebra>(std::move(name), std::move(names), std::move(vanishing),
                                             std::move(basis), std::move(table));
}

AlgebraPtr standard_algebra(const StandardSpec& spec) {
  switch (spec.kind) {
    case StandardKind::base:
      return present_algebra({}, {}, "base");
    case StandardKind::dual: {
      if (spec.params.size() != 1 || spec.params[0] == 0)
        throw Error(ErrorCode::bad_parameter, "dual(n) needs n >= 1");
      const std::size_t n = spec.params[0];
      std::vector<Monomial> rels;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
          rels.push_back(Monomial::power(i, 1) * Monomial::power(j, 1));
      return present_algebra(default_names(n), std::move(rels), "dual:" + std::to_string(n));
    }
    case StandardKind::jet: {
      if (spec.params.size() != 1 || spec.params[0] == 0)
        throw Error(ErrorCode::bad_parameter, "jet(r) needs r >= 1");
      return present_algebra({"x"}, {Monomial::power(0, spec.params[0] + 1)}, "jet:" + std::to_string(spec.params[0]));
    }
    case StandardKind::mixed: {
      if (spec.params.empty()) throw Error(ErrorCode::bad_parameter, "mixed(r1..rn) needs n >= 1");
      std::vector<Monomial> rels;
      std::string name = "mixed:";
      for (std::size_t i = 0; i < spec.params.size(); ++i) {
        if (spec.params[i] == 0) throw Error(ErrorCode::bad_parameter, "mixed orders must be >= 1");
        rels.push_back(Monomial::power(i, spec.params[i] + 1));
        name += (i ? "," : "") + std::to_string(spec.params[i]);
      }
      return present_algebra(default_names(spec.params.size()), std::move(rels), std::move(name));
    }
  }
  throw Error(ErrorCode::bad_parameter, "unknown standard algebra kind");
}

AlgebraPtr base_algebra() { return standard_algebra({StandardKind::base, {}}); }
AlgebraPtr dual_algebra(unsigned n) { return standard_algebra({StandardKind::dual, {n}}); }
AlgebraPtr jet_algebra(unsigned r) { return standard_algebra({StandardKind::jet, {r}}); }
AlgebraPtr mixed_algebra(const std::vector<unsigned>& orders) {
  return standard_algebra({StandardKind::mixed, orders});
}

AlgebraPtr tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  const std::size_t da = a->dim(), db = b->dim();
  const std::size_t na = a->generator_names().size();
  std::vector<std::string> names;
  for (const auto& g : a->generator_names()) names.push_back(g + "_1");
  for (const auto& g : b->generator_names()) names.push_back(g + "_2");
  std::vector<Monomial> rels = a->vanishing_monomials();
  for (const auto& v : b->vanishing_monomials()) rels.push_back(v.shifted(na));
  std::vector<Monomial> basis(da * db);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t i = 0; i < da; ++i)
      basis[pair_index(i, j, da)] = a->basis()[i] * b->basis()[j].shifted(na);
  const std::size_t d = da * db;
  std::vector<std::vector<StructTerm>> table(d * d);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t l = 0; l < db; ++l)
        for (std::size_t k = 0; k < da; ++k) {
          auto& out = table[pair_index(i, j, da) * d + pair_index(k, l, da)];
          for (const auto& ta : a->product(i, k))
            for (const auto& tb : b->product(j, l))
              out.push_back({pair_index(ta.index, tb.index, da), ta.coefficient * tb.coefficient});
        }
  return std::make_shared<const WeilAlgebra>(a->name() + "*" + b->name(), std::move(names), std::move(rels),
                                             std::move(basis), std::move(table));
}

AlgebraPtr with_struct_entry(const WeilAlgebra& w, std::size_t i, std::size_t j, std::vector<StructTerm> terms) {
  auto table = w.struct_const();
  table.at(i * w.dim() + j) = std::move(terms);
  return std::make_shared<const WeilAlgebra>(w.name() + "!", w.generator_names(), w.vanishing_monomials(),
                                             w.basis(), std::move(table));
}

// -------------------------------------------------------------- validation

namespace {

DenseVec as_dense(const std::vector<StructTerm>& terms, std::size_t d) {
  DenseVec v(d);
  for (const auto& t : terms)
    if (t.index < d) v[t.index] += t.coefficient;
  return v;
}

bool is_zero(const DenseVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

ValidationReport validate_algebra(const WeilAlgebra& w) {
  ValidationReport report;
  const std::size_t d = w.dim();

  CheckResult shape{"table_shape"};
  for (std::size_t i = 0; i < d && shape.passed; ++i)
    for (std::size_t j = 0; j < d && shape.passed; ++j)
      for (const auto& t : w.product(i, j))
        if (t.index >= d) {
          shape.passed = false;
          shape.witness = {i, j};
          shape.detail = "product refers to basis index out of range";
        }
  report.checks.push_back(shape);
  if (!shape.passed) return report;

  CheckResult unit{"unit"};
  if (!w.basis()[0].is_unit()) {
    unit.passed = false;
    unit.detail = "basis[0] is not the unit monomial";
  }
  for (std::size_t i = 0; i < d && unit.passed; ++i) {
    DenseVec e(d);
    e[i] = 1;
    if (as_dense(w.product(0, i), d) != e || as_dense(w.product(i, 0), d) != e) {
      unit.passed = false;
      unit.witness = {0, i};
      unit.detail = "1 * b_" + std::to_string(i) + " != b_" + std::to_string(i);
    }
  }
  report.checks.push_back(unit);

  CheckResult comm{"commutativity"};
  for (std::size_t i = 0; i < d && comm.passed; ++i)
    for (std::size_t j = i + 1; j < d && comm.passed; ++j)
      if (as_dense(w.product(i, j), d) != as_dense(w.product(j, i), d)) {
        comm.passed = false;
        comm.witness = {i, j};
        comm.detail = w.basis_name(i) + " * " + w.basis_name(j) + " != " + w.basis_name(j) + " * " + w.basis_name(i);
      }
  report.checks.push_back(comm);

  CheckResult assoc{"associativity"};
  for (std::size_t i = 0; i < d && assoc.passed; ++i)
    for (std::size_t j = 0; j < d && assoc.passed; ++j) {
      const DenseVec ij = as_dense(w.product(i, j), d);
      for (std::size_t k = 0; k < d && assoc.passed; ++k) {
        const DenseVec left = times_basis(w, ij, k);
        DenseVec jk = as_dense(w.product(j, k), d);
        DenseVec right(d);
        for (std::size_t t = 0; t < d; ++t) {
          if (jk[t] == 0) continue;
          for (const auto& term : w.product(i, t)) right[term.index] += jk[t] * term.coefficient;
        }
        if (left != right) {
          assoc.passed = false;
          assoc.witness = {i, j, k};
          assoc.detail = "(" + w.basis_name(i) + " * " + w.basis_name(j) + ") * " + w.basis_name(k) +
                         " != " + w.basis_name(i) + " * (" + w.basis_name(j) + " * " + w.basis_name(k) + ")";
        }
      }
    }
  report.checks.push_back(assoc);

  CheckResult nil{"nilpotency"};
  const unsigned r = w.nilpotency_index();
  if (r == 0) {
    nil.passed = false;
    nil.detail = "augmentation ideal is not nilpotent";
    for (std::size_t i = 1; i < d && nil.witness.empty(); ++i) {
      DenseVec p(d);
      p[i] = 1;
      for (std::size_t k = 0; k < d + 1; ++k) p = times_basis(w, p, i);
      if (!is_zero(p)) nil.witness = {i};
    }
  } else {
    // Every product of r non-unit basis elements vanishes; some product of
    // r - 1 does not (minimality).
    bool found_shorter = r == 1;
    std::vector<std::size_t> tuple;
    std::function<void(const DenseVec&, std::size_t)> dfs = [&](const DenseVec& prod, std::size_t start) {
      if (!nil.passed) return;
      if (tuple.size() == r - 1 && !is_zero(prod)) found_shorter = true;
      if (tuple.size() == r) {
        if (!is_zero(prod)) {
          nil.passed = false;
          nil.witness = tuple;
          nil.detail = "a product of " + std::to_string(r) + " basis elements is nonzero";
        }
        return;
      }
      for (std::size_t i = start; i < d; ++i) {
        DenseVec next = times_basis(w, prod, i);
        if (is_zero(next)) continue;
        tuple.push_back(i);
        dfs(next, i);
        tuple.pop_back();
      }
    };
    DenseVec one(d);
    one[0] = 1;
    if (d > 1) dfs(one, 1);
    if (nil.passed && !found_shorter) {
      nil.passed = false;
      nil.detail = "nilpotency index " + std::to_string(r) + " is not minimal";
    }
  }
  report.checks.push_back(nil);
  return report;
}

// ------------------------------------------------------------- text format

AlgebraPtr parse_algebra_text(std::string_view text) {
  std::string name;
  std::vector<std::string> gens;
  std::vector<std::string> rel_lines;
  bool have_gens = false;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto space = line.find_first_of(" \t");
    auto keyword = line.substr(0, space);
    auto rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
    if (keyword == "algebra") {
      name = std::string(rest);
    } else if (keyword == "gens") {
      have_gens = true;
      std::istringstream in{std::string(rest)};
      for (std::string g; in >> g;) gens.push_back(g);
    } else if (keyword == "rel") {
      rel_lines.emplace_back(rest);
    } else {
      throw ParseError(line_no, "unknown keyword '" + std::string(keyword) + "' on line");
    }
  }
  if (name.empty()) throw ParseError(1, "missing 'algebra <name>' line");
  if (!have_gens) throw ParseError(2, "missing 'gens' line");
  std::vector<Monomial> rels;
  for (const auto& r : rel_lines) rels.push_back(parse_monomial(r, gens));
  return present_algebra(std::move(gens), std::move(rels), std::move(name));
}

std::string format_algebra_text(const WeilAlgebra& w) {
  std::string out = "algebra " + w.name() + "\ngens";
  for (const auto& g : w.generator_names()) out += " " + g;
  out += "\n";
  for (const auto& v : w.vanishing_monomials()) out += "rel " + v.to_string(w.generator_names()) + "\n";
  return out;
}

AlgebraPtr load_algebra(std::string_view spec) {
  spec = trim(spec);
  std::error_code ec;
  if (!spec.empty() && std::filesystem::is_regular_file(std::filesystem::path(std::string(spec)), ec)) {
    std::ifstream in{std::string(spec)};
    if (!in) throw Error(ErrorCode::io_error, "cannot read algebra file '" + std::string(spec) + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_algebra_text(buf.str());
  }
  if (auto star = spec.rfind('*'); star != std::string_view::npos)
    return tensor_algebra(load_algebra(spec.substr(0, star)), load_algebra(spec.substr(star + 1)));
  if (spec == "base") return base_algebra();
  auto colon = spec.find(':');
  auto kind = spec.substr(0, colon);
  auto args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (kind == "dual" || kind == "jet" || kind == "mixed") {
    std::vector<unsigned> params;
    for (auto p : split(args, ',')) params.push_back(parse_unsigned(p, spec));
    StandardKind k = kind == "dual" ? StandardKind::dual : kind == "jet" ? StandardKind::jet : StandardKind::mixed;
    return standard_algebra({k, params});
  }
  throw Error(ErrorCode::bad_parameter, "unknown algebra spec '" + std::string(spec) + "'");
}

}  // namespace weilad
