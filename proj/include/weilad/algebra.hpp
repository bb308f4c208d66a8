#pragma once

#include "weilad/rational.hpp"
#include "weilad/report.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace weilad {

/// Power product of generators, keyed by generator index. The empty
/// monomial is the unit 1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::map<std::size_t, unsigned> exponents);

  static Monomial power(std::size_t generator, unsigned exponent);

  const std::map<std::size_t, unsigned>& exponents() const { return exponents_; }
  unsigned exponent(std::size_t generator) const;
  unsigned degree() const;
  bool is_unit() const { return exponents_.empty(); }

  /// True when `*this` divides `other`.
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  Monomial shifted(std::size_t offset) const;

  /// `1`, `x`, `x^2*y` using the supplied generator names.
  std::string to_string(const std::vector<std::string>& generator_names) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exponents_ < b.exponents_; }

 private:
  std::map<std::size_t, unsigned> exponents_;
};

/// Parses `x^2*y` (or `1`) against a generator list.
Monomial parse_monomial(std::string_view text, const std::vector<std::string>& generator_names);

struct StructTerm {
  std::size_t index;
  Rational coefficient;
  friend bool operator==(const StructTerm&, const StructTerm&) = default;
};

/// Finite-dimensional local k-algebra presented by a monomial basis and a
/// multiplication table. Immutable once built; shared through AlgebraPtr.
class WeilAlgebra {
 public:
  /// Builds from raw tables without validating them; validate_algebra is
  /// the exhaustive check. The nilpotency index is computed (0 when the
  /// augmentation ideal is not nilpotent).
  WeilAlgebra(std::string name, std::vector<std::string> generator_names,
              std::vector<Monomial> vanishing_monomials, std::vector<Monomial> basis,
              std::vector<std::vector<StructTerm>> struct_const);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& generator_names() const { return generator_names_; }
  const std::vector<Monomial>& vanishing_monomials() const { return vanishing_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  unsigned nilpotency_index() const { return nilpotency_index_; }

  /// Product of basis elements i and j as a linear combination.
  const std::vector<StructTerm>& product(std::size_t i, std::size_t j) const {
    return struct_const_[i * basis_.size() + j];
  }
  const std::vector<std::vector<StructTerm>>& struct_const() const { return struct_const_; }

  std::optional<std::size_t> index_of(const Monomial& m) const;
  std::optional<std::size_t> generator_index(std::string_view name) const;
  std::string basis_name(std::size_t i) const { return basis_[i].to_string(generator_names_); }

  /// Same basis and multiplication table; names are not compared.
  bool same_structure(const WeilAlgebra& other) const;

 private:
  std::string name_;
  std::vector<std::string> generator_names_;
  std::vector<Monomial> vanishing_;
  std::vector<Monomial> basis_;
  std::vector<std::vector<StructTerm>> struct_const_;
  std::map<Monomial, std::size_t> index_;
  unsigned nilpotency_index_ = 0;
};

using AlgebraPtr = std::shared_ptr<const WeilAlgebra>;

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && a->same_structure(*b));
}

/// k[g_1..g_n] / (vanishing monomials), basis ordered by (total degree,
/// descending exponent vector). Throws InfiniteDimension, DuplicateGenerator.
AlgebraPtr present_algebra(std::vector<std::string> generator_names,
                           std::vector<Monomial> vanishing_monomials, std::string name = {});

enum class StandardKind { base, dual, jet, mixed };

struct StandardSpec {
  StandardKind kind = StandardKind::base;
  /// dual: {n}; jet: {r}; mixed: {r_1..r_n}; base: empty.
  std::vector<unsigned> params;
};

/// base = k; dual(n) = k[x_1..x_n]/(degree 2); jet(r) = k[x]/(x^{r+1});
/// mixed(r_1..r_n) = k[x_1..x_n]/(x_i^{r_i+1}). Throws BadParameter.
AlgebraPtr standard_algebra(const StandardSpec& spec);

AlgebraPtr base_algebra();
AlgebraPtr dual_algebra(unsigned n);
AlgebraPtr jet_algebra(unsigned r);
AlgebraPtr mixed_algebra(const std::vector<unsigned>& orders);

/// Pair basis (i, j) at index i + j * dim(a); generators suffixed `_1`, `_2`.
AlgebraPtr tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t dim_first) {
  return i + j * dim_first;
}

/// Exhaustive commutativity / associativity / unit / nilpotency checks.
ValidationReport validate_algebra(const WeilAlgebra& algebra);

/// `algebra <name>` / `gens ...` / `rel <monomial>` text format.
AlgebraPtr parse_algebra_text(std::string_view text);
std::string format_algebra_text(const WeilAlgebra& algebra);

/// Builtins `base`, `dual:<n>`, `jet:<r>`, `mixed:<r1>,<r2>,...`, tensor
/// products `A*B`, or a path to an algebra text file.
AlgebraPtr load_algebra(std::string_view spec);

/// Returns a copy whose product table entry (i, j) is replaced by `terms`.
/// Used to plant defects for mutation testing of the law checks.
AlgebraPtr with_struct_entry(const WeilAlgebra& algebra, std::size_t i, std::size_t j,
                             std::vector<StructTerm> terms);

}  // namespace weilad
