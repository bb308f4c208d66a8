#include "weilad/morphism.hpp"

#include "weilad/error.hpp"

namespace weilad {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Rational> RationalMatrix::column(std::size_t c) const {
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorCode::internal, "matrix shape mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  return out;
}

RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b) {
  // Pair index (i, j) -> i + j * dim(first factor), matching tensor_algebra.
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t j2 = 0; j2 < b.rows(); ++j2)
    for (std::size_t i2 = 0; i2 < a.rows(); ++i2)
      for (std::size_t j1 = 0; j1 < b.cols(); ++j1)
        for (std::size_t i1 = 0; i1 < a.cols(); ++i1)
          out(pair_index(i2, j2, a.rows()), pair_index(i1, j1, a.cols())) = a(i2, i1) * b(j2, j1);
  return out;
}

std::vector<Rational> multiply(const WeilAlgebra& w, const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(w.dim());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      const Rational ab = a[i] * b[j];
      for (const auto& t : w.product(i, j)) out[t.index] += ab * t.coefficient;
    }
  }
  return out;
}

namespace {

std::vector<Rational> unit_vector(std::size_t d, std::size_t i) {
  std::vector<Rational> v(d);
  v[i] = 1;
  return v;
}

std::vector<Rational> mat_vec(const RationalMatrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (v[c] != 0) out[r] += m(r, c) * v[c];
  return out;
}

std::vector<Rational> struct_vector(const WeilAlgebra& w, std::size_t i, std::size_t j) {
  std::vector<Rational> v(w.dim());
  for (const auto& t : w.product(i, j)) v[t.index] += t.coefficient;
  return v;
}

}  // namespace

ValidationReport validate_morphism(const WeilAlgebra& src, const WeilAlgebra& dst, const RationalMatrix& m) {
  ValidationReport report;
  CheckResult shape{"shape"};
  if (m.rows() != dst.dim() || m.cols() != src.dim()) {
    shape.passed = false;
    shape.detail = "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                   std::to_string(dst.dim()) + "x" + std::to_string(src.dim());
    report.checks.push_back(shape);
    return report;
  }
  report.checks.push_back(shape);

  CheckResult unit{"unit"};
  if (m.column(0) != unit_vector(dst.dim(), 0)) {
    unit.passed = false;
    unit.witness = {0};
    unit.detail = "1 is not mapped to 1";
  }
  report.checks.push_back(unit);

  CheckResult mult{"multiplicative"};
  for (std::size_t i = 0; i < src.dim() && mult.passed; ++i)
    for (std::size_t j = i; j < src.dim() && mult.passed; ++j) {
      auto lhs = mat_vec(m, struct_vector(src, i, j));
      auto rhs = multiply(dst, m.column(i), m.column(j));
      if (lhs != rhs) {
        mult.passed = false;
        mult.witness = {i, j};
        mult.detail = "image(" + src.basis_name(i) + " * " + src.basis_name(j) + ") != image(" + src.basis_name(i) +
                      ") * image(" + src.basis_name(j) + ")";
      }
    }
  report.checks.push_back(mult);

  CheckResult aug{"augmentation"};
  for (std::size_t i = 0; i < src.dim() && aug.passed; ++i) {
    const Rational expected = i == 0 ? Rational(1) : Rational(0);
    if (m(0, i) != expected) {
      aug.passed = false;
      aug.witness = {i};
      aug.detail = "augmentation of image(" + src.basis_name(i) + ") is " + format_rational(m(0, i));
    }
  }
  report.checks.push_back(aug);
  return report;
}

WeilMorphism::WeilMorphism(AlgebraPtr source, AlgebraPtr target, RationalMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  auto report = validate_morphism(*source_, *target_, matrix_);
  for (const auto& c : report.checks)
    if (!c.passed) throw Error(ErrorCode::not_well_defined, "not an algebra morphism: " + c.law + ": " + c.detail);
}

WeilMorphism WeilMorphism::unchecked(AlgebraPtr source, AlgebraPtr target, RationalMatrix matrix) {
  WeilMorphism f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.matrix_ = std::move(matrix);
  return f;
}

std::vector<Rational> WeilMorphism::apply(const std::vector<Rational>& coeffs) const {
  if (coeffs.size() != source_->dim()) throw Error(ErrorCode::algebra_mismatch, "vector length does not match source");
  return mat_vec(matrix_, coeffs);
}

WeilMorphism identity_morphism(const AlgebraPtr& w) {
  return WeilMorphism(w, w, RationalMatrix::identity(w->dim()));
}

WeilMorphism morphism_from_generator_images(const AlgebraPtr& source, const AlgebraPtr& target,
                                            const std::vector<std::vector<Rational>>& images) {
  const auto& gens = source->generator_names();
  if (images.size() != gens.size())
    throw Error(ErrorCode::bad_parameter, "expected " + std::to_string(gens.size()) + " generator images, got " +
                                              std::to_string(images.size()));
  for (std::size_t g = 0; g < images.size(); ++g) {
    if (images[g].size() != target->dim())
      throw Error(ErrorCode::algebra_mismatch, "image of '" + gens[g] + "' has wrong length");
    if (images[g][0] != 0)
      throw Error(ErrorCode::augmentation_violation,
                  "image of '" + gens[g] + "' has constant term " + format_rational(images[g][0]));
  }
  auto image_of = [&](const Monomial& m) {
    auto v = unit_vector(target->dim(), 0);
    for (auto [g, e] : m.exponents())
      for (unsigned k = 0; k < e; ++k) v = multiply(*target, v, images[g]);
    return v;
  };
  const std::vector<Rational> zero(target->dim());
  for (const auto& rel : source->vanishing_monomials())
    if (image_of(rel) != zero)
      throw Error(ErrorCode::not_well_defined,
                  "vanishing monomial " + rel.to_string(gens) + " has nonzero image");
  RationalMatrix m(target->dim(), source->dim());
  for (std::size_t i = 0; i < source->dim(); ++i) {
    auto col = image_of(source->basis()[i]);
    for (std::size_t r = 0; r < target->dim(); ++r) m(r, i) = col[r];
  }
  return WeilMorphism(source, target, std::move(m));
}

WeilMorphism compose_morphisms(const WeilMorphism& phi, const WeilMorphism& psi) {
  if (!same_algebra(phi.target(), psi.source()))
    throw Error(ErrorCode::source_target_mismatch,
                "cannot compose: target " + phi.target()->name() + " != source " + psi.source()->name());
  return WeilMorphism(phi.source(), psi.target(), psi.matrix() * phi.matrix());
}

CanonicalMorphisms canonical_morphisms(const AlgebraPtr& w) {
  auto k = base_algebra();
  RationalMatrix aug(1, w->dim());
  aug(0, 0) = 1;
  RationalMatrix unit(w->dim(), 1);
  unit(0, 0) = 1;
  return {WeilMorphism(w, k, std::move(aug)), WeilMorphism(k, w, std::move(unit))};
}

TensorProduct tensor(const AlgebraPtr& a, const AlgebraPtr& b) {
  auto t = tensor_algebra(a, b);
  RationalMatrix first(t->dim(), a->dim());
  for (std::size_t i = 0; i < a->dim(); ++i) first(pair_index(i, 0, a->dim()), i) = 1;
  RationalMatrix second(t->dim(), b->dim());
  for (std::size_t j = 0; j < b->dim(); ++j) second(pair_index(0, j, a->dim()), j) = 1;
  return {t, WeilMorphism(a, t, std::move(first)), WeilMorphism(b, t, std::move(second))};
}

WeilMorphism tensor_of_morphisms(const WeilMorphism& phi, const WeilMorphism& psi) {
  return WeilMorphism(tensor_algebra(phi.source(), psi.source()), tensor_algebra(phi.target(), psi.target()),
                      kronecker(phi.matrix(), psi.matrix()));
}

WeilMorphism tensor_unit_iso(const AlgebraPtr& w) {
  auto t = tensor_algebra(w, base_algebra());
  return WeilMorphism(t, w, RationalMatrix::identity(w->dim()));
}

bool is_isomorphism(const WeilMorphism& f) {
  const auto& m = f.matrix();
  if (m.rows() != m.cols()) return false;
  std::vector<std::vector<Rational>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Rational> row(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) row[c] = m(r, c);
    rows.push_back(std::move(row));
  }
  // Gaussian elimination for full rank.
  const std::size_t n = rows.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && rows[p][c] == 0) ++p;
    if (p == n) return false;
    std::swap(rows[c], rows[p]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[c][c];
      for (std::size_t k = c; k < n; ++k) rows[r][k] -= f * rows[c][k];
    }
  }
  return true;
}

}  // namespace weilad
