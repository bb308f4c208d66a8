#pragma once

#include "weilad/algebra.hpp"

#include <vector>

namespace weilad {

/// Dense matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> column(std::size_t c) const;
  RationalMatrix operator*(const RationalMatrix& rhs) const;
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix kronecker(const RationalMatrix& first, const RationalMatrix& second);

/// Unital algebra homomorphism stored as its matrix on the monomial bases:
/// column i is the image of source basis element i.
class WeilMorphism {
 public:
  /// Validates unit, multiplicativity and augmentation compatibility;
  /// throws NotWellDefined with the offending basis pair otherwise.
  WeilMorphism(AlgebraPtr source, AlgebraPtr target, RationalMatrix matrix);

  /// Skips validation. Only for building deliberately broken morphisms in
  /// mutation tests; everything else goes through the checked constructor.
  static WeilMorphism unchecked(AlgebraPtr source, AlgebraPtr target, RationalMatrix matrix);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const RationalMatrix& matrix() const { return matrix_; }

  std::vector<Rational> apply(const std::vector<Rational>& coeffs) const;

 private:
  WeilMorphism() = default;
  AlgebraPtr source_, target_;
  RationalMatrix matrix_;
};

/// Multiplication of coefficient vectors through the table of `w`.
std::vector<Rational> multiply(const WeilAlgebra& w, const std::vector<Rational>& a,
                               const std::vector<Rational>& b);

/// Empty report means `matrix` is a unital, multiplicative,
/// augmentation-compatible map source -> target.
ValidationReport validate_morphism(const WeilAlgebra& source, const WeilAlgebra& target,
                                   const RationalMatrix& matrix);

WeilMorphism identity_morphism(const AlgebraPtr& w);

/// One coefficient vector over `target` per generator of `source`. Throws
/// AugmentationViolation or NotWellDefined (message names the monomial).
WeilMorphism morphism_from_generator_images(const AlgebraPtr& source, const AlgebraPtr& target,
                                            const std::vector<std::vector<Rational>>& images);

/// psi o phi. Throws SourceTargetMismatch.
WeilMorphism compose_morphisms(const WeilMorphism& phi, const WeilMorphism& psi);

struct CanonicalMorphisms {
  WeilMorphism augmentation;  // W -> k
  WeilMorphism unit;          // k -> W
};
CanonicalMorphisms canonical_morphisms(const AlgebraPtr& w);

struct TensorProduct {
  AlgebraPtr algebra;
  WeilMorphism incl_first;   // w |-> w (x) 1
  WeilMorphism incl_second;  // w |-> 1 (x) w
};
TensorProduct tensor(const AlgebraPtr& a, const AlgebraPtr& b);

/// phi (x) psi : W1 (x) W3 -> W2 (x) W4 via the Kronecker product.
WeilMorphism tensor_of_morphisms(const WeilMorphism& phi, const WeilMorphism& psi);

/// The identification W (x) k -> W (drops the unit component of the pair).
WeilMorphism tensor_unit_iso(const AlgebraPtr& w);

bool is_isomorphism(const WeilMorphism& f);

}  // namespace weilad
