#pragma once

#include <string>
#include <vector>

#include "km/scalar.hpp"

namespace km {

enum class AlgebraKind { abelian, semisimple, reductive_product };

const char* to_string(AlgebraKind k);

/// A simple or abelian factor of a reductive algebra: basis indices
/// [offset, offset + dim) and whether the factor is abelian.
struct Block {
  int offset = 0;
  int dim = 0;
  bool abelian = true;
  std::string label;
};

/// One nonzero structure constant c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
struct StructureTerm {
  int i, j, k;
  Scalar exact;
  Scalar floating;
};

/// Finite-dimensional complex Lie algebra given by structure constants and a
/// symmetric, invariant, complex-bilinear form.
///
/// Constants and form are stored exactly (Gaussian rationals); a binary64 copy
/// is kept so that float-backend vectors can be contracted without conversion.
class BaseAlgebra {
 public:
  BaseAlgebra(int dim, std::vector<Scalar> structure_constants, std::vector<Scalar> form,
              AlgebraKind kind, std::vector<Block> blocks);

  int dim() const noexcept { return dim_; }
  AlgebraKind kind() const noexcept { return kind_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  /// c[i][j][k] on backend b.
  Scalar constant(int i, int j, int k, Backend b = Backend::exact) const;
  /// B[i][j] on backend b.
  Scalar form(int i, int j, Backend b = Backend::exact) const;
  /// Nonzero structure constants, ordered by (i, j, k).
  const std::vector<StructureTerm>& terms() const noexcept { return terms_; }
  /// Nonzero form entries.
  const std::vector<StructureTerm>& form_terms() const noexcept { return form_terms_; }
  /// true iff every structure constant vanishes.
  bool bracket_is_zero() const noexcept { return terms_.empty(); }

 private:
  int dim_;
  std::vector<Scalar> c_;  // dim^3, exact
  std::vector<Scalar> b_;  // dim^2, exact
  AlgebraKind kind_;
  std::vector<Block> blocks_;
  std::vector<StructureTerm> terms_;
  std::vector<StructureTerm> form_terms_;  // k unused
};

struct BaseAlgebraSpec {
  enum class Type { abelian, sl2, su2_realform, product };
  Type type = Type::abelian;
  int k = 1;
  std::vector<BaseAlgebraSpec> factors;

  static BaseAlgebraSpec abelian(int k) { return {Type::abelian, k, {}}; }
  static BaseAlgebraSpec sl2() { return {Type::sl2, 0, {}}; }
  static BaseAlgebraSpec su2() { return {Type::su2_realform, 0, {}}; }
  static BaseAlgebraSpec product(std::vector<BaseAlgebraSpec> fs) {
    return {Type::product, 0, std::move(fs)};
  }
};

/// Presets:
///  - abelian(k): zero bracket, identity form;
///  - sl2: basis (e, h, f), [h,e] = 2e, [h,f] = -2f, [e,f] = h, trace form of
///    the defining representation (<e,f> = 1, <h,h> = 2);
///  - su2_realform: basis X1, X2, X3 with [X_i, X_j] = eps_ijk X_k and form
///    equal to minus the Killing form (2 * identity);
///  - product: block-diagonal concatenation.
BaseAlgebra construct_base_algebra(const BaseAlgebraSpec& spec);

/// Parses "abelian:3", "sl2", "su2", and '+'-joined products such as "abelian:1+sl2".
BaseAlgebraSpec parse_base_spec(const std::string& text);

/// Element of g as a component vector in the algebra's basis.
using BaseVector = std::vector<Scalar>;

BaseVector basis_vector(const BaseAlgebra& alg, int index, Backend b = Backend::exact);

/// [x, y] = sum_{i,j,k} x_i y_j c[i][j][k] e_k.
BaseVector base_bracket(const BaseAlgebra& alg, const BaseVector& x, const BaseVector& y);

/// x^T B y (bilinear, no conjugation).
Scalar base_form(const BaseAlgebra& alg, const BaseVector& x, const BaseVector& y);

/// Exhaustive basis checks of the algebra axioms.
struct AlgebraValidation {
  bool antisymmetric = true;
  bool jacobi = true;
  bool form_symmetric = true;
  bool form_invariant = true;
  bool kind_consistent = true;
  std::vector<std::string> violations;
  bool ok() const {
    return antisymmetric && jacobi && form_symmetric && form_invariant && kind_consistent;
  }
};

AlgebraValidation validate_base_algebra(const BaseAlgebra& alg);

}  // namespace km
