#pragma once

#include <vector>

#include "km/scalar.hpp"

namespace km {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

/// Row-reduced echelon form. On the exact backend elimination is exact; on
/// the floating backend entries with modulus <= tol * (largest entry) are
/// treated as zero and the pivot is the largest remaining entry in its column.
struct Echelon {
  ScalarMatrix rows;               ///< nonzero rows of the RREF
  std::vector<std::size_t> pivots; ///< pivot column of each row
  std::size_t rank() const { return rows.size(); }
};

Echelon row_reduce(ScalarMatrix m, double tol = 1e-10);

/// Rank of the span of `vectors` (each vector is a row).
std::size_t span_rank(const ScalarMatrix& vectors, double tol = 1e-10);

/// Basis of {x : A x = 0} for the matrix whose rows are `a`. Width is the
/// number of columns, needed when `a` has no rows.
ScalarMatrix null_space(const ScalarMatrix& a, std::size_t width, double tol = 1e-10);

/// True iff v lies in the span of the rows of e.
bool in_span(const Echelon& e, const std::vector<Scalar>& v, double tol = 1e-10);

/// (Re v_0, ..., Re v_{n-1}, Im v_0, ..., Im v_{n-1}) as real scalars.
std::vector<Scalar> realify(const std::vector<Scalar>& v);

/// Inverse of realify.
std::vector<Scalar> complexify(const std::vector<Scalar>& v);

}  // namespace km
