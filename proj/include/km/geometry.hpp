#pragma once

#include <vector>

#include "km/affine.hpp"

namespace km {

/// Degree window |k| <= N, optionally extended by {c, d}.
struct TruncationWindow {
  int N = 1;
  bool include_cd = true;
};

/// Levi-Civita connection of the bi-invariant metric on left-invariant fields: 1/2 [X, Y].
KMElement connection(const BaseAlgebra& alg, const KMElement& x, const KMElement& y);

/// R{g, h, k} = 1/4 [[g, h], k].
KMElement curvature(const BaseAlgebra& alg, const KMElement& g, const KMElement& h,
                    const KMElement& k);

/// |g ^ h|^2 = <g,g><h,h> - <g,h>^2. May be negative in Lorentzian signature.
Scalar wedge_norm_squared(const BaseAlgebra& alg, const KMElement& g, const KMElement& h);

/// K(g, h) = <R{g,h,g}, h> / |g ^ h|^2.
/// Throws DegenerateError when |g ^ h|^2 vanishes (exactly on the rational
/// backend, below 1e-12 * |<g,g><h,h>| on the floating one). Negative
/// denominators are allowed.
Scalar sectional_curvature(const BaseAlgebra& alg, const KMElement& g, const KMElement& h);

struct MetricIndex {
  int neg = 0;
  int zero = 0;
  int pos = 0;
  std::vector<double> eigenvalues;  ///< ascending
};

/// Sign counts of the real Gram matrix of km_metric on `basis`, followed by
/// c and d when window.include_cd. Eigenvalues with |lambda| <= 1e-9 count as zero.
/// On the exact backend the counts are cross-checked against the exact
/// Sylvester inertia of the rational Gram matrix.
/// Throws PreconditionError if the basis is real-linearly dependent (the message
/// carries the rank), DomainError if a Gram entry is not real, and
/// DimensionMismatch if an element leaves the window.
MetricIndex metric_index(const BaseAlgebra& alg, const TruncationWindow& window,
                         const std::vector<KMElement>& basis);

}  // namespace km
