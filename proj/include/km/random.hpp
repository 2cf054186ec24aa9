#pragma once

#include <cstdint>
#include <random>

#include "km/affine.hpp"
#include "km/group.hpp"

namespace km {

/// Seeded source of random test data. Uses only the raw output of mt19937_64
/// (no std distributions), so draws are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform integer in [lo, hi].
  long integer(long lo, long hi);
  /// Uniform double in [0, 1).
  double unit();
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Small Gaussian rational: numerators in [-5, 5], denominators in [1, 4].
  Scalar exact_scalar();
  /// Complex float with modulus at most `magnitude`.
  Scalar float_scalar(double magnitude = 1.0);
  Scalar scalar(Backend b) { return b == Backend::exact ? exact_scalar() : float_scalar(); }

  /// Laurent polynomial with degrees in [-window, window]; each coefficient is
  /// present with probability `density`. Float coefficients have magnitude
  /// at most e^{-alpha |k|}.
  LaurentPoly laurent(int window, Backend b, double density = 0.6, double alpha = 0.0);
  Loop loop(int dim, int window, Backend b, double density = 0.6, double alpha = 0.0);
  /// Random affine element; c and d parts drawn when the flags are set.
  KMElement km_element(int dim, int window, Backend b, bool with_c = true, bool with_d = true,
                       double density = 0.6);
  /// Random group element with q = 1 (exact) or q near the unit circle (float).
  GroupElement group_element(int dim, int window, Backend b, bool unit_q = false);

  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace km
