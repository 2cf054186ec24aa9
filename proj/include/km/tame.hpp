#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "km/affine.hpp"

namespace km {

/// Values ||f_k||_B for k = 0..K of an element of Sigma(B).
struct GradedSequence {
  std::vector<double> entries;
};

struct SeqNorms {
  double l1;    ///< sum_k e^{nk} s_k
  double linf;  ///< max_k e^{nk} s_k
};

/// Throws DomainError on negative or non-finite entries.
SeqNorms seq_norms(const GradedSequence& s, int n);

struct L1LinfCertificate {
  int n_max = 0;
  int r_upper = 0;         ///< l_inf,n <= C_upper * l1,n
  double C_upper = 1.0;
  int r_lower = 1;         ///< l1,n <= C_lower * l_inf,n+1
  double C_lower = 0.0;    ///< 1 / (1 - e^-1)
  std::size_t checks = 0;
  bool certified = true;
  std::optional<std::string> counterexample;
};

/// Checks both inequalities for n = 0..n_max. The second constant comes from
/// sum_k e^{nk} s_k = sum_k e^{-k} e^{(n+1)k} s_k <= l_inf,n+1 * sum_k e^{-k}.
/// Comparisons allow a relative rounding slack of 1e-12.
L1LinfCertificate check_l1_linf_equivalence(const GradedSequence& s, int n_max);

/// Grading on truncated affine elements:
///   ||x||_n = sum_i sum_k |x_{i,k}| e^{n|k|} + |c| + |d|.
double km_grading_norm(const KMElement& x, double n);

enum class TameMapKind { zero, d_action, multiply, ad };

const char* to_string(TameMapKind k);
TameMapKind parse_tame_map(const std::string& text);

/// A linear map on loop data: zero, x -> [d, x], multiplication of every loop
/// component by `poly`, or ad(X) = [X, .].
struct TameMap {
  TameMapKind kind = TameMapKind::zero;
  LaurentPoly poly;  ///< multiply
  KMElement x;       ///< ad
};

KMElement apply_tame_map(const BaseAlgebra& alg, const TameMap& map, const KMElement& f);

struct TameFitOptions {
  int window = 8;
  std::vector<int> n_values{0, 1, 2, 3, 4};
  int trials = 500;
  std::uint64_t seed = 7;
  int max_r = 2;
  double growth_tolerance = 0.05;  ///< allowed relative growth of C(n) when the window doubles
};

struct TameFit {
  int r = -1;  ///< -1 if no r <= max_r is stable
  int b = 0;
  std::vector<int> n_values;
  std::vector<double> C;
  double residual = 0.0;  ///< max relative violation on the validation sample; <= 0 certifies
  bool certified = false;
  std::string label = "sample-certified";
  std::optional<std::string> symbolic_bound;
  bool symbolic_bound_holds = true;  ///< fitted C(n) stays below the symbolic bound
  std::vector<std::string> notes;
};

/// Finds the least r with stable C(n) = sup ||phi f||_n / ||f||_{n+r}.
/// C(n) is the maximum over every basis monomial z^k e_i (|k| <= window),
/// which is the exact operator norm for these l1-type norms, and over
/// `trials` random inputs with coefficient magnitude e^{-alpha|k|},
/// alpha in {0.5, 1, 2}. r is stable when C(n) grows by at most
/// growth_tolerance under doubling the window and does not increase over the
/// trials after a warmup half. The fit is then validated on a fresh sample.
/// Throws DegenerateError if every input has zero norm.
TameFit tame_fit(const BaseAlgebra& alg, const TameMap& map, const TameFitOptions& opts);

}  // namespace km
