#include "km/group.hpp"

#include <cmath>
#include <numbers>

#include "km/errors.hpp"

namespace km {

GroupElement GroupElement::identity(int dim, Backend b) {
  if (dim < 1) throw DimensionMismatch("loop dimension must be positive");
  return {Scalar::one(b), Loop(static_cast<std::size_t>(dim), LaurentPoly(b)), Scalar::zero(b)};
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  if (a.lam.size() != b.lam.size()) throw DimensionMismatch("group elements of different dimension");
  if (!(a.q == b.q) || !(a.central == b.central)) return false;
  for (std::size_t i = 0; i < a.lam.size(); ++i)
    if (!(a.lam[i] == b.lam[i])) return false;
  return true;
}

GroupElement GroupElement::convert(Backend b) const {
  GroupElement g{q.convert(b), {}, central.convert(b)};
  for (const auto& p : lam) g.lam.push_back(p.convert(b));
  return g;
}

Loop act(const Scalar& q, const Loop& lam) {
  Loop out;
  out.reserve(lam.size());
  for (const auto& p : lam) out.push_back(p.rescale_argument(q));
  return out;
}

namespace {

void require_euclidean(const BaseAlgebra& alg) {
  if (!alg.bracket_is_zero())
    throw PreconditionError("the Kac-Moody group is implemented for abelian base algebras only");
}

void require_group(const BaseAlgebra& alg, const GroupElement& g) {
  if (g.dim() != alg.dim()) throw DimensionMismatch("group element dimension differs from algebra");
  if (g.q.backend() != g.backend()) throw BackendMismatch("q and central on different backends");
  for (const auto& p : g.lam)
    if (p.backend() != g.backend()) throw BackendMismatch("loop factor on a different backend");
  if (g.q.is_zero()) throw DomainError("q must be nonzero");
}

Loop add(const Loop& a, const Loop& b) {
  Loop out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Loop scale(const Loop& a, const Scalar& s) {
  Loop out = a;
  for (auto& p : out) p *= s;
  return out;
}

using cd = std::complex<double>;

// (e^x - 1)/x
cd phi1(cd x) {
  if (std::abs(x) < 0.5) {
    cd term = 1.0, sum = 0.0;
    for (int n = 1; n <= 24; ++n) {
      sum += term;
      term *= x / static_cast<double>(n + 1);
    }
    return sum;
  }
  return (std::exp(x) - 1.0) / x;
}

// (sinh x - x)/x^3
cd sinh_remainder(cd x) {
  if (std::abs(x) < 1.0) {
    const cd x2 = x * x;
    cd term = 1.0 / 6.0, sum = 0.0;
    for (int m = 0; m < 20; ++m) {
      sum += term;
      term *= x2 / static_cast<double>((2 * m + 4) * (2 * m + 5));
    }
    return sum;
  }
  return (std::sinh(x) - x) / (x * x * x);
}

// sum_{k>0} <lam_k, lam_{-k}> k^2 beta S(beta k)
Scalar central_correction(const BaseAlgebra& alg, const Loop& lam, cd beta) {
  cd sum = 0.0;
  for (const auto& t : alg.form_terms()) {
    const auto& f = lam[static_cast<std::size_t>(t.i)];
    const auto& g = lam[static_cast<std::size_t>(t.j)];
    for (const auto& [k, a] : f.coeffs()) {
      if (k <= 0) continue;
      const Scalar b = g.coeff(-k);
      if (b.is_zero()) continue;
      const double kk = static_cast<double>(k);
      sum += t.floating.to_complex() * a.to_complex() * b.to_complex() * kk * kk * beta *
             sinh_remainder(beta * kk);
    }
  }
  return Scalar::floating(sum);
}

}  // namespace

GroupElement group_multiply(const BaseAlgebra& alg, const GroupElement& a, const GroupElement& b) {
  require_euclidean(alg);
  require_group(alg, a);
  require_group(alg, b);
  if (a.backend() != b.backend()) throw BackendMismatch("group elements on different backends");
  const Loop moved = act(a.q, b.lam);
  Scalar central = a.central + b.central +
                   cocycle(alg, a.lam, moved) * Scalar::rational(1, 2, a.backend());
  return {a.q * b.q, add(a.lam, moved), std::move(central)};
}

GroupElement group_inverse(const BaseAlgebra& alg, const GroupElement& g) {
  require_euclidean(alg);
  require_group(alg, g);
  const Scalar qinv = Scalar::one(g.backend()) / g.q;
  return {qinv, scale(act(qinv, g.lam), -Scalar::one(g.backend())), -g.central};
}

GroupElement group_exp(const BaseAlgebra& alg, const KMElement& x) {
  require_euclidean(alg);
  if (x.dim() != alg.dim()) throw DimensionMismatch("element dimension differs from algebra");
  const Backend bk = x.backend();
  if (x.d.is_zero()) return {Scalar::one(bk), x.loop, x.c};
  if (bk == Backend::exact)
    throw DomainError("exp of a nonzero d-coefficient is transcendental; use the float backend");
  const cd beta = x.d.to_complex();
  GroupElement g{Scalar::floating(std::exp(beta)), {}, x.c + central_correction(alg, x.loop, beta)};
  for (const auto& p : x.loop) {
    std::map<int, Scalar> coeffs;
    for (const auto& [k, a] : p.coeffs())
      coeffs.emplace(k, k == 0 ? a : a * Scalar::floating(phi1(beta * static_cast<double>(k))));
    g.lam.emplace_back(bk, std::move(coeffs));
  }
  return g;
}

KMElement group_log(const BaseAlgebra& alg, const GroupElement& g) {
  require_euclidean(alg);
  require_group(alg, g);
  const Backend bk = g.backend();
  auto x = KMElement::zero(g.dim(), bk);
  if (g.q == Scalar::one(bk)) {
    x.loop = g.lam;
    x.c = g.central;
    return x;
  }
  if (bk == Backend::exact)
    throw DomainError("log of q != 1 is transcendental; use the float backend");
  const cd q = g.q.to_complex();
  if (q.imag() == 0.0 && q.real() < 0.0)
    throw DomainError("q lies on the branch cut of the principal logarithm (negative real axis)");
  const cd beta = std::log(q);
  x.d = Scalar::floating(beta);
  x.loop.clear();
  for (std::size_t i = 0; i < g.lam.size(); ++i) {
    std::map<int, Scalar> coeffs;
    for (const auto& [k, m] : g.lam[i].coeffs()) {
      if (k == 0) {
        coeffs.emplace(k, m);
        continue;
      }
      const cd p = phi1(beta * static_cast<double>(k));
      if (std::abs(p) < 1e-12)
        throw DomainError("e^{k Log q} = 1 at degree " + std::to_string(k) +
                          ": the loop factor is not in the image of exp");
      coeffs.emplace(k, m / Scalar::floating(p));
    }
    x.loop.emplace_back(bk, std::move(coeffs));
  }
  x.c = g.central - central_correction(alg, x.loop, beta);
  return x;
}

GroupElement geodesic(const BaseAlgebra& alg, const KMElement& x, const Scalar& t) {
  if (!t.is_real()) throw DomainError("geodesic parameter must be real");
  return group_exp(alg, x * t.convert(x.backend()));
}

GroupElement geodesic_symmetry(const BaseAlgebra& alg, const GroupElement& p,
                               const GroupElement& g) {
  return group_multiply(alg, group_multiply(alg, p, group_inverse(alg, g)), p);
}

const char* to_string(RealFormKind k) {
  return k == RealFormKind::real_valued ? "real_valued" : "imaginary_valued";
}

namespace {

// lam* with (lam*)_k = conj(lam_{-k}); real-valued loops satisfy lam* = lam.
Loop star(const Loop& lam) {
  Loop out;
  for (const auto& p : lam) out.push_back(p.circle_reflection());
  return out;
}

}  // namespace

bool in_real_form(const Loop& lam, RealFormKind kind) {
  const Loop s = star(lam);
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const LaurentPoly target = kind == RealFormKind::real_valued ? lam[i] : -lam[i];
    if (!(s[i] == target)) return false;
  }
  return true;
}

CosetRep coset_canonicalize(const BaseAlgebra& alg, const GroupElement& g, RealFormKind kind,
                            int window) {
  require_euclidean(alg);
  require_group(alg, g);
  for (const auto& p : g.lam)
    if (p.max_abs_degree() > window)
      throw DimensionMismatch("window " + std::to_string(window) +
                              " is too small for a loop of degree " +
                              std::to_string(p.max_abs_degree()));
  const Backend bk = g.backend();
  Scalar modulus;
  if (bk == Backend::exact) {
    if (!g.q.is_real())
      throw DomainError("exact canonicalization needs real q (|q| is irrational otherwise)");
    modulus = g.q.real_part().to_complex().real() < 0 ? -g.q : g.q;
  } else {
    modulus = Scalar::floating(std::abs(g.q.to_complex()));
  }
  const Scalar one = Scalar::one(bk);
  const Scalar half = Scalar::rational(1, 2, bk);
  const Scalar qinv = one / g.q;

  // mu = q^-1 |> lam splits into a real-form part and its complement.
  const Loop mu = act(qinv, g.lam);
  const Loop mu_star = star(mu);
  Loop mu_r(mu.size(), LaurentPoly(bk));
  for (std::size_t i = 0; i < mu.size(); ++i)
    mu_r[i] = (kind == RealFormKind::real_valued ? mu[i] + mu_star[i] : mu[i] - mu_star[i]) * half;

  GroupElement h{modulus / g.q, scale(mu_r, -one), Scalar::zero(bk)};
  GroupElement rep = group_multiply(alg, g, h);
  // Remove the imaginary part of the central coordinate with a central element of H.
  const Scalar im = rep.central.imag_part() * Scalar::imaginary_unit(bk);
  rep.central -= im;
  h.central -= im;
  rep.q = modulus;  // exact equality even when q q^-1 rounding would differ on floats
  return {std::move(rep), kind, std::move(h)};
}

std::vector<KMElement> stabilizer_loop_basis(const BaseAlgebra& alg, RealFormKind kind, int window,
                                             Backend b) {
  const int dim = alg.dim();
  const Scalar one = Scalar::one(b);
  const Scalar i_unit = Scalar::imaginary_unit(b);
  const Scalar unit = kind == RealFormKind::real_valued ? one : i_unit;
  std::vector<KMElement> basis;
  for (int i = 0; i < dim; ++i) {
    basis.push_back(KMElement::loop_monomial(dim, i, 0, unit));
    for (int n = 1; n <= window; ++n) {
      auto plus = KMElement::loop_monomial(dim, i, n, one);
      auto minus = KMElement::loop_monomial(dim, i, -n, one);
      basis.push_back((plus + minus) * unit);
      basis.push_back((plus - minus) * i_unit * unit);
    }
  }
  return basis;
}

}  // namespace km
