#include "km/heisenberg.hpp"

#include <sstream>

namespace km {

const char* to_string(Epsilon e) { return e == Epsilon::one ? "1" : "i"; }

Scalar epsilon_value(Epsilon e, Backend b) {
  return e == Epsilon::one ? Scalar::one(b) : Scalar::imaginary_unit(b);
}

// --- HeisenbergElement -------------------------------------------------------

HeisenbergElement HeisenbergElement::zero(int k, Epsilon eps, Backend b) {
  if (k < 1) throw DimensionMismatch("Heisenberg dimension k must be positive");
  return {k, eps, {}, Scalar::zero(b)};
}

HeisenbergElement HeisenbergElement::generator(int k, Epsilon eps, int n, int i, Backend b) {
  auto h = zero(k, eps, b);
  h.add_mode(n, i, Scalar::one(b));
  return h;
}

HeisenbergElement HeisenbergElement::central_element(int k, Epsilon eps, Backend b) {
  auto h = zero(k, eps, b);
  h.central = Scalar::one(b);
  return h;
}

bool HeisenbergElement::is_zero() const { return modes.empty() && central.is_zero(); }

void HeisenbergElement::add_mode(int n, int i, const Scalar& s) {
  if (n == 0) throw DomainError("Heisenberg modes have nonzero index n");
  if (i < 0 || i >= k) throw DimensionMismatch("Heisenberg mode component out of range");
  if (s.backend() != backend()) throw BackendMismatch("Heisenberg coefficient backend mismatch");
  auto key = std::make_pair(n, i);
  auto it = modes.find(key);
  if (it == modes.end()) {
    if (!s.is_zero()) modes.emplace(key, s);
    return;
  }
  it->second += s;
  if (it->second.is_zero()) modes.erase(it);
}

namespace {

void require_compatible(const HeisenbergElement& x, const HeisenbergElement& y) {
  if (x.eps != y.eps) throw PreconditionError("Heisenberg elements with different epsilon");
  if (x.k != y.k) throw DimensionMismatch("Heisenberg elements with different k");
  if (x.backend() != y.backend()) throw BackendMismatch("Heisenberg elements on different backends");
}

}  // namespace

HeisenbergElement& HeisenbergElement::operator+=(const HeisenbergElement& o) {
  require_compatible(*this, o);
  for (const auto& [key, s] : o.modes) add_mode(key.first, key.second, s);
  central += o.central;
  return *this;
}

HeisenbergElement& HeisenbergElement::operator*=(const Scalar& s) {
  for (auto& [key, v] : modes) v *= s;
  std::erase_if(modes, [](const auto& kv) { return kv.second.is_zero(); });
  central *= s;
  return *this;
}

bool operator==(const HeisenbergElement& a, const HeisenbergElement& b) {
  require_compatible(a, b);
  if (!(a.central == b.central) || a.modes.size() != b.modes.size()) return false;
  for (const auto& [key, s] : a.modes) {
    auto it = b.modes.find(key);
    if (it == b.modes.end() || !(it->second == s)) return false;
  }
  return true;
}

HeisenbergElement heisenberg_bracket(const HeisenbergElement& x, const HeisenbergElement& y) {
  require_compatible(x, y);
  const Backend b = x.backend();
  Scalar sum = Scalar::zero(b);
  for (const auto& [key, s] : x.modes) {
    auto it = y.modes.find({-key.first, key.second});
    if (it == y.modes.end()) continue;
    if (key.first > 0) {
      sum += s * it->second;
    } else {
      sum -= s * it->second;
    }
  }
  auto out = HeisenbergElement::zero(x.k, x.eps, b);
  out.central = sum * epsilon_value(x.eps, b);
  return out;
}

// --- HeisenbergIso -----------------------------------------------------------

HeisenbergIso::HeisenbergIso(int k, int window, Epsilon eps,
                             std::map<std::pair<int, int>, Scalar> scale)
    : k_(k), window_(window), eps_(eps), scale_(std::move(scale)) {}

const Scalar& HeisenbergIso::scale(int n, int i) const {
  auto it = scale_.find({n, i});
  if (it == scale_.end())
    throw DimensionMismatch("mode (" + std::to_string(n) + "," + std::to_string(i) +
                            ") outside the certified window");
  return it->second;
}

HeisenbergElement HeisenbergIso::to_heisenberg(const KMElement& x) const {
  if (x.dim() != k_) throw DimensionMismatch("element dimension differs from Heisenberg k");
  if (!x.d.is_zero()) throw DomainError("d does not lie in the derived algebra");
  auto h = HeisenbergElement::zero(k_, eps_, x.backend());
  for (int i = 0; i < k_; ++i)
    for (const auto& [n, s] : x.loop[static_cast<std::size_t>(i)].coeffs()) {
      if (n == 0) throw DomainError("the constant mode does not lie in the derived algebra");
      h.add_mode(n, i, s * scale(n, i).convert(x.backend()));
    }
  h.central = x.c;
  return h;
}

KMElement HeisenbergIso::to_affine(const HeisenbergElement& h) const {
  if (h.k != k_) throw DimensionMismatch("Heisenberg k differs from the isomorphism");
  auto x = KMElement::zero(k_, h.backend());
  for (const auto& [key, s] : h.modes)
    x.loop[static_cast<std::size_t>(key.second)].add_to_coeff(
        key.first, s / scale(key.first, key.second).convert(h.backend()));
  x.c = h.central;
  return x;
}

DerivedAlgebraIso derived_algebra_iso(const BaseAlgebra& alg, int window, Epsilon eps, Backend b) {
  if (classify_km_type(alg).label != KMTypeLabel::euclidean)
    throw PreconditionError("derived_algebra_iso needs a Euclidean (abelian) base algebra");
  if (window < 1) throw DomainError("window must be at least 1");
  const int k = alg.dim();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && !alg.form(i, j).is_zero())
        throw PreconditionError("derived_algebra_iso needs a diagonal form");

  const Scalar e = epsilon_value(eps, b);
  std::map<std::pair<int, int>, Scalar> scale;
  for (int i = 0; i < k; ++i)
    for (int n = 1; n <= window; ++n) {
      Scalar measured = cocycle(alg, KMElement::loop_monomial(k, i, n, Scalar::one(b)).loop,
                                KMElement::loop_monomial(k, i, -n, Scalar::one(b)).loop);
      if (measured.is_zero()) throw PreconditionError("degenerate form: [z^n e_i, z^-n e_i] = 0");
      scale.emplace(std::make_pair(n, i), Scalar::one(b));
      scale.emplace(std::make_pair(-n, i), measured / e);
    }
  HeisenbergIso iso(k, window, eps, std::move(scale));
  IsoCertificate cert;
  cert.expected_rank = static_cast<std::size_t>(k) * 2 * static_cast<std::size_t>(window) + 1;

  auto fail = [&](bool& flag, const std::string& msg) {
    if (cert.failures.size() < 16) cert.failures.push_back(msg);
    flag = false;
  };

  // Heisenberg basis pairs: [psi a_{m,i}, psi a_{n,j}] must equal sign(m) d_ij d_{m,-n} eps c.
  std::vector<std::pair<int, int>> modes;
  for (int i = 0; i < k; ++i)
    for (int n = -window; n <= window; ++n)
      if (n != 0) modes.emplace_back(n, i);
  for (const auto& [m, i] : modes)
    for (const auto& [n, j] : modes) {
      ++cert.pairs_checked;
      KMElement lhs = km_bracket(alg, iso.to_affine(HeisenbergElement::generator(k, eps, m, i, b)),
                                 iso.to_affine(HeisenbergElement::generator(k, eps, n, j, b)));
      auto expected = KMElement::zero(k, b);
      if (i == j && m == -n) expected.c = m > 0 ? e : -e;
      if (!(lhs == expected))
        fail(cert.relation_holds, "[a(" + std::to_string(m) + "," + std::to_string(i) + "), a(" +
                                      std::to_string(n) + "," + std::to_string(j) +
                                      ")] maps to " + describe(lhs));
    }

  // Affine basis of the derived domain: phi[X, Y] = [phi X, phi Y].
  std::vector<KMElement> domain;
  for (const auto& [n, i] : modes) domain.push_back(KMElement::loop_monomial(k, i, n, Scalar::one(b)));
  domain.push_back(KMElement::central(k, b));
  for (std::size_t p = 0; p < domain.size(); ++p)
    for (std::size_t q = 0; q < domain.size(); ++q) {
      ++cert.pairs_checked;
      auto lhs = iso.to_heisenberg(km_bracket(alg, domain[p], domain[q]));
      auto rhs = heisenberg_bracket(iso.to_heisenberg(domain[p]), iso.to_heisenberg(domain[q]));
      if (!(lhs == rhs))
        fail(cert.homomorphism, "phi fails on (" + describe(domain[p]) + ", " + describe(domain[q]) + ")");
    }

  // Span of all brackets of the full truncated basis, zero mode and d included.
  const auto full = km_truncated_basis(k, window, b);
  ScalarMatrix outputs;
  for (std::size_t p = 0; p < full.size(); ++p)
    for (std::size_t q = p + 1; q < full.size(); ++q) {
      KMElement br = km_bracket(alg, full[p], full[q]);
      if (!br.d.is_zero()) fail(cert.derived_excludes_d, "d-part in [" + describe(full[p]) + ", " + describe(full[q]) + "]");
      for (const auto& comp : br.loop)
        if (!comp.coeff(0).is_zero())
          fail(cert.derived_excludes_zero_mode,
               "zero mode in [" + describe(full[p]) + ", " + describe(full[q]) + "]");
      if (!br.is_zero()) outputs.push_back(km_coordinates(br, window));
    }
  cert.derived_rank = span_rank(outputs);
  if (cert.derived_rank != cert.expected_rank)
    cert.failures.push_back("derived span has rank " + std::to_string(cert.derived_rank) +
                            ", expected " + std::to_string(cert.expected_rank));
  return {std::move(iso), std::move(cert)};
}

// --- Involutions ---------------------------------------------------------------

const char* to_string(ZAction z) {
  return z == ZAction::identity ? "identity" : "invert_conjugate";
}

namespace {

ScalarMatrix scaled_identity(int dim, long s) {
  ScalarMatrix m(static_cast<std::size_t>(dim), std::vector<Scalar>(static_cast<std::size_t>(dim)));
  for (int i = 0; i < dim; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar::exact(s);
  return m;
}

}  // namespace

Involution negation_involution(const BaseAlgebra& alg) {
  Involution rho;
  rho.base_map = scaled_identity(alg.dim(), -1);
  rho.z_action = ZAction::identity;
  rho.c_sign = 1;
  rho.d_sign = 1;
  rho.label = "negation";
  return rho;
}

Involution circle_conjugation(const BaseAlgebra& alg, int base_sign) {
  Involution rho;
  rho.base_map = scaled_identity(alg.dim(), base_sign >= 0 ? 1 : -1);
  rho.z_action = ZAction::invert_conjugate;
  rho.c_sign = -1;
  rho.d_sign = -1;
  rho.label = base_sign >= 0 ? "circle_conjugation" : "negated_circle_conjugation";
  return rho;
}

KMElement apply_involution(const Involution& rho, const KMElement& x) {
  const auto dim = x.loop.size();
  if (rho.base_map.size() != dim) throw DimensionMismatch("involution base map has the wrong size");
  const Backend b = x.backend();
  Loop source = x.loop;
  if (rho.antilinear())
    for (auto& p : source) p = p.circle_reflection();
  auto out = KMElement::zero(static_cast<int>(dim), b);
  for (std::size_t r = 0; r < dim; ++r) {
    if (rho.base_map[r].size() != dim) throw DimensionMismatch("involution base map is not square");
    for (std::size_t s = 0; s < dim; ++s) {
      const Scalar& m = rho.base_map[r][s];
      if (m.is_zero() || source[s].is_zero()) continue;
      out.loop[r] += source[s] * m.convert(b);
    }
  }
  const Scalar cs = Scalar::integer(rho.c_sign, b);
  const Scalar ds = Scalar::integer(rho.d_sign, b);
  out.c = (rho.antilinear() ? x.c.conj() : x.c) * cs;
  out.d = (rho.antilinear() ? x.d.conj() : x.d) * ds;
  return out;
}

InvolutionCertificate check_involution(const Involution& rho, const BaseAlgebra& alg, int window) {
  if (window < 1) throw DomainError("window must be at least 1");
  InvolutionCertificate cert;
  cert.window = window;
  cert.certified = rho;
  cert.certified.certified_involutive = false;
  cert.certified.certified_automorphism = false;
  const auto basis = km_truncated_basis(alg.dim(), window, Backend::exact);

  cert.involutive = true;
  for (const auto& x : basis) {
    if (!(apply_involution(rho, apply_involution(rho, x)) == x)) {
      cert.involutive = false;
      cert.witness = "rho^2 differs from id on " + describe(x);
      break;
    }
  }
  cert.automorphism = true;
  std::vector<KMElement> images;
  for (const auto& x : basis) images.push_back(apply_involution(rho, x));
  for (std::size_t p = 0; p < basis.size() && cert.automorphism; ++p)
    for (std::size_t q = p + 1; q < basis.size(); ++q) {
      KMElement lhs = apply_involution(rho, km_bracket(alg, basis[p], basis[q]));
      KMElement rhs = km_bracket(alg, images[p], images[q]);
      if (!(lhs == rhs)) {
        cert.automorphism = false;
        if (!cert.witness)
          cert.witness = "rho[X,Y] != [rho X, rho Y] for X = " + describe(basis[p]) +
                         ", Y = " + describe(basis[q]);
        break;
      }
    }
  cert.certified.certified_involutive = cert.involutive;
  cert.certified.certified_automorphism = cert.automorphism;
  return cert;
}

std::vector<KMElement> fixed_real_span(const Involution& rho, const BaseAlgebra& alg,
                                       const std::vector<KMElement>& support, int window) {
  if (support.empty()) return {};
  const Backend b = support.front().backend();
  const Scalar i_unit = Scalar::imaginary_unit(b);
  std::vector<KMElement> directions;
  for (const auto& u : support) {
    directions.push_back(u);
    directions.push_back(u * i_unit);
  }
  // Columns: realified coordinates of rho(w) - w.
  std::vector<std::vector<Scalar>> columns;
  for (const auto& w : directions)
    columns.push_back(realify(km_coordinates(apply_involution(rho, w) - w, window)));
  const std::size_t rows = columns.front().size();
  ScalarMatrix a(rows, std::vector<Scalar>(columns.size(), Scalar::zero(b)));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) a[r][c] = columns[c][r];
  const ScalarMatrix kernel = null_space(a, columns.size());

  // Combine, then drop dependent combinations (support may itself be dependent).
  std::vector<KMElement> fixed;
  ScalarMatrix seen;
  for (const auto& t : kernel) {
    auto x = KMElement::zero(alg.dim(), b);
    for (std::size_t j = 0; j < t.size(); ++j)
      if (!t[j].is_zero()) x += directions[j] * t[j];
    if (x.is_zero()) continue;
    seen.push_back(realify(km_coordinates(x, window)));
    if (span_rank(seen) < seen.size()) {
      seen.pop_back();
      continue;
    }
    fixed.push_back(std::move(x));
  }
  return fixed;
}

namespace {

std::vector<KMElement> loop_support(const BaseAlgebra& alg, const std::vector<int>& components,
                                    int window) {
  std::vector<KMElement> s;
  for (int comp : components)
    for (int k = -window; k <= window; ++k)
      s.push_back(KMElement::loop_monomial(alg.dim(), comp, k, Scalar::one(Backend::exact)));
  return s;
}

std::string describe_base(const BaseVector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].to_string();
  os << ")";
  return os.str();
}

/// L(V) + Cc + Cd is a rho-invariant subalgebra with nondegenerate form on V.
bool invariant_affine_subalgebra(const BaseAlgebra& alg, const Involution& rho,
                                 const std::vector<BaseVector>& v, int window) {
  ScalarMatrix gram;
  for (const auto& x : v) {
    std::vector<Scalar> row;
    for (const auto& y : v) row.push_back(base_form(alg, x, y));
    gram.push_back(std::move(row));
  }
  if (span_rank(gram) != v.size()) return false;

  const int dim = alg.dim();
  std::vector<KMElement> gens;
  for (const auto& x : v)
    for (int k = -window; k <= window; ++k) {
      auto e = KMElement::zero(dim, Backend::exact);
      for (int i = 0; i < dim; ++i)
        e.loop[static_cast<std::size_t>(i)] = LaurentPoly::monomial(k, x[static_cast<std::size_t>(i)]);
      gens.push_back(std::move(e));
    }
  gens.push_back(KMElement::central(dim, Backend::exact));
  gens.push_back(KMElement::derivation(dim, Backend::exact));

  const int wide = 2 * window;
  ScalarMatrix rows;
  for (const auto& g : gens) rows.push_back(km_coordinates(g, wide));
  const Echelon span = row_reduce(rows);
  for (const auto& g : gens)
    if (!in_span(span, km_coordinates(apply_involution(rho, g), wide))) return false;
  for (std::size_t p = 0; p < gens.size(); ++p)
    for (std::size_t q = p + 1; q < gens.size(); ++q) {
      KMElement br = km_bracket(alg, gens[p], gens[q]);
      if (br.max_abs_degree() > wide || !in_span(span, km_coordinates(br, wide))) return false;
    }
  return true;
}

}  // namespace

OsakaReport osaka_validate(const BaseAlgebra& alg, const Involution& rho, int window) {
  if (!rho.certified())
    throw PreconditionError("osaka_validate needs an involution certified by check_involution");
  OsakaReport rep;
  rep.window = window;
  const auto validation = validate_base_algebra(alg);
  rep.condition1 = validation.ok();
  for (const auto& v : validation.violations) rep.witnesses.push_back("condition 1: " + v);
  rep.condition2 = true;

  std::vector<int> abelian_components;
  for (const auto& blk : alg.blocks()) {
    std::vector<int> comps;
    for (int i = blk.offset; i < blk.offset + blk.dim; ++i) comps.push_back(i);
    if (blk.abelian) abelian_components.insert(abelian_components.end(), comps.begin(), comps.end());
    const auto fixed = fixed_real_span(rho, alg, loop_support(alg, comps, window), window);
    rep.factors.push_back({blk.label, blk.abelian, fixed.size()});
  }
  rep.condition3 = true;
  if (!abelian_components.empty()) {
    const auto fixed = fixed_real_span(rho, alg, loop_support(alg, abelian_components, window), window);
    if (!fixed.empty()) {
      rep.condition3 = false;
      rep.witnesses.push_back("condition 3: fixed element on the abelian factor: " +
                              describe(fixed.front()) + " (real dimension " +
                              std::to_string(fixed.size()) + ")");
    }
  }

  // Irreducibility: look for a proper nonzero V in g with L(V) + Cc + Cd a
  // rho-invariant affine subalgebra.
  std::vector<std::pair<std::string, std::vector<BaseVector>>> candidates;
  if (alg.blocks().size() > 1)
    for (const auto& blk : alg.blocks()) {
      std::vector<BaseVector> v;
      for (int i = blk.offset; i < blk.offset + blk.dim; ++i) v.push_back(basis_vector(alg, i));
      candidates.emplace_back("factor " + blk.label, std::move(v));
    }
  if (abelian_components.size() >= 2) {
    const std::size_t n = static_cast<std::size_t>(alg.dim());
    for (long sign : {1L, -1L}) {
      // kernel of (M - sign I), restricted to vectors supported on g_a
      ScalarMatrix a = rho.base_map;
      for (std::size_t i = 0; i < n; ++i) a[i][i] -= Scalar::exact(sign);
      for (const auto& v : null_space(a, n)) {
        bool on_abelian = true;
        for (std::size_t i = 0; i < n; ++i) {
          const bool abel = std::find(abelian_components.begin(), abelian_components.end(),
                                      static_cast<int>(i)) != abelian_components.end();
          if (!abel && !v[i].is_zero()) on_abelian = false;
        }
        if (on_abelian)
          candidates.emplace_back("eigenline " + describe_base(v) + " (eigenvalue " +
                                      std::to_string(sign) + ")",
                                  std::vector<BaseVector>{v});
      }
    }
    for (int i : abelian_components)
      candidates.emplace_back("axis e" + std::to_string(i),
                              std::vector<BaseVector>{basis_vector(alg, i)});
  }
  rep.irreducible = true;
  for (const auto& [label, v] : candidates) {
    if (v.empty() || static_cast<int>(v.size()) >= alg.dim()) continue;
    if (invariant_affine_subalgebra(alg, rho, v, window)) {
      rep.irreducible = false;
      rep.witnesses.push_back("reducible: invariant affine subalgebra over " + label);
      break;
    }
  }
  return rep;
}

// --- Real forms ----------------------------------------------------------------

const char* to_string(RealFormType t) { return t == RealFormType::compact ? "compact" : "noncompact"; }

RealFormType classify_real_form(const BaseAlgebra& alg, const std::vector<KMElement>& basis) {
  if (basis.empty()) throw PreconditionError("empty real form basis");
  const Backend b = basis.front().backend();
  std::vector<KMElement> brackets;
  int window = 0;
  for (const auto& x : basis) window = std::max(window, x.max_abs_degree());
  for (std::size_t p = 0; p < basis.size(); ++p)
    for (std::size_t q = p + 1; q < basis.size(); ++q) {
      brackets.push_back(km_bracket(alg, basis[p], basis[q]));
      window = std::max(window, brackets.back().max_abs_degree());
    }
  ScalarMatrix rows;
  for (const auto& x : basis) rows.push_back(realify(km_coordinates(x, window)));
  const Echelon span = row_reduce(rows);

  bool saw_real = false, saw_imaginary = false;
  std::size_t idx = 0;
  for (std::size_t p = 0; p < basis.size(); ++p)
    for (std::size_t q = p + 1; q < basis.size(); ++q, ++idx) {
      const KMElement& br = brackets[idx];
      if (!in_span(span, realify(km_coordinates(br, window))))
        throw PreconditionError("real span is not closed: [b" + std::to_string(p) + ", b" +
                                std::to_string(q) + "] = " + describe(br));
      if (br.c.is_zero()) continue;
      const auto z = br.c.to_complex();
      const double tol = b == Backend::exact ? 0.0 : 1e-12 * std::abs(z);
      const bool real = b == Backend::exact ? br.c.is_real() : std::abs(z.imag()) <= tol;
      const bool imaginary = b == Backend::exact ? br.c.is_imaginary() : std::abs(z.real()) <= tol;
      if (!real && !imaginary)
        throw MixedTypeError("central coefficient " + br.c.to_string() +
                             " is neither real nor imaginary; every real form is of compact or "
                             "non-compact type, a mixed type is not possible");
      saw_real = saw_real || real;
      saw_imaginary = saw_imaginary || imaginary;
    }
  if (saw_real && saw_imaginary)
    throw MixedTypeError("span produces both real and imaginary central coefficients; every real "
                         "form is of compact or non-compact type, a mixed type is not possible");
  if (!saw_real && !saw_imaginary)
    throw PreconditionError("no bracket in the span has a central part; type undetermined");
  return saw_imaginary ? RealFormType::compact : RealFormType::noncompact;
}

std::vector<KMElement> heisenberg_real_form(const BaseAlgebra& alg, Epsilon eps, int window,
                                            Backend b, bool include_cd) {
  if (classify_km_type(alg).label != KMTypeLabel::euclidean)
    throw PreconditionError("Heisenberg real forms are defined over abelian base algebras");
  if (window < 1) throw DomainError("window must be at least 1");
  const int k = alg.dim();
  const Scalar one = Scalar::one(b);
  const Scalar i_unit = Scalar::imaginary_unit(b);
  std::vector<KMElement> basis;
  for (int i = 0; i < k; ++i)
    for (int n = 1; n <= window; ++n) {
      auto plus = KMElement::loop_monomial(k, i, n, one);
      auto minus = KMElement::loop_monomial(k, i, -n, one);
      if (eps == Epsilon::one) {
        basis.push_back(plus);
        basis.push_back(minus);
      } else {
        basis.push_back(plus + minus);
        basis.push_back((plus - minus) * i_unit);
      }
    }
  if (include_cd) {
    const Scalar unit = eps == Epsilon::one ? one : i_unit;
    basis.push_back(KMElement::central(k, b) * unit);
    basis.push_back(KMElement::derivation(k, b) * unit);
  }
  return basis;
}

}  // namespace km
