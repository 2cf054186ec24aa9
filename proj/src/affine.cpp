#include "km/affine.hpp"

#include <sstream>

#include "km/errors.hpp"

namespace km {

KMElement KMElement::zero(int dim, Backend b) {
  if (dim < 1) throw DimensionMismatch("loop dimension must be positive");
  return {Loop(static_cast<std::size_t>(dim), LaurentPoly(b)), Scalar::zero(b), Scalar::zero(b)};
}

KMElement KMElement::central(int dim, Backend b) {
  auto x = zero(dim, b);
  x.c = Scalar::one(b);
  return x;
}

KMElement KMElement::derivation(int dim, Backend b) {
  auto x = zero(dim, b);
  x.d = Scalar::one(b);
  return x;
}

KMElement KMElement::loop_monomial(int dim, int component, int degree, const Scalar& coeff) {
  auto x = zero(dim, coeff.backend());
  x.loop.at(static_cast<std::size_t>(component)) = LaurentPoly::monomial(degree, coeff);
  return x;
}

KMElement KMElement::from_loop(Loop loop) {
  if (loop.empty()) throw DimensionMismatch("loop must have at least one component");
  const Backend b = loop.front().backend();
  KMElement x{std::move(loop), Scalar::zero(b), Scalar::zero(b)};
  x.check_backend();
  return x;
}

bool KMElement::is_zero() const {
  if (!c.is_zero() || !d.is_zero()) return false;
  for (const auto& p : loop)
    if (!p.is_zero()) return false;
  return true;
}

void KMElement::check_backend() const {
  const Backend b = c.backend();
  if (d.backend() != b) throw BackendMismatch("c and d coefficients on different backends");
  for (const auto& p : loop)
    if (p.backend() != b) throw BackendMismatch("loop component on a different backend");
}

namespace {

void require_compatible(const KMElement& x, const KMElement& y) {
  if (x.loop.size() != y.loop.size())
    throw DimensionMismatch("affine elements over algebras of different dimension");
  if (x.backend() != y.backend()) throw BackendMismatch("affine elements on different backends");
}

void require_dim(const BaseAlgebra& alg, const Loop& f) {
  if (static_cast<int>(f.size()) != alg.dim())
    throw DimensionMismatch("loop has " + std::to_string(f.size()) +
                            " components, algebra dimension is " + std::to_string(alg.dim()));
}

}  // namespace

KMElement KMElement::operator-() const {
  KMElement r = *this;
  for (auto& p : r.loop) p = -p;
  r.c = -r.c;
  r.d = -r.d;
  return r;
}

KMElement& KMElement::operator+=(const KMElement& o) {
  require_compatible(*this, o);
  for (std::size_t i = 0; i < loop.size(); ++i) loop[i] += o.loop[i];
  c += o.c;
  d += o.d;
  return *this;
}

KMElement& KMElement::operator-=(const KMElement& o) {
  require_compatible(*this, o);
  for (std::size_t i = 0; i < loop.size(); ++i) loop[i] -= o.loop[i];
  c -= o.c;
  d -= o.d;
  return *this;
}

KMElement& KMElement::operator*=(const Scalar& s) {
  for (auto& p : loop) p *= s;
  c *= s;
  d *= s;
  return *this;
}

bool operator==(const KMElement& a, const KMElement& b) {
  require_compatible(a, b);
  if (!(a.c == b.c) || !(a.d == b.d)) return false;
  for (std::size_t i = 0; i < a.loop.size(); ++i)
    if (!(a.loop[i] == b.loop[i])) return false;
  return true;
}

KMElement KMElement::convert(Backend b) const {
  KMElement r{{}, c.convert(b), d.convert(b)};
  for (const auto& p : loop) r.loop.push_back(p.convert(b));
  return r;
}

int KMElement::max_abs_degree() const {
  int m = 0;
  for (const auto& p : loop) m = std::max(m, p.max_abs_degree());
  return m;
}

Loop loop_bracket(const BaseAlgebra& alg, const Loop& f, const Loop& g) {
  require_dim(alg, f);
  require_dim(alg, g);
  const Backend b = f.front().backend();
  Loop out(f.size(), LaurentPoly(b));
  for (const auto& t : alg.terms()) {
    // c[i][j][k] = -c[j][i][k]: handle each unordered pair once.
    if (t.i >= t.j) continue;
    const auto i = static_cast<std::size_t>(t.i);
    const auto j = static_cast<std::size_t>(t.j);
    LaurentPoly pair = lp_multiply(f[i], g[j]) - lp_multiply(f[j], g[i]);
    if (pair.is_zero()) continue;
    out[static_cast<std::size_t>(t.k)] += pair * (b == Backend::exact ? t.exact : t.floating);
  }
  return out;
}

Scalar cocycle(const BaseAlgebra& alg, const Loop& f, const Loop& g) {
  require_dim(alg, f);
  require_dim(alg, g);
  const Backend b = f.front().backend();
  Scalar sum = Scalar::zero(b);
  for (const auto& t : alg.form_terms()) {
    const auto i = static_cast<std::size_t>(t.i);
    const auto j = static_cast<std::size_t>(t.j);
    Scalar r = lp_residue_of_product(f[i], lp_derivative(g[j]));
    if (!r.is_zero()) sum += r * (b == Backend::exact ? t.exact : t.floating);
  }
  return sum;
}

KMElement km_bracket(const BaseAlgebra& alg, const KMElement& x, const KMElement& y) {
  require_compatible(x, y);
  require_dim(alg, x.loop);
  const Backend b = x.backend();
  KMElement out{loop_bracket(alg, x.loop, y.loop), cocycle(alg, x.loop, y.loop), Scalar::zero(b)};
  if (!x.d.is_zero())
    for (std::size_t i = 0; i < out.loop.size(); ++i) out.loop[i] += lp_euler(y.loop[i]) * x.d;
  if (!y.d.is_zero())
    for (std::size_t i = 0; i < out.loop.size(); ++i) out.loop[i] -= lp_euler(x.loop[i]) * y.d;
  return out;
}

Scalar km_metric(const BaseAlgebra& alg, const KMElement& x, const KMElement& y) {
  require_compatible(x, y);
  require_dim(alg, x.loop);
  const Backend b = x.backend();
  Scalar sum = Scalar::zero(b);
  for (const auto& t : alg.form_terms()) {
    Scalar p = lp_circle_pairing(x.loop[static_cast<std::size_t>(t.i)],
                                 y.loop[static_cast<std::size_t>(t.j)]);
    if (!p.is_zero()) sum += p * (b == Backend::exact ? t.exact : t.floating);
  }
  sum -= x.c * y.d + x.d * y.c;
  return sum;
}

const char* to_string(KMTypeLabel t) {
  switch (t) {
    case KMTypeLabel::euclidean:
      return "euclidean";
    case KMTypeLabel::semisimple:
      return "semisimple";
    case KMTypeLabel::mixed:
      return "mixed";
  }
  return "?";
}

KMType classify_km_type(const BaseAlgebra& alg) {
  KMType t;
  for (const auto& blk : alg.blocks())
    t.factors.push_back(blk.abelian ? KMTypeLabel::euclidean : KMTypeLabel::semisimple);
  switch (alg.kind()) {
    case AlgebraKind::abelian:
      t.label = KMTypeLabel::euclidean;
      break;
    case AlgebraKind::semisimple:
      t.label = KMTypeLabel::semisimple;
      break;
    case AlgebraKind::reductive_product:
      t.label = KMTypeLabel::mixed;
      break;
  }
  return t;
}

std::vector<Scalar> km_coordinates(const KMElement& x, int window, bool include_cd) {
  const Backend b = x.backend();
  const std::size_t width = 2 * static_cast<std::size_t>(window) + 1;
  std::vector<Scalar> out(x.loop.size() * width + (include_cd ? 2 : 0), Scalar::zero(b));
  for (std::size_t i = 0; i < x.loop.size(); ++i)
    for (const auto& [k, c] : x.loop[i].coeffs()) {
      if (std::abs(k) > window)
        throw DimensionMismatch("degree " + std::to_string(k) + " lies outside window " +
                                std::to_string(window));
      out[i * width + static_cast<std::size_t>(k + window)] = c;
    }
  if (include_cd) {
    out[out.size() - 2] = x.c;
    out[out.size() - 1] = x.d;
  } else if (!x.c.is_zero() || !x.d.is_zero()) {
    throw DimensionMismatch("element has c/d parts but coordinates exclude them");
  }
  return out;
}

KMElement km_from_coordinates(const std::vector<Scalar>& coords, int dim, int window,
                              bool include_cd) {
  const std::size_t width = 2 * static_cast<std::size_t>(window) + 1;
  if (coords.size() != static_cast<std::size_t>(dim) * width + (include_cd ? 2 : 0))
    throw DimensionMismatch("coordinate vector has the wrong length");
  const Backend b = coords.front().backend();
  auto x = KMElement::zero(dim, b);
  for (std::size_t i = 0; i < static_cast<std::size_t>(dim); ++i)
    for (std::size_t j = 0; j < width; ++j)
      x.loop[i].set_coeff(static_cast<int>(j) - window, coords[i * width + j]);
  if (include_cd) {
    x.c = coords[coords.size() - 2];
    x.d = coords[coords.size() - 1];
  }
  return x;
}

std::vector<KMElement> km_truncated_basis(int dim, int window, Backend b, bool include_cd) {
  std::vector<KMElement> basis;
  for (int i = 0; i < dim; ++i)
    for (int k = -window; k <= window; ++k)
      basis.push_back(KMElement::loop_monomial(dim, i, k, Scalar::one(b)));
  if (include_cd) {
    basis.push_back(KMElement::central(dim, b));
    basis.push_back(KMElement::derivation(dim, b));
  }
  return basis;
}

std::string describe(const KMElement& x) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < x.loop.size(); ++i)
    for (const auto& [k, c] : x.loop[i].coeffs()) {
      os << (first ? "" : " + ") << "(" << c.to_string() << ")z^" << k << "e" << i;
      first = false;
    }
  if (!x.c.is_zero()) {
    os << (first ? "" : " + ") << "(" << x.c.to_string() << ")c";
    first = false;
  }
  if (!x.d.is_zero()) {
    os << (first ? "" : " + ") << "(" << x.d.to_string() << ")d";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace km
