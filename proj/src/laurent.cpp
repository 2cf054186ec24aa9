#include "km/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "km/errors.hpp"

namespace km {

namespace {

constexpr double kFlushBelow = 1e-300;

void require_same(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.backend() != b.backend())
    throw BackendMismatch(std::string("Laurent polynomial backend mismatch: ") +
                          to_string(a.backend()) + " vs " + to_string(b.backend()));
}

bool negligible(const Scalar& s) {
  if (s.is_zero()) return true;
  return !s.is_exact() && s.abs() < kFlushBelow;
}

}  // namespace

Scalar scalar_pow(const Scalar& base, int exponent) {
  Scalar b = exponent < 0 ? Scalar::one(base.backend()) / base : base;
  unsigned e = static_cast<unsigned>(exponent < 0 ? -static_cast<long>(exponent) : exponent);
  Scalar result = Scalar::one(base.backend());
  while (e != 0) {
    if (e & 1U) result *= b;
    e >>= 1U;
    if (e != 0) b *= b;
  }
  return result;
}

LaurentPoly::LaurentPoly(Backend b, std::map<int, Scalar> coeffs)
    : backend_(b), coeffs_(std::move(coeffs)) {
  for (const auto& [k, c] : coeffs_) {
    if (c.backend() != backend_) throw BackendMismatch("coefficient backend differs from polynomial");
  }
  canonicalize();
}

LaurentPoly LaurentPoly::monomial(int degree, Scalar coeff) {
  Backend b = coeff.backend();
  return LaurentPoly(b, {{degree, std::move(coeff)}});
}

void LaurentPoly::canonicalize() {
  std::erase_if(coeffs_, [](const auto& kv) { return negligible(kv.second); });
}

std::optional<std::pair<int, int>> LaurentPoly::degree_bounds() const {
  if (coeffs_.empty()) return std::nullopt;
  return std::make_pair(coeffs_.begin()->first, coeffs_.rbegin()->first);
}

int LaurentPoly::max_abs_degree() const {
  if (coeffs_.empty()) return 0;
  return std::max(std::abs(coeffs_.begin()->first), std::abs(coeffs_.rbegin()->first));
}

Scalar LaurentPoly::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Scalar::zero(backend_) : it->second;
}

void LaurentPoly::set_coeff(int k, Scalar c) {
  if (c.backend() != backend_) throw BackendMismatch("coefficient backend differs from polynomial");
  if (negligible(c)) {
    coeffs_.erase(k);
  } else {
    coeffs_.insert_or_assign(k, std::move(c));
  }
}

void LaurentPoly::add_to_coeff(int k, const Scalar& c) {
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) {
    set_coeff(k, c);
    return;
  }
  it->second += c;
  if (negligible(it->second)) coeffs_.erase(it);
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [k, c] : r.coeffs_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  require_same(*this, o);
  for (const auto& [k, c] : o.coeffs_) add_to_coeff(k, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  require_same(*this, o);
  for (const auto& [k, c] : o.coeffs_) add_to_coeff(k, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Scalar& s) {
  if (s.backend() != backend_) throw BackendMismatch("scalar backend differs from polynomial");
  for (auto& [k, c] : coeffs_) c *= s;
  canonicalize();
  return *this;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  require_same(a, b);
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  auto it = b.coeffs_.begin();
  for (const auto& [k, c] : a.coeffs_) {
    if (k != it->first || !(c == it->second)) return false;
    ++it;
  }
  return true;
}

std::complex<double> LaurentPoly::evaluate(std::complex<double> z) const {
  std::complex<double> sum = 0.0;
  for (const auto& [k, c] : coeffs_) sum += c.to_complex() * std::pow(z, k);
  return sum;
}

LaurentPoly LaurentPoly::circle_reflection() const {
  LaurentPoly r(backend_);
  for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(-k, c.conj());
  return r;
}

LaurentPoly LaurentPoly::rescale_argument(const Scalar& q) const {
  if (q.backend() != backend_) throw BackendMismatch("rescale factor backend differs from polynomial");
  if (q.is_zero()) throw DomainError("rescale factor must be nonzero");
  LaurentPoly r(backend_);
  for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, c * scalar_pow(q, k));
  r.canonicalize();
  return r;
}

LaurentPoly LaurentPoly::truncate(int window) const {
  LaurentPoly r(backend_);
  for (const auto& [k, c] : coeffs_)
    if (std::abs(k) <= window) r.coeffs_.emplace(k, c);
  return r;
}

LaurentPoly LaurentPoly::convert(Backend b) const {
  LaurentPoly r(b);
  for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, c.convert(b));
  r.canonicalize();
  return r;
}

LaurentPoly lp_multiply(const LaurentPoly& a, const LaurentPoly& b) {
  require_same(a, b);
  if (a.is_zero() || b.is_zero()) return LaurentPoly(a.backend());
  if (a.backend() == Backend::floating) {
    LaurentPoly r(a.backend());
    for (const auto& [i, x] : a.coeffs())
      for (const auto& [j, y] : b.coeffs()) r.add_to_coeff(i + j, x * y);
    return r;
  }
  // Dense accumulation with in-place rational arithmetic.
  const int lo = a.coeffs().begin()->first + b.coeffs().begin()->first;
  const int hi = a.coeffs().rbegin()->first + b.coeffs().rbegin()->first;
  std::vector<GaussianRational> acc(static_cast<std::size_t>(hi - lo + 1));
  Rational t;
  for (const auto& [i, x] : a.coeffs()) {
    const auto& xv = x.exact_value();
    const bool x_real = sgn(xv.im) == 0;
    for (const auto& [j, y] : b.coeffs()) {
      const auto& yv = y.exact_value();
      auto& slot = acc[static_cast<std::size_t>(i + j - lo)];
      mpq_mul(t.get_mpq_t(), xv.re.get_mpq_t(), yv.re.get_mpq_t());
      mpq_add(slot.re.get_mpq_t(), slot.re.get_mpq_t(), t.get_mpq_t());
      const bool y_real = sgn(yv.im) == 0;
      if (!x_real && !y_real) {
        mpq_mul(t.get_mpq_t(), xv.im.get_mpq_t(), yv.im.get_mpq_t());
        mpq_sub(slot.re.get_mpq_t(), slot.re.get_mpq_t(), t.get_mpq_t());
      }
      if (!y_real) {
        mpq_mul(t.get_mpq_t(), xv.re.get_mpq_t(), yv.im.get_mpq_t());
        mpq_add(slot.im.get_mpq_t(), slot.im.get_mpq_t(), t.get_mpq_t());
      }
      if (!x_real) {
        mpq_mul(t.get_mpq_t(), xv.im.get_mpq_t(), yv.re.get_mpq_t());
        mpq_add(slot.im.get_mpq_t(), slot.im.get_mpq_t(), t.get_mpq_t());
      }
    }
  }
  std::map<int, Scalar> out;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (sgn(acc[k].re) == 0 && sgn(acc[k].im) == 0) continue;
    out.emplace_hint(out.end(), lo + static_cast<int>(k),
                     Scalar::exact(std::move(acc[k].re), std::move(acc[k].im)));
  }
  return LaurentPoly(Backend::exact, std::move(out));
}

LaurentPoly lp_derivative(const LaurentPoly& f) {
  LaurentPoly r(f.backend());
  for (const auto& [k, c] : f.coeffs())
    if (k != 0) r.set_coeff(k - 1, c * Scalar::integer(k, f.backend()));
  return r;
}

LaurentPoly lp_euler(const LaurentPoly& f) {
  LaurentPoly r(f.backend());
  for (const auto& [k, c] : f.coeffs())
    if (k != 0) r.set_coeff(k, c * Scalar::integer(k, f.backend()));
  return r;
}

Scalar lp_residue(const LaurentPoly& f) { return f.coeff(-1); }

Scalar lp_residue_of_product(const LaurentPoly& f, const LaurentPoly& g) {
  require_same(f, g);
  Scalar sum = Scalar::zero(f.backend());
  for (const auto& [k, c] : f.coeffs()) {
    auto it = g.coeffs().find(-1 - k);
    if (it != g.coeffs().end()) sum += c * it->second;
  }
  return sum;
}

Scalar lp_circle_pairing(const LaurentPoly& f, const LaurentPoly& g) {
  require_same(f, g);
  Scalar sum = Scalar::zero(f.backend());
  for (const auto& [k, c] : f.coeffs()) {
    auto it = g.coeffs().find(-k);
    if (it != g.coeffs().end()) sum += c * it->second;
  }
  return sum;
}

AnnulusNorm lp_annulus_norm(const LaurentPoly& f, int n, int samples) {
  if (n < 0) throw DomainError("annulus index n must be nonnegative");
  if (samples < 8) throw DomainError("annulus norm needs at least 8 samples per circle");
  if (f.is_zero()) return {0.0, 0.0};
  // Triangle inequality on each boundary circle; the maximum-modulus
  // principle puts the sup of |f| over the annulus on one of them.
  double outer = 0.0, inner = 0.0;
  for (const auto& [k, c] : f.coeffs()) {
    outer += c.abs() * std::exp(static_cast<double>(n) * k);
    inner += c.abs() * std::exp(-static_cast<double>(n) * k);
  }
  const double certified = std::max(outer, inner);
  double best = 0.0;
  for (double radius : {std::exp(static_cast<double>(n)), std::exp(-static_cast<double>(n))}) {
    for (int s = 0; s < samples; ++s) {
      const double theta = 2.0 * std::numbers::pi * s / samples;
      best = std::max(best, std::abs(f.evaluate(std::polar(radius, theta))));
    }
  }
  // Rounding can push a sampled value a few ulps past the coefficient bound
  // when the bound is attained (monomials); the bound is exact in that case.
  return {std::min(best, certified), certified};
}

double lp_coefficient_norm(const LaurentPoly& f, double n) {
  double sum = 0.0;
  for (const auto& [k, c] : f.coeffs()) sum += c.abs() * std::exp(n * std::abs(k));
  return sum;
}

}  // namespace km
