#include "km/scalar.hpp"

#include <cmath>
#include <sstream>

#include "km/errors.hpp"

namespace km {

const char* to_string(Backend b) { return b == Backend::exact ? "exact" : "float"; }

Scalar Scalar::exact(Rational re, Rational im) {
  re.canonicalize();
  im.canonicalize();
  Scalar s;
  s.value_ = GaussianRational{std::move(re), std::move(im)};
  return s;
}

Scalar Scalar::floating(std::complex<double> z) {
  Scalar s;
  s.value_ = z;
  s.check_finite();
  return s;
}

Scalar Scalar::integer(long n, Backend b) {
  return b == Backend::exact ? exact(Rational(n)) : floating(static_cast<double>(n));
}

Scalar Scalar::rational(long num, long den, Backend b) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (b == Backend::floating) return floating(static_cast<double>(num) / static_cast<double>(den));
  return exact(Rational(num, den));
}

Scalar Scalar::imaginary_unit(Backend b) {
  return b == Backend::exact ? exact(0, 1) : floating(0.0, 1.0);
}

const GaussianRational& Scalar::exact_value() const {
  if (auto p = std::get_if<GaussianRational>(&value_)) return *p;
  throw BackendMismatch("exact value requested from a float scalar");
}

std::complex<double> Scalar::float_value() const {
  if (auto p = std::get_if<std::complex<double>>(&value_)) return *p;
  throw BackendMismatch("float value requested from an exact scalar");
}

std::complex<double> Scalar::to_complex() const {
  if (auto p = std::get_if<GaussianRational>(&value_)) return {p->re.get_d(), p->im.get_d()};
  return std::get<std::complex<double>>(value_);
}

Scalar Scalar::convert(Backend b) const {
  if (b == backend()) return *this;
  if (b == Backend::floating) return floating(to_complex());
  auto z = float_value();
  return exact(Rational(z.real()), Rational(z.imag()));
}

bool Scalar::is_zero() const {
  if (auto p = std::get_if<GaussianRational>(&value_)) return sgn(p->re) == 0 && sgn(p->im) == 0;
  auto z = std::get<std::complex<double>>(value_);
  return z.real() == 0.0 && z.imag() == 0.0;
}

bool Scalar::is_real() const {
  if (auto p = std::get_if<GaussianRational>(&value_)) return sgn(p->im) == 0;
  return std::get<std::complex<double>>(value_).imag() == 0.0;
}

bool Scalar::is_imaginary() const {
  if (auto p = std::get_if<GaussianRational>(&value_)) return sgn(p->re) == 0;
  return std::get<std::complex<double>>(value_).real() == 0.0;
}

Scalar Scalar::real_part() const {
  if (auto p = std::get_if<GaussianRational>(&value_)) return exact(p->re);
  return floating(std::get<std::complex<double>>(value_).real());
}

Scalar Scalar::imag_part() const {
  if (auto p = std::get_if<GaussianRational>(&value_)) return exact(p->im);
  return floating(std::get<std::complex<double>>(value_).imag());
}

Scalar Scalar::conj() const {
  if (auto p = std::get_if<GaussianRational>(&value_)) return exact(p->re, -p->im);
  return floating(std::conj(std::get<std::complex<double>>(value_)));
}

double Scalar::abs() const { return std::abs(to_complex()); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (auto p = std::get_if<GaussianRational>(&r.value_)) {
    p->re = -p->re;
    p->im = -p->im;
  } else {
    auto& z = std::get<std::complex<double>>(r.value_);
    z = -z;
  }
  return r;
}

void Scalar::check_same(const Scalar& o) const {
  if (value_.index() != o.value_.index())
    throw BackendMismatch(std::string("scalar backend mismatch: ") + km::to_string(backend()) +
                          " vs " + km::to_string(o.backend()));
}

void Scalar::check_finite() const {
  if (auto p = std::get_if<std::complex<double>>(&value_)) {
    if (!std::isfinite(p->real()) || !std::isfinite(p->imag()))
      throw DomainError("non-finite float scalar");
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (auto p = std::get_if<GaussianRational>(&value_)) {
    const auto& q = std::get<GaussianRational>(o.value_);
    p->re += q.re;
    p->im += q.im;
  } else {
    std::get<std::complex<double>>(value_) += std::get<std::complex<double>>(o.value_);
    check_finite();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (auto p = std::get_if<GaussianRational>(&value_)) {
    const auto& q = std::get<GaussianRational>(o.value_);
    p->re -= q.re;
    p->im -= q.im;
  } else {
    std::get<std::complex<double>>(value_) -= std::get<std::complex<double>>(o.value_);
    check_finite();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (auto p = std::get_if<GaussianRational>(&value_)) {
    const auto& q = std::get<GaussianRational>(o.value_);
    if (sgn(p->im) == 0 && sgn(q.im) == 0) {
      p->re *= q.re;
    } else {
      Rational re = p->re * q.re - p->im * q.im;
      Rational im = p->re * q.im + p->im * q.re;
      p->re = std::move(re);
      p->im = std::move(im);
    }
  } else {
    std::get<std::complex<double>>(value_) *= std::get<std::complex<double>>(o.value_);
    check_finite();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  if (o.is_zero()) throw DomainError("division by zero scalar");
  if (auto p = std::get_if<GaussianRational>(&value_)) {
    const auto& q = std::get<GaussianRational>(o.value_);
    Rational den = q.re * q.re + q.im * q.im;
    Rational re = (p->re * q.re + p->im * q.im) / den;
    Rational im = (p->im * q.re - p->re * q.im) / den;
    p->re = std::move(re);
    p->im = std::move(im);
  } else {
    std::get<std::complex<double>>(value_) /= std::get<std::complex<double>>(o.value_);
    check_finite();
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  if (auto p = std::get_if<GaussianRational>(&a.value_)) {
    const auto& q = std::get<GaussianRational>(b.value_);
    return p->re == q.re && p->im == q.im;
  }
  return std::get<std::complex<double>>(a.value_) == std::get<std::complex<double>>(b.value_);
}

std::string Scalar::to_string() const {
  std::ostringstream os;
  if (auto p = std::get_if<GaussianRational>(&value_)) {
    os << p->re.get_str();
    if (sgn(p->im) != 0) {
      Rational mag = p->im;
      if (sgn(mag) < 0) mag = -mag;
      os << (sgn(p->im) > 0 ? "+" : "-") << mag.get_str() << "i";
    }
  } else {
    auto z = std::get<std::complex<double>>(value_);
    os.precision(17);
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() > 0 ? "+" : "-") << std::abs(z.imag()) << "i";
  }
  return os.str();
}

}  // namespace km
