#include "km/random.hpp"

#include <cmath>
#include <numbers>

namespace km {

long Sampler::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng_() % span);
}

double Sampler::unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

Scalar Sampler::exact_scalar() {
  const long re = integer(-5, 5);
  const long im = integer(-5, 5);
  return Scalar::exact(Rational(re, integer(1, 4)), Rational(im, integer(1, 4)));
}

Scalar Sampler::float_scalar(double magnitude) {
  const double r = magnitude * unit();
  const double theta = 2.0 * std::numbers::pi * unit();
  return Scalar::floating(std::polar(r, theta));
}

LaurentPoly Sampler::laurent(int window, Backend b, double density, double alpha) {
  std::map<int, Scalar> coeffs;
  for (int k = -window; k <= window; ++k) {
    if (unit() >= density) continue;
    Scalar s = b == Backend::exact ? exact_scalar() : float_scalar(std::exp(-alpha * std::abs(k)));
    if (!s.is_zero()) coeffs.emplace(k, std::move(s));
  }
  return LaurentPoly(b, std::move(coeffs));
}

Loop Sampler::loop(int dim, int window, Backend b, double density, double alpha) {
  Loop out;
  for (int i = 0; i < dim; ++i) out.push_back(laurent(window, b, density, alpha));
  return out;
}

KMElement Sampler::km_element(int dim, int window, Backend b, bool with_c, bool with_d,
                              double density) {
  auto x = KMElement::zero(dim, b);
  x.loop = loop(dim, window, b, density);
  if (with_c) x.c = scalar(b);
  if (with_d) x.d = scalar(b);
  return x;
}

GroupElement Sampler::group_element(int dim, int window, Backend b, bool unit_q) {
  GroupElement g{Scalar::one(b), loop(dim, window, b), scalar(b)};
  if (b == Backend::floating) {
    const double r = unit_q ? 1.0 : uniform(0.8, 1.25);
    g.q = Scalar::floating(std::polar(r, uniform(-3.0, 3.0)));
  }
  return g;
}

}  // namespace km
