#include "km/linalg.hpp"

#include <algorithm>

#include "km/errors.hpp"

namespace km {

namespace {

double max_abs(const ScalarMatrix& m) {
  double best = 0.0;
  for (const auto& r : m)
    for (const auto& s : r) best = std::max(best, s.abs());
  return best;
}

}  // namespace

Echelon row_reduce(ScalarMatrix m, double tol) {
  Echelon e;
  if (m.empty()) return e;
  const std::size_t cols = m.front().size();
  for (const auto& r : m)
    if (r.size() != cols) throw DimensionMismatch("ragged matrix");
  if (cols == 0) return e;
  const Backend b = m.front().front().backend();
  const bool exact = b == Backend::exact;
  const double cutoff = exact ? 0.0 : tol * std::max(1.0, max_abs(m));
  auto is_zero = [&](const Scalar& s) { return exact ? s.is_zero() : s.abs() <= cutoff; };

  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = m.size();
    double best = 0.0;
    for (std::size_t r = row; r < m.size(); ++r) {
      if (is_zero(m[r][col])) continue;
      if (exact) {
        pivot = r;
        break;
      }
      const double a = m[r][col].abs();
      if (a > best) {
        best = a;
        pivot = r;
      }
    }
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const Scalar inv = Scalar::one(b) / m[row][col];
    for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Scalar factor = m[r][col];
      for (std::size_t c = col; c < cols; ++c)
        if (!m[row][c].is_zero()) m[r][c] -= factor * m[row][c];
      if (!exact) m[r][col] = Scalar::zero(b);
    }
    e.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  e.rows = std::move(m);
  return e;
}

std::size_t span_rank(const ScalarMatrix& vectors, double tol) {
  return row_reduce(vectors, tol).rank();
}

ScalarMatrix null_space(const ScalarMatrix& a, std::size_t width, double tol) {
  Backend b = Backend::exact;
  if (!a.empty() && !a.front().empty()) b = a.front().front().backend();
  const Echelon e = row_reduce(a, tol);
  std::vector<bool> is_pivot(width, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  ScalarMatrix basis;
  for (std::size_t free = 0; free < width; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(width, Scalar::zero(b));
    v[free] = Scalar::one(b);
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_span(const Echelon& e, const std::vector<Scalar>& v, double tol) {
  if (v.empty()) return true;
  std::vector<Scalar> w = v;
  const bool exact = w.front().is_exact();
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    const Scalar f = w[e.pivots[r]];
    if (f.is_zero()) continue;
    for (std::size_t c = 0; c < w.size(); ++c)
      if (!e.rows[r][c].is_zero()) w[c] -= f * e.rows[r][c];
  }
  if (exact) return std::all_of(w.begin(), w.end(), [](const Scalar& s) { return s.is_zero(); });
  double scale = 1.0;
  for (const auto& s : v) scale = std::max(scale, s.abs());
  return std::all_of(w.begin(), w.end(), [&](const Scalar& s) { return s.abs() <= tol * scale; });
}

std::vector<Scalar> realify(const std::vector<Scalar>& v) {
  std::vector<Scalar> out;
  out.reserve(2 * v.size());
  for (const auto& s : v) out.push_back(s.real_part());
  for (const auto& s : v) out.push_back(s.imag_part());
  return out;
}

std::vector<Scalar> complexify(const std::vector<Scalar>& v) {
  if (v.size() % 2 != 0) throw DimensionMismatch("realified vector must have even length");
  const std::size_t n = v.size() / 2;
  std::vector<Scalar> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(v[i] + v[i + n] * Scalar::imaginary_unit(v[i].backend()));
  return out;
}

}  // namespace km
