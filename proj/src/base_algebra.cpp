#include "km/base_algebra.hpp"

#include <sstream>

#include "km/errors.hpp"

namespace km {

const char* to_string(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::abelian:
      return "abelian";
    case AlgebraKind::semisimple:
      return "semisimple";
    case AlgebraKind::reductive_product:
      return "reductive_product";
  }
  return "?";
}

BaseAlgebra::BaseAlgebra(int dim, std::vector<Scalar> structure_constants,
                         std::vector<Scalar> form, AlgebraKind kind, std::vector<Block> blocks)
    : dim_(dim),
      c_(std::move(structure_constants)),
      b_(std::move(form)),
      kind_(kind),
      blocks_(std::move(blocks)) {
  if (dim_ < 1) throw DimensionMismatch("base algebra dimension must be positive");
  const auto n = static_cast<std::size_t>(dim_);
  if (c_.size() != n * n * n) throw DimensionMismatch("structure constants must have dim^3 entries");
  if (b_.size() != n * n) throw DimensionMismatch("form must have dim^2 entries");
  for (auto& s : c_) s = s.convert(Backend::exact);
  for (auto& s : b_) s = s.convert(Backend::exact);
  if (blocks_.empty()) blocks_.push_back({0, dim_, kind_ == AlgebraKind::abelian, to_string(kind_)});
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      for (int k = 0; k < dim_; ++k) {
        const Scalar& v = c_[(static_cast<std::size_t>(i) * n + j) * n + k];
        if (!v.is_zero()) terms_.push_back({i, j, k, v, v.convert(Backend::floating)});
      }
      const Scalar& f = b_[static_cast<std::size_t>(i) * n + j];
      if (!f.is_zero()) form_terms_.push_back({i, j, 0, f, f.convert(Backend::floating)});
    }
}

Scalar BaseAlgebra::constant(int i, int j, int k, Backend b) const {
  const auto n = static_cast<std::size_t>(dim_);
  return c_.at((static_cast<std::size_t>(i) * n + j) * n + k).convert(b);
}

Scalar BaseAlgebra::form(int i, int j, Backend b) const {
  return b_.at(static_cast<std::size_t>(i) * dim_ + j).convert(b);
}

namespace {

struct Raw {
  int dim;
  std::vector<Scalar> c;
  std::vector<Scalar> b;
  AlgebraKind kind;
  std::vector<Block> blocks;
};

Raw zeros(int dim, AlgebraKind kind) {
  const auto n = static_cast<std::size_t>(dim);
  return {dim, std::vector<Scalar>(n * n * n), std::vector<Scalar>(n * n), kind, {}};
}

void set_c(Raw& r, int i, int j, int k, long v) {
  const auto n = static_cast<std::size_t>(r.dim);
  r.c[(static_cast<std::size_t>(i) * n + j) * n + k] = Scalar::exact(v);
  r.c[(static_cast<std::size_t>(j) * n + i) * n + k] = Scalar::exact(-v);
}

void set_b(Raw& r, int i, int j, long v) {
  r.b[static_cast<std::size_t>(i) * r.dim + j] = Scalar::exact(v);
  r.b[static_cast<std::size_t>(j) * r.dim + i] = Scalar::exact(v);
}

Raw build(const BaseAlgebraSpec& spec) {
  switch (spec.type) {
    case BaseAlgebraSpec::Type::abelian: {
      if (spec.k < 1) throw PreconditionError("abelian(k) requires k >= 1");
      Raw r = zeros(spec.k, AlgebraKind::abelian);
      for (int i = 0; i < spec.k; ++i) set_b(r, i, i, 1);
      r.blocks.push_back({0, spec.k, true, "abelian(" + std::to_string(spec.k) + ")"});
      return r;
    }
    case BaseAlgebraSpec::Type::sl2: {
      // e = 0, h = 1, f = 2
      Raw r = zeros(3, AlgebraKind::semisimple);
      set_c(r, 1, 0, 0, 2);
      set_c(r, 1, 2, 2, -2);
      set_c(r, 0, 2, 1, 1);
      set_b(r, 0, 2, 1);
      set_b(r, 1, 1, 2);
      r.blocks.push_back({0, 3, false, "sl2"});
      return r;
    }
    case BaseAlgebraSpec::Type::su2_realform: {
      Raw r = zeros(3, AlgebraKind::semisimple);
      set_c(r, 0, 1, 2, 1);
      set_c(r, 1, 2, 0, 1);
      set_c(r, 2, 0, 1, 1);
      for (int i = 0; i < 3; ++i) set_b(r, i, i, 2);
      r.blocks.push_back({0, 3, false, "su2"});
      return r;
    }
    case BaseAlgebraSpec::Type::product: {
      if (spec.factors.empty()) throw PreconditionError("product of an empty list of algebras");
      std::vector<Raw> parts;
      int dim = 0;
      for (const auto& f : spec.factors) {
        parts.push_back(build(f));
        dim += parts.back().dim;
      }
      bool all_abelian = true, all_semisimple = true;
      for (const auto& p : parts) {
        all_abelian = all_abelian && p.kind == AlgebraKind::abelian;
        all_semisimple = all_semisimple && p.kind == AlgebraKind::semisimple;
      }
      const AlgebraKind kind = all_abelian      ? AlgebraKind::abelian
                               : all_semisimple ? AlgebraKind::semisimple
                                                : AlgebraKind::reductive_product;
      Raw r = zeros(dim, kind);
      const auto n = static_cast<std::size_t>(dim);
      int offset = 0;
      for (const auto& p : parts) {
        const auto m = static_cast<std::size_t>(p.dim);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) {
            r.b[(i + offset) * n + (j + offset)] = p.b[i * m + j];
            for (std::size_t k = 0; k < m; ++k)
              r.c[((i + offset) * n + (j + offset)) * n + (k + offset)] = p.c[(i * m + j) * m + k];
          }
        for (auto blk : p.blocks) {
          blk.offset += offset;
          r.blocks.push_back(blk);
        }
        offset += p.dim;
      }
      return r;
    }
  }
  throw PreconditionError("unknown base algebra type");
}

}  // namespace

BaseAlgebra construct_base_algebra(const BaseAlgebraSpec& spec) {
  Raw r = build(spec);
  return BaseAlgebra(r.dim, std::move(r.c), std::move(r.b), r.kind, std::move(r.blocks));
}

BaseAlgebraSpec parse_base_spec(const std::string& text) {
  std::vector<BaseAlgebraSpec> factors;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '+')) {
    if (part == "sl2") {
      factors.push_back(BaseAlgebraSpec::sl2());
    } else if (part == "su2") {
      factors.push_back(BaseAlgebraSpec::su2());
    } else if (part.rfind("abelian:", 0) == 0) {
      int k = 0;
      try {
        k = std::stoi(part.substr(8));
      } catch (const std::exception&) {
        throw PreconditionError("bad abelian dimension in '" + part + "'");
      }
      if (k < 1) throw PreconditionError("abelian(k) requires k >= 1");
      factors.push_back(BaseAlgebraSpec::abelian(k));
    } else {
      throw PreconditionError("unknown base algebra '" + part + "'");
    }
  }
  if (factors.empty()) throw PreconditionError("empty base algebra description");
  if (factors.size() == 1) return factors.front();
  return BaseAlgebraSpec::product(std::move(factors));
}

BaseVector basis_vector(const BaseAlgebra& alg, int index, Backend b) {
  BaseVector v(static_cast<std::size_t>(alg.dim()), Scalar::zero(b));
  v.at(static_cast<std::size_t>(index)) = Scalar::one(b);
  return v;
}

namespace {

Backend common_backend(const BaseAlgebra& alg, const BaseVector& x, const BaseVector& y) {
  const auto n = static_cast<std::size_t>(alg.dim());
  if (x.size() != n || y.size() != n)
    throw DimensionMismatch("base vector length does not match algebra dimension");
  const Backend b = x.front().backend();
  for (const auto& s : x)
    if (s.backend() != b) throw BackendMismatch("mixed backends inside a base vector");
  for (const auto& s : y)
    if (s.backend() != b) throw BackendMismatch("base vectors live on different backends");
  return b;
}

}  // namespace

BaseVector base_bracket(const BaseAlgebra& alg, const BaseVector& x, const BaseVector& y) {
  const Backend b = common_backend(alg, x, y);
  BaseVector out(x.size(), Scalar::zero(b));
  for (const auto& t : alg.terms()) {
    const auto& xi = x[static_cast<std::size_t>(t.i)];
    const auto& yj = y[static_cast<std::size_t>(t.j)];
    if (xi.is_zero() || yj.is_zero()) continue;
    out[static_cast<std::size_t>(t.k)] += xi * yj * (b == Backend::exact ? t.exact : t.floating);
  }
  return out;
}

Scalar base_form(const BaseAlgebra& alg, const BaseVector& x, const BaseVector& y) {
  const Backend b = common_backend(alg, x, y);
  Scalar sum = Scalar::zero(b);
  for (const auto& t : alg.form_terms())
    sum += x[static_cast<std::size_t>(t.i)] * y[static_cast<std::size_t>(t.j)] *
           (b == Backend::exact ? t.exact : t.floating);
  return sum;
}

AlgebraValidation validate_base_algebra(const BaseAlgebra& alg) {
  AlgebraValidation v;
  const int n = alg.dim();
  auto note = [&](bool& flag, const std::string& msg) {
    if (flag) v.violations.push_back(msg);
    flag = false;
  };
  std::vector<BaseVector> e;
  for (int i = 0; i < n; ++i) e.push_back(basis_vector(alg, i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k)
        if (!(alg.constant(i, j, k) == -alg.constant(j, i, k)))
          note(v.antisymmetric, "antisymmetry fails at (" + std::to_string(i) + "," +
                                    std::to_string(j) + "," + std::to_string(k) + ")");
      if (!(alg.form(i, j) == alg.form(j, i)))
        note(v.form_symmetric,
             "form not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const auto& x = e[static_cast<std::size_t>(i)];
        const auto& y = e[static_cast<std::size_t>(j)];
        const auto& z = e[static_cast<std::size_t>(k)];
        auto a = base_bracket(alg, x, base_bracket(alg, y, z));
        auto b = base_bracket(alg, y, base_bracket(alg, z, x));
        auto c = base_bracket(alg, z, base_bracket(alg, x, y));
        for (int m = 0; m < n; ++m) {
          const auto idx = static_cast<std::size_t>(m);
          if (!(a[idx] + b[idx] + c[idx]).is_zero()) {
            note(v.jacobi, "Jacobi fails on basis triple (" + std::to_string(i) + "," +
                               std::to_string(j) + "," + std::to_string(k) + ")");
            break;
          }
        }
        // <[x,y],z> + <y,[x,z]> = 0
        if (!(base_form(alg, base_bracket(alg, x, y), z) + base_form(alg, y, base_bracket(alg, x, z)))
                 .is_zero())
          note(v.form_invariant, "form not invariant on basis triple (" + std::to_string(i) + "," +
                                     std::to_string(j) + "," + std::to_string(k) + ")");
      }
  const bool abelian_kind = alg.kind() == AlgebraKind::abelian;
  if (abelian_kind != alg.bracket_is_zero())
    note(v.kind_consistent, "kind label disagrees with the bracket");
  return v;
}

}  // namespace km
