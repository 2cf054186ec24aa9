#include "km/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include "km/errors.hpp"

namespace km::io {

namespace {

std::string child(const std::string& pointer, const std::string& key) {
  std::string escaped;
  for (char ch : key) {
    if (ch == '~') {
      escaped += "~0";
    } else if (ch == '/') {
      escaped += "~1";
    } else {
      escaped += ch;
    }
  }
  return pointer + "/" + escaped;
}

std::string child(const std::string& pointer, std::size_t index) {
  return pointer + "/" + std::to_string(index);
}

json rational_json(const Rational& r) { return r.get_str(); }

Rational rational_from_json(const json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError(pointer, "non-finite number");
    return Rational(v);
  }
  if (j.is_string()) {
    try {
      Rational r(j.get<std::string>());
      if (r.get_den() == 0) throw SchemaError(pointer, "zero denominator");
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      throw SchemaError(pointer, "expected a rational \"p/q\", got \"" + j.get<std::string>() + "\"");
    }
  }
  throw SchemaError(pointer, "expected a number or \"p/q\" string");
}

double double_from_json(const json& j, const std::string& pointer) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return rational_from_json(j, pointer).get_d();
  throw SchemaError(pointer, "expected a number");
}

int int_from_key(const std::string& key, const std::string& pointer) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw SchemaError(pointer, "degree key must be a decimal integer");
  }
}

}  // namespace

const json& require(const json& j, const std::string& key, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(child(pointer, key), "missing required field");
  return *it;
}

json to_json(const Scalar& s) {
  if (s.is_exact()) {
    const auto& v = s.exact_value();
    return json::array({rational_json(v.re), rational_json(v.im)});
  }
  const auto z = s.float_value();
  return json::array({z.real(), z.imag()});
}

Scalar scalar_from_json(const json& j, Backend b, const std::string& pointer) {
  if (j.is_number() || j.is_string()) {
    if (b == Backend::exact) return Scalar::exact(rational_from_json(j, pointer));
    return Scalar::floating(double_from_json(j, pointer));
  }
  if (!j.is_array() || j.size() != 2) throw SchemaError(pointer, "expected [re, im]");
  if (b == Backend::exact)
    return Scalar::exact(rational_from_json(j[0], child(pointer, 0)),
                         rational_from_json(j[1], child(pointer, 1)));
  const double re = double_from_json(j[0], child(pointer, 0));
  const double im = double_from_json(j[1], child(pointer, 1));
  if (!std::isfinite(re) || !std::isfinite(im)) throw SchemaError(pointer, "non-finite value");
  return Scalar::floating(re, im);
}

json to_json(const LaurentPoly& p) {
  json out = json::object();
  for (const auto& [k, c] : p.coeffs()) out[std::to_string(k)] = to_json(c);
  return out;
}

LaurentPoly laurent_from_json(const json& j, Backend b, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object {\"degree\": [re, im]}");
  std::map<int, Scalar> coeffs;
  for (const auto& [key, value] : j.items()) {
    const std::string p = child(pointer, key);
    const int k = int_from_key(key, p);
    Scalar s = scalar_from_json(value, b, p);
    if (!s.is_zero()) coeffs.emplace(k, std::move(s));
  }
  return LaurentPoly(b, std::move(coeffs));
}

json to_json(const Loop& l) {
  json out = json::array();
  for (const auto& p : l) out.push_back(to_json(p));
  return out;
}

Loop loop_from_json(const json& j, Backend b, int dim, const std::string& pointer) {
  if (!j.is_array()) throw SchemaError(pointer, "expected an array of Laurent polynomials");
  if (static_cast<int>(j.size()) != dim)
    throw SchemaError(pointer, "expected " + std::to_string(dim) + " components, got " +
                                   std::to_string(j.size()));
  Loop out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(laurent_from_json(j[i], b, child(pointer, i)));
  return out;
}

json to_json(const KMElement& x) {
  return json{{"loop", to_json(x.loop)}, {"c", to_json(x.c)}, {"d", to_json(x.d)}};
}

KMElement km_from_json(const json& j, Backend b, int dim, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object {loop, c, d}");
  for (const auto& [key, value] : j.items())
    if (key != "loop" && key != "c" && key != "d")
      throw SchemaError(child(pointer, key), "unknown field");
  auto x = KMElement::zero(dim, b);
  if (j.contains("loop")) x.loop = loop_from_json(j["loop"], b, dim, child(pointer, "loop"));
  if (j.contains("c")) x.c = scalar_from_json(j["c"], b, child(pointer, "c"));
  if (j.contains("d")) x.d = scalar_from_json(j["d"], b, child(pointer, "d"));
  return x;
}

json to_json(const GroupElement& g) {
  return json{{"q", to_json(g.q)}, {"lam", to_json(g.lam)}, {"central", to_json(g.central)}};
}

GroupElement group_from_json(const json& j, Backend b, int dim, const std::string& pointer) {
  GroupElement g = GroupElement::identity(dim, b);
  if (!j.is_object()) throw SchemaError(pointer, "expected an object {q, lam, central}");
  if (j.contains("q")) g.q = scalar_from_json(j["q"], b, child(pointer, "q"));
  if (g.q.is_zero()) throw SchemaError(child(pointer, "q"), "q must be nonzero");
  if (j.contains("lam")) g.lam = loop_from_json(j["lam"], b, dim, child(pointer, "lam"));
  if (j.contains("central")) g.central = scalar_from_json(j["central"], b, child(pointer, "central"));
  return g;
}

json to_json(const BaseAlgebra& alg) {
  const int n = alg.dim();
  json c = json::array();
  json form = json::array();
  for (int i = 0; i < n; ++i) {
    json plane = json::array();
    json row = json::array();
    for (int j = 0; j < n; ++j) {
      json line = json::array();
      for (int k = 0; k < n; ++k) line.push_back(to_json(alg.constant(i, j, k)));
      plane.push_back(std::move(line));
      row.push_back(to_json(alg.form(i, j)));
    }
    c.push_back(std::move(plane));
    form.push_back(std::move(row));
  }
  json blocks = json::array();
  for (const auto& blk : alg.blocks())
    blocks.push_back({{"offset", blk.offset}, {"dim", blk.dim}, {"abelian", blk.abelian}, {"label", blk.label}});
  return json{{"dim", n}, {"c", c}, {"B", form}, {"kind", to_string(alg.kind())}, {"blocks", blocks}};
}

BaseAlgebra base_algebra_from_json(const json& j, const std::string& pointer) {
  if (j.is_string()) {
    try {
      return construct_base_algebra(parse_base_spec(j.get<std::string>()));
    } catch (const Error& e) {
      throw SchemaError(pointer, e.what());
    }
  }
  const json& dim_j = require(j, "dim", pointer);
  if (!dim_j.is_number_integer() || dim_j.get<int>() < 1)
    throw SchemaError(child(pointer, "dim"), "expected a positive integer");
  const int n = dim_j.get<int>();
  const auto un = static_cast<std::size_t>(n);

  const std::string cp = child(pointer, "c");
  const json& cj = require(j, "c", pointer);
  std::vector<Scalar> c;
  if (!cj.is_array() || cj.size() != un) throw SchemaError(cp, "expected dim x dim x dim array");
  for (std::size_t i = 0; i < un; ++i) {
    if (!cj[i].is_array() || cj[i].size() != un) throw SchemaError(child(cp, i), "expected dim x dim array");
    for (std::size_t jj = 0; jj < un; ++jj) {
      const json& line = cj[i][jj];
      const std::string lp = child(child(cp, i), jj);
      if (!line.is_array() || line.size() != un) throw SchemaError(lp, "expected dim entries");
      for (std::size_t k = 0; k < un; ++k) c.push_back(scalar_from_json(line[k], Backend::exact, child(lp, k)));
    }
  }
  const std::string bp = child(pointer, "B");
  const json& bj = require(j, "B", pointer);
  std::vector<Scalar> form;
  if (!bj.is_array() || bj.size() != un) throw SchemaError(bp, "expected dim x dim array");
  for (std::size_t i = 0; i < un; ++i) {
    if (!bj[i].is_array() || bj[i].size() != un) throw SchemaError(child(bp, i), "expected dim entries");
    for (std::size_t k = 0; k < un; ++k) form.push_back(scalar_from_json(bj[i][k], Backend::exact, child(child(bp, i), k)));
  }
  const json& kj = require(j, "kind", pointer);
  const std::string kp = child(pointer, "kind");
  if (!kj.is_string()) throw SchemaError(kp, "expected a string");
  AlgebraKind kind;
  const auto ks = kj.get<std::string>();
  if (ks == "abelian") {
    kind = AlgebraKind::abelian;
  } else if (ks == "semisimple") {
    kind = AlgebraKind::semisimple;
  } else if (ks == "reductive_product") {
    kind = AlgebraKind::reductive_product;
  } else {
    throw SchemaError(kp, "expected abelian, semisimple or reductive_product");
  }
  std::vector<Block> blocks;
  if (j.contains("blocks")) {
    const std::string blp = child(pointer, "blocks");
    if (!j["blocks"].is_array()) throw SchemaError(blp, "expected an array");
    for (std::size_t i = 0; i < j["blocks"].size(); ++i) {
      const json& bl = j["blocks"][i];
      const std::string p = child(blp, i);
      Block blk;
      try {
        blk.offset = require(bl, "offset", p).get<int>();
        blk.dim = require(bl, "dim", p).get<int>();
        blk.abelian = require(bl, "abelian", p).get<bool>();
        blk.label = bl.value("label", std::string{});
      } catch (const json::exception& e) {
        throw SchemaError(p, e.what());
      }
      if (blk.offset < 0 || blk.dim < 1 || blk.offset + blk.dim > n)
        throw SchemaError(p, "block outside the basis range");
      blocks.push_back(std::move(blk));
    }
  } else if (kind == AlgebraKind::reductive_product) {
    throw SchemaError(child(pointer, "blocks"), "a reductive product needs its block structure");
  }
  try {
    return BaseAlgebra(n, std::move(c), std::move(form), kind, std::move(blocks));
  } catch (const Error& e) {
    throw SchemaError(pointer, e.what());
  }
}

json to_json(const OsakaReport& r) {
  json factors = json::array();
  for (const auto& f : r.factors)
    factors.push_back({{"label", f.label}, {"abelian", f.abelian}, {"fixed_real_dim", f.real_dim}});
  return json{{"conditions", {{"1", r.condition1}, {"2", r.condition2}, {"3", r.condition3}}},
              {"irreducible", r.irreducible},
              {"window", r.window},
              {"factors", factors},
              {"witnesses", r.witnesses}};
}

json to_json(const MetricIndex& m) {
  return json{{"index", {{"neg", m.neg}, {"zero", m.zero}, {"pos", m.pos}}},
              {"eigenvalues", m.eigenvalues}};
}

json to_json(const IsoCertificate& c) {
  return json{{"ok", c.ok()},
              {"pairs_checked", c.pairs_checked},
              {"relation_holds", c.relation_holds},
              {"homomorphism", c.homomorphism},
              {"derived_excludes_d", c.derived_excludes_d},
              {"derived_excludes_zero_mode", c.derived_excludes_zero_mode},
              {"derived_rank", c.derived_rank},
              {"expected_rank", c.expected_rank},
              {"failures", c.failures}};
}

json to_json(const L1LinfCertificate& c) {
  json out{{"certified", c.certified},
           {"n_max", c.n_max},
           {"checks", c.checks},
           {"upper", {{"r", c.r_upper}, {"C", c.C_upper}}},
           {"lower", {{"r", c.r_lower}, {"C", c.C_lower}}}};
  if (c.counterexample) out["counterexample"] = *c.counterexample;
  return out;
}

json to_json(const TameFit& f) {
  json out{{"r", f.r},
           {"b", f.b},
           {"n", f.n_values},
           {"C", f.C},
           {"certified", f.certified},
           {"label", f.label},
           {"notes", f.notes}};
  if (std::isfinite(f.residual)) {
    out["residual"] = f.residual;
  } else {
    out["residual"] = nullptr;
  }
  if (f.symbolic_bound) {
    out["symbolic_bound"] = *f.symbolic_bound;
    out["symbolic_bound_holds"] = f.symbolic_bound_holds;
  }
  return out;
}

std::string provenance_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::string trajectory_jsonl(const BaseAlgebra& alg, const KMElement& x,
                             const std::vector<Scalar>& times) {
  std::ostringstream os;
  for (const auto& t : times)
    os << json{{"t", to_json(t)}, {"g", to_json(geodesic(alg, x, t))}}.dump() << '\n';
  return os.str();
}

}  // namespace km::io
