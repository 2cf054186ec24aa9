#include "km/tame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "km/errors.hpp"
#include "km/random.hpp"

namespace km {

SeqNorms seq_norms(const GradedSequence& s, int n) {
  SeqNorms out{0.0, 0.0};
  for (std::size_t k = 0; k < s.entries.size(); ++k) {
    const double v = s.entries[k];
    if (!std::isfinite(v) || v < 0.0)
      throw DomainError("graded sequence entry " + std::to_string(k) + " must be finite and >= 0");
    const double w = std::exp(static_cast<double>(n) * static_cast<double>(k)) * v;
    out.l1 += w;
    out.linf = std::max(out.linf, w);
  }
  return out;
}

L1LinfCertificate check_l1_linf_equivalence(const GradedSequence& s, int n_max) {
  L1LinfCertificate cert;
  cert.n_max = n_max;
  cert.C_lower = 1.0 / (1.0 - std::exp(-1.0));
  constexpr double slack = 1e-12;
  for (int n = 0; n <= n_max; ++n) {
    const SeqNorms here = seq_norms(s, n);
    const SeqNorms next = seq_norms(s, n + 1);
    cert.checks += 2;
    if (here.linf > cert.C_upper * here.l1 * (1 + slack)) {
      cert.certified = false;
      cert.counterexample = "n=" + std::to_string(n) + ": linf " + std::to_string(here.linf) +
                            " > l1 " + std::to_string(here.l1);
      return cert;
    }
    if (here.l1 > cert.C_lower * next.linf * (1 + slack)) {
      cert.certified = false;
      cert.counterexample = "n=" + std::to_string(n) + ": l1 " + std::to_string(here.l1) +
                            " > C * linf(n+1) " + std::to_string(cert.C_lower * next.linf);
      return cert;
    }
  }
  return cert;
}

double km_grading_norm(const KMElement& x, double n) {
  double sum = x.c.abs() + x.d.abs();
  for (const auto& p : x.loop) sum += lp_coefficient_norm(p, n);
  return sum;
}

const char* to_string(TameMapKind k) {
  switch (k) {
    case TameMapKind::zero:
      return "zero";
    case TameMapKind::d_action:
      return "d-action";
    case TameMapKind::multiply:
      return "multiply";
    case TameMapKind::ad:
      return "ad";
  }
  return "?";
}

TameMapKind parse_tame_map(const std::string& text) {
  if (text == "zero") return TameMapKind::zero;
  if (text == "d-action") return TameMapKind::d_action;
  if (text == "multiply") return TameMapKind::multiply;
  if (text == "ad") return TameMapKind::ad;
  throw PreconditionError("unknown map '" + text + "' (expected zero, d-action, multiply, ad)");
}

KMElement apply_tame_map(const BaseAlgebra& alg, const TameMap& map, const KMElement& f) {
  const Backend b = f.backend();
  switch (map.kind) {
    case TameMapKind::zero:
      return KMElement::zero(f.dim(), b);
    case TameMapKind::d_action:
      return km_bracket(alg, KMElement::derivation(f.dim(), b), f);
    case TameMapKind::multiply: {
      auto out = KMElement::zero(f.dim(), b);
      const LaurentPoly p = map.poly.convert(b);
      for (std::size_t i = 0; i < f.loop.size(); ++i) out.loop[i] = lp_multiply(f.loop[i], p);
      return out;
    }
    case TameMapKind::ad:
      return km_bracket(alg, map.x.convert(b), f);
  }
  throw PreconditionError("unknown tame map");
}

namespace {

struct Sample {
  std::vector<KMElement> inputs;
  std::vector<KMElement> outputs;
};

std::vector<KMElement> basis_probes(int dim, int window) {
  std::vector<KMElement> probes;
  for (int i = 0; i < dim; ++i)
    for (int k = -window; k <= window; ++k)
      probes.push_back(KMElement::loop_monomial(dim, i, k, Scalar::one(Backend::floating)));
  return probes;
}

std::vector<KMElement> random_inputs(int dim, int window, int trials, std::uint64_t seed) {
  Sampler s(seed);
  static constexpr double alphas[] = {0.5, 1.0, 2.0};
  std::vector<KMElement> out;
  for (int t = 0; t < trials; ++t) {
    auto x = KMElement::zero(dim, Backend::floating);
    x.loop = s.loop(dim, window, Backend::floating, 0.7, alphas[t % 3]);
    out.push_back(std::move(x));
  }
  return out;
}

Sample evaluate(const BaseAlgebra& alg, const TameMap& map, std::vector<KMElement> inputs) {
  Sample s;
  for (auto& x : inputs) {
    s.outputs.push_back(apply_tame_map(alg, map, x));
    s.inputs.push_back(std::move(x));
  }
  return s;
}

// max over [from, to) of ||phi f||_n / ||f||_{n+r}; inputs of zero norm are skipped.
double ratio_max(const Sample& s, std::size_t from, std::size_t to, int n, int r, bool& any) {
  double best = 0.0;
  for (std::size_t t = from; t < to; ++t) {
    const double den = km_grading_norm(s.inputs[t], n + r);
    if (den == 0.0) continue;
    any = true;
    best = std::max(best, km_grading_norm(s.outputs[t], n) / den);
  }
  return best;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

TameFit tame_fit(const BaseAlgebra& alg, const TameMap& map, const TameFitOptions& opts) {
  if (opts.window < 1) throw DomainError("window must be at least 1");
  if (opts.trials < 2) throw DomainError("tame_fit needs at least 2 trials");
  if (opts.n_values.empty()) throw DomainError("empty n range");
  for (int n : opts.n_values)
    if (n < 0) throw DomainError("grading index n must be nonnegative");
  const int dim = alg.dim();
  TameFit fit;
  fit.n_values = opts.n_values;

  const Sample probes = evaluate(alg, map, basis_probes(dim, opts.window));
  const Sample probes_wide = evaluate(alg, map, basis_probes(dim, 2 * opts.window));
  const Sample train = evaluate(alg, map, random_inputs(dim, opts.window, opts.trials, opts.seed));
  const std::size_t warmup = train.inputs.size() / 2;

  for (int r = 0; r <= opts.max_r && fit.r < 0; ++r) {
    std::vector<double> table;
    bool stable = true;
    bool any = false;
    for (int n : opts.n_values) {
      const double c_probe = ratio_max(probes, 0, probes.inputs.size(), n, r, any);
      const double c_warm = ratio_max(train, 0, warmup, n, r, any);
      const double c_all = ratio_max(train, 0, train.inputs.size(), n, r, any);
      const double c = std::max({c_probe, c_all});
      const double c_wide = ratio_max(probes_wide, 0, probes_wide.inputs.size(), n, r, any);
      if (!any) throw DegenerateError("every tame_fit input has zero norm");
      const bool window_stable = c_wide <= c * (1.0 + opts.growth_tolerance) || c_wide == 0.0;
      const bool trials_stable = c_all <= std::max(c_probe, c_warm) * (1.0 + 1e-12);
      if (!std::isfinite(c) || !window_stable || !trials_stable) {
        stable = false;
        fit.notes.push_back("r=" + std::to_string(r) + ", n=" + std::to_string(n) +
                            ": C=" + format_double(c) + " grows to " + format_double(c_wide) +
                            " when the window doubles");
        break;
      }
      table.push_back(c);
    }
    if (stable) {
      fit.r = r;
      fit.C = std::move(table);
    }
  }
  if (fit.r < 0) {
    fit.residual = std::numeric_limits<double>::infinity();
    fit.notes.push_back("no r <= " + std::to_string(opts.max_r) + " is stable");
    return fit;
  }

  // Fresh validation sample of equal size.
  const Sample validate = evaluate(
      alg, map, random_inputs(dim, opts.window, opts.trials, opts.seed ^ 0x9e3779b97f4a7c15ULL));
  double residual = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < opts.n_values.size(); ++j) {
    const int n = opts.n_values[j];
    for (std::size_t t = 0; t < validate.inputs.size(); ++t) {
      const double den = km_grading_norm(validate.inputs[t], n + fit.r);
      if (den == 0.0) continue;
      const double lhs = km_grading_norm(validate.outputs[t], n);
      const double bound = fit.C[j] * den;
      const double violation = bound > 0.0 ? lhs / bound - 1.0 : (lhs > 0.0 ? 1.0 : -1.0);
      residual = std::max(residual, violation);
    }
  }
  fit.residual = residual;
  fit.certified = residual <= 1e-12;

  switch (map.kind) {
    case TameMapKind::zero:
      fit.symbolic_bound = "C(n) = 0 with r = 0";
      for (double c : fit.C) fit.symbolic_bound_holds = fit.symbolic_bound_holds && c == 0.0;
      break;
    case TameMapKind::d_action:
      fit.symbolic_bound =
          "|k| e^{n|k|} <= e^{(n+1)|k|} gives ||[d,f]||_n <= ||f||_{n+1}: r = 1, C(n) <= 1";
      if (fit.r == 1)
        for (double c : fit.C) fit.symbolic_bound_holds = fit.symbolic_bound_holds && c <= 1.0;
      break;
    case TameMapKind::multiply: {
      fit.symbolic_bound = "e^{n|k+m|} <= e^{n|k|} e^{n|m|} gives C(n) <= ||p||_n with r = 0";
      if (fit.r == 0)
        for (std::size_t j = 0; j < fit.C.size(); ++j)
          fit.symbolic_bound_holds =
              fit.symbolic_bound_holds &&
              fit.C[j] <= lp_coefficient_norm(map.poly, fit.n_values[j]) * (1.0 + 1e-12);
      break;
    }
    case TameMapKind::ad:
      break;
  }
  return fit;
}

}  // namespace km
