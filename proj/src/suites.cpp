#include "km/suites.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "km/errors.hpp"
#include "km/geometry.hpp"
#include "km/group.hpp"
#include "km/heisenberg.hpp"
#include "km/random.hpp"
#include "km/tame.hpp"

namespace km {

void SuiteReport::fail(std::size_t case_index, std::string witness) {
  ++failure_count;
  if (failures.size() < 10) failures.push_back({case_index, std::move(witness)});
}

io::json SuiteReport::to_json(bool with_timing) const {
  io::json fs = io::json::array();
  for (const auto& f : failures) fs.push_back({{"case", f.case_index}, {"witness", f.witness}});
  io::json out{{"suite", name},
               {"cases", cases},
               {"passed", passed()},
               {"failure_count", failure_count},
               {"failures", fs},
               {"details", details}};
  if (with_timing) out["wall_time_s"] = wall_time_s;
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"jacobi",    "cocycle",   "invariance",
                                              "flatness",  "heisenberg", "classify",
                                              "signature", "group",     "tame"};
  return names;
}

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  explicit Timer(SuiteReport& r) : report_(r), start_(Clock::now()) {}
  ~Timer() { report_.wall_time_s = std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  SuiteReport& report_;
  Clock::time_point start_;
};

BaseAlgebra make_base(const SuiteConfig& cfg) { return construct_base_algebra(parse_base_spec(cfg.base)); }

SuiteReport make_report(std::string name) {
  SuiteReport r;
  r.name = std::move(name);
  return r;
}

double size_of(const KMElement& x) { return km_grading_norm(x, 0.0); }

/// Exactly zero on the rational backend; below 1e-9 * scale on floats.
bool vanishes(const KMElement& x, double scale) {
  if (x.backend() == Backend::exact) return x.is_zero();
  return size_of(x) <= 1e-9 * std::max(1.0, scale);
}

bool vanishes(const Scalar& s, double scale) {
  if (s.is_exact()) return s.is_zero();
  return s.abs() <= 1e-9 * std::max(1.0, scale);
}

std::string triple(const KMElement& x, const KMElement& y, const KMElement& z) {
  return "X = " + describe(x) + "; Y = " + describe(y) + "; Z = " + describe(z);
}

std::vector<KMElement> terms_of(const KMElement& x) {
  std::vector<KMElement> out;
  const int dim = x.dim();
  for (int i = 0; i < dim; ++i)
    for (const auto& [k, a] : x.loop[static_cast<std::size_t>(i)].coeffs())
      out.push_back(KMElement::loop_monomial(dim, i, k, a));
  if (!x.c.is_zero()) out.push_back(KMElement::central(dim, x.backend()) * x.c);
  if (!x.d.is_zero()) out.push_back(KMElement::derivation(dim, x.backend()) * x.d);
  return out;
}

/// For a check that is linear in each slot, a failing triple has a failing
/// triple of single terms; find one slot at a time.
template <class Fails>
std::array<KMElement, 3> shrink(std::array<KMElement, 3> t, Fails fails) {
  for (std::size_t slot = 0; slot < 3; ++slot)
    for (const auto& term : terms_of(t[slot])) {
      auto candidate = t;
      candidate[slot] = term;
      if (fails(candidate)) {
        t = std::move(candidate);
        break;
      }
    }
  return t;
}

void require_abelian(const BaseAlgebra& alg, const std::string& suite) {
  if (!alg.bracket_is_zero())
    throw PreconditionError("the " + suite + " suite needs an abelian base algebra");
}

std::string loop_text(const Loop& l) { return describe(KMElement::from_loop(l)); }

std::string group_text(const GroupElement& g) {
  return "(q = " + g.q.to_string() + ", lam = " + loop_text(g.lam) + ", central = " +
         g.central.to_string() + ")";
}

}  // namespace

SuiteReport run_jacobi(const SuiteConfig& cfg) {
  SuiteReport rep = make_report("jacobi");
  Timer timer(rep);
  const BaseAlgebra alg = make_base(cfg);
  Sampler s(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    const auto x = s.km_element(alg.dim(), cfg.window, cfg.backend);
    const auto y = s.km_element(alg.dim(), cfg.window, cfg.backend);
    const auto z = s.km_element(alg.dim(), cfg.window, cfg.backend);
    auto jacobi = [&](const std::array<KMElement, 3>& v) {
      return km_bracket(alg, v[0], km_bracket(alg, v[1], v[2])) +
             km_bracket(alg, v[1], km_bracket(alg, v[2], v[0])) +
             km_bracket(alg, v[2], km_bracket(alg, v[0], v[1]));
    };
    auto fails = [&](const std::array<KMElement, 3>& v) {
      return !vanishes(jacobi(v), size_of(v[0]) * size_of(v[1]) * size_of(v[2]));
    };
    ++rep.cases;
    if (fails({x, y, z})) {
      const auto m = shrink({x, y, z}, fails);
      rep.fail(static_cast<std::size_t>(t), "Jacobi sum " + describe(jacobi(m)) + " for " + triple(m[0], m[1], m[2]));
    }
    const KMElement anti = km_bracket(alg, x, y) + km_bracket(alg, y, x);
    if (!vanishes(anti, size_of(x) * size_of(y)))
      rep.fail(static_cast<std::size_t>(t), "[X,Y] + [Y,X] = " + describe(anti));
  }
  rep.details = {{"base", cfg.base}, {"window", cfg.window}, {"backend", to_string(cfg.backend)}};
  return rep;
}

SuiteReport run_cocycle(const SuiteConfig& cfg) {
  SuiteReport rep = make_report("cocycle");
  Timer timer(rep);
  const BaseAlgebra alg = make_base(cfg);
  Sampler s(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    const Loop f = s.loop(alg.dim(), cfg.window, cfg.backend);
    const Loop g = s.loop(alg.dim(), cfg.window, cfg.backend);
    const Loop h = s.loop(alg.dim(), cfg.window, cfg.backend);
    const Scalar cyc = cocycle(alg, loop_bracket(alg, f, g), h) +
                       cocycle(alg, loop_bracket(alg, g, h), f) +
                       cocycle(alg, loop_bracket(alg, h, f), g);
    const Scalar anti = cocycle(alg, f, g) + cocycle(alg, g, f);
    ++rep.cases;
    const double scale = size_of(KMElement::from_loop(f)) * size_of(KMElement::from_loop(g)) *
                         size_of(KMElement::from_loop(h)) * (1 + cfg.window);
    if (!vanishes(cyc, scale))
      rep.fail(static_cast<std::size_t>(t), "cyclic sum " + cyc.to_string() + " for f = " +
                                                loop_text(f) + "; g = " + loop_text(g) + "; h = " + loop_text(h));
    if (!vanishes(anti, scale))
      rep.fail(static_cast<std::size_t>(t), "omega(f,g) + omega(g,f) = " + anti.to_string());
  }
  rep.details = {{"base", cfg.base}, {"window", cfg.window}, {"backend", to_string(cfg.backend)}};
  return rep;
}

SuiteReport run_invariance(const SuiteConfig& cfg) {
  SuiteReport rep = make_report("invariance");
  Timer timer(rep);
  const BaseAlgebra alg = make_base(cfg);
  const int dim = alg.dim();
  const Backend b = cfg.backend;
  Sampler s(cfg.seed);
  auto cd_only = [&] {
    auto x = KMElement::zero(dim, b);
    x.c = s.scalar(b);
    x.d = s.scalar(b);
    return x;
  };
  for (int t = 0; t < cfg.trials; ++t) {
    KMElement z = s.km_element(dim, cfg.window, b);
    KMElement x = s.km_element(dim, cfg.window, b);
    KMElement y = s.km_element(dim, cfg.window, b);
    switch (t % 4) {
      case 1:
        z = KMElement::derivation(dim, b);
        break;
      case 2:
        x = cd_only();
        break;
      case 3:
        y = cd_only();
        z = KMElement::derivation(dim, b) + KMElement::central(dim, b);
        break;
      default:
        break;
    }
    auto defect = [&](const std::array<KMElement, 3>& a) {
      return km_metric(alg, km_bracket(alg, a[2], a[0]), a[1]) + km_metric(alg, a[0], km_bracket(alg, a[2], a[1]));
    };
    auto fails = [&](const std::array<KMElement, 3>& a) {
      return !vanishes(defect(a), size_of(a[0]) * size_of(a[1]) * size_of(a[2]) * (1 + cfg.window));
    };
    ++rep.cases;
    if (fails({x, y, z})) {
      const auto m = shrink({x, y, z}, fails);
      rep.fail(static_cast<std::size_t>(t), "<[Z,X],Y> + <X,[Z,Y]> = " + defect(m).to_string() + " for " + triple(m[0], m[1], m[2]));
    }
    const Scalar sym = km_metric(alg, x, y) - km_metric(alg, y, x);
    if (!vanishes(sym, size_of(x) * size_of(y)))
      rep.fail(static_cast<std::size_t>(t), "metric not symmetric: " + sym.to_string());
  }
  rep.details = {{"base", cfg.base}, {"window", cfg.window}, {"backend", to_string(cfg.backend)}};
  return rep;
}

SuiteReport run_flatness(const SuiteConfig& cfg) {
  SuiteReport rep = make_report("flatness");
  Timer timer(rep);
  const BaseAlgebra alg = make_base(cfg);
  Sampler s(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    const auto g = s.km_element(alg.dim(), cfg.window, cfg.backend, true, false);
    const auto h = s.km_element(alg.dim(), cfg.window, cfg.backend, true, false);
    const auto k = s.km_element(alg.dim(), cfg.window, cfg.backend, true, false);
    auto fails = [&](const std::array<KMElement, 3>& v) {
      return !vanishes(curvature(alg, v[0], v[1], v[2]), size_of(v[0]) * size_of(v[1]) * size_of(v[2]));
    };
    ++rep.cases;
    if (fails({g, h, k})) {
      if (rep.failures.size() < 10) {
        const auto m = shrink({g, h, k}, fails);
        rep.fail(static_cast<std::size_t>(t), "R{g,h,k} = " + describe(curvature(alg, m[0], m[1], m[2])) +
                                                  " for g = " + describe(m[0]) + "; h = " + describe(m[1]) +
                                                  "; k = " + describe(m[2]));
      } else {
        rep.fail(static_cast<std::size_t>(t), "");
      }
    }
  }
  rep.details = {{"base", cfg.base},
                 {"window", cfg.window},
                 {"type", to_string(classify_km_type(alg).label)},
                 {"backend", to_string(cfg.backend)}};
  return rep;
}

SuiteReport run_heisenberg(const SuiteConfig& cfg) {
  SuiteReport rep = make_report("heisenberg");
  Timer timer(rep);
  const BaseAlgebra alg = make_base(cfg);
  require_abelian(alg, "heisenberg");
  const int k = alg.dim();
  io::json certs = io::json::object();
  for (Epsilon eps : {Epsilon::one, Epsilon::i}) {
    const auto iso = derived_algebra_iso(alg, cfg.window, eps, Backend::exact);
    ++rep.cases;
    certs[to_string(eps)] = io::to_json(iso.certificate);
    if (!iso.certificate.ok())
      rep.fail(rep.cases, std::string("derived algebra certificate, eps = ") + to_string(eps) + ": " +
                              (iso.certificate.failures.empty() ? "rank mismatch" : iso.certificate.failures.front()));
  }

  // Heisenberg bracket axioms on random elements.
  Sampler s(cfg.seed);
  auto random_h = [&](Epsilon eps) {
    auto h = HeisenbergElement::zero(k, eps, Backend::exact);
    for (int i = 0; i < k; ++i)
      for (int n = -cfg.window; n <= cfg.window; ++n)
        if (n != 0 && s.unit() < 0.5) h.add_mode(n, i, s.exact_scalar());
    h.central = s.exact_scalar();
    return h;
  };
  const int trials = std::max(1, cfg.trials / 10);
  for (int t = 0; t < trials; ++t) {
    const Epsilon eps = t % 2 ? Epsilon::i : Epsilon::one;
    const auto x = random_h(eps), y = random_h(eps), z = random_h(eps);
    ++rep.cases;
    const auto anti = heisenberg_bracket(x, y) + heisenberg_bracket(y, x);
    if (!anti.is_zero()) rep.fail(rep.cases, "Heisenberg bracket not antisymmetric");
    const auto jac = heisenberg_bracket(x, heisenberg_bracket(y, z)) +
                     heisenberg_bracket(y, heisenberg_bracket(z, x)) +
                     heisenberg_bracket(z, heisenberg_bracket(x, y));
    if (!jac.is_zero()) rep.fail(rep.cases, "Heisenberg Jacobi sum nonzero");
    const auto lin = heisenberg_bracket(x + y * Scalar::exact(2), z) +
                     heisenberg_bracket(x, z) * Scalar::exact(-1) +
                     heisenberg_bracket(y, z) * Scalar::exact(-2);
    if (!lin.is_zero()) rep.fail(rep.cases, "Heisenberg bracket not bilinear");
  }

  // Involutions and OSAKA conditions.
  const int w = std::min(cfg.window, 4);
  io::json osaka = io::json::object();
  const auto neg = check_involution(negation_involution(alg), alg, w);
  const auto circ = check_involution(circle_conjugation(alg, -1), alg, w);
  rep.cases += 2;
  if (!neg.ok()) rep.fail(rep.cases, "negation preset not certified: " + neg.witness.value_or(""));
  if (!circ.ok()) rep.fail(rep.cases, "circle conjugation preset not certified: " + circ.witness.value_or(""));
  if (neg.ok()) {
    const auto report = osaka_validate(alg, neg.certified, w);
    osaka = io::to_json(report);
    ++rep.cases;
    if (!report.condition1 || !report.condition2 || !report.condition3)
      rep.fail(rep.cases, "OSAKA conditions fail for the negation preset");
    ++rep.cases;
    if (report.irreducible != (k == 1))
      rep.fail(rep.cases, "irreducibility verdict " + std::string(report.irreducible ? "irreducible" : "reducible") +
                              " for dimension " + std::to_string(k));
  }
  rep.details = {{"base", cfg.base}, {"window", cfg.window}, {"certificates", certs}, {"osaka", osaka}};
  return rep;
}

SuiteReport run_classify(const SuiteConfig& cfg) {
  SuiteReport rep = make_report("classify");
  Timer timer(rep);
  const BaseAlgebra alg = make_base(cfg);
  require_abelian(alg, "classify");
  const int w = std::min(cfg.window, 4);
  const auto h1 = heisenberg_real_form(alg, Epsilon::one, w, cfg.backend);
  const auto hi = heisenberg_real_form(alg, Epsilon::i, w, cfg.backend);
  const auto t1 = classify_real_form(alg, h1);
  const auto ti = classify_real_form(alg, hi);
  rep.cases += 2;
  if (t1 != RealFormType::noncompact) rep.fail(1, "H_{k,1} + Rd classified compact");
  if (ti != RealFormType::compact) rep.fail(2, "H_{k,i} + iRd classified noncompact");

  // Mixed span: real and imaginary central outputs at once.
  const int dim = alg.dim();
  const Backend b = cfg.backend;
  const Scalar one = Scalar::one(b), i_unit = Scalar::imaginary_unit(b);
  std::vector<KMElement> mixed{KMElement::loop_monomial(dim, 0, 1, one),
                               KMElement::loop_monomial(dim, 0, -1, one),
                               KMElement::loop_monomial(dim, 0, 2, i_unit),
                               KMElement::loop_monomial(dim, 0, -2, one),
                               KMElement::central(dim, b),
                               KMElement::central(dim, b) * i_unit};
  ++rep.cases;
  std::string mixed_verdict = "no error";
  try {
    classify_real_form(alg, mixed);
    rep.fail(3, "mixed span was classified instead of rejected");
  } catch (const MixedTypeError& e) {
    mixed_verdict = e.what();
  }

  // Real rescaling leaves the type unchanged.
  Sampler s(cfg.seed);
  const int trials = std::max(1, cfg.trials / 20);
  for (int t = 0; t < trials; ++t) {
    auto scaled1 = h1, scaledi = hi;
    for (auto& x : scaled1) x *= s.exact_scalar().real_part().convert(b) + Scalar::integer(6, b);
    for (auto& x : scaledi) x *= Scalar::integer(s.integer(1, 9) * (s.unit() < 0.5 ? -1 : 1), b);
    ++rep.cases;
    if (classify_real_form(alg, scaled1) != t1 || classify_real_form(alg, scaledi) != ti)
      rep.fail(rep.cases, "type changed under real rescaling");
  }
  rep.details = {{"base", cfg.base},
                 {"window", w},
                 {"H_k1_Rd", to_string(t1)},
                 {"H_ki_iRd", to_string(ti)},
                 {"mixed", mixed_verdict}};
  return rep;
}

SuiteReport run_signature(const SuiteConfig& cfg) {
  SuiteReport rep = make_report("signature");
  Timer timer(rep);
  const BaseAlgebra alg = make_base(cfg);
  require_abelian(alg, "signature");
  const bool compact = cfg.realform == "compact";
  if (!compact && cfg.realform != "noncompact")
    throw PreconditionError("realform must be compact or noncompact");
  const Backend b = cfg.backend;
  const auto loops = heisenberg_real_form(alg, compact ? Epsilon::i : Epsilon::one, cfg.window, b, false);
  const auto full = metric_index(alg, {cfg.window, true}, loops);
  const auto cd = metric_index(alg, {cfg.window, true}, {});
  const auto loop_only = metric_index(alg, {cfg.window, false}, loops);

  rep.cases = 3;
  // Each pair z^n, z^-n spans a hyperbolic plane in the non-compact form.
  const int expected_neg = compact ? 1 : alg.dim() * cfg.window + 1;
  if (full.neg != expected_neg || full.zero != 0)
    rep.fail(1, "index " + std::to_string(full.neg) + " (zero " + std::to_string(full.zero) +
                    "), expected " + std::to_string(expected_neg));
  if (cd.neg != 1 || cd.zero != 0 || cd.pos != 1 || cd.eigenvalues.size() != 2 ||
      cd.eigenvalues[0] != -1.0 || cd.eigenvalues[1] != 1.0)
    rep.fail(2, "{c,d} block is not (1,0,1) with eigenvalues -1, 1");
  const int expected_loop_neg = compact ? 0 : alg.dim() * cfg.window;
  if (loop_only.neg != expected_loop_neg || loop_only.zero != 0)
    rep.fail(3, "loop block index " + std::to_string(loop_only.neg) + ", expected " +
                    std::to_string(expected_loop_neg));
  rep.details = {{"base", cfg.base},
                 {"realform", cfg.realform},
                 {"window", cfg.window},
                 {"with_cd", io::to_json(full)},
                 {"cd_only", io::to_json(cd)},
                 {"loops_only", io::to_json(loop_only)}};
  return rep;
}

namespace {

bool group_near(const GroupElement& a, const GroupElement& b, double tol) {
  if (a.dim() != b.dim()) return false;
  double scale = 1.0;
  double err = std::abs(a.q.to_complex() - b.q.to_complex()) + std::abs(a.central.to_complex() - b.central.to_complex());
  scale = std::max({scale, std::abs(a.central.to_complex()), std::abs(b.central.to_complex())});
  for (std::size_t i = 0; i < a.lam.size(); ++i) {
    const LaurentPoly diff = a.lam[i].convert(Backend::floating) - b.lam[i].convert(Backend::floating);
    err += lp_coefficient_norm(diff, 0);
    scale = std::max(scale, lp_coefficient_norm(a.lam[i].convert(Backend::floating), 0));
  }
  return err <= tol * scale;
}

Scalar exact_q(Sampler& s) {
  static const long nums[][2] = {{1, 1}, {-1, 1}, {2, 1}, {1, 2}, {-3, 2}};
  const auto pick = s.integer(0, 6);
  if (pick == 5) return Scalar::imaginary_unit(Backend::exact);
  if (pick == 6) return -Scalar::imaginary_unit(Backend::exact);
  return Scalar::rational(nums[pick][0], nums[pick][1], Backend::exact);
}

// Coordinates (Log q, lam coefficients in the window, central) of a group element.
std::vector<std::complex<double>> chart(const GroupElement& g, int window) {
  std::vector<std::complex<double>> v{std::log(g.q.to_complex())};
  for (const auto& p : g.lam)
    for (int k = -window; k <= window; ++k) v.push_back(p.coeff(k).to_complex());
  v.push_back(g.central.to_complex());
  return v;
}

GroupElement unchart(const std::vector<std::complex<double>>& v, int dim, int window) {
  GroupElement g = GroupElement::identity(dim, Backend::floating);
  g.q = Scalar::floating(std::exp(v[0]));
  std::size_t at = 1;
  for (int i = 0; i < dim; ++i)
    for (int k = -window; k <= window; ++k) g.lam[static_cast<std::size_t>(i)].set_coeff(k, Scalar::floating(v[at++]));
  g.central = Scalar::floating(v[at]);
  return g;
}

}  // namespace

SuiteReport run_group(const SuiteConfig& cfg) {
  SuiteReport rep = make_report("group");
  Timer timer(rep);
  const BaseAlgebra alg = make_base(cfg);
  require_abelian(alg, "group");
  const int dim = alg.dim();
  const int w = cfg.window;
  Sampler s(cfg.seed);
  const Scalar half = Scalar::rational(1, 2, Backend::floating);

  // Group axioms, bit-exact.
  int assoc_fail = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    GroupElement a = s.group_element(dim, w, Backend::exact);
    GroupElement b = s.group_element(dim, w, Backend::exact);
    GroupElement c = s.group_element(dim, w, Backend::exact);
    a.q = exact_q(s);
    b.q = exact_q(s);
    c.q = exact_q(s);
    ++rep.cases;
    const auto left = group_multiply(alg, group_multiply(alg, a, b), c);
    const auto right = group_multiply(alg, a, group_multiply(alg, b, c));
    if (!(left == right)) {
      ++assoc_fail;
      rep.fail(rep.cases, "associativity: A = " + group_text(a) + ", B = " + group_text(b) + ", C = " + group_text(c));
    }
    const auto e = GroupElement::identity(dim, Backend::exact);
    if (!(group_multiply(alg, e, a) == a) || !(group_multiply(alg, a, e) == a))
      rep.fail(rep.cases, "identity law fails for " + group_text(a));
    if (!(group_multiply(alg, a, group_inverse(alg, a)) == e) || !(group_multiply(alg, group_inverse(alg, a), a) == e))
      rep.fail(rep.cases, "inverse law fails for " + group_text(a));
  }

  // BCH oracle on q = 1 elements (2-step nilpotent: the degree-4 series is exact).
  double bch_max = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    GroupElement a = s.group_element(dim, w, Backend::floating);
    GroupElement b = s.group_element(dim, w, Backend::floating);
    a.q = b.q = Scalar::one(Backend::floating);
    KMElement x = KMElement::from_loop(a.lam), y = KMElement::from_loop(b.lam);
    x.c = a.central;
    y.c = b.central;
    const KMElement xy = km_bracket(alg, x, y);
    const KMElement series = x + y + xy * half +
                             (km_bracket(alg, x, xy) + km_bracket(alg, y, km_bracket(alg, y, x))) *
                                 Scalar::floating(1.0 / 12.0) -
                             km_bracket(alg, y, km_bracket(alg, x, xy)) * Scalar::floating(1.0 / 24.0);
    const GroupElement via_series = group_exp(alg, series);
    const GroupElement product = group_multiply(alg, a, b);
    ++rep.cases;
    const double err = std::abs(via_series.central.to_complex() - product.central.to_complex());
    bch_max = std::max(bch_max, err);
    if (!group_near(via_series, product, 1e-10))
      rep.fail(rep.cases, "BCH series differs from the product: " + group_text(via_series) + " vs " + group_text(product));
  }

  // exp/log roundtrips on the principal domain.
  double roundtrip_max = 0.0;
  const int rt_trials = std::max(1, cfg.trials / 5);
  for (int t = 0; t < rt_trials; ++t) {
    auto x = KMElement::zero(dim, Backend::floating);
    x.loop = s.loop(dim, w, Backend::floating, 0.6, 0.5);
    x.c = s.float_scalar();
    x.d = Scalar::floating(std::polar(s.uniform(0.0, 0.95 * std::numbers::pi), s.uniform(-3.14, 3.14)));
    ++rep.cases;
    const GroupElement g = group_exp(alg, x);
    const KMElement back = group_log(alg, g);
    const double scale = std::max({1.0, size_of(x), g.central.abs()});
    const double err = size_of(back - x) / scale;
    roundtrip_max = std::max(roundtrip_max, err);
    if (err > 1e-12) rep.fail(rep.cases, "log(exp(X)) differs from X by " + std::to_string(err) + " for X = " + describe(x));
    const GroupElement h = s.group_element(dim, w, Backend::floating);
    const GroupElement h2 = group_exp(alg, group_log(alg, h));
    if (!group_near(h, h2, 1e-12)) rep.fail(rep.cases, "exp(log(g)) differs from g = " + group_text(h));
  }
  // Exact roundtrip for d = 0.
  for (int t = 0; t < rt_trials; ++t) {
    const auto x = s.km_element(dim, w, Backend::exact, true, false);
    ++rep.cases;
    if (!(group_log(alg, group_exp(alg, x)) == x)) rep.fail(rep.cases, "exact log(exp(X)) != X");
  }

  // Geodesic symmetry: involutive and geodesic-reversing, bit-exact.
  const int sym_trials = std::max(1, 2 * cfg.trials / 5);
  for (int t = 0; t < sym_trials; ++t) {
    GroupElement p = s.group_element(dim, w, Backend::exact);
    GroupElement g = s.group_element(dim, w, Backend::exact);
    p.q = exact_q(s);
    g.q = exact_q(s);
    const auto x = s.km_element(dim, w, Backend::exact, true, false);
    const Scalar tt = s.exact_scalar().real_part();
    ++rep.cases;
    if (!(geodesic_symmetry(alg, p, geodesic_symmetry(alg, p, g)) == g))
      rep.fail(rep.cases, "rho_p is not involutive at p = " + group_text(p));
    if (!(geodesic_symmetry(alg, p, p) == p)) rep.fail(rep.cases, "rho_p(p) != p");
    const auto forward = group_multiply(alg, p, geodesic(alg, x, tt));
    const auto backward = group_multiply(alg, p, geodesic(alg, x, -tt));
    if (!(geodesic_symmetry(alg, p, forward) == backward))
      rep.fail(rep.cases, "rho_p does not reverse the geodesic of " + describe(x));
    const auto s1 = s.exact_scalar().real_part(), s2 = s.exact_scalar().real_part();
    if (!(group_multiply(alg, geodesic(alg, x, s1), geodesic(alg, x, s2)) == geodesic(alg, x, s1 + s2)))
      rep.fail(rep.cases, "geodesic flow property fails for " + describe(x));
  }

  // Differential of rho_e at the identity by central differences.
  {
    const double step = 1e-6;
    const auto e = GroupElement::identity(dim, Backend::floating);
    const std::size_t n = chart(e, w).size();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::complex<double> dir : {std::complex<double>(1, 0), std::complex<double>(0, 1)}) {
        std::vector<std::complex<double>> plus(n, 0.0), minus(n, 0.0);
        plus[j] = step * dir;
        minus[j] = -step * dir;
        const auto fp = chart(geodesic_symmetry(alg, e, unchart(plus, dim, w)), w);
        const auto fm = chart(geodesic_symmetry(alg, e, unchart(minus, dim, w)), w);
        for (std::size_t i = 0; i < n; ++i) {
          const std::complex<double> expected = i == j ? -dir : 0.0;
          worst = std::max(worst, std::abs((fp[i] - fm[i]) / (2 * step) - expected));
        }
      }
    ++rep.cases;
    if (worst > 1e-8) rep.fail(rep.cases, "d(rho_e) differs from -id by " + std::to_string(worst));
    rep.details["differential_max_error"] = worst;
  }

  // Coset canonicalization in both real-form cases.
  for (RealFormKind kind : {RealFormKind::real_valued, RealFormKind::imaginary_valued}) {
    const auto stab = stabilizer_loop_basis(alg, kind, w);
    for (int t = 0; t < sym_trials; ++t) {
      GroupElement g = s.group_element(dim, w, Backend::exact);
      g.q = Scalar::rational(s.integer(1, 5) * (s.unit() < 0.5 ? -1 : 1), s.integer(1, 3), Backend::exact);
      ++rep.cases;
      const auto c1 = coset_canonicalize(alg, g, kind, w);
      const auto c2 = coset_canonicalize(alg, c1.rep, kind, w);
      if (!(c1.rep == c2.rep)) rep.fail(rep.cases, "canonicalization not idempotent for " + group_text(g));
      // A stabilizer element h: q = +-1, lam in the real form, central in iR.
      GroupElement h = GroupElement::identity(dim, Backend::exact);
      h.q = Scalar::integer(s.unit() < 0.5 ? 1 : -1, Backend::exact);
      KMElement eta = KMElement::zero(dim, Backend::exact);
      for (const auto& v : stab)
        if (s.unit() < 0.3) eta += v * s.exact_scalar().real_part();
      h.lam = eta.loop;
      h.central = s.exact_scalar().imag_part() * Scalar::imaginary_unit(Backend::exact);
      if (!in_real_form(h.lam, kind)) rep.fail(rep.cases, "stabilizer basis element outside the real form");
      const auto ident = coset_canonicalize(alg, h, kind, w);
      if (!(ident.rep == GroupElement::identity(dim, Backend::exact)))
        rep.fail(rep.cases, "stabilizer element " + group_text(h) + " not mapped to the identity coset");
      const auto moved = coset_canonicalize(alg, group_multiply(alg, g, h), kind, w);
      if (!(moved.rep == c1.rep)) rep.fail(rep.cases, "representative depends on the coset member");
    }
  }
  // The two cases split the same complex group differently: their stabilizer
  // loop directions are complementary and coincide with the fixed sets of the
  // circle conjugations f -> +-conj f(1/conj z).
  {
    ScalarMatrix real_rows, imag_rows;
    for (const auto& v : stabilizer_loop_basis(alg, RealFormKind::real_valued, w))
      real_rows.push_back(realify(km_coordinates(v, w, false)));
    for (const auto& v : stabilizer_loop_basis(alg, RealFormKind::imaginary_valued, w))
      imag_rows.push_back(realify(km_coordinates(v, w, false)));
    ScalarMatrix both = real_rows;
    both.insert(both.end(), imag_rows.begin(), imag_rows.end());
    const std::size_t half_dim = static_cast<std::size_t>(dim) * (2 * static_cast<std::size_t>(w) + 1);
    ++rep.cases;
    if (span_rank(real_rows) != half_dim || span_rank(imag_rows) != half_dim || span_rank(both) != 2 * half_dim)
      rep.fail(rep.cases, "stabilizer splittings are not complementary real forms");
    std::vector<KMElement> support;
    for (int i = 0; i < dim; ++i)
      for (int k = -w; k <= w; ++k) support.push_back(KMElement::loop_monomial(dim, i, k, Scalar::one(Backend::exact)));
    for (int sign : {1, -1}) {
      const auto fixed = fixed_real_span(circle_conjugation(alg, sign), alg, support, w);
      const ScalarMatrix& stab_rows = sign > 0 ? real_rows : imag_rows;
      ScalarMatrix joint = stab_rows;
      for (const auto& f : fixed) joint.push_back(realify(km_coordinates(f, w, false)));
      ++rep.cases;
      if (fixed.size() != stab_rows.size() || span_rank(joint) != stab_rows.size())
        rep.fail(rep.cases, "fixed set of the circle conjugation differs from the stabilizer");
    }
  }
  rep.details["base"] = cfg.base;
  rep.details["window"] = w;
  rep.details["bch_max_central_error"] = bch_max;
  rep.details["roundtrip_max_relative_error"] = roundtrip_max;
  rep.details["associativity_failures"] = assoc_fail;
  return rep;
}

SuiteReport run_tame(const SuiteConfig& cfg) {
  SuiteReport rep = make_report("tame");
  Timer timer(rep);
  Sampler s(cfg.seed);
  const int n_max = 6;
  io::json equivalence = io::json::array();
  const int seqs = std::max(1, cfg.trials / 10);
  for (int t = 0; t < seqs + 2; ++t) {
    GradedSequence seq;
    if (t == seqs) {
      seq.entries = {0.0, 0.0, 3.0, 0.0};  // single spike
    } else if (t == seqs + 1) {
      for (int k = 0; k <= 40; ++k) seq.entries.push_back(1.0 / (1.0 + k));  // slow decay
    } else {
      const double rate = s.uniform(n_max + 1.5, n_max + 4.0);
      for (int k = 0; k <= 30; ++k) seq.entries.push_back(s.unit() * std::exp(-rate * k));
    }
    const auto cert = check_l1_linf_equivalence(seq, n_max);
    ++rep.cases;
    if (!cert.certified) rep.fail(rep.cases, "l1/linf equivalence: " + cert.counterexample.value_or(""));
    if (t == 0) equivalence.push_back(io::to_json(cert));
  }

  const BaseAlgebra alg = make_base(cfg);
  TameFitOptions opts;
  opts.window = 8;
  opts.trials = std::max(2, cfg.trials / 2);
  opts.seed = cfg.seed;
  TameMap d_action;
  d_action.kind = TameMapKind::d_action;
  const auto d_fit = tame_fit(alg, d_action, opts);
  ++rep.cases;
  if (d_fit.r < 0 || d_fit.r > 1 || !d_fit.certified || !d_fit.symbolic_bound_holds)
    rep.fail(rep.cases, "d-action fit: r = " + std::to_string(d_fit.r));

  TameMap ad;
  ad.kind = TameMapKind::ad;
  ad.x = KMElement::loop_monomial(alg.dim(), 0, 1, Scalar::one(Backend::floating)) +
         KMElement::loop_monomial(alg.dim(), 0, -1, Scalar::one(Backend::floating));
  const auto ad_fit = tame_fit(alg, ad, opts);
  ++rep.cases;
  if (ad_fit.r != 0 || !ad_fit.certified) rep.fail(rep.cases, "ad(X) fit: r = " + std::to_string(ad_fit.r));

  TameMap zero;
  const auto zero_fit = tame_fit(alg, zero, opts);
  ++rep.cases;
  if (zero_fit.r != 0 || !zero_fit.certified) rep.fail(rep.cases, "zero map fit: r = " + std::to_string(zero_fit.r));

  rep.details = {{"base", cfg.base},
                 {"l1_linf_example", equivalence},
                 {"d_action", io::to_json(d_fit)},
                 {"ad", io::to_json(ad_fit)},
                 {"zero", io::to_json(zero_fit)}};
  return rep;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (cfg.window < 1) throw DomainError("window must be at least 1");
  if (cfg.trials < 1) throw DomainError("trials must be at least 1");
  if (name == "jacobi") return run_jacobi(cfg);
  if (name == "cocycle") return run_cocycle(cfg);
  if (name == "invariance") return run_invariance(cfg);
  if (name == "flatness") return run_flatness(cfg);
  if (name == "heisenberg") return run_heisenberg(cfg);
  if (name == "classify") return run_classify(cfg);
  if (name == "signature") return run_signature(cfg);
  if (name == "group") return run_group(cfg);
  if (name == "tame") return run_tame(cfg);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace km
