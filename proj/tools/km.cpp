// km: command-line front end for the affine Kac-Moody toolkit.
#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "km/errors.hpp"
#include "km/geometry.hpp"
#include "km/group.hpp"
#include "km/heisenberg.hpp"
#include "km/json_io.hpp"
#include "km/suites.hpp"
#include "km/tame.hpp"

namespace {

using km::io::json;

constexpr int kPass = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

/// Thrown for bad command-line values; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void setup_logging() {
  auto logger = spdlog::stderr_logger_mt("km");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[km %l] %v");
  const char* env = std::getenv("KM_LOG");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

km::Backend parse_backend(const std::string& s) {
  if (s == "exact") return km::Backend::exact;
  if (s == "float") return km::Backend::floating;
  throw UsageError("--backend must be exact or float");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw UsageError("cannot write " + out_path);
  f << text;
  spdlog::info("wrote {}", out_path);
}

int report_error(const std::string& kind, const std::string& message, const std::string& pointer,
                 int code) {
  json err{{"error", kind}, {"message", message}};
  if (!pointer.empty() || kind == "schema") err["pointer"] = pointer;
  std::cerr << err.dump() << '\n';
  return code;
}

// --- verify ------------------------------------------------------------------

int cmd_verify(const std::string& suite, const km::SuiteConfig& cfg, bool timing,
               const std::string& out) {
  spdlog::info("suite {} base={} window={} trials={} seed={} backend={}", suite, cfg.base,
               cfg.window, cfg.trials, cfg.seed, km::to_string(cfg.backend));
  const km::SuiteReport rep = km::run_suite(suite, cfg);
  spdlog::info("suite {} finished in {:.3f} s: {} cases, {} failures", suite, rep.wall_time_s,
               rep.cases, rep.failure_count);
  json j = rep.to_json(timing);
  j["config"] = {{"base", cfg.base},   {"window", cfg.window},
                 {"trials", cfg.trials}, {"seed", cfg.seed},
                 {"backend", km::to_string(cfg.backend)}};
  if (suite == "signature") {
    j["config"]["realform"] = cfg.realform;
    j["index"] = rep.details["with_cd"]["index"]["neg"];
  }
  emit(j.dump(2) + "\n", out);
  return rep.passed() ? kPass : kFailure;
}

// --- compute -------------------------------------------------------------------

struct ComputeContext {
  const json& in;
  km::Backend backend;
  km::BaseAlgebra alg;

  km::KMElement element(const std::string& key) const {
    return km::io::km_from_json(km::io::require(in, key, ""), backend, alg.dim(), "/" + key);
  }
  km::GroupElement group(const std::string& key) const {
    return km::io::group_from_json(km::io::require(in, key, ""), backend, alg.dim(), "/" + key);
  }
  int integer(const std::string& key, int fallback) const {
    if (!in.contains(key)) return fallback;
    if (!in[key].is_number_integer()) throw km::SchemaError("/" + key, "expected an integer");
    return in[key].get<int>();
  }
  std::string text(const std::string& key, const std::string& fallback) const {
    if (!in.contains(key)) return fallback;
    if (!in[key].is_string()) throw km::SchemaError("/" + key, "expected a string");
    return in[key].get<std::string>();
  }
  std::vector<km::KMElement> basis(const std::string& key) const {
    const json& arr = km::io::require(in, key, "");
    if (!arr.is_array()) throw km::SchemaError("/" + key, "expected an array of elements");
    std::vector<km::KMElement> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
      out.push_back(km::io::km_from_json(arr[i], backend, alg.dim(), "/" + key + "/" + std::to_string(i)));
    return out;
  }
};

km::Epsilon parse_epsilon(const std::string& s, const std::string& pointer) {
  if (s == "1" || s == "one") return km::Epsilon::one;
  if (s == "i") return km::Epsilon::i;
  throw km::SchemaError(pointer, "epsilon must be \"1\" or \"i\"");
}

km::RealFormKind parse_realform_kind(const std::string& s) {
  if (s == "real_valued") return km::RealFormKind::real_valued;
  if (s == "imaginary_valued") return km::RealFormKind::imaginary_valued;
  throw km::SchemaError("/realform", "expected real_valued or imaginary_valued");
}

std::vector<km::KMElement> preset_real_form(const ComputeContext& ctx, const json& preset,
                                            bool include_cd) {
  if (!preset.is_object()) throw km::SchemaError("/preset", "expected an object");
  const json& eps_j = km::io::require(preset, "epsilon", "/preset");
  if (!eps_j.is_string()) throw km::SchemaError("/preset/epsilon", "expected a string");
  const auto eps = parse_epsilon(eps_j.get<std::string>(), "/preset/epsilon");
  const int window = preset.value("window", 3);
  return km::heisenberg_real_form(ctx.alg, eps, window, ctx.backend, include_cd);
}

json compute_result(const std::string& op, const ComputeContext& ctx, std::string& jsonl) {
  using namespace km;
  const auto& alg = ctx.alg;
  if (op == "bracket") return io::to_json(km_bracket(alg, ctx.element("x"), ctx.element("y")));
  if (op == "metric") return io::to_json(km_metric(alg, ctx.element("x"), ctx.element("y")));
  if (op == "curvature")
    return io::to_json(curvature(alg, ctx.element("g"), ctx.element("h"), ctx.element("k")));
  if (op == "sectional") return io::to_json(sectional_curvature(alg, ctx.element("g"), ctx.element("h")));
  if (op == "classify") {
    if (ctx.in.contains("basis")) return to_string(classify_real_form(alg, ctx.basis("basis")));
    if (ctx.in.contains("preset")) return to_string(classify_real_form(alg, preset_real_form(ctx, ctx.in["preset"], true)));
    const KMType t = classify_km_type(alg);
    json factors = json::array();
    for (auto f : t.factors) factors.push_back(to_string(f));
    return json{{"type", to_string(t.label)}, {"factors", factors}};
  }
  if (op == "exp") return io::to_json(group_exp(alg, ctx.element("x")));
  if (op == "log") return io::to_json(group_log(alg, ctx.group("g")));
  if (op == "geodesic") {
    const KMElement x = ctx.element("x");
    const json& t = io::require(ctx.in, "t", "");
    if (t.is_array()) {
      std::vector<Scalar> times;
      for (std::size_t i = 0; i < t.size(); ++i) times.push_back(io::scalar_from_json(t[i], ctx.backend, "/t/" + std::to_string(i)));
      jsonl = io::trajectory_jsonl(alg, x, times);
      return json{{"points", times.size()}};
    }
    return io::to_json(geodesic(alg, x, io::scalar_from_json(t, ctx.backend, "/t")));
  }
  if (op == "canonicalize") {
    const auto rep = coset_canonicalize(alg, ctx.group("g"), parse_realform_kind(ctx.text("realform", "real_valued")),
                                        ctx.integer("window", 6));
    return json{{"rep", io::to_json(rep.rep)}, {"realform", to_string(rep.kind)},
                {"stabilizer_part", io::to_json(rep.stabilizer_part)}};
  }
  if (op == "metric-index") {
    const bool include_cd = ctx.in.value("include_cd", true);
    const int window = ctx.integer("window", 5);
    std::vector<KMElement> basis;
    if (ctx.in.contains("basis")) {
      basis = ctx.basis("basis");
    } else if (ctx.in.contains("preset")) {
      basis = preset_real_form(ctx, ctx.in["preset"], false);
    }
    return io::to_json(metric_index(alg, {window, include_cd}, basis));
  }
  if (op == "osaka") {
    const std::string which = ctx.text("involution", "negation");
    const int window = ctx.integer("window", 4);
    Involution rho;
    if (which == "negation") {
      rho = negation_involution(alg);
    } else if (which == "circle") {
      rho = circle_conjugation(alg, 1);
    } else if (which == "negated_circle") {
      rho = circle_conjugation(alg, -1);
    } else if (which == "identity") {
      rho = negation_involution(alg);
      for (auto& row : rho.base_map)
        for (auto& v : row) v = -v;
      rho.label = "identity";
    } else {
      throw SchemaError("/involution", "expected negation, circle, negated_circle or identity");
    }
    const auto cert = check_involution(rho, alg, window);
    if (!cert.ok())
      return json{{"certified", false}, {"witness", cert.witness.value_or("")}};
    json r = io::to_json(osaka_validate(alg, cert.certified, window));
    r["involution"] = rho.label;
    return r;
  }
  throw UsageError("unknown compute op '" + op + "'");
}

int cmd_compute(const std::string& op, const std::string& input_path, const std::string& inline_json,
                km::Backend backend, const std::string& out) {
  std::string text;
  if (!inline_json.empty()) {
    text = inline_json;
  } else if (!input_path.empty() && input_path != "-") {
    std::ifstream f(input_path);
    if (!f) throw UsageError("cannot read " + input_path);
    text.assign(std::istreambuf_iterator<char>(f), {});
  } else {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  }
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw km::SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  if (!in.is_object()) throw km::SchemaError("", "expected a JSON object");
  const json base_j = in.contains("base") ? in["base"] : json("abelian:1");
  ComputeContext ctx{in, backend, km::io::base_algebra_from_json(base_j, "/base")};
  std::string jsonl;
  json result = compute_result(op, ctx, jsonl);
  json outj{{"op", op},
            {"result", result},
            {"provenance", {{"input_hash", km::io::provenance_hash(in.dump())},
                            {"backend", km::to_string(backend)}}}};
  if (!jsonl.empty()) {
    emit(jsonl, out);
    if (!out.empty()) std::cout << outj.dump(2) << '\n';
    return kPass;
  }
  emit(outj.dump(2) + "\n", out);
  return kPass;
}

// --- tame-fit ------------------------------------------------------------------

std::vector<int> parse_n_range(const std::string& s) {
  std::vector<int> out;
  try {
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(s.substr(0, dots));
      const int hi = std::stoi(s.substr(dots + 2));
      if (hi < lo) throw UsageError("empty --n range");
      for (int n = lo; n <= hi; ++n) out.push_back(n);
      return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  } catch (const std::logic_error&) {
    throw UsageError("--n expects a range a..b or a comma list");
  }
  if (out.empty()) throw UsageError("--n expects at least one value");
  return out;
}

int cmd_tame_fit(const std::string& map_name, const std::string& base, const km::TameFitOptions& opts,
                 const std::string& x_json, const std::string& poly_json, const std::string& out) {
  const km::BaseAlgebra alg = km::construct_base_algebra(km::parse_base_spec(base));
  km::TameMap map;
  try {
    map.kind = km::parse_tame_map(map_name);
  } catch (const km::PreconditionError& e) {
    throw UsageError(e.what());
  }
  const auto fl = km::Backend::floating;
  if (map.kind == km::TameMapKind::ad) {
    map.x = x_json.empty()
                ? km::KMElement::loop_monomial(alg.dim(), 0, 1, km::Scalar::one(fl)) +
                      km::KMElement::loop_monomial(alg.dim(), 0, -1, km::Scalar::one(fl))
                : km::io::km_from_json(json::parse(x_json), fl, alg.dim(), "/x");
  }
  if (map.kind == km::TameMapKind::multiply) {
    map.poly = poly_json.empty()
                   ? km::LaurentPoly(fl, {{0, km::Scalar::one(fl)}, {1, km::Scalar::one(fl)}})
                   : km::io::laurent_from_json(json::parse(poly_json), fl, "/poly");
  }
  const km::TameFit fit = km::tame_fit(alg, map, opts);
  json j = km::io::to_json(fit);
  j["map"] = map_name;
  j["window"] = opts.window;
  j["trials"] = opts.trials;
  j["seed"] = opts.seed;
  j["base"] = base;
  emit(j.dump(2) + "\n", out);
  return fit.certified ? kPass : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"km: geometric affine Kac-Moody algebras of Euclidean type"};
  app.require_subcommand(1);

  std::string out;
  std::string backend_name = "exact";

  km::SuiteConfig cfg;
  std::string suite;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(km::suite_names()));
  verify->add_option("--base", cfg.base, "base algebra, e.g. abelian:1, sl2, su2, abelian:1+sl2");
  verify->add_option("--window", cfg.window, "degree window |k| <= N")->check(CLI::PositiveNumber);
  verify->add_option("--trials", cfg.trials, "random trials")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "RNG seed (default 1)");
  verify->add_option("--backend", backend_name, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  verify->add_option("--realform", cfg.realform, "signature suite: compact | noncompact")
      ->check(CLI::IsMember({"compact", "noncompact"}));
  verify->add_flag("--timing", timing, "include wall time in the report");
  verify->add_option("--out", out, "write the report to a file");

  std::string op, input_path, inline_json;
  auto* compute = app.add_subcommand("compute", "evaluate one operation on JSON input");
  compute->add_option("op", op, "operation")
      ->required()
      ->check(CLI::IsMember({"bracket", "metric", "curvature", "sectional", "classify", "exp", "log",
                             "geodesic", "canonicalize", "metric-index", "osaka"}));
  compute->add_option("--input", input_path, "JSON input file ('-' or omitted: stdin)");
  compute->add_option("--json", inline_json, "inline JSON input");
  compute->add_option("--backend", backend_name, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  compute->add_option("--out", out, "write the result to a file");

  km::TameFitOptions topts;
  std::string map_name = "d-action", tame_base = "abelian:1", n_range = "0..4", x_json, poly_json;
  auto* tame = app.add_subcommand("tame-fit", "fit tame constants for a linear map");
  tame->add_option("--map", map_name, "zero | d-action | multiply | ad")
      ->check(CLI::IsMember({"zero", "d-action", "multiply", "ad"}));
  tame->add_option("--base", tame_base, "base algebra");
  tame->add_option("--window", topts.window, "degree window")->check(CLI::PositiveNumber);
  tame->add_option("--n", n_range, "grading indices, a..b or a,b,c");
  tame->add_option("--trials", topts.trials, "random trials")->check(CLI::Range(2, 1000000));
  tame->add_option("--seed", topts.seed, "RNG seed");
  tame->add_option("--x", x_json, "ad: JSON element X (default (z + 1/z) e_0)");
  tame->add_option("--poly", poly_json, "multiply: JSON Laurent polynomial (default 1 + z)");
  tame->add_option("--backend", backend_name, "accepted for uniformity; fits use float")
      ->check(CLI::IsMember({"exact", "float"}));
  tame->add_option("--out", out, "write the fit to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const km::Backend backend = parse_backend(backend_name);
    if (verify->parsed()) {
      cfg.backend = backend;
      return cmd_verify(suite, cfg, timing, out);
    }
    if (compute->parsed()) return cmd_compute(op, input_path, inline_json, backend, out);
    topts.n_values = parse_n_range(n_range);
    return cmd_tame_fit(map_name, tame_base, topts, x_json, poly_json, out);
  } catch (const UsageError& e) {
    return report_error("usage", e.what(), "", kUsage);
  } catch (const std::invalid_argument& e) {
    return report_error("usage", e.what(), "", kUsage);
  } catch (const km::SchemaError& e) {
    return report_error("schema", e.what(), e.pointer(), kUsage);
  } catch (const json::exception& e) {
    return report_error("schema", e.what(), "", kUsage);
  } catch (const km::PreconditionError& e) {
    return report_error("precondition", e.what(), "", kUsage);
  } catch (const km::Error& e) {
    return report_error("failure", e.what(), "", kFailure);
  }
}
