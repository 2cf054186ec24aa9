#include <gtest/gtest.h>

#include "km/errors.hpp"
#include "km/json_io.hpp"
#include "km/random.hpp"
#include "km/suites.hpp"

using namespace km;
using io::json;

namespace {

constexpr Backend X = Backend::exact;
constexpr Backend F = Backend::floating;

std::string schema_pointer(const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.pointer();
  }
  return "<no error>";
}

}  // namespace

TEST(Json, ScalarForms) {
  const Scalar s = Scalar::exact(Rational(-3, 4), Rational(5));
  EXPECT_EQ(io::to_json(s), json::parse(R"(["-3/4", "5"])"));
  EXPECT_EQ(io::scalar_from_json(json::parse(R"(["-3/4", 5])"), X, ""), s);
  EXPECT_EQ(io::scalar_from_json(json::parse("[0.5, 0]"), X, ""), Scalar::rational(1, 2, X));
  EXPECT_EQ(io::scalar_from_json(json::parse("[0.25, -1.5]"), F, ""), Scalar::floating(0.25, -1.5));
}

TEST(Json, RoundTrips) {
  Sampler s(71);
  const auto alg = construct_base_algebra(parse_base_spec("abelian:2+sl2"));
  for (Backend b : {X, F}) {
    for (int t = 0; t < 20; ++t) {
      const auto p = s.laurent(5, b);
      EXPECT_EQ(io::laurent_from_json(io::to_json(p), b, ""), p);
      const auto x = s.km_element(5, 4, b);
      EXPECT_EQ(io::km_from_json(json::parse(io::to_json(x).dump()), b, 5, ""), x);
      const auto g = s.group_element(2, 3, b);
      EXPECT_EQ(io::group_from_json(json::parse(io::to_json(g).dump()), b, 2, ""), g);
    }
  }
  const auto back = io::base_algebra_from_json(io::to_json(alg), "");
  EXPECT_EQ(back.dim(), alg.dim());
  EXPECT_EQ(back.kind(), alg.kind());
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < alg.dim(); ++j) {
      EXPECT_EQ(back.form(i, j), alg.form(i, j));
      for (int k = 0; k < alg.dim(); ++k) EXPECT_EQ(back.constant(i, j, k), alg.constant(i, j, k));
    }
  EXPECT_EQ(io::base_algebra_from_json(json("sl2"), "").dim(), 3);
}

TEST(Json, SchemaErrorsCarryPointers) {
  EXPECT_EQ(schema_pointer([] { io::km_from_json(json::parse(R"({"loop": [{"1": [1, 0]}], "c": "x"})"), X, 1, "/x"); }),
            "/x/c");
  EXPECT_EQ(schema_pointer([] { io::km_from_json(json::parse(R"({"loop": [{"one": [1, 0]}]})"), X, 1, "/x"); }),
            "/x/loop/0/one");
  EXPECT_EQ(schema_pointer([] { io::km_from_json(json::parse(R"({"loop": [{}, {}]})"), X, 1, ""); }), "/loop");
  EXPECT_EQ(schema_pointer([] { io::group_from_json(json::parse(R"({"q": [0, 0], "lam": [{}]})"), X, 1, "/g"); }), "/g/q");
  EXPECT_EQ(schema_pointer([] { io::scalar_from_json(json::parse(R"(["1/0", 0])"), X, "/s"); }), "/s/0");
}

TEST(Json, ProvenanceHashIsStable) {
  EXPECT_EQ(io::provenance_hash(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(io::provenance_hash("a"), "fnv1a64:af63dc4c8601ec8c");
}

TEST(Json, TrajectoryLines) {
  const auto alg = construct_base_algebra(BaseAlgebraSpec::abelian(1));
  const auto x = KMElement::loop_monomial(1, 0, 1, Scalar::one(X));
  const auto text = io::trajectory_jsonl(alg, x, {Scalar::zero(X), Scalar::one(X)});
  const auto nl = text.find('\n');
  ASSERT_NE(nl, std::string::npos);
  const auto first = json::parse(text.substr(0, nl));
  EXPECT_TRUE(first.contains("t"));
  EXPECT_TRUE(first.contains("g"));
}

TEST(Suites, SmallRunsPass) {
  SuiteConfig cfg;
  cfg.trials = 40;
  cfg.window = 3;
  for (const std::string base : {"abelian:1", "abelian:2"}) {
    cfg.base = base;
    for (const auto& name : suite_names()) {
      const auto rep = run_suite(name, cfg);
      EXPECT_TRUE(rep.passed()) << name << " on " << base << ": "
                                << (rep.failures.empty() ? "" : rep.failures.front().witness);
      EXPECT_GT(rep.cases, 0u);
    }
  }
}

TEST(Suites, FlatnessControlFailsOnSl2WithWitness) {
  SuiteConfig cfg;
  cfg.base = "sl2";
  cfg.trials = 20;
  cfg.window = 2;
  const auto rep = run_suite("flatness", cfg);
  EXPECT_FALSE(rep.passed());
  ASSERT_FALSE(rep.failures.empty());
  EXPECT_FALSE(rep.failures.front().witness.empty());
  EXPECT_TRUE(run_suite("jacobi", cfg).passed());
}

TEST(Suites, DeterministicReports) {
  SuiteConfig cfg;
  cfg.trials = 30;
  cfg.window = 3;
  cfg.seed = 99;
  for (const std::string name : {"jacobi", "group", "tame"}) {
    EXPECT_EQ(run_suite(name, cfg).to_json(false).dump(), run_suite(name, cfg).to_json(false).dump()) << name;
  }
  EXPECT_FALSE(run_suite("cocycle", cfg).to_json(false).contains("wall_time_s"));
}

TEST(Suites, Errors) {
  SuiteConfig cfg;
  EXPECT_THROW(run_suite("nonsense", cfg), std::invalid_argument);
  cfg.base = "sl2";
  cfg.trials = 5;
  EXPECT_THROW(run_suite("group", cfg), PreconditionError);
}

TEST(Suites, SignatureIndex) {
  SuiteConfig cfg;
  cfg.window = 5;
  cfg.trials = 10;
  const auto compact = run_suite("signature", cfg);
  EXPECT_TRUE(compact.passed());
  cfg.realform = "noncompact";
  EXPECT_TRUE(run_suite("signature", cfg).passed());
}
