#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "km/json_io.hpp"

namespace km {

struct SuiteConfig {
  std::string base = "abelian:1";
  int window = 6;
  int trials = 1000;
  std::uint64_t seed = 1;
  Backend backend = Backend::exact;
  std::string realform = "compact";  ///< signature suite: compact | noncompact
};

struct SuiteFailure {
  std::size_t case_index;
  std::string witness;
};

struct SuiteReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t failure_count = 0;
  std::vector<SuiteFailure> failures;  ///< first few witnesses; empty iff the suite passed
  double wall_time_s = 0.0;
  io::json details = io::json::object();

  bool passed() const { return failure_count == 0; }
  void fail(std::size_t case_index, std::string witness);
  /// Deterministic report; wall time only when requested.
  io::json to_json(bool with_timing) const;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name and km::Error subclasses
/// for configurations the suite cannot run (e.g. a non-abelian base for the
/// group suite).
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

SuiteReport run_jacobi(const SuiteConfig& cfg);
SuiteReport run_cocycle(const SuiteConfig& cfg);
SuiteReport run_invariance(const SuiteConfig& cfg);
SuiteReport run_flatness(const SuiteConfig& cfg);
SuiteReport run_heisenberg(const SuiteConfig& cfg);
SuiteReport run_classify(const SuiteConfig& cfg);
SuiteReport run_signature(const SuiteConfig& cfg);
SuiteReport run_group(const SuiteConfig& cfg);
SuiteReport run_tame(const SuiteConfig& cfg);

}  // namespace km
