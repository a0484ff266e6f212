#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quatfa/io.hpp"

namespace quatfa {

struct SuiteInfo {
  std::string id;
  std::string description;
};

/// Stable suite ids in report order.
const std::vector<SuiteInfo>& suite_catalog();
bool is_suite(const std::string& id);

struct SuiteOptions {
  std::uint64_t seed = 0;
  long trials = 1000;
  double tol = 1e-9;
  std::optional<io::Json> spec;  // bimodule or algebra spec, used where it fits
  unsigned jobs = 0;             // 0: hardware concurrency
};

struct SuiteReport {
  std::string id;
  long trials = 0;
  double max_residual = 0.0;
  bool pass = true;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  std::vector<std::pair<std::string, std::string>> details;
  std::string failure;  // first failing trial, if any
};

/// Throws std::invalid_argument for unknown ids.
SuiteReport run_suite(const std::string& id, const SuiteOptions& options);
/// "all" runs the whole catalog.
std::vector<SuiteReport> run_suites(const std::string& selection, const SuiteOptions& options);

/// Wall time is included only when `timing` is set, so reports are
/// byte-identical across runs otherwise.
std::string format_text(const std::vector<SuiteReport>& reports, bool timing);
std::string format_json(const std::vector<SuiteReport>& reports, bool timing);

}  // namespace quatfa
