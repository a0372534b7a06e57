#pragma once

#include "teicp/tensor.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace teicp {

struct RunOptions {
  std::string method = "auto";  // auto | copositive | general
  std::uint64_t seed = 1;
  double delta0 = 0.05;
  int k_max = 0;                // 0 means m + 3
  std::optional<double> tol;    // cluster_tol (copositive) or level_tol (general); path default if unset
  bool assert_copositive = false;
  bool oracle = false;
  bool timing = false;          // timing breaks byte-identical reports, so it is opt-in
  bool verbose = false;
};

struct RunResult {
  nlohmann::json report;
  int exit_code = 0;  // 0 ok, 3 solver failure
};

/// Runs the selected path and builds the structured report.
RunResult run_problem(const TensorPair& pair, const RunOptions& opts);

/// One line per eigenpair: lambda then x.
std::string plain_report(const nlohmann::json& report);

}  // namespace teicp
