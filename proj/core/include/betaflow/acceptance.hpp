#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace betaflow {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0: no runtime budget
  std::map<std::string, std::string> csv;  // file name -> bytes
};

struct AcceptanceOptions {
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> out_dir;  // CSV outputs of criteria 3-8
  std::vector<int> only;                         // empty: all criteria
};

/// One line per criterion: "[PASS] <id> <title>: <detail> (<t>s, budget <b>s)".
std::string format_criterion(const CriterionResult& r);

/// Runs the acceptance criteria in order. `on_result` is called as each
/// criterion finishes. Criterion 9 reruns 3-8 and compares their CSV bytes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace betaflow
