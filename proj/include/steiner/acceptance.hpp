#pragma once

// The acceptance suite: twelve numbered checks over every module. Shared by
// the acceptance test binary and `steiner selftest`.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "steiner/cocycle.hpp"
#include "steiner/report.hpp"

namespace steiner {

struct AcceptanceOptions {
  std::uint64_t seed = kDefaultSeed;
  bool extended = false;  // theorem basis at n = 5, 6 as well
  unsigned jobs = 1;
  // Optional loop table that must parse and satisfy the Steiner laws.
  std::optional<std::string> fixture;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // deterministic; witness on failure
  double seconds = 0;
  double budget = 0;   // seconds; exceeding it fails the criterion
};

using CriterionCallback = std::function<void(const CriterionResult&)>;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const CriterionCallback& on_result = {});

// "[PASS] 7 free loop n=3 (0.41 s)" style line.
std::string summary_line(const CriterionResult& r);

// Machine report lines criterion.<id>=pass|fail and criterion.<id>.detail.
void add_to_report(RunReport& report, const std::vector<CriterionResult>& results);

}  // namespace steiner
