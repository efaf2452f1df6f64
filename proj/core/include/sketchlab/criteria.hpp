#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sketchlab/report.hpp"

namespace sketchlab {

inline constexpr int kCriterionCount = 11;

// Outcome of one acceptance criterion.  `hard_failed` marks a violated hard
// (non-statistical) assertion; statistical shortfalls set pass=false only.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool hard_failed = false;
  std::string detail;            // condition summary for the verdict line
  double elapsed_seconds = 0.0;  // wall time (never serialized into reports)
  std::vector<Record> reports;   // deterministic per-trial records + summary
};

// Runs acceptance criterion `id` (1-based).  Every tolerance and bound is
// pinned inside the implementation; the caller only chooses the criterion.
CriterionResult run_criterion(int id);

// "criterion N PASS name: detail (12.3s)"
std::string criterion_verdict_line(const CriterionResult& r);

}  // namespace sketchlab
