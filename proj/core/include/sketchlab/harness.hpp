#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "sketchlab/report.hpp"

namespace sketchlab {

// Randomness for trial i depends only on (master seed, i), never on how
// trials are scheduled.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial_index);

// Standard error of a frequency estimate: sqrt(p*(1-p)/trials).
double freq_stderr(double p_hat, std::size_t trials);

using TrialFn = std::function<Record(std::size_t index, std::uint64_t seed)>;

// Runs `trials` independent trials, optionally on `jobs` threads (0 or 1 =
// sequential).  Reports come back in trial order regardless of scheduling.
// Each trial function must be pure given (index, seed).
std::vector<Record> run_trials(std::size_t trials, std::uint64_t master_seed,
                               std::size_t jobs, const TrialFn& fn);

struct FreqSummary {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double freq = 0.0;
  double stderr_freq = 0.0;
};

// Counts records whose boolean field `flag` serialized to "true".
FreqSummary success_summary(std::span<const Record> reports,
                            std::string_view flag);

// The aggregate line appended after per-trial reports.
Record summary_record(const FreqSummary& s);

}  // namespace sketchlab
