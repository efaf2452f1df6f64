#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sketchlab/forest.hpp"
#include "sketchlab/profile.hpp"
#include "sketchlab/set_query.hpp"
#include "sketchlab/signal.hpp"

namespace sketchlab {

// Full recovery pipeline: identification at eps/10, pruning at eps/10, set
// query at eps/4.  The master seed feeds each stage through a distinct tag so
// the three sketches are independent.
struct PipelineConfig {
  std::size_t n = 0;
  std::size_t k = 1;
  double eps = 0.5;
  ConstantProfile profile{};
  std::uint64_t seed = 0;
};

struct PipelineResult {
  SparseApprox xprime;                     // final estimate, supported on S
  std::vector<std::size_t> candidates;     // L from identification
  std::vector<std::size_t> support;        // S after pruning
  bool prune_skipped = false;              // |L| <= beta*k, kept L as-is

  std::size_t measurements_tail = 0;
  std::size_t measurements_forest = 0;
  std::size_t measurements_prune = 0;
  std::size_t measurements_set_query = 0;
  std::size_t measurements_total = 0;

  ForestDecodeStats forest_stats;
  SetQueryStats set_query_stats;
};

// Runs the three stages on x.  Throws std::invalid_argument when the
// identification stage's geometry is infeasible (k/(eps/10) > n/16) or eps is
// outside (0,1).
PipelineResult recover(std::span<const double> x, const PipelineConfig& cfg);

}  // namespace sketchlab
