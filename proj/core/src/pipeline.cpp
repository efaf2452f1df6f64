#include "sketchlab/pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "sketchlab/prune.hpp"
#include "sketchlab/rng.hpp"

namespace sketchlab {

PipelineResult recover(std::span<const double> x, const PipelineConfig& cfg) {
  if (x.size() != cfg.n)
    throw std::invalid_argument("pipeline: signal length differs from config");
  if (!(cfg.eps > 0.0) || !(cfg.eps < 1.0))
    throw std::invalid_argument("pipeline: eps must lie in (0,1)");
  if (cfg.k < 1) throw std::invalid_argument("pipeline: k must be positive");

  const ConstantProfile& prof = cfg.profile;
  PipelineResult res;

  // Identification at eps/10 (also estimates the tail scale internally).
  std::size_t identify_rows = 0;
  res.candidates =
      forest_recover(x, cfg.k, cfg.eps / 10.0, prof,
                     derive_seed(cfg.seed, "stage-identify"),
                     &res.forest_stats, &identify_rows);
  const std::size_t forest_rows =
      forest_geometry(cfg.n, cfg.k, cfg.eps / 10.0, prof).measurement_count();
  res.measurements_forest = forest_rows;
  res.measurements_tail = identify_rows - forest_rows;

  // Pruning at eps/10, skipped when the candidate list is already small.
  const auto beta_k = static_cast<std::size_t>(
      std::ceil(prof.prune_beta * static_cast<double>(cfg.k)));
  if (res.candidates.size() > beta_k) {
    const PruneSketch psk =
        prune_sketch_build(x, cfg.k, cfg.eps / 10.0, prof,
                           derive_seed(cfg.seed, "stage-prune"));
    res.support = prune(psk, res.candidates, prof);
    res.measurements_prune = psk.measurement_count();
  } else {
    res.support = res.candidates;
    res.prune_skipped = true;
  }

  // Set query at eps/4, sized for the largest support pruning can emit.
  const std::size_t k_sq = std::max<std::size_t>(1, beta_k);
  SetQuerySketch sq = sq_create(cfg.n, k_sq, cfg.eps / 4.0, prof,
                                derive_seed(cfg.seed, "stage-setquery"));
  for (std::size_t i = 0; i < cfg.n; ++i) {
    if (x[i] == 0.0) continue;
    sq_update(sq, i, x[i]);
  }
  res.measurements_set_query = sq.measurement_count();
  res.xprime = sq_query(sq, res.support, &res.set_query_stats);

  res.measurements_total = res.measurements_tail + res.measurements_forest +
                           res.measurements_prune + res.measurements_set_query;
  return res;
}

}  // namespace sketchlab
