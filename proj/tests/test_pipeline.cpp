#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sketchlab/forest.hpp"
#include "sketchlab/pipeline.hpp"
#include "sketchlab/profile.hpp"
#include "sketchlab/signal.hpp"

using namespace sketchlab;

namespace {
PipelineConfig make_cfg(std::size_t n, std::size_t k, double eps,
                        std::uint64_t seed) {
  PipelineConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.eps = eps;
  cfg.profile = ConstantProfile::desk();
  cfg.seed = seed;
  return cfg;
}
}  // namespace

TEST_CASE("the zero signal recovers to zero with empty support") {
  const std::vector<double> x(2048, 0.0);
  const PipelineResult r = recover(x, make_cfg(2048, 2, 0.5, 7));
  CHECK(l2_err(x, r.xprime) == 0.0);
  CHECK(r.candidates.empty());
  CHECK(r.support.empty());
  CHECK(r.prune_skipped);  // nothing to prune
}

TEST_CASE("exactly sparse signals recover to near-zero error") {
  const std::size_t n = 2048, k = 2;
  std::vector<double> x(n, 0.0);
  x[100] = 5.0;
  x[1500] = -3.0;
  std::size_t good = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const PipelineResult r = recover(x, make_cfg(n, k, 0.5, s));
    good += l2_err(x, r.xprime) <= 1e-9;
  }
  CHECK(good >= 9);
}

TEST_CASE("measurement accounting adds up and names each stage") {
  const std::size_t n = 4096, k = 2;
  const double eps = 0.5;
  std::vector<double> x(n, 0.0);
  x[9] = 4.0;
  const PipelineResult r = recover(x, make_cfg(n, k, eps, 3));
  CHECK(r.measurements_total ==
        r.measurements_tail + r.measurements_forest + r.measurements_prune +
            r.measurements_set_query);
  // identification runs at eps/10
  const ForestGeometry g =
      forest_geometry(n, k, eps / 10.0, ConstantProfile::desk());
  CHECK(r.measurements_forest == g.measurement_count());
  CHECK(r.measurements_tail > 0);
  CHECK(r.measurements_set_query > 0);
  if (r.prune_skipped) {
    CHECK(r.measurements_prune == 0);
    CHECK(r.support == r.candidates);
  } else {
    CHECK(r.measurements_prune > 0);
  }
}

TEST_CASE("configuration is validated") {
  const std::vector<double> x(128, 0.0);
  CHECK_THROWS_AS((void)recover(x, make_cfg(64, 2, 0.5, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)recover(x, make_cfg(128, 2, 1.5, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)recover(x, make_cfg(128, 0, 0.5, 1)),
                  std::invalid_argument);
  // k/(eps/10) > n/16 makes the identification geometry infeasible
  CHECK_THROWS_AS((void)recover(x, make_cfg(128, 2, 0.5, 1)),
                  std::invalid_argument);
}
