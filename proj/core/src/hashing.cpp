#include "sketchlab/hashing.hpp"

#include <cmath>

namespace sketchlab {

GaussianTailStats gaussian_tail_bounds(std::size_t trials, std::uint64_t seed) {
  CounterRng rng{derive_seed(seed, "gaussian-tail-bounds")};
  std::size_t small = 0, window = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double g = std::abs(rng.gaussian(t));
    if (g <= 0.5) ++small;
    if (g >= 5.0 / 12.0 && g <= 2.0) ++window;
  }
  GaussianTailStats s;
  s.frac_small = static_cast<double>(small) / static_cast<double>(trials);
  s.frac_window = static_cast<double>(window) / static_cast<double>(trials);
  return s;
}

double biased_walk_return_freq(double p_right, std::size_t walks,
                               std::size_t max_steps, std::uint64_t seed) {
  CounterRng rng{derive_seed(seed, "biased-walk-return")};
  std::size_t returned = 0;
  std::uint64_t ctr = 0;
  for (std::size_t w = 0; w < walks; ++w) {
    long long pos = 1;
    for (std::size_t s = 0; s < max_steps && pos > 0; ++s) {
      pos += rng.bernoulli(ctr++, p_right) ? 1 : -1;
    }
    if (pos == 0) ++returned;
  }
  return static_cast<double>(returned) / static_cast<double>(walks);
}

}  // namespace sketchlab
