#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sketchlab/hashing.hpp"
#include "sketchlab/rng.hpp"

using namespace sketchlab;

TEST_CASE("counter rng is a pure function of (seed, counter)") {
  const CounterRng a(42), b(42), c(43);
  CHECK(a.bits(7) == b.bits(7));
  CHECK(a.bits(7) != c.bits(7));
  CHECK(a.bits(0) != a.bits(1));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = a.uniform(i);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
  CHECK(derive_seed(5, "abc") == derive_seed(5, tag64("abc")));
  CHECK(derive_seed(5, "abc") != derive_seed(5, "abd"));
  CHECK(derive_seed(5, "abc") != derive_seed(6, "abc"));
}

TEST_CASE("gaussian and cauchy draws look like their distributions") {
  const CounterRng rng(derive_seed(1, "dist-test"));
  const std::size_t trials = 20000;
  double mean = 0.0, var = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) mean += rng.gaussian(i);
  mean /= trials;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double g = rng.gaussian(i) - mean;
    var += g * g;
  }
  var /= trials;
  CHECK(std::abs(mean) < 0.03);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));

  // cauchy median is 0, quartiles at +-1
  const CounterRng crng(derive_seed(2, "dist-test"));
  std::size_t below_minus1 = 0, below_0 = 0, below_1 = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double v = crng.cauchy(i);
    below_minus1 += v < -1.0;
    below_0 += v < 0.0;
    below_1 += v < 1.0;
  }
  CHECK(std::abs(below_0 / double(trials) - 0.5) < 0.02);
  CHECK(std::abs(below_minus1 / double(trials) - 0.25) < 0.02);
  CHECK(std::abs(below_1 / double(trials) - 0.75) < 0.02);
}

TEST_CASE("below is uniform over [0, m)") {
  const CounterRng rng(derive_seed(9, "below-test"));
  const std::uint64_t m = 7;
  std::vector<std::size_t> counts(m, 0);
  const std::size_t trials = 70000;
  for (std::uint64_t i = 0; i < trials; ++i) ++counts[rng.below(i, m)];
  for (const std::size_t c : counts)
    CHECK(std::abs(c / double(trials) - 1.0 / m) < 0.01);
}

TEST_CASE("pairwise hash: determinism, range, domain checks") {
  const CounterRng rng(derive_seed(3, "hash-test"));
  const auto h1 = PairwiseHash::sample(rng, 0, 100, 1);
  for (std::uint64_t i = 0; i < 100; ++i) CHECK(h1(i) == 0);

  const auto h = PairwiseHash::sample(rng, 1, 1000, 16);
  CHECK(h(7) == h(7));
  for (std::uint64_t i = 0; i < 1000; ++i) CHECK(h(i) < 16);
  CHECK_THROWS_AS((void)h(1000), std::domain_error);
  CHECK_THROWS_AS((void)PairwiseHash::sample(rng, 0, 0, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)PairwiseHash::sample(rng, 0, 10, 0),
                  std::invalid_argument);
}

TEST_CASE("pairwise hash: empirical collision rate is about 1/B") {
  const std::size_t B = 16, trials = 4000;
  std::size_t collisions = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const CounterRng rng(derive_seed(t, "collision-test"));
    const auto h = PairwiseHash::sample(rng, 0, 1 << 20, B);
    collisions += h(123456) == h(654321);
  }
  const double rate = collisions / double(trials);
  const double se = std::sqrt((1.0 / B) * (1.0 - 1.0 / B) / trials);
  CHECK(rate <= 1.0 / B + 4 * se);
  CHECK(rate >= 1.0 / B - 4 * se);
}

TEST_CASE("sign function is a balanced +-1 family") {
  const CounterRng rng(derive_seed(4, "sign-test"));
  const auto s = SignFunction::sample(rng, 0, 10000);
  std::size_t plus = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const int v = s(i);
    CHECK((v == 1 || v == -1));
    plus += v == 1;
  }
  CHECK(std::abs(plus / 10000.0 - 0.5) < 0.05);
  CHECK_THROWS_AS((void)s(10000), std::domain_error);
}

TEST_CASE("mod_mersenne61 agrees with wide arithmetic") {
  const unsigned __int128 big =
      (unsigned __int128)(kMersenneP - 1) * (kMersenneP - 1) + (kMersenneP - 2);
  CHECK(mod_mersenne61(big) == (std::uint64_t)(big % kMersenneP));
  CHECK(mod_mersenne61(0) == 0);
  CHECK(mod_mersenne61(kMersenneP) == 0);
  CHECK(mod_mersenne61(kMersenneP + 5) == 5);
}

TEST_CASE("stable sampler dispatches on p and rejects others") {
  const CounterRng rng(derive_seed(5, "stable-test"));
  CHECK(StableSampler(2.0).draw(rng, 3) == rng.gaussian(3));
  CHECK(StableSampler(1.0).draw(rng, 3) == rng.cauchy(3));
  CHECK_THROWS_AS(StableSampler(1.5), std::invalid_argument);
}

TEST_CASE("gaussian tail fractions match the normal law") {
  const auto st = gaussian_tail_bounds(20000, derive_seed(6, "tail-test"));
  // true values: P(|g| <= 0.5) = 0.3829, P(5/12 <= |g| <= 2) = 0.6314
  CHECK(st.frac_small == doctest::Approx(0.3829).epsilon(0.03));
  CHECK(st.frac_window == doctest::Approx(0.6314).epsilon(0.03));
  CHECK(st.frac_small <= 0.40 + 3 * std::sqrt(0.40 * 0.60 / 20000));
  CHECK(st.frac_window >= 0.63 - 3 * std::sqrt(0.63 * 0.37 / 20000));
}

TEST_CASE("biased walk return frequency") {
  CHECK(biased_walk_return_freq(1.0, 500, 200, 1) == 0.0);
  const std::size_t walks = 4000;
  const double f =
      biased_walk_return_freq(0.9, walks, 2000, derive_seed(7, "walk-test"));
  const double se = std::sqrt(f * (1.0 - f) / walks);
  CHECK(f <= 1.0 / 9.0 + 3 * se);  // q/p bound for p_right = 0.9
  CHECK(f >= 0.08);                // truncation only removes rare returns
}
