#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sketchlab/profile.hpp"
#include "sketchlab/prune.hpp"
#include "sketchlab/rng.hpp"
#include "sketchlab/signal.hpp"

using namespace sketchlab;

namespace {
const ConstantProfile kDesk = ConstantProfile::desk();
}

TEST_CASE("prune sketch shape and single-spike expansion") {
  const std::size_t n = 512;
  const std::vector<double> zeros(n, 0.0);
  const PruneSketch z = prune_sketch_build(zeros, 2, 0.5, kDesk, 7);
  CHECK(z.reps == 6);      // ceil(6 * log2(1/0.5)) = 6
  CHECK(z.buckets == 32);  // ceil(8 * 2 / 0.5)
  CHECK(z.measurement_count() == z.reps * z.buckets);
  for (const double v : z.y) CHECK(v == 0.0);

  std::vector<double> spike(n, 0.0);
  spike[77] = 2.5;
  const PruneSketch sk = prune_sketch_build(spike, 2, 0.5, kDesk, 7);
  for (std::size_t r = 0; r < sk.reps; ++r) {
    const std::uint64_t hot = sk.hashes[r](77);
    for (std::uint64_t b = 0; b < sk.buckets; ++b) {
      if (b == hot) {
        CHECK(sk.bucket(r, b) == 2.5 * sk.coefficient(r, 77));
      } else {
        CHECK(sk.bucket(r, b) == 0.0);
      }
    }
  }
}

TEST_CASE("estimates are lower medians of absolute bucket values") {
  std::vector<double> x(256);
  const CounterRng rng(derive_seed(31, "prune-x"));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.gaussian(i);
  const PruneSketch sk = prune_sketch_build(x, 2, 0.5, kDesk, 11);
  const std::vector<std::size_t> L{4, 99, 200};
  const std::vector<double> z = prune_estimates(sk, L);
  REQUIRE(z.size() == L.size());
  for (std::size_t t = 0; t < L.size(); ++t) {
    std::vector<double> vals;
    for (std::size_t r = 0; r < sk.reps; ++r)
      vals.push_back(std::abs(sk.bucket(r, sk.hashes[r](L[t]))));
    CHECK(z[t] == lower_median(vals));
  }
}

TEST_CASE("pruning keeps planted spikes and respects the size law") {
  const std::size_t n = 512, k = 2;
  std::vector<double> x(n, 0.0);
  const std::vector<std::size_t> spikes{40, 300};
  for (const std::size_t i : spikes) x[i] = 100.0;

  // candidate list: the true spikes plus eight decoys
  std::vector<std::size_t> L{10, 40, 90, 150, 220, 300, 310, 400, 470, 500};
  std::size_t kept_both = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PruneSketch sk = prune_sketch_build(x, k, 0.5, kDesk, s);
    const std::vector<std::size_t> S = prune(sk, L, kDesk);
    CHECK(S.size() == std::min<std::size_t>(
                          static_cast<std::size_t>(kDesk.prune_beta) * k,
                          L.size()));
    CHECK(std::is_sorted(S.begin(), S.end()));
    for (const std::size_t i : S)
      CHECK(std::find(L.begin(), L.end(), i) != L.end());
    kept_both += std::binary_search(S.begin(), S.end(), spikes[0]) &&
                 std::binary_search(S.begin(), S.end(), spikes[1]);
  }
  CHECK(kept_both >= 18);  // zero tail: spikes dominate every estimate
}

TEST_CASE("degenerate candidate lists") {
  const std::size_t n = 512;
  std::vector<double> x(n, 0.0);
  x[5] = 1.0;
  const PruneSketch sk = prune_sketch_build(x, 1, 0.5, kDesk, 3);
  const std::vector<std::size_t> one{5};
  CHECK(prune(sk, one, kDesk) == one);
  const std::vector<std::size_t> empty;
  CHECK(prune(sk, empty, kDesk).empty());
}

TEST_CASE("input list precondition is enforced") {
  const std::size_t n = 512;
  const std::vector<double> x(n, 0.0);
  const PruneSketch sk = prune_sketch_build(x, 1, 0.5, kDesk, 3);
  // cap is ceil(C_L * k / eps) = 40 at desk constants
  std::vector<std::size_t> big(41);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = i;
  CHECK_THROWS_AS((void)prune(sk, big, kDesk), std::invalid_argument);
  std::vector<std::size_t> oob{n};
  CHECK_THROWS_AS((void)prune(sk, oob, kDesk), std::invalid_argument);
}
