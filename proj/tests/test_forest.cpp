#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sketchlab/forest.hpp"
#include "sketchlab/profile.hpp"
#include "sketchlab/rng.hpp"

using namespace sketchlab;

namespace {
const ConstantProfile kDesk = ConstantProfile::desk();
}

TEST_CASE("geometry derivation at a pinned corner") {
  // n = 2^16, k = 4, eps = 1/4: tau = 16 trees of q = 4096; log2 q = 12,
  // log2 log2 q = log2 12, so D = ceil(12 / log2 12) = 4 and H (desk C_H = 2)
  // = ceil(2 * 12 / log2 12) = 7.
  const ForestGeometry g = forest_geometry(1 << 16, 4, 0.25, kDesk);
  CHECK(g.tau == 16);
  CHECK(g.q == 4096);
  CHECK(g.num_trees == 16);
  CHECK(g.degree == 4);
  CHECK(g.height == 7);
  CHECK(g.pow_d(g.height) >= g.q);  // leaves are single coordinates
  CHECK(g.measurement_count() == g.buckets * g.height * g.reps);
  CHECK(g.list_cap == 320);  // ceil(20 * 4 / 0.25)
}

TEST_CASE("geometry boundary: the minimum tree size") {
  const ForestGeometry g = forest_geometry(32, 1, 0.5, kDesk);
  CHECK(g.q == 16);  // never below 16 coordinates per tree
  CHECK(g.num_trees == 2);
  CHECK(g.degree == 2);  // log2 q = 4, log2 log2 q = 2
  CHECK(g.pow_d(g.height) >= g.q);
}

TEST_CASE("geometry rejects too many trees for the domain") {
  CHECK_THROWS_AS((void)forest_geometry(64, 8, 0.5, kDesk),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)forest_geometry(0, 1, 0.5, kDesk),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)forest_geometry(64, 0, 0.5, kDesk),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)forest_geometry(64, 1, 1.5, kDesk),
                  std::invalid_argument);
}

TEST_CASE("interval tree structure is consistent") {
  const ForestGeometry g = forest_geometry(1000, 2, 0.5, kDesk);
  for (std::size_t level = 1; level <= g.height; ++level) {
    // spans tile [0, n): walking interval indices covers every coordinate
    std::size_t covered = 0;
    for (std::uint64_t j = 0; j < g.intervals_at(level); ++j) {
      const auto [lo, hi] = g.interval_span(level, j);
      CHECK(lo <= hi);
      CHECK(hi <= g.n);
      CHECK(lo == covered);
      covered = hi;
      for (std::size_t i = lo; i < hi; ++i)
        CHECK(g.interval_of(level, i) == j);
    }
    CHECK(covered == g.n);
  }
  // parent of a level-(l+1) interval is its index divided by the degree
  for (std::size_t level = 1; level + 1 <= g.height; ++level) {
    for (std::size_t i : {std::size_t{0}, std::size_t{17}, std::size_t{999}}) {
      CHECK(g.interval_of(level, i) == g.interval_of(level + 1, i) / g.degree);
    }
  }
  // at the leaf level every nonempty interval is a single coordinate
  for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{999}}) {
    const auto [lo, hi] = g.interval_span(g.height, g.interval_of(g.height, i));
    CHECK(lo == i);
    CHECK(hi == i + 1);
  }
}

TEST_CASE("sketch of the zero signal is zero; of a spike, one bucket") {
  const ForestGeometry g = forest_geometry(512, 1, 0.5, kDesk);
  const std::vector<double> zeros(512, 0.0);
  const ForestSketch z = forest_sketch_build(zeros, g, kDesk, 3);
  for (const auto& level : z.y)
    for (const double v : level) CHECK(v == 0.0);

  std::vector<double> spike(512, 0.0);
  const std::size_t pos = 137;
  spike[pos] = 1.0;
  const ForestSketch sk = forest_sketch_build(spike, g, kDesk, 3);
  for (std::size_t level = 1; level <= g.height; ++level) {
    for (std::size_t r = 0; r < g.reps; ++r) {
      const std::uint64_t hot = sk.hash_at(level, r)(g.interval_of(level, pos));
      for (std::uint64_t b = 0; b < g.buckets; ++b) {
        if (b == hot) {
          CHECK(sk.bucket(level, r, b) == sk.coefficient(level, r, pos));
        } else {
          CHECK(sk.bucket(level, r, b) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("decoding the zero signal returns the empty list") {
  const ForestGeometry g = forest_geometry(512, 1, 0.5, kDesk);
  const std::vector<double> zeros(512, 0.0);
  const ForestSketch sk = forest_sketch_build(zeros, g, kDesk, 3);
  ForestDecodeStats st;
  CHECK(forest_decode(sk, 0.0, kDesk, &st).empty());
  CHECK(st.bucket_touches <= st.bucket_touch_cap);
}

TEST_CASE("a lone spike is identified across seeds") {
  std::vector<double> x(1024, 0.0);
  const std::size_t pos = 700;
  x[pos] = 1000.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    ForestDecodeStats st;
    const auto L = forest_recover(x, 1, 0.5, kDesk, s, &st);
    REQUIRE(!L.empty());
    CHECK(std::binary_search(L.begin(), L.end(), pos));
    CHECK(L.size() <= 4);  // no tail energy: false positives need collisions
    for (const std::size_t survivors : st.survivors) {
      const ForestGeometry g = forest_geometry(1024, 1, 0.5, kDesk);
      CHECK(survivors <= g.list_cap);
    }
  }
}

TEST_CASE("coefficients are reproducible and level-independent draws") {
  const ForestGeometry g = forest_geometry(512, 1, 0.5, kDesk);
  std::vector<double> x(512);
  const CounterRng rng(derive_seed(21, "forest-x"));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.gaussian(i);
  const ForestSketch a = forest_sketch_build(x, g, kDesk, 9);
  const ForestSketch b = forest_sketch_build(x, g, kDesk, 9);
  CHECK(a.y == b.y);
  CHECK(a.coefficient(1, 0, 5) == b.coefficient(1, 0, 5));
  CHECK(a.coefficient(1, 0, 5) != a.coefficient(2, 0, 5));
}
