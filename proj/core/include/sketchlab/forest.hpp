#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sketchlab/hashing.hpp"
#include "sketchlab/profile.hpp"

namespace sketchlab {

// Geometry of the D-ary interval forest used by the identification sketch.
// The signal [0, n) is cut into trees of q consecutive coordinates (q a power
// of two, at least 16); each tree is split top-down into D-ary interval
// families; after H levels the intervals are single coordinates.
struct ForestGeometry {
  std::size_t n = 0;
  std::size_t k = 1;
  double eps = 0.5;

  std::size_t tau = 0;        // requested tree count ceil(k / eps)
  std::size_t q = 16;         // coordinates per tree (power of two, >= 16)
  std::size_t num_trees = 0;  // actual trees: ceil(n / q)
  std::size_t degree = 2;     // D
  std::size_t height = 1;     // H: levels 1..H carry measurements
  std::size_t reps = 1;       // R: repetitions per level
  std::size_t buckets = 1;    // B: hash range per (level, rep)
  std::size_t list_cap = 1;   // survivor cap per level: ceil(C_L * k / eps)

  // D^level; level <= height, product checked against overflow.
  std::uint64_t pow_d(std::size_t level) const;

  // Number of global interval slots at a level (hash domain): num_trees * D^l.
  std::uint64_t intervals_at(std::size_t level) const;

  // Half-open global coordinate span of interval j at a level, clipped to n.
  // May be empty (lo == hi) when D^level exceeds q or the last tree is short.
  std::pair<std::size_t, std::size_t> interval_span(std::size_t level,
                                                    std::uint64_t j) const;

  // Global index of the level-l interval containing coordinate i.
  std::uint64_t interval_of(std::size_t level, std::size_t i) const;

  std::size_t measurement_count() const { return buckets * height * reps; }
};

// Derives the geometry from (n, k, eps) and the profile constants.
// Throws std::invalid_argument when k/eps > n/16 (the forest needs at least
// 16 coordinates per requested tree).
ForestGeometry forest_geometry(std::size_t n, std::size_t k, double eps,
                               const ConstantProfile& prof);

// Linear identification sketch: per level l in [1, H], per repetition r, a
// pairwise hash of the level's intervals into B buckets and gaussian
// coefficients per coordinate.
struct ForestSketch {
  ForestGeometry geom;
  std::uint64_t seed = 0;
  // hash for (level l in [1,H], rep r): hashes[(l-1)*reps + r]
  std::vector<PairwiseHash> hashes;
  // measurements for level l: y[l-1][r*buckets + b]
  std::vector<std::vector<double>> y;

  const PairwiseHash& hash_at(std::size_t level, std::size_t r) const {
    return hashes[(level - 1) * geom.reps + r];
  }
  double bucket(std::size_t level, std::size_t r, std::uint64_t b) const {
    return y[level - 1][r * geom.buckets + b];
  }
  // gaussian coefficient of coordinate i at (level, rep)
  double coefficient(std::size_t level, std::size_t r, std::size_t i) const;
};

ForestSketch forest_sketch_build(std::span<const double> x,
                                 const ForestGeometry& geom,
                                 const ConstantProfile& prof,
                                 std::uint64_t seed);

struct ForestDecodeStats {
  std::vector<std::size_t> survivors;  // per level 1..H, after thresholding
  std::size_t bucket_touches = 0;      // buckets read while decoding
  std::size_t bucket_touch_cap = 0;    // sum over levels of |T_{l-1}|*D*R
  bool cap_hit = false;                // some level was truncated to list_cap
};

// Top-down decode: roots enter unconditionally; at each level keep children
// whose lower-median squared bucket value reaches eta*V (strictly positive
// when V == 0), truncating to list_cap by largest estimate.  Returns the
// surviving leaf coordinates, sorted.
std::vector<std::size_t> forest_decode(const ForestSketch& sk, double V,
                                       const ConstantProfile& prof,
                                       ForestDecodeStats* stats = nullptr);

// Full identification stage: estimate the tail scale from its own sketch
// (p=2, failure probability 1/100), threshold at eps * estimate, then build
// and decode the forest sketch.  Seeds for the two sketches are derived from
// `seed` with distinct tags.  `measurements` (when given) receives the total
// row count including the tail sketch.
std::vector<std::size_t> forest_recover(std::span<const double> x,
                                        std::size_t k, double eps,
                                        const ConstantProfile& prof,
                                        std::uint64_t seed,
                                        ForestDecodeStats* stats = nullptr,
                                        std::size_t* measurements = nullptr);

}  // namespace sketchlab
