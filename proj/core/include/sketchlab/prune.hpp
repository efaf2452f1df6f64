#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sketchlab/hashing.hpp"
#include "sketchlab/profile.hpp"

namespace sketchlab {

// Gaussian count-sketch used to prune a candidate list down to beta*k
// coordinates: R repetitions of a pairwise hash into B buckets with gaussian
// coefficients; estimates are medians of absolute bucket values.
struct PruneSketch {
  std::size_t n = 0;
  std::size_t k = 1;
  double eps = 0.5;
  std::uint64_t seed = 0;
  std::size_t reps = 1;     // R = max(1, ceil(C_R * log2(1/eps)))
  std::size_t buckets = 1;  // B = ceil(C_B * k / eps)
  std::vector<PairwiseHash> hashes;  // one per repetition
  std::vector<double> y;             // y[r*buckets + b]

  double bucket(std::size_t r, std::uint64_t b) const {
    return y[r * buckets + b];
  }
  // gaussian coefficient of coordinate i in repetition r
  double coefficient(std::size_t r, std::size_t i) const;
  std::size_t measurement_count() const { return reps * buckets; }
};

PruneSketch prune_sketch_build(std::span<const double> x, std::size_t k,
                               double eps, const ConstantProfile& prof,
                               std::uint64_t seed);

// z_i = lower median over r of |y_{r, h_r(i)}|, for each i in L (own order).
std::vector<double> prune_estimates(const PruneSketch& sk,
                                    std::span<const std::size_t> L);

// Keeps the min(beta*k, |L|) candidates with the largest estimates (ties to
// the smaller index); result sorted ascending, always a subset of L.
// Requires |L| <= C_L*k/eps (the documented input-size precondition).
std::vector<std::size_t> prune(const PruneSketch& sk,
                               std::span<const std::size_t> L,
                               const ConstantProfile& prof);

}  // namespace sketchlab
