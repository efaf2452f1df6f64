#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sketchlab/profile.hpp"

namespace sketchlab {

// Constant-size sketch for estimating the tail norm ||x_{-k}||_p^p up to
// fixed factors: m repetitions, each subsampling coordinates at rate
// 1/(100k) with p-stable weights.
struct TailSketch {
  std::size_t n = 0;
  std::size_t k = 1;
  double p = 2.0;
  double delta = 0.01;
  std::uint64_t seed = 0;
  double rate = 0.0;       // per-coordinate sampling probability 1/(100k)
  std::vector<double> y;   // m linear measurements

  std::size_t m() const { return y.size(); }
};

// Builds the sketch: y_t = sum_i delta_{i,t} * g_{i,t} * x_i with
// delta_{i,t} ~ Bernoulli(1/(100k)) and g_{i,t} p-stable (p in {1,2}).
// m = ceil(tail_m_mult * log2(1/delta)), at least 1.
// Throws std::domain_error when k > n; std::invalid_argument for bad p/delta.
TailSketch tail_sketch_build(std::span<const double> x, std::size_t k,
                             double p, double delta,
                             const ConstantProfile& prof, std::uint64_t seed);

// V = lower median over t of |y_t|^p.  Throws on an empty sketch.
double tail_estimate(const TailSketch& sk);

// Diagnostic: the realized subsampled norm Delta_t = ||x restricted to the
// coordinates sampled in repetition t||_p, recomputed from the sketch's seed.
// x must be the signal the sketch was built from.
double tail_delta_t(std::span<const double> x, const TailSketch& sk,
                    std::size_t t);

// Exact oracle bracket the estimate is claimed to land in:
// [ (1/(10k)) * ||x_{-C0*k}||_p^p , (1/k) * ||x_{-k}||_p^p ].
struct TailBracket {
  double lower = 0.0;
  double upper = 0.0;
};
TailBracket tail_bracket(std::span<const double> x, std::size_t k, double p,
                         const ConstantProfile& prof);

}  // namespace sketchlab
