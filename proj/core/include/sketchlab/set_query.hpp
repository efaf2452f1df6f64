#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sketchlab/hashing.hpp"
#include "sketchlab/profile.hpp"
#include "sketchlab/signal.hpp"

namespace sketchlab {

// Layered count sketch with signs for set query: layer i hashes [n] into
// B_i = ceil((C*k/eps) * 10^{-i}) buckets, so layers shrink geometrically.
// Update is streaming (one bucket per layer); Query peels isolated support
// elements layer by layer, subtracting recovered values from every layer.
struct SetQuerySketch {
  std::size_t n = 0;
  std::size_t k = 1;
  double eps = 0.5;
  std::uint64_t seed = 0;
  std::size_t layers = 1;  // max(1, ceil(log2 k))
  std::vector<std::size_t> layer_buckets;  // B_i
  std::vector<std::size_t> layer_offsets;  // start of layer i in y
  std::vector<PairwiseHash> hashes;        // one per layer
  std::vector<SignFunction> signs;         // one per layer
  std::vector<double> y;                   // stacked measurements

  std::size_t measurement_count() const { return y.size(); }
};

SetQuerySketch sq_create(std::size_t n, std::size_t k, double eps,
                         const ConstantProfile& prof, std::uint64_t seed);

// Turnstile update x_i += delta.  Touches exactly `layers` buckets; returns
// that touch count so callers can assert the space/time accounting.
std::size_t sq_update(SetQuerySketch& sk, std::size_t i, double delta);

struct SetQueryStats {
  std::vector<std::size_t> survivor_sizes;   // |S_i| entering each round
  std::vector<std::size_t> recovered_sizes;  // |T_i| recovered per round
  std::size_t unrecovered = 0;               // |S| left after the last round
  std::size_t bucket_touches = 0;            // reads + subtraction writes
};

// Recovers x restricted to S from the sketch.  S must be a valid support of
// size at most k (std::domain_error otherwise).  Elements never isolated in
// any layer receive estimate 0.  Pure: operates on a copy of the
// measurements.
SparseApprox sq_query(const SetQuerySketch& sk,
                      std::span<const std::size_t> S,
                      SetQueryStats* stats = nullptr);

// The layer parameters the analysis tracks: k_i = k*gamma^i and
// eps_i = eps*(10*gamma)^i for layer i (0-based).
struct SetQuerySchedule {
  std::vector<double> k_i;
  std::vector<double> eps_i;
  std::vector<std::size_t> buckets_i;
};
SetQuerySchedule sq_schedule(std::size_t k, double eps,
                             const ConstantProfile& prof);

}  // namespace sketchlab
