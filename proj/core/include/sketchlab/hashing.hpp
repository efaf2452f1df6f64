#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "sketchlab/rng.hpp"

namespace sketchlab {

// Prime modulus for the pairwise-independent hash family.
inline constexpr std::uint64_t kMersenneP = (std::uint64_t{1} << 61) - 1;

// Reduce v modulo 2^61 - 1.  Callers guarantee v < 2^122 (it is a product of
// two values below the modulus, possibly plus one more such value), so the
// high part v >> 61 fits in a u64 and one fold plus one conditional subtract
// suffices.
inline std::uint64_t mod_mersenne61(unsigned __int128 v) {
  std::uint64_t lo = static_cast<std::uint64_t>(v) & kMersenneP;
  std::uint64_t hi = static_cast<std::uint64_t>(v >> 61);
  std::uint64_t s = lo + hi;
  if (s >= kMersenneP) s -= kMersenneP;
  return s;
}

// h(x) = ((a*x + b) mod P) mod buckets with a uniform in [1, P) and b uniform
// in [0, P).  Pairwise independent over any domain of size at most P.
struct PairwiseHash {
  std::uint64_t a = 1;
  std::uint64_t b = 0;
  std::uint64_t domain = 0;
  std::uint64_t buckets = 1;

  static PairwiseHash sample(const CounterRng& rng, std::uint64_t slot,
                             std::uint64_t domain, std::uint64_t buckets) {
    if (domain == 0 || domain > kMersenneP)
      throw std::invalid_argument("PairwiseHash: domain must be in [1, P]");
    if (buckets == 0)
      throw std::invalid_argument("PairwiseHash: buckets must be positive");
    PairwiseHash h;
    h.a = 1 + rng.below(2 * slot, kMersenneP - 1);
    h.b = rng.below(2 * slot + 1, kMersenneP);
    h.domain = domain;
    h.buckets = buckets;
    return h;
  }

  std::uint64_t operator()(std::uint64_t x) const {
    if (x >= domain)
      throw std::domain_error("PairwiseHash: input outside declared domain");
    const std::uint64_t v =
        mod_mersenne61(static_cast<unsigned __int128>(a) * x + b);
    return v % buckets;
  }
};

// sigma(x) in {-1, +1}, pairwise independent: parity of (a*x + b) mod P.
struct SignFunction {
  std::uint64_t a = 1;
  std::uint64_t b = 0;
  std::uint64_t domain = 0;

  static SignFunction sample(const CounterRng& rng, std::uint64_t slot,
                             std::uint64_t domain) {
    if (domain == 0 || domain > kMersenneP)
      throw std::invalid_argument("SignFunction: domain must be in [1, P]");
    SignFunction s;
    s.a = 1 + rng.below(2 * slot, kMersenneP - 1);
    s.b = rng.below(2 * slot + 1, kMersenneP);
    s.domain = domain;
    return s;
  }

  int operator()(std::uint64_t x) const {
    if (x >= domain)
      throw std::domain_error("SignFunction: input outside declared domain");
    const std::uint64_t v =
        mod_mersenne61(static_cast<unsigned __int128>(a) * x + b);
    return (v & 1) ? -1 : 1;
  }
};

// Draws from a p-stable distribution: p = 2 -> standard gaussian,
// p = 1 -> standard cauchy.
struct StableSampler {
  double p = 2.0;

  explicit StableSampler(double p_) : p(p_) {
    if (p != 1.0 && p != 2.0)
      throw std::invalid_argument("StableSampler: p must be 1 or 2");
  }

  double draw(const CounterRng& rng, std::uint64_t i) const {
    return p == 2.0 ? rng.gaussian(i) : rng.cauchy(i);
  }
};

// Monte-Carlo estimates used to sanity-check the samplers and the random
// walk argument behind the recovery analysis.

struct GaussianTailStats {
  double frac_small = 0.0;   // P(|g| <= 0.5)
  double frac_window = 0.0;  // P(5/12 <= |g| <= 2)
};

GaussianTailStats gaussian_tail_bounds(std::size_t trials, std::uint64_t seed);

// Biased random walk on the nonnegative integers started at 1: each step goes
// +1 with probability p_right, else -1; absorbing at 0.  Returns the fraction
// of walks that reach 0 within max_steps.
double biased_walk_return_freq(double p_right, std::size_t walks,
                               std::size_t max_steps, std::uint64_t seed);

}  // namespace sketchlab
