#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sketchlab/profile.hpp"
#include "sketchlab/rng.hpp"
#include "sketchlab/signal.hpp"

namespace sketchlab {

// ---------- transforms ----------

// Unitary DFT: xhat_f = (1/sqrt(n)) * sum_j x_j e^{-2*pi*i*f*j/n}.
// n must be a power of two (std::domain_error otherwise).
std::vector<Cplx> dft(std::span<const Cplx> x);
std::vector<Cplx> inverse_dft(std::span<const Cplx> x);

// ---------- spectrum permutation ----------

// (P x)_i = x_{sigma*(i-a) mod n} * e^{-2*pi*i*sigma*b*i/n}; in the frequency
// domain this sends tone i to pi(i) = sigma*(i-b) mod n with an extra phase
// e^{-2*pi*i*sigma*a*i/n}.
struct SpectrumPermutation {
  std::size_t n = 1;
  std::uint64_t sigma = 1;  // odd, hence invertible mod the power-of-two n
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  // sigma uniform over odd residues, a and b uniform over [n); one slot
  // consumes three rng counters.
  static SpectrumPermutation sample(const CounterRng& rng, std::uint64_t slot,
                                    std::size_t n);

  std::size_t pi(std::size_t i) const;

  // bin of frequency i among B bins: round-half-up(pi(i)*B/n) mod B
  std::size_t bin(std::size_t i, std::size_t B) const;

  // signed offset pi(i) - round(pi(i)*B/n)*(n/B), in [-n/(2B), n/(2B))
  long long offset(std::size_t i, std::size_t B) const;

  // one time-domain sample of the permuted signal
  Cplx permuted_sample(std::span<const Cplx> x, std::size_t t) const;
};

// Max modulus deviation of the permutation identity
// DFT(Px)_{pi(i)} = xhat_i * e^{-2*pi*i*sigma*a*i/n}, via naive DFTs.
double permute_spectrum_check(std::span<const Cplx> x,
                              const SpectrumPermutation& perm);

// ---------- flat-window filter ----------

// Time-domain window G (small support) whose frequency response approximates
// the ideal bucket filter Ghat_ideal: 1 on |f| <= (1-alpha)*n/(2B), 0 on
// |f| >= n/(2B), a monotone ramp between.
struct FlatFilter {
  std::size_t n = 0;
  std::size_t B = 1;
  double delta = 0.0;
  double alpha = 0.0;

  std::vector<std::size_t> support;  // time indices t with G_t kept, sorted
  std::vector<double> g;             // G_t for each support index
  std::vector<double> ideal_half;    // Ghat_ideal at frequencies 0..n/2
  double delta_filter = 0.0;         // measured max |DFT(G)/sqrt(n) - ideal|
  double c_f = 0.0;  // |supp(G)| / (alpha^{-1} B log2(n/delta)), reported

  // Ghat_ideal at a signed frequency (any integer; reduced to [-n/2, n/2])
  double ideal_at(long long f) const;
};

// Budget constant for the filter support assertion |supp(G)| <= kFilterSupportC *
// alpha^{-1} * B * log2(n/delta) (clipped to n).
inline constexpr double kFilterSupportC = 2.0;

// Throws std::domain_error when B < 2 or B does not divide n;
// std::invalid_argument for alpha/delta outside (0,1); std::runtime_error if
// the measured deviation exceeds delta.
FlatFilter build_filter(std::size_t n, std::size_t B, double delta,
                        double alpha);

// ---------- bucketed spectrum access ----------

// The linear stage feeding the bucket transform: folded_s =
// sum_{t in supp(G), t = s mod B} G_t * (Px)_t.  samples (when given)
// accrues the number of time-domain samples read.
std::vector<Cplx> fold_samples(std::span<const Cplx> x,
                               const SpectrumPermutation& perm,
                               const FlatFilter& filt,
                               std::size_t* samples = nullptr);

// uhat_j ~= sum_{bin(i)=j} (xhat - zhat)_i * Ghat_ideal(-offset(i)) *
//           e^{-2*pi*i*sigma*a*i/n}, computed from fold_samples followed by
// one B-point FFT, and a sparse ideal-filter correction for zhat.
std::vector<Cplx> hash_to_bins(std::span<const Cplx> x,
                               const SparseSpectrum& zhat,
                               const SpectrumPermutation& perm,
                               const FlatFilter& filt,
                               std::size_t* samples = nullptr);

// ---------- set query ----------

struct EstimateOutcome {
  SparseSpectrum what;             // estimates on the recovered set T
  std::vector<std::size_t> T;      // isolated, small-offset elements of S
};

// One round: random (sigma, a, b), HashToBins, then per-element estimation
// for isolated elements with small offset.
EstimateOutcome estimate_values(std::span<const Cplx> x,
                                const SparseSpectrum& zhat,
                                std::span<const std::size_t> S,
                                const FlatFilter& filt,
                                const SpectrumPermutation& perm,
                                std::size_t* samples = nullptr);

struct FourierQueryStats {
  std::vector<std::size_t> survivor_sizes;   // |S_i| entering each iteration
  std::vector<std::size_t> recovered_sizes;  // |T_i|
  std::vector<std::size_t> buckets_i;        // B_i per iteration
  std::vector<double> alpha_i;               // alpha_i per iteration
  std::vector<double> delta_filters;         // measured filter deviations
  std::size_t samples = 0;                   // total time samples read
  std::size_t unrecovered = 0;
};

// Full set-query loop: R = ceil(log2(k)/log2(1/gamma)) + 1 iterations of
// EstimateValues with the geometric schedule k_i = k*gamma^i,
// eps_i = eps*(10 gamma)^i (0-based), alpha_i = 1/(div * i^pow) (1-based),
// B_i = min(n, next power of two >= C*k_i/(alpha_i^2 eps_i)).
// Unrecovered elements of S keep estimate 0.
SparseSpectrum fourier_set_query(std::span<const Cplx> x,
                                 std::span<const std::size_t> S,
                                 std::size_t k, double eps, double delta,
                                 const ConstantProfile& prof,
                                 std::uint64_t seed,
                                 FourierQueryStats* stats = nullptr);

// ---------- event frequencies ----------

// Empirical rates of the collision / large-offset / large-noise events for
// the fixed element i = S.front() over `trials` random (sigma, b) pairs.
// The noise event is evaluated exactly from the residual spectrum
// xhat (zhat = 0 here) by the brute-force rule in the oracle module.
struct EventRates {
  double collision = 0.0;
  double offset = 0.0;
  double noise = 0.0;
};
EventRates event_frequencies(std::span<const Cplx> xhat,
                             std::span<const std::size_t> S, std::size_t B,
                             double alpha, std::size_t k, std::size_t trials,
                             std::uint64_t seed);

}  // namespace sketchlab
