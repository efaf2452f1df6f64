#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sketchlab/forest.hpp"
#include "sketchlab/fourier.hpp"
#include "sketchlab/prune.hpp"
#include "sketchlab/set_query.hpp"
#include "sketchlab/signal.hpp"

namespace sketchlab {

// Brute-force reference implementations, used only by tests and the harness.
// All dense re-evaluations are capped at this size and throw
// std::length_error beyond it.
inline constexpr std::size_t kOracleSizeCap = std::size_t{1} << 12;

struct OracleReport {
  std::string quantity;
  double oracle_value = 0.0;
  double fast_value = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;  // abs_dev / max(|oracle|, tiny)
};

OracleReport make_oracle_report(std::string quantity, double oracle_value,
                                double fast_value);

// Direct O(n^2) unitary transform and its inverse (any n >= 1).
std::vector<Cplx> naive_dft(std::span<const Cplx> x);
std::vector<Cplx> naive_inverse_dft(std::span<const Cplx> x);

// Row-by-row re-evaluation of each linear sketch.  Each returns the full
// measurement vector in the same layout the fast path stores, accumulating
// every row over coordinates in ascending order with the same skip-zero rule,
// so equality against the fast path is exact, not approximate.
std::vector<double> dense_forest_measurements(std::span<const double> x,
                                              const ForestSketch& sk);
std::vector<double> dense_prune_measurements(std::span<const double> x,
                                             const PruneSketch& sk);
std::vector<double> dense_set_query_measurements(std::span<const double> x,
                                                 const SetQuerySketch& sk);
// The folded vector feeding the bucketed-spectrum transform (pre-FFT stage).
std::vector<Cplx> dense_fold(std::span<const Cplx> x,
                             const SpectrumPermutation& perm,
                             const FlatFilter& filt);

// Evaluates the large-noise event for coordinate `target` exactly: with
// x' = xhat - zhat, tests ||x'_{h^{-1}(h(target)) \ S}||^2 >= Err^2(x', k) /
// (alpha * B), where Err(x', k) is the exact distance to the best
// k-sparse approximation.  Both sides zero counts as no noise.
bool exact_noise_event(std::span<const Cplx> xhat, const SparseSpectrum& zhat,
                       std::span<const std::size_t> S,
                       const SpectrumPermutation& perm, std::size_t B,
                       double alpha, std::size_t k, std::size_t target);

}  // namespace sketchlab
