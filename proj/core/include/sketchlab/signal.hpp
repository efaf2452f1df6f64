#pragma once

// Dense signals, norms, head/tail decompositions, sparse approximations, and
// the on-disk signal formats. Indices are 0-based everywhere; magnitude ties
// always break toward the smaller index.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sketchlab {

using Cplx = std::complex<double>;

// ---------- norms ----------

// (sum |x_i|^p)^(1/p); p must lie in (0, 2] (quasi-norm allowed for p < 1)
double lp_norm(std::span<const double> x, double p);
double lp_norm(std::span<const Cplx> x, double p);

// ---------- head / tail ----------

// Indices of the k largest magnitudes (all of [n] when k >= n), ties to the
// smaller index. Returned sorted by index.
std::vector<std::size_t> head_set(std::span<const double> x, std::size_t k);
std::vector<std::size_t> head_set(std::span<const Cplx> x, std::size_t k);

// lp norm of the signal with its head zeroed out: ||x_{-k}||_p
double tail_norm(std::span<const double> x, std::size_t k, double p);
double tail_norm(std::span<const Cplx> x, std::size_t k, double p);

// l2 tail norm of a spectrum (the benchmark error for spectral recovery)
double fourier_err(std::span<const Cplx> xhat, std::size_t k);

// ---------- sparse approximations ----------

// Sparse vector over [0, n); entries sorted by index, unique.
struct SparseApprox {
  std::size_t n{0};
  std::vector<std::pair<std::size_t, double>> entries;

  double value_at(std::size_t i) const;
  void set(std::size_t i, double v);  // insert or overwrite
  std::vector<std::size_t> support() const;
};

struct SparseSpectrum {
  std::size_t n{0};
  std::vector<std::pair<std::size_t, Cplx>> entries;

  Cplx value_at(std::size_t i) const;
  void set(std::size_t i, Cplx v);
  std::vector<std::size_t> support() const;
};

// ||x - x'||_2 over all of [n]
double l2_err(std::span<const double> x, const SparseApprox& approx);
// ||(x' - xhat) restricted to S||_2
double l2_err_on(std::span<const Cplx> xhat, const SparseSpectrum& approx,
                 std::span<const std::size_t> s);

// ---------- support sets ----------

// sorted, unique, all < n; throws std::invalid_argument otherwise
void validate_support(std::span<const std::size_t> s, std::size_t n);

// Lower median: element of rank floor((m-1)/2) in sorted order (the smaller
// of the two middle values when m is even).  Throws on empty input.
double lower_median(std::span<const double> v);

// ---------- file formats ----------
//
// Text (default): one value per line; complex values as "re,im".
// Binary (paths ending in .f64 / .c64): 8-byte little-endian element count,
// then count little-endian doubles (interleaved re,im pairs for complex).

std::vector<double> load_real_signal(const std::string& path);
std::vector<Cplx> load_complex_signal(const std::string& path);
void save_real_signal(const std::string& path, std::span<const double> x);
void save_complex_signal(const std::string& path, std::span<const Cplx> x);

// one index per line
std::vector<std::size_t> load_support(const std::string& path);
void save_support(const std::string& path, std::span<const std::size_t> s);

}  // namespace sketchlab
