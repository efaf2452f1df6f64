#include "sketchlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sketchlab {

namespace {

void check_cap(std::size_t n) {
  if (n > kOracleSizeCap)
    throw std::length_error("oracle: size cap exceeded");
}

}  // namespace

OracleReport make_oracle_report(std::string quantity, double oracle_value,
                                double fast_value) {
  OracleReport r;
  r.quantity = std::move(quantity);
  r.oracle_value = oracle_value;
  r.fast_value = fast_value;
  r.abs_dev = std::abs(oracle_value - fast_value);
  r.rel_dev = r.abs_dev / std::max(std::abs(oracle_value), 1e-300);
  return r;
}

namespace {

// Direct O(n^2) sum; the n distinct twiddle values are tabulated once.
std::vector<Cplx> naive_transform(std::span<const Cplx> x, double sign) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("naive transform: empty input");
  check_cap(n);
  std::vector<Cplx> twiddle(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double ang = sign * 2.0 * std::numbers::pi *
                       static_cast<double>(j) / static_cast<double>(n);
    twiddle[j] = Cplx{std::cos(ang), std::sin(ang)};
  }
  std::vector<Cplx> out(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t f = 0; f < n; ++f) {
    Cplx acc{0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t) acc += x[t] * twiddle[(f * t) % n];
    out[f] = acc * scale;
  }
  return out;
}

}  // namespace

std::vector<Cplx> naive_dft(std::span<const Cplx> x) {
  return naive_transform(x, -1.0);
}

std::vector<Cplx> naive_inverse_dft(std::span<const Cplx> x) {
  return naive_transform(x, 1.0);
}

std::vector<double> dense_forest_measurements(std::span<const double> x,
                                              const ForestSketch& sk) {
  check_cap(x.size());
  if (x.size() != sk.geom.n)
    throw std::invalid_argument("oracle: signal/sketch size mismatch");
  const ForestGeometry& g = sk.geom;
  std::vector<double> out;
  out.reserve(g.measurement_count());
  for (std::size_t l = 1; l <= g.height; ++l) {
    for (std::size_t r = 0; r < g.reps; ++r) {
      const PairwiseHash& h = sk.hash_at(l, r);
      for (std::uint64_t b = 0; b < g.buckets; ++b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < g.n; ++i) {
          if (x[i] == 0.0) continue;
          if (h(g.interval_of(l, i)) != b) continue;
          acc += sk.coefficient(l, r, i) * x[i];
        }
        out.push_back(acc);
      }
    }
  }
  return out;
}

std::vector<double> dense_prune_measurements(std::span<const double> x,
                                             const PruneSketch& sk) {
  check_cap(x.size());
  if (x.size() != sk.n)
    throw std::invalid_argument("oracle: signal/sketch size mismatch");
  std::vector<double> out;
  out.reserve(sk.measurement_count());
  for (std::size_t r = 0; r < sk.reps; ++r) {
    const PairwiseHash& h = sk.hashes[r];
    for (std::uint64_t b = 0; b < sk.buckets; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < sk.n; ++i) {
        if (x[i] == 0.0) continue;
        if (h(i) != b) continue;
        acc += sk.coefficient(r, i) * x[i];
      }
      out.push_back(acc);
    }
  }
  return out;
}

std::vector<double> dense_set_query_measurements(std::span<const double> x,
                                                 const SetQuerySketch& sk) {
  check_cap(x.size());
  if (x.size() != sk.n)
    throw std::invalid_argument("oracle: signal/sketch size mismatch");
  std::vector<double> out;
  out.reserve(sk.measurement_count());
  for (std::size_t l = 0; l < sk.layers; ++l) {
    const PairwiseHash& h = sk.hashes[l];
    const SignFunction& s = sk.signs[l];
    for (std::uint64_t b = 0; b < sk.layer_buckets[l]; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < sk.n; ++i) {
        if (x[i] == 0.0) continue;
        if (h(i) != b) continue;
        acc += static_cast<double>(s(i)) * x[i];
      }
      out.push_back(acc);
    }
  }
  return out;
}

std::vector<Cplx> dense_fold(std::span<const Cplx> x,
                             const SpectrumPermutation& perm,
                             const FlatFilter& filt) {
  check_cap(x.size());
  if (perm.n != x.size() || filt.n != x.size())
    throw std::invalid_argument("oracle: signal/filter size mismatch");
  std::vector<Cplx> out(filt.B, Cplx{0.0, 0.0});
  for (std::uint64_t b = 0; b < filt.B; ++b) {
    Cplx acc{0.0, 0.0};
    for (std::size_t idx = 0; idx < filt.support.size(); ++idx) {
      const std::size_t t = filt.support[idx];
      if (t % filt.B != b) continue;
      acc += filt.g[idx] * perm.permuted_sample(x, t);
    }
    out[b] = acc;
  }
  return out;
}

bool exact_noise_event(std::span<const Cplx> xhat, const SparseSpectrum& zhat,
                       std::span<const std::size_t> S,
                       const SpectrumPermutation& perm, std::size_t B,
                       double alpha, std::size_t k, std::size_t target) {
  const std::size_t n = xhat.size();
  check_cap(n);
  if (perm.n != n) throw std::invalid_argument("oracle: size mismatch");
  validate_support(S, n);
  if (target >= n) throw std::out_of_range("oracle: target out of range");
  if (!(alpha > 0.0) || B == 0 || k == 0)
    throw std::invalid_argument("oracle: bad noise-event parameters");

  std::vector<double> resid_sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Cplx r = xhat[i] - zhat.value_at(i);
    resid_sq[i] = std::norm(r);
  }

  // Err^2(x', k): total residual energy minus the k largest terms.
  std::vector<double> sorted = resid_sq;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double err_sq = 0.0;
  for (std::size_t i = std::min(k, n); i < n; ++i) err_sq += sorted[i];

  const std::size_t target_bin = perm.bin(target, B);
  double bucket_energy = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (perm.bin(j, B) != target_bin) continue;
    if (std::binary_search(S.begin(), S.end(), j)) continue;
    bucket_energy += resid_sq[j];
  }

  const double threshold = err_sq / (alpha * static_cast<double>(B));
  if (bucket_energy == 0.0 && threshold == 0.0) return false;
  return bucket_energy >= threshold;
}

}  // namespace sketchlab
