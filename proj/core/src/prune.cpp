#include "sketchlab/prune.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sketchlab/rng.hpp"
#include "sketchlab/signal.hpp"

namespace sketchlab {

double PruneSketch::coefficient(std::size_t r, std::size_t i) const {
  const CounterRng coeff{derive_seed(seed, "prune-coeff")};
  return coeff.gaussian(r * static_cast<std::uint64_t>(n) + i);
}

PruneSketch prune_sketch_build(std::span<const double> x, std::size_t k,
                               double eps, const ConstantProfile& prof,
                               std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("prune: k must be >= 1");
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("prune: eps must lie in (0,1)");
  PruneSketch sk;
  sk.n = x.size();
  sk.k = k;
  sk.eps = eps;
  sk.seed = seed;
  sk.reps = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(prof.prune_cr * std::log2(1.0 / eps))));
  sk.buckets = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::ceil(prof.prune_cb * static_cast<double>(k) / eps)));

  const CounterRng hash_rng{derive_seed(seed, "prune-hash")};
  sk.hashes.reserve(sk.reps);
  for (std::size_t r = 0; r < sk.reps; ++r)
    sk.hashes.push_back(PairwiseHash::sample(hash_rng, r, sk.n, sk.buckets));

  const CounterRng coeff{derive_seed(seed, "prune-coeff")};
  sk.y.assign(sk.reps * sk.buckets, 0.0);
  for (std::size_t i = 0; i < sk.n; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t r = 0; r < sk.reps; ++r) {
      const double g = coeff.gaussian(r * static_cast<std::uint64_t>(sk.n) + i);
      sk.y[r * sk.buckets + sk.hashes[r](i)] += g * x[i];
    }
  }
  return sk;
}

std::vector<double> prune_estimates(const PruneSketch& sk,
                                    std::span<const std::size_t> L) {
  std::vector<double> z(L.size());
  std::vector<double> med(sk.reps);
  for (std::size_t t = 0; t < L.size(); ++t) {
    if (L[t] >= sk.n)
      throw std::invalid_argument("prune: candidate index out of range");
    for (std::size_t r = 0; r < sk.reps; ++r)
      med[r] = std::abs(sk.bucket(r, sk.hashes[r](L[t])));
    z[t] = lower_median(med);
  }
  return z;
}

std::vector<std::size_t> prune(const PruneSketch& sk,
                               std::span<const std::size_t> L,
                               const ConstantProfile& prof) {
  const auto cap = static_cast<std::size_t>(std::ceil(
      prof.prune_cl * static_cast<double>(sk.k) / sk.eps));
  if (L.size() > cap)
    throw std::invalid_argument(
        "prune: candidate list exceeds the C_L*k/eps input cap");
  if (L.empty()) return {};
  validate_support(L, sk.n);

  const std::vector<double> z = prune_estimates(sk, L);
  const auto keep = std::min<std::size_t>(
      static_cast<std::size_t>(prof.prune_beta * static_cast<double>(sk.k)),
      L.size());
  std::vector<std::size_t> order(L.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (z[a] != z[b]) return z[a] > z[b];
    return L[a] < L[b];
  });
  std::vector<std::size_t> s(keep);
  for (std::size_t t = 0; t < keep; ++t) s[t] = L[order[t]];
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace sketchlab
