#include "sketchlab/set_query.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sketchlab/rng.hpp"

namespace sketchlab {

namespace {

std::size_t layer_count(std::size_t k) {
  std::size_t layers = 0;
  while ((std::size_t{1} << layers) < k) ++layers;  // ceil(log2 k)
  return std::max<std::size_t>(1, layers);
}

}  // namespace

SetQuerySchedule sq_schedule(std::size_t k, double eps,
                             const ConstantProfile& prof) {
  if (k < 1) throw std::invalid_argument("set query: k must be >= 1");
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("set query: eps must lie in (0,1)");
  const std::size_t layers = layer_count(k);
  SetQuerySchedule sch;
  double ki = static_cast<double>(k);
  double ei = eps;
  double bi = prof.sq_c * static_cast<double>(k) / eps;
  for (std::size_t i = 0; i < layers; ++i) {
    sch.k_i.push_back(ki);
    sch.eps_i.push_back(ei);
    sch.buckets_i.push_back(
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(bi))));
    ki *= prof.sq_gamma;
    ei *= 10.0 * prof.sq_gamma;
    bi /= 10.0;  // B_i = C*k_i/eps_i = (C*k/eps)*10^{-i}
  }
  return sch;
}

SetQuerySketch sq_create(std::size_t n, std::size_t k, double eps,
                         const ConstantProfile& prof, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("set query: empty domain");
  const SetQuerySchedule sch = sq_schedule(k, eps, prof);
  SetQuerySketch sk;
  sk.n = n;
  sk.k = k;
  sk.eps = eps;
  sk.seed = seed;
  sk.layers = sch.buckets_i.size();
  sk.layer_buckets = sch.buckets_i;
  sk.layer_offsets.resize(sk.layers);
  std::size_t off = 0;
  const CounterRng hash_rng{derive_seed(seed, "sq-hash")};
  const CounterRng sign_rng{derive_seed(seed, "sq-sign")};
  for (std::size_t i = 0; i < sk.layers; ++i) {
    sk.layer_offsets[i] = off;
    off += sk.layer_buckets[i];
    sk.hashes.push_back(
        PairwiseHash::sample(hash_rng, i, n, sk.layer_buckets[i]));
    sk.signs.push_back(SignFunction::sample(sign_rng, i, n));
  }
  sk.y.assign(off, 0.0);
  return sk;
}

std::size_t sq_update(SetQuerySketch& sk, std::size_t i, double delta) {
  if (i >= sk.n) throw std::out_of_range("set query: update index out of range");
  for (std::size_t l = 0; l < sk.layers; ++l) {
    sk.y[sk.layer_offsets[l] + sk.hashes[l](i)] +=
        static_cast<double>(sk.signs[l](i)) * delta;
  }
  return sk.layers;
}

SparseApprox sq_query(const SetQuerySketch& sk,
                      std::span<const std::size_t> S, SetQueryStats* stats) {
  validate_support(S, sk.n);
  if (S.size() > sk.k)
    throw std::domain_error("set query: support larger than k");

  SetQueryStats local;
  SetQueryStats& st = stats ? *stats : local;
  st = SetQueryStats{};

  std::vector<double> y = sk.y;  // residual measurements
  SparseApprox out;
  out.n = sk.n;

  std::vector<std::size_t> remaining(S.begin(), S.end());
  std::vector<std::uint64_t> bins;
  std::vector<std::size_t> next, recovered;
  std::vector<double> values;
  for (std::size_t l = 0; l < sk.layers && !remaining.empty(); ++l) {
    st.survivor_sizes.push_back(remaining.size());

    // mark buckets hit more than once in this layer
    bins.resize(remaining.size());
    for (std::size_t t = 0; t < remaining.size(); ++t)
      bins[t] = sk.hashes[l](remaining[t]);
    st.bucket_touches += remaining.size();
    auto sorted = bins;
    std::sort(sorted.begin(), sorted.end());
    const auto isolated = [&](std::uint64_t b) {
      const auto lo = std::lower_bound(sorted.begin(), sorted.end(), b);
      return lo + 1 == sorted.end() || *(lo + 1) != b;
    };

    next.clear();
    recovered.clear();
    values.clear();
    for (std::size_t t = 0; t < remaining.size(); ++t) {
      const std::size_t j = remaining[t];
      if (!isolated(bins[t])) {
        next.push_back(j);
        continue;
      }
      const double est = static_cast<double>(sk.signs[l](j)) *
                         y[sk.layer_offsets[l] + bins[t]];
      st.bucket_touches += 1;
      recovered.push_back(j);
      values.push_back(est);
    }

    // subtract the recovered mass from every layer before the next round
    for (std::size_t t = 0; t < recovered.size(); ++t) {
      const std::size_t j = recovered[t];
      out.set(j, values[t]);
      for (std::size_t l2 = 0; l2 < sk.layers; ++l2) {
        y[sk.layer_offsets[l2] + sk.hashes[l2](j)] -=
            static_cast<double>(sk.signs[l2](j)) * values[t];
      }
      st.bucket_touches += sk.layers;
    }
    st.recovered_sizes.push_back(recovered.size());
    remaining.swap(next);
  }
  st.unrecovered = remaining.size();  // these keep their implicit 0 estimate
  return out;
}

}  // namespace sketchlab
