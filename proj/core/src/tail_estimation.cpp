#include "sketchlab/tail_estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "sketchlab/hashing.hpp"
#include "sketchlab/rng.hpp"
#include "sketchlab/signal.hpp"

namespace sketchlab {

namespace {

void check_params(std::size_t n, std::size_t k, double p, double delta) {
  if (k < 1) throw std::invalid_argument("tail sketch: k must be >= 1");
  if (k > n) throw std::domain_error("tail sketch: k exceeds signal length");
  if (p != 1.0 && p != 2.0)
    throw std::invalid_argument("tail sketch: p must be 1 or 2");
  if (!(delta > 0.0) || !(delta < 0.5))
    throw std::invalid_argument("tail sketch: delta must lie in (0, 1/2)");
}

}  // namespace

TailSketch tail_sketch_build(std::span<const double> x, std::size_t k,
                             double p, double delta,
                             const ConstantProfile& prof, std::uint64_t seed) {
  check_params(x.size(), k, p, delta);
  TailSketch sk;
  sk.n = x.size();
  sk.k = k;
  sk.p = p;
  sk.delta = delta;
  sk.seed = seed;
  sk.rate = 1.0 / (100.0 * static_cast<double>(k));
  const auto m = static_cast<std::size_t>(
      std::ceil(prof.tail_m_mult * std::log2(1.0 / delta)));
  sk.y.assign(std::max<std::size_t>(m, 1), 0.0);

  const CounterRng pick{derive_seed(seed, "tail-pick")};
  const CounterRng coeff{derive_seed(seed, "tail-coeff")};
  const StableSampler stable(p);
  for (std::size_t t = 0; t < sk.y.size(); ++t) {
    double acc = 0.0;
    const std::uint64_t base = static_cast<std::uint64_t>(t) * sk.n;
    for (std::size_t i = 0; i < sk.n; ++i) {
      if (!pick.bernoulli(base + i, sk.rate)) continue;
      acc += stable.draw(coeff, base + i) * x[i];
    }
    sk.y[t] = acc;
  }
  return sk;
}

double tail_estimate(const TailSketch& sk) {
  if (sk.y.empty()) throw std::invalid_argument("tail estimate: empty sketch");
  std::vector<double> vals(sk.y.size());
  for (std::size_t t = 0; t < sk.y.size(); ++t)
    vals[t] = sk.p == 2.0 ? sk.y[t] * sk.y[t] : std::abs(sk.y[t]);
  return lower_median(vals);
}

double tail_delta_t(std::span<const double> x, const TailSketch& sk,
                    std::size_t t) {
  if (x.size() != sk.n)
    throw std::invalid_argument("tail delta: signal length mismatch");
  if (t >= sk.y.size()) throw std::out_of_range("tail delta: repetition index");
  const CounterRng pick{derive_seed(sk.seed, "tail-pick")};
  const std::uint64_t base = static_cast<std::uint64_t>(t) * sk.n;
  double acc = 0.0;
  for (std::size_t i = 0; i < sk.n; ++i) {
    if (!pick.bernoulli(base + i, sk.rate)) continue;
    acc += sk.p == 2.0 ? x[i] * x[i] : std::abs(x[i]);
  }
  return sk.p == 2.0 ? std::sqrt(acc) : acc;
}

TailBracket tail_bracket(std::span<const double> x, std::size_t k, double p,
                         const ConstantProfile& prof) {
  check_params(x.size(), k, p, 0.01);
  const auto deep = static_cast<std::size_t>(
      prof.tail_c0 * static_cast<double>(k));
  TailBracket b;
  b.lower = std::pow(tail_norm(x, deep, p), p) /
            (10.0 * static_cast<double>(k));
  b.upper = std::pow(tail_norm(x, k, p), p) / static_cast<double>(k);
  return b;
}

}  // namespace sketchlab
