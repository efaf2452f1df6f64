#include "sketchlab/signal_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sketchlab/fourier.hpp"
#include "sketchlab/rng.hpp"

namespace sketchlab {

namespace {

std::vector<std::size_t> distinct_positions(std::size_t n, std::size_t k,
                                            const CounterRng& rng) {
  if (k > n)
    throw std::invalid_argument("signal generator: more spikes than samples");
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> pos;
  pos.reserve(k);
  std::uint64_t ctr = 0;
  while (pos.size() < k) {
    const std::size_t p = rng.below(ctr++, n);
    if (taken[p]) continue;
    taken[p] = true;
    pos.push_back(p);
  }
  std::sort(pos.begin(), pos.end());
  return pos;
}

GeneratedSignal gen_spikes(const SignalSpec& spec, std::uint64_t seed) {
  const CounterRng pos_rng{derive_seed(seed, "gen-pos")};
  const CounterRng sign_rng{derive_seed(seed, "gen-sign")};
  const CounterRng tail_rng{derive_seed(seed, "gen-tail")};
  GeneratedSignal out;
  out.support = distinct_positions(spec.n, spec.k, pos_rng);
  out.x.assign(spec.n, 0.0);
  if (spec.noise != 0.0) {
    for (std::size_t i = 0; i < spec.n; ++i)
      out.x[i] = spec.noise * tail_rng.gaussian(i);
  }
  for (std::size_t t = 0; t < out.support.size(); ++t) {
    const double sgn = sign_rng.bernoulli(t, 0.5) ? 1.0 : -1.0;
    out.x[out.support[t]] = sgn * spec.magnitude;
  }
  return out;
}

GeneratedSignal gen_spikes_tail(const SignalSpec& spec, std::uint64_t seed) {
  if (spec.k == 0)
    throw std::invalid_argument("signal generator: spikes-tail needs k >= 1");
  const CounterRng pos_rng{derive_seed(seed, "gen-pos")};
  const CounterRng sign_rng{derive_seed(seed, "gen-sign")};
  const CounterRng tail_rng{derive_seed(seed, "gen-tail")};
  GeneratedSignal out;
  out.support = distinct_positions(spec.n, spec.k, pos_rng);
  out.x.assign(spec.n, 0.0);
  double tail_sq = 0.0;
  {
    auto next = out.support.begin();
    for (std::size_t i = 0; i < spec.n; ++i) {
      if (next != out.support.end() && *next == i) {
        ++next;
        continue;
      }
      const double g = tail_rng.gaussian(i);
      out.x[i] = g;
      tail_sq += g * g;
    }
  }
  const double mag = spec.magnitude *
                     std::sqrt(spec.eps / static_cast<double>(spec.k)) *
                     std::sqrt(tail_sq);
  for (std::size_t t = 0; t < out.support.size(); ++t) {
    const double sgn = sign_rng.bernoulli(t, 0.5) ? 1.0 : -1.0;
    out.x[out.support[t]] = sgn * mag;
  }
  return out;
}

GeneratedSignal gen_tones(const SignalSpec& spec, std::uint64_t seed) {
  if (spec.k == 0 || spec.k > spec.n)
    throw std::invalid_argument("signal generator: tones needs 1 <= k <= n");
  const CounterRng pos_rng{derive_seed(seed, "gen-pos")};
  const CounterRng phase_rng{derive_seed(seed, "gen-phase")};
  const CounterRng noise_rng{derive_seed(seed, "gen-noise")};
  GeneratedSignal out;
  out.is_complex = true;
  out.support = distinct_positions(spec.n, spec.k, pos_rng);
  out.spectrum.assign(spec.n, Cplx{0.0, 0.0});
  if (spec.noise > 0.0 && spec.n > spec.k) {
    const double per_axis = std::sqrt(
        spec.noise / (2.0 * static_cast<double>(spec.n - spec.k)));
    for (std::size_t f = 0; f < spec.n; ++f) {
      out.spectrum[f] = Cplx{per_axis * noise_rng.gaussian(2 * f),
                             per_axis * noise_rng.gaussian(2 * f + 1)};
    }
  }
  for (std::size_t t = 0; t < out.support.size(); ++t) {
    const double theta =
        2.0 * std::numbers::pi * phase_rng.uniform(t);
    out.spectrum[out.support[t]] = std::polar(1.0, theta);
  }
  out.xc = inverse_dft(out.spectrum);
  return out;
}

GeneratedSignal gen_file(const SignalSpec& spec) {
  GeneratedSignal out;
  if (spec.path.empty())
    throw std::invalid_argument("signal generator: file needs a path");
  try {
    out.x = load_real_signal(spec.path);
    return out;
  } catch (const std::exception&) {
    // not a real-valued file; retry as complex below
  }
  out.xc = load_complex_signal(spec.path);
  out.is_complex = true;
  return out;
}

}  // namespace

GeneratedSignal generate_signal(const SignalSpec& spec, std::uint64_t seed) {
  if (spec.generator != "file" && spec.n == 0)
    throw std::invalid_argument("signal generator: n must be positive");
  if (spec.generator == "zeros") {
    GeneratedSignal out;
    out.x.assign(spec.n, 0.0);
    return out;
  }
  if (spec.generator == "spikes") return gen_spikes(spec, seed);
  if (spec.generator == "spikes-tail") return gen_spikes_tail(spec, seed);
  if (spec.generator == "geometric") {
    GeneratedSignal out;
    out.x.resize(spec.n);
    double v = 1.0;
    for (std::size_t i = 0; i < spec.n; ++i, v *= spec.ratio) out.x[i] = v;
    return out;
  }
  if (spec.generator == "tones") return gen_tones(spec, seed);
  if (spec.generator == "file") return gen_file(spec);
  throw std::invalid_argument("signal generator: unknown generator '" +
                              spec.generator + "'");
}

}  // namespace sketchlab
