#include "sketchlab/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sketchlab/oracle.hpp"

namespace sketchlab {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place unnormalized radix-2 transform; inverse flips the twiddle sign.
void fft_inplace(std::vector<Cplx>& v, bool inverse) {
  const std::size_t n = v.size();
  if (!is_pow2(n)) throw std::domain_error("fft: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? kTau : -kTau) / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Cplx w = std::polar(1.0, ang * static_cast<double>(j));
        const Cplx u = v[i + j];
        const Cplx t = w * v[i + j + len / 2];
        v[i + j] = u + t;
        v[i + j + len / 2] = u - t;
      }
    }
  }
}

Cplx unit_phase(double turns_num, double turns_den) {
  // e^{2*pi*i*turns_num/turns_den}
  return std::polar(1.0, kTau * turns_num / turns_den);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % n);
}

}  // namespace

std::vector<Cplx> dft(std::span<const Cplx> x) {
  std::vector<Cplx> v(x.begin(), x.end());
  fft_inplace(v, false);
  const double s = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (Cplx& c : v) c *= s;
  return v;
}

std::vector<Cplx> inverse_dft(std::span<const Cplx> x) {
  std::vector<Cplx> v(x.begin(), x.end());
  fft_inplace(v, true);
  const double s = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (Cplx& c : v) c *= s;
  return v;
}

// ---------- spectrum permutation ----------

SpectrumPermutation SpectrumPermutation::sample(const CounterRng& rng,
                                                std::uint64_t slot,
                                                std::size_t n) {
  if (!is_pow2(n))
    throw std::domain_error("permutation: n must be a power of two");
  SpectrumPermutation p;
  p.n = n;
  p.sigma = n == 1 ? 1 : 2 * rng.below(3 * slot, n / 2) + 1;
  p.a = rng.below(3 * slot + 1, n);
  p.b = rng.below(3 * slot + 2, n);
  return p;
}

std::size_t SpectrumPermutation::pi(std::size_t i) const {
  const std::uint64_t d = (i + n - b % n) % n;
  return static_cast<std::size_t>(mulmod(sigma, d, n));
}

std::size_t SpectrumPermutation::bin(std::size_t i, std::size_t B) const {
  const std::uint64_t p = pi(i);
  // round-half-up(p*B/n) without overflow
  const auto raw = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(p) * B + n / 2) / n);
  return static_cast<std::size_t>(raw % B);
}

long long SpectrumPermutation::offset(std::size_t i, std::size_t B) const {
  const std::uint64_t p = pi(i);
  const auto raw = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(p) * B + n / 2) / n);
  return static_cast<long long>(p) -
         static_cast<long long>(raw * (n / B));
}

Cplx SpectrumPermutation::permuted_sample(std::span<const Cplx> x,
                                          std::size_t t) const {
  const std::uint64_t d = (t + n - a % n) % n;
  const std::size_t src = static_cast<std::size_t>(mulmod(sigma, d, n));
  const std::uint64_t sb = mulmod(sigma, b, n);
  const std::uint64_t phase_idx = mulmod(sb, t, n);
  return x[src] * unit_phase(-static_cast<double>(phase_idx),
                             static_cast<double>(n));
}

double permute_spectrum_check(std::span<const Cplx> x,
                              const SpectrumPermutation& perm) {
  const std::size_t n = x.size();
  if (perm.n != n) throw std::invalid_argument("permutation: size mismatch");
  std::vector<Cplx> px(n);
  for (std::size_t t = 0; t < n; ++t) px[t] = perm.permuted_sample(x, t);
  const std::vector<Cplx> lhs = naive_dft(px);
  const std::vector<Cplx> xhat = naive_dft(x);
  const std::uint64_t sa = mulmod(perm.sigma, perm.a, n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t phase_idx = mulmod(sa, i, n);
    const Cplx rhs = xhat[i] * unit_phase(-static_cast<double>(phase_idx),
                                          static_cast<double>(n));
    worst = std::max(worst, std::abs(lhs[perm.pi(i)] - rhs));
  }
  return worst;
}

// ---------- flat-window filter ----------

double FlatFilter::ideal_at(long long f) const {
  const long long half = static_cast<long long>(n / 2);
  long long r = f % static_cast<long long>(n);
  if (r < 0) r += static_cast<long long>(n);
  if (r > half) r -= static_cast<long long>(n);  // now in [-n/2, n/2]
  const auto mag = static_cast<std::size_t>(r < 0 ? -r : r);
  return ideal_half[mag];
}

FlatFilter build_filter(std::size_t n, std::size_t B, double delta,
                        double alpha) {
  if (!is_pow2(n)) throw std::domain_error("filter: n must be a power of two");
  if (B < 2 || B > n || n % B != 0)
    throw std::domain_error("filter: B must divide n and be at least 2");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("filter: alpha must lie in (0,1)");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("filter: delta must lie in (0,1)");

  FlatFilter f;
  f.n = n;
  f.B = B;
  f.delta = delta;
  f.alpha = alpha;

  const double width = static_cast<double>(n) / (2.0 * static_cast<double>(B));
  const auto flat_max = static_cast<std::size_t>(
      std::max(0.0, std::floor((1.0 - alpha) * width)));
  const std::size_t zero_min = (n + 2 * B - 1) / (2 * B);  // ceil(n / 2B)

  // box half-width between the flat and zero boundaries; the gaussian's
  // standard deviation uses whatever integer margin is left (or relies on a
  // near-delta gaussian when the boundaries leave no room)
  const std::size_t w_int = (flat_max + zero_min) / 2;
  double margin = static_cast<double>(
      std::min(zero_min - w_int, w_int - flat_max));
  if (margin <= 0.0)
    margin = std::min(0.5, static_cast<double>(zero_min) -
                               static_cast<double>(w_int));
  const double c = std::sqrt(
      2.0 * std::log(4.0 * (static_cast<double>(n / B) + 3.0) / delta));
  const double s = margin / c;

  // target frequency response: box of half-width w_int convolved with a
  // discrete gaussian, normalized to 1 at the center
  const auto reach = static_cast<long long>(std::ceil(10.0 * c * s)) + 1;
  const auto conv_at = [&](long long freq) {
    const long long lo = std::max(-static_cast<long long>(w_int), freq - reach);
    const long long hi = std::min(static_cast<long long>(w_int), freq + reach);
    double acc = 0.0;
    for (long long t = lo; t <= hi; ++t) {
      const double d = static_cast<double>(freq - t) / s;
      acc += std::exp(-0.5 * d * d);
    }
    return acc;
  };
  const double conv0 = conv_at(0);
  std::vector<double> w_half(n / 2 + 1, 0.0);
  for (std::size_t q = 0; q <= n / 2; ++q) {
    const double v = conv_at(static_cast<long long>(q)) / conv0;
    w_half[q] = std::clamp(v, 0.0, 1.0);
  }

  f.ideal_half.assign(n / 2 + 1, 0.0);
  for (std::size_t q = 0; q <= n / 2; ++q) {
    if (q <= flat_max)
      f.ideal_half[q] = 1.0;
    else if (q >= zero_min)
      f.ideal_half[q] = 0.0;
    else
      f.ideal_half[q] = w_half[q];
  }

  // time-domain window: G = sqrt(n) * IDFT(W), truncated to the support
  // budget (centered around t = 0 modulo n)
  std::vector<Cplx> w_full(n);
  for (std::size_t q = 0; q <= n / 2; ++q) {
    w_full[q] = w_half[q];
    if (q != 0 && q != n / 2) w_full[n - q] = w_half[q];
  }
  std::vector<Cplx> g_time = inverse_dft(w_full);
  const double root_n = std::sqrt(static_cast<double>(n));

  const double budget_real =
      kFilterSupportC / alpha * static_cast<double>(B) *
      std::log2(static_cast<double>(n) / delta);
  const std::size_t budget =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(budget_real)));
  std::size_t half_keep = budget >= n ? n / 2 : (budget - 1) / 2;

  std::vector<double> g_kept(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t dist = std::min(t, n - t);
    if (budget >= n || dist <= half_keep) g_kept[t] = g_time[t].real() * root_n;
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (g_kept[t] != 0.0) {
      f.support.push_back(t);
      f.g.push_back(g_kept[t]);
    }
  }

  // measured deviation of the realized response from the ideal filter
  std::vector<Cplx> g_full(n);
  for (std::size_t t = 0; t < n; ++t) g_full[t] = g_kept[t];
  const std::vector<Cplx> resp = dft(g_full);
  double worst = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t mag = std::min(q, n - q);
    worst = std::max(worst,
                     std::abs(resp[q] / root_n - Cplx{f.ideal_half[mag], 0.0}));
  }
  f.delta_filter = worst;
  f.c_f = static_cast<double>(f.support.size()) /
          (static_cast<double>(B) / alpha *
           std::log2(static_cast<double>(n) / delta));
  if (f.delta_filter > delta)
    throw std::runtime_error(
        "filter: construction missed the target deviation");
  return f;
}

// ---------- bucketed spectrum access ----------

std::vector<Cplx> fold_samples(std::span<const Cplx> x,
                               const SpectrumPermutation& perm,
                               const FlatFilter& filt, std::size_t* samples) {
  const std::size_t n = x.size();
  if (perm.n != n || filt.n != n)
    throw std::invalid_argument("fold_samples: size mismatch");
  std::vector<Cplx> folded(filt.B, Cplx{0.0, 0.0});
  for (std::size_t idx = 0; idx < filt.support.size(); ++idx) {
    const std::size_t t = filt.support[idx];
    folded[t % filt.B] += filt.g[idx] * perm.permuted_sample(x, t);
  }
  if (samples) *samples += filt.support.size();
  return folded;
}

std::vector<Cplx> hash_to_bins(std::span<const Cplx> x,
                               const SparseSpectrum& zhat,
                               const SpectrumPermutation& perm,
                               const FlatFilter& filt, std::size_t* samples) {
  const std::size_t n = x.size();
  const std::size_t B = filt.B;
  std::vector<Cplx> folded = fold_samples(x, perm, filt, samples);
  fft_inplace(folded, false);  // unnormalized B-point transform
  const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (Cplx& c : folded) c *= inv_root_n;

  // subtract the ideal-filter image of the already-recovered spectrum; only
  // the bin of each entry sees a nonzero filter weight
  const std::uint64_t sa = mulmod(perm.sigma, perm.a, n);
  for (const auto& [i, zi] : zhat.entries) {
    const std::size_t j = perm.bin(i, B);
    const long long o = perm.offset(i, B);
    const double wgt = filt.ideal_at(-o);
    if (wgt == 0.0) continue;
    const std::uint64_t phase_idx = mulmod(sa, i, n);
    folded[j] -= wgt * zi *
                 unit_phase(-static_cast<double>(phase_idx),
                            static_cast<double>(n));
  }
  return folded;
}

// ---------- set query ----------

EstimateOutcome estimate_values(std::span<const Cplx> x,
                                const SparseSpectrum& zhat,
                                std::span<const std::size_t> S,
                                const FlatFilter& filt,
                                const SpectrumPermutation& perm,
                                std::size_t* samples) {
  if (S.empty()) throw std::invalid_argument("estimate_values: empty support");
  const std::size_t n = x.size();
  const std::size_t B = filt.B;
  const std::vector<Cplx> u = hash_to_bins(x, zhat, perm, filt, samples);

  std::vector<std::uint64_t> bins(S.size());
  for (std::size_t t = 0; t < S.size(); ++t) bins[t] = perm.bin(S[t], B);
  auto sorted = bins;
  std::sort(sorted.begin(), sorted.end());
  const auto isolated = [&](std::uint64_t bn) {
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), bn);
    return lo + 1 == sorted.end() || *(lo + 1) != bn;
  };

  const double max_off = (1.0 - filt.alpha) * static_cast<double>(n) /
                         (2.0 * static_cast<double>(B));
  const std::uint64_t sa = mulmod(perm.sigma, perm.a, n);
  EstimateOutcome out;
  out.what.n = n;
  for (std::size_t t = 0; t < S.size(); ++t) {
    if (!isolated(bins[t])) continue;
    const long long off = perm.offset(S[t], B);
    if (std::abs(static_cast<double>(off)) >= max_off) continue;
    const std::uint64_t phase_idx = mulmod(sa, S[t], n);
    const Cplx est = u[bins[t]] * unit_phase(static_cast<double>(phase_idx),
                                             static_cast<double>(n));
    out.what.set(S[t], est);
    out.T.push_back(S[t]);
  }
  return out;
}

SparseSpectrum fourier_set_query(std::span<const Cplx> x,
                                 std::span<const std::size_t> S,
                                 std::size_t k, double eps, double delta,
                                 const ConstantProfile& prof,
                                 std::uint64_t seed,
                                 FourierQueryStats* stats) {
  const std::size_t n = x.size();
  if (!is_pow2(n))
    throw std::domain_error("fourier set query: n must be a power of two");
  validate_support(S, n);
  if (k < 1 || S.size() != k)
    throw std::domain_error("fourier set query: need |S| = k >= 1");
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("fourier set query: eps must lie in (0,1)");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("fourier set query: delta must lie in (0,1)");

  FourierQueryStats local;
  FourierQueryStats& st = stats ? *stats : local;
  st = FourierQueryStats{};

  const double gamma = prof.fourier_gamma;
  const std::size_t rounds =
      static_cast<std::size_t>(std::ceil(
          std::log2(static_cast<double>(k)) / std::log2(1.0 / gamma))) +
      1;

  const CounterRng perm_rng{derive_seed(seed, "fourier-perm")};
  SparseSpectrum zhat;
  zhat.n = n;
  std::vector<std::size_t> remaining(S.begin(), S.end());
  for (std::size_t it = 1; it <= rounds && !remaining.empty(); ++it) {
    const double k_i = static_cast<double>(k) *
                       std::pow(gamma, static_cast<double>(it - 1));
    const double eps_i =
        eps * std::pow(10.0 * gamma, static_cast<double>(it - 1));
    const double alpha_i =
        1.0 / (prof.fourier_alpha_div *
               std::pow(static_cast<double>(it), prof.fourier_alpha_pow));
    const double b_real = prof.fourier_c * k_i / (alpha_i * alpha_i * eps_i);
    const std::size_t B = std::min<std::size_t>(
        n, std::bit_ceil(std::max<std::size_t>(
               2, static_cast<std::size_t>(std::ceil(b_real)))));

    const FlatFilter filt = build_filter(n, B, delta, alpha_i);
    const SpectrumPermutation perm =
        SpectrumPermutation::sample(perm_rng, it - 1, n);

    st.survivor_sizes.push_back(remaining.size());
    st.buckets_i.push_back(B);
    st.alpha_i.push_back(alpha_i);
    st.delta_filters.push_back(filt.delta_filter);

    const EstimateOutcome est =
        estimate_values(x, zhat, remaining, filt, perm, &st.samples);
    for (const auto& [i, v] : est.what.entries) zhat.set(i, v);
    st.recovered_sizes.push_back(est.T.size());

    std::vector<std::size_t> next;
    next.reserve(remaining.size() - est.T.size());
    std::set_difference(remaining.begin(), remaining.end(), est.T.begin(),
                        est.T.end(), std::back_inserter(next));
    remaining.swap(next);
  }
  st.unrecovered = remaining.size();
  return zhat;
}

// ---------- event frequencies ----------

EventRates event_frequencies(std::span<const Cplx> xhat,
                             std::span<const std::size_t> S, std::size_t B,
                             double alpha, std::size_t k, std::size_t trials,
                             std::uint64_t seed) {
  const std::size_t n = xhat.size();
  validate_support(S, n);
  if (S.empty()) throw std::invalid_argument("event rates: empty support");
  if (trials == 0) throw std::invalid_argument("event rates: no trials");
  const std::size_t target = S.front();

  SparseSpectrum zero;
  zero.n = n;
  const CounterRng rng{derive_seed(seed, "event-perm")};
  const double max_off =
      (1.0 - alpha) * static_cast<double>(n) / (2.0 * static_cast<double>(B));
  std::size_t coll = 0, off = 0, noise = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SpectrumPermutation perm = SpectrumPermutation::sample(rng, t, n);
    const std::size_t target_bin = perm.bin(target, B);
    bool collided = false;
    for (const std::size_t j : S) {
      if (j != target && perm.bin(j, B) == target_bin) {
        collided = true;
        break;
      }
    }
    if (collided) ++coll;
    if (std::abs(static_cast<double>(perm.offset(target, B))) >= max_off)
      ++off;
    if (exact_noise_event(xhat, zero, S, perm, B, alpha, k, target)) ++noise;
  }
  EventRates r;
  r.collision = static_cast<double>(coll) / static_cast<double>(trials);
  r.offset = static_cast<double>(off) / static_cast<double>(trials);
  r.noise = static_cast<double>(noise) / static_cast<double>(trials);
  return r;
}

}  // namespace sketchlab
