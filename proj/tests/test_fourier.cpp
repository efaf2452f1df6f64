#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sketchlab/fourier.hpp"
#include "sketchlab/oracle.hpp"
#include "sketchlab/profile.hpp"
#include "sketchlab/rng.hpp"

using namespace sketchlab;

namespace {
const ConstantProfile kDesk = ConstantProfile::desk();

std::vector<Cplx> random_signal(std::size_t n, std::uint64_t seed) {
  std::vector<Cplx> x(n);
  const CounterRng rng(seed);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = {rng.gaussian(2 * i), rng.gaussian(2 * i + 1)};
  return x;
}

double max_dev(std::span<const Cplx> a, std::span<const Cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}
}  // namespace

TEST_CASE("unitary transform basics") {
  std::vector<Cplx> delta(8, Cplx{0, 0});
  delta[0] = 1.0;
  const auto flat = dft(delta);
  for (const Cplx v : flat)
    CHECK(std::abs(v - 1.0 / std::sqrt(8.0)) < 1e-14);

  const auto x = random_signal(1 << 10, derive_seed(1, "fft-test"));
  const auto xhat = dft(x);
  CHECK(lp_norm(xhat, 2.0) == doctest::Approx(lp_norm(x, 2.0)).epsilon(1e-12));
  CHECK(max_dev(inverse_dft(xhat), x) < 1e-10);
  CHECK(max_dev(xhat, naive_dft(x)) < 1e-10);

  const auto small = random_signal(4, derive_seed(2, "fft-test"));
  CHECK(max_dev(dft(small), naive_dft(small)) < 1e-12);

  const std::vector<Cplx> bad(6, Cplx{0, 0});
  CHECK_THROWS_AS((void)dft(bad), std::domain_error);
}

TEST_CASE("spectrum permutation: identity, ranges, and the phase claim") {
  const std::size_t n = 16;
  SpectrumPermutation id;
  id.n = n;
  id.sigma = 1;
  id.a = 0;
  id.b = 0;
  const auto x = random_signal(n, derive_seed(3, "perm-test"));
  CHECK(permute_spectrum_check(x, id) == 0.0);

  const CounterRng rng(derive_seed(4, "perm-test"));
  for (std::uint64_t slot = 0; slot < 8; ++slot) {
    const auto p = SpectrumPermutation::sample(rng, slot, n);
    CHECK(p.sigma % 2 == 1);
    CHECK(p.sigma < n);
    CHECK(p.a < n);
    CHECK(p.b < n);
    CHECK(permute_spectrum_check(x, p) < 1e-10);

    // pi is a bijection and consistent with bin/offset bookkeeping
    std::vector<bool> hit(n, false);
    const std::size_t B = 4;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t pi = p.pi(i);
      CHECK(pi < n);
      CHECK(!hit[pi]);
      hit[pi] = true;
      const std::size_t bin = p.bin(i, B);
      const long long off = p.offset(i, B);
      CHECK(bin < B);
      CHECK(off >= -static_cast<long long>(n / (2 * B)));
      CHECK(off < static_cast<long long>(n / (2 * B)));
      const long long rebuilt =
          (static_cast<long long>(bin * (n / B)) + off +
           static_cast<long long>(n)) %
          static_cast<long long>(n);
      CHECK(rebuilt == static_cast<long long>(pi));
    }
  }
}

TEST_CASE("a permuted pure tone lands at pi(f)") {
  const std::size_t n = 64, f = 23;
  SparseSpectrum one;
  one.n = n;
  one.set(f, Cplx{1, 0});
  std::vector<Cplx> spec(n, Cplx{0, 0});
  spec[f] = 1.0;
  const auto x = inverse_dft(spec);
  const CounterRng rng(derive_seed(5, "perm-tone"));
  const auto p = SpectrumPermutation::sample(rng, 0, n);
  std::vector<Cplx> px(n);
  for (std::size_t t = 0; t < n; ++t) px[t] = p.permuted_sample(x, t);
  const auto pxhat = naive_dft(px);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == p.pi(f)) {
      CHECK(std::abs(pxhat[i]) == doctest::Approx(1.0).epsilon(1e-9));
    } else {
      CHECK(std::abs(pxhat[i]) < 1e-9);
    }
  }
}

TEST_CASE("flat filter: plateau, cutoff, ramp, and measured deviation") {
  const std::size_t n = 256, B = 16;
  const double delta = 1e-6, alpha = 0.25;
  const FlatFilter f = build_filter(n, B, delta, alpha);
  // (1-alpha)*n/(2B) = 6, n/(2B) = 8
  CHECK(f.ideal_at(0) == 1.0);
  CHECK(f.ideal_at(6) == 1.0);
  CHECK(f.ideal_at(-6) == 1.0);
  CHECK(f.ideal_at(8) == 0.0);
  CHECK(f.ideal_at(-8) == 0.0);
  CHECK(f.ideal_at(n / 2) == 0.0);
  const double r7 = f.ideal_at(7);
  CHECK(r7 > 0.0);
  CHECK(r7 < 1.0);
  CHECK(f.ideal_at(7) == f.ideal_at(-7));
  CHECK(f.delta_filter <= delta);
  CHECK(f.c_f > 0.0);
  CHECK(std::is_sorted(f.support.begin(), f.support.end()));
  REQUIRE(f.support.size() == f.g.size());
  CHECK(f.support.size() <=
        static_cast<std::size_t>(std::ceil(
            kFilterSupportC / alpha * B * std::log2(n / delta))));

  // reconstruct the response directly: DFT(G)/sqrt(n) vs the ideal shape
  std::vector<Cplx> g_full(n, Cplx{0, 0});
  for (std::size_t t = 0; t < f.support.size(); ++t)
    g_full[f.support[t]] = f.g[t];
  const auto resp = naive_dft(g_full);
  double dev = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    const long long signed_f =
        q <= n / 2 ? static_cast<long long>(q)
                   : static_cast<long long>(q) - static_cast<long long>(n);
    dev = std::max(dev,
                   std::abs(resp[q] / std::sqrt(double(n)) -
                            f.ideal_at(signed_f)));
  }
  CHECK(dev <= delta * (1.0 + 1e-9));

  CHECK_THROWS_AS((void)build_filter(250, 16, delta, alpha),
                  std::domain_error);
  CHECK_THROWS_AS((void)build_filter(n, 3, delta, alpha), std::domain_error);
  CHECK_THROWS_AS((void)build_filter(n, B, delta, 1.5), std::invalid_argument);
}

TEST_CASE("hash_to_bins matches its defining formula on sparse spectra") {
  const std::size_t n = 64, B = 8;
  const FlatFilter filt = build_filter(n, B, 1e-6, 0.25);
  const CounterRng rng(derive_seed(6, "htb-test"));
  const auto perm = SpectrumPermutation::sample(rng, 0, n);

  // zero signal, zero residual -> zero buckets
  const std::vector<Cplx> zeros(n, Cplx{0, 0});
  SparseSpectrum empty;
  empty.n = n;
  for (const Cplx u : hash_to_bins(zeros, empty, perm, filt))
    CHECK(std::abs(u) < 1e-12);

  // single tone: the bin holding f sees ideal(-offset) * phase, others ~0
  const std::size_t f = 41;
  std::vector<Cplx> spec(n, Cplx{0, 0});
  spec[f] = {0.8, -0.6};
  const auto x = inverse_dft(spec);
  const auto u = hash_to_bins(x, empty, perm, filt);
  REQUIRE(u.size() == B);
  const double ang = -2.0 * std::numbers::pi *
                     static_cast<double>((perm.a * perm.sigma % n) * f % n) /
                     static_cast<double>(n);
  const Cplx expect = spec[f] * filt.ideal_at(-perm.offset(f, B)) *
                      Cplx{std::cos(ang), std::sin(ang)};
  for (std::size_t j = 0; j < B; ++j) {
    const Cplx want = j == perm.bin(f, B) ? expect : Cplx{0, 0};
    CHECK(std::abs(u[j] - want) < 1e-4);  // delta ||xhat||_1 slack
  }

  // perfect residual cancels through the sparse correction
  SparseSpectrum zhat;
  zhat.n = n;
  zhat.set(f, spec[f]);
  for (const Cplx v : hash_to_bins(x, zhat, perm, filt))
    CHECK(std::abs(v) < 1e-4);
}

TEST_CASE("estimate_values recovers an isolated tone") {
  const std::size_t n = 128, B = n;  // one bin per frequency: always isolated
  const FlatFilter filt = build_filter(n, B, 1e-6, 0.25);
  const std::size_t f = 77;
  std::vector<Cplx> spec(n, Cplx{0, 0});
  spec[f] = {1.5, 0.5};
  const auto x = inverse_dft(spec);
  const std::vector<std::size_t> S{f};
  SparseSpectrum empty;
  empty.n = n;
  const CounterRng rng(derive_seed(7, "ev-test"));
  const auto perm = SpectrumPermutation::sample(rng, 0, n);
  std::size_t samples = 0;
  const EstimateOutcome out =
      estimate_values(x, empty, S, filt, perm, &samples);
  REQUIRE(out.T == S);
  CHECK(std::abs(out.what.value_at(f) - spec[f]) < 1e-4);
  CHECK(samples > 0);
}

TEST_CASE("set query recovers exactly sparse spectra to the additive term") {
  const std::size_t n = 512, k = 4;
  const std::vector<std::size_t> S{3, 90, 255, 400};
  SparseSpectrum truth;
  truth.n = n;
  std::vector<Cplx> spec(n, Cplx{0, 0});
  const CounterRng rng(derive_seed(8, "fsq-test"));
  for (std::size_t t = 0; t < S.size(); ++t) {
    const Cplx v = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform(t));
    truth.set(S[t], v);
    spec[S[t]] = v;
  }
  const auto x = inverse_dft(spec);
  const double delta = 1e-4;
  double l1 = 0.0;
  for (const auto& [i, v] : truth.entries) l1 += std::abs(v);

  std::size_t ok = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    FourierQueryStats st;
    const SparseSpectrum xp =
        fourier_set_query(x, S, k, 0.5, delta, kDesk, s, &st);
    const double err = l2_err_on(spec, xp, S);
    ok += err * err <= delta * l1 * l1;
    CHECK(st.samples > 0);
    CHECK(st.buckets_i.size() == st.alpha_i.size());
  }
  CHECK(ok >= 9);

  const std::vector<std::size_t> wrong{3, 90};
  CHECK_THROWS_AS(
      (void)fourier_set_query(x, wrong, k, 0.5, delta, kDesk, 1),
      std::domain_error);
  CHECK_THROWS_AS(
      (void)fourier_set_query(x, S, k, 1.5, delta, kDesk, 1),
      std::invalid_argument);
}

TEST_CASE("event frequencies: degenerate cases pin the rates") {
  const std::size_t n = 256;
  std::vector<Cplx> xhat(n, Cplx{0, 0});
  xhat[5] = 1.0;
  const std::vector<std::size_t> S{5};
  // |S| = 1: no collisions ever; B = n: offsets are always zero
  const EventRates r = event_frequencies(xhat, S, n, 0.5, 1, 500, 42);
  CHECK(r.collision == 0.0);
  CHECK(r.offset == 0.0);
  CHECK(r.noise >= 0.0);
  CHECK(r.noise <= 1.0);
  CHECK_THROWS_AS(
      (void)event_frequencies(xhat, S, n, 0.5, 1, 0, 42),
      std::invalid_argument);
}
