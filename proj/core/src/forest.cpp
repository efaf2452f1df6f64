#include "sketchlab/forest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "sketchlab/rng.hpp"
#include "sketchlab/signal.hpp"
#include "sketchlab/tail_estimation.hpp"

namespace sketchlab {

namespace {

std::uint64_t pow2ceil(std::uint64_t v) {
  return v <= 1 ? 1 : std::bit_ceil(v);
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t e) {
  unsigned __int128 acc = 1;
  for (std::size_t i = 0; i < e; ++i) {
    acc *= base;
    if (acc > ~std::uint64_t{0})
      throw std::overflow_error("forest: interval count overflows");
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::uint64_t ForestGeometry::pow_d(std::size_t level) const {
  return checked_pow(degree, level);
}

std::uint64_t ForestGeometry::intervals_at(std::size_t level) const {
  const unsigned __int128 v =
      static_cast<unsigned __int128>(num_trees) * pow_d(level);
  if (v > ~std::uint64_t{0})
    throw std::overflow_error("forest: interval count overflows");
  return static_cast<std::uint64_t>(v);
}

std::pair<std::size_t, std::size_t> ForestGeometry::interval_span(
    std::size_t level, std::uint64_t j) const {
  const std::uint64_t dl = pow_d(level);
  const std::uint64_t tree = j / dl;
  const std::uint64_t c = j % dl;
  const auto lo_local = static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(c) * q / dl);
  const auto hi_local = static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(c + 1) * q / dl);
  const std::uint64_t base = tree * static_cast<std::uint64_t>(q);
  const auto lo = std::min<std::uint64_t>(base + lo_local, n);
  const auto hi = std::min<std::uint64_t>(base + hi_local, n);
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

std::uint64_t ForestGeometry::interval_of(std::size_t level,
                                          std::size_t i) const {
  const std::uint64_t dl = pow_d(level);
  const std::uint64_t tree = i / q;
  const std::uint64_t pos = i % q;
  // largest c with floor(c*q / D^level) <= pos
  const auto c = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(pos + 1) * dl - 1) / q);
  return tree * dl + c;
}

ForestGeometry forest_geometry(std::size_t n, std::size_t k, double eps,
                               const ConstantProfile& prof) {
  if (n == 0) throw std::invalid_argument("forest: empty signal");
  if (k < 1) throw std::invalid_argument("forest: k must be >= 1");
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("forest: eps must lie in (0,1)");
  const double keps = static_cast<double>(k) / eps;
  if (keps > static_cast<double>(n) / 16.0)
    throw std::invalid_argument(
        "forest: requires k/eps <= n/16 (at least 16 coordinates per tree)");

  ForestGeometry g;
  g.n = n;
  g.k = k;
  g.eps = eps;
  g.tau = static_cast<std::size_t>(std::ceil(keps));
  const std::uint64_t per_tree =
      (n + g.tau - 1) / g.tau;  // ceil(n / tau), then round up to 2^j >= 16
  g.q = static_cast<std::size_t>(std::max<std::uint64_t>(16, pow2ceil(per_tree)));
  g.num_trees = (n + g.q - 1) / g.q;

  const double lg = std::log2(static_cast<double>(g.q));   // integer-valued
  const double llg = std::log2(lg);
  g.degree = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(lg / llg)));
  g.height = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(prof.forest_ch * lg / llg)));
  while (checked_pow(g.degree, g.height) < g.q) ++g.height;
  g.reps = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(prof.forest_cr * llg)));
  g.buckets = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(prof.forest_cb * keps)));
  g.list_cap = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(prof.forest_cl * keps)));
  return g;
}

double ForestSketch::coefficient(std::size_t level, std::size_t r,
                                 std::size_t i) const {
  const CounterRng coeff{derive_seed(seed, "forest-coeff")};
  const std::uint64_t slot = ((level - 1) * geom.reps + r) *
                                 static_cast<std::uint64_t>(geom.n) +
                             i;
  return coeff.gaussian(slot);
}

ForestSketch forest_sketch_build(std::span<const double> x,
                                 const ForestGeometry& geom,
                                 const ConstantProfile& /*prof*/,
                                 std::uint64_t seed) {
  if (x.size() != geom.n)
    throw std::invalid_argument("forest sketch: signal length mismatch");
  ForestSketch sk;
  sk.geom = geom;
  sk.seed = seed;

  const CounterRng hash_rng{derive_seed(seed, "forest-hash")};
  const CounterRng coeff{derive_seed(seed, "forest-coeff")};
  sk.hashes.reserve(geom.height * geom.reps);
  for (std::size_t l = 1; l <= geom.height; ++l) {
    const std::uint64_t domain = geom.intervals_at(l);
    for (std::size_t r = 0; r < geom.reps; ++r)
      sk.hashes.push_back(PairwiseHash::sample(
          hash_rng, (l - 1) * geom.reps + r, domain, geom.buckets));
  }

  sk.y.assign(geom.height, std::vector<double>(geom.reps * geom.buckets, 0.0));
  for (std::size_t l = 1; l <= geom.height; ++l) {
    auto& level_y = sk.y[l - 1];
    const PairwiseHash* level_hashes = &sk.hashes[(l - 1) * geom.reps];
    for (std::size_t i = 0; i < geom.n; ++i) {
      if (x[i] == 0.0) continue;
      const std::uint64_t j = geom.interval_of(l, i);
      const std::uint64_t slot_base =
          ((l - 1) * geom.reps) * static_cast<std::uint64_t>(geom.n);
      for (std::size_t r = 0; r < geom.reps; ++r) {
        const double g = coeff.gaussian(
            slot_base + r * static_cast<std::uint64_t>(geom.n) + i);
        level_y[r * geom.buckets + level_hashes[r](j)] += g * x[i];
      }
    }
  }
  return sk;
}

std::vector<std::size_t> forest_decode(const ForestSketch& sk, double V,
                                       const ConstantProfile& prof,
                                       ForestDecodeStats* stats) {
  const ForestGeometry& geom = sk.geom;
  const double thr = prof.forest_eta * V;
  const auto keeps = [&](double z) { return V == 0.0 ? z > 0.0 : z >= thr; };

  ForestDecodeStats local;
  ForestDecodeStats& st = stats ? *stats : local;
  st = ForestDecodeStats{};

  // level 0: every tree root enters unconditionally
  std::vector<std::uint64_t> frontier(geom.num_trees);
  for (std::size_t t = 0; t < geom.num_trees; ++t) frontier[t] = t;

  std::vector<double> med(geom.reps);
  std::vector<std::pair<double, std::uint64_t>> kept;  // (z, interval)
  for (std::size_t l = 1; l <= geom.height; ++l) {
    st.bucket_touch_cap += frontier.size() * geom.degree * geom.reps;
    kept.clear();
    for (const std::uint64_t parent : frontier) {
      for (std::size_t d = 0; d < geom.degree; ++d) {
        const std::uint64_t child = parent * geom.degree + d;
        const auto [lo, hi] = geom.interval_span(l, child);
        if (lo >= hi) continue;  // empty interval: never measured, never kept
        for (std::size_t r = 0; r < geom.reps; ++r) {
          const double v = sk.bucket(l, r, sk.hash_at(l, r)(child));
          med[r] = v * v;
        }
        st.bucket_touches += geom.reps;
        const double z = lower_median(med);
        if (keeps(z)) kept.emplace_back(z, child);
      }
    }
    if (kept.size() > geom.list_cap) {
      st.cap_hit = true;
      std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      kept.resize(geom.list_cap);
    }
    frontier.clear();
    for (const auto& [z, j] : kept) frontier.push_back(j);
    std::sort(frontier.begin(), frontier.end());
    st.survivors.push_back(frontier.size());
  }

  // leaves are single coordinates (D^H >= q); expand spans defensively
  std::vector<std::size_t> out;
  out.reserve(frontier.size());
  for (const std::uint64_t j : frontier) {
    const auto [lo, hi] = geom.interval_span(geom.height, j);
    for (std::size_t i = lo; i < hi; ++i) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  if (out.size() > geom.list_cap) {
    st.cap_hit = true;
    out.resize(geom.list_cap);
  }
  return out;
}

std::vector<std::size_t> forest_recover(std::span<const double> x,
                                        std::size_t k, double eps,
                                        const ConstantProfile& prof,
                                        std::uint64_t seed,
                                        ForestDecodeStats* stats,
                                        std::size_t* measurements) {
  const TailSketch tail = tail_sketch_build(
      x, k, 2.0, 0.01, prof, derive_seed(seed, "identify-tail"));
  const double V = eps * tail_estimate(tail);
  const ForestGeometry geom = forest_geometry(x.size(), k, eps, prof);
  const ForestSketch sk =
      forest_sketch_build(x, geom, prof, derive_seed(seed, "identify-forest"));
  if (measurements) *measurements = geom.measurement_count() + tail.m();
  return forest_decode(sk, V, prof, stats);
}

}  // namespace sketchlab
