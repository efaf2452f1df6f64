#pragma once

// Counter-based randomness. Every random quantity in the library is a pure
// function of (seed, purpose tag, counter), so any single coefficient of a
// sketch can be regenerated in isolation, trial i depends only on
// (master seed, i), and thread scheduling can never change a result.

#include <cstdint>
#include <cmath>
#include <numbers>
#include <string_view>

namespace sketchlab {

// splitmix64 finalizer (bijective mixer)
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a, used to turn short purpose names into stream tags
constexpr std::uint64_t tag64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
  return mix64(mix64(seed + 0x632be59bd9b4e019ULL) ^ tag);
}
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view name) noexcept {
  return derive_seed(seed, tag64(name));
}

// A stateless random stream: draw i is mix64(state + i*phi) (the splitmix64
// sequence). One stream serves one purpose; gaussian(i) consumes counters
// 2i and 2i+1, so never interleave gaussian() with uniform() on one stream.
struct CounterRng {
  std::uint64_t state{0};

  constexpr CounterRng() = default;
  explicit constexpr CounterRng(std::uint64_t s) noexcept : state(s) {}

  constexpr std::uint64_t bits(std::uint64_t i) const noexcept {
    return mix64(state + i * 0x9e3779b97f4a7c15ULL);
  }

  // uniform in (0,1), 53-bit resolution, never exactly 0 or 1
  constexpr double uniform(std::uint64_t i) const noexcept {
    return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
  }

  // standard normal via Box-Muller (counters 2i, 2i+1)
  double gaussian(std::uint64_t i) const noexcept {
    const double u1 = uniform(2 * i);
    const double u2 = uniform(2 * i + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // standard Cauchy
  double cauchy(std::uint64_t i) const noexcept {
    return std::tan(std::numbers::pi * (uniform(i) - 0.5));
  }

  constexpr bool bernoulli(std::uint64_t i, double p) const noexcept {
    return uniform(i) < p;
  }

  // uniform integer in [0, m); bias < 2^-64 via 128-bit multiply
  constexpr std::uint64_t below(std::uint64_t i, std::uint64_t m) const noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(bits(i)) * m) >> 64);
  }
};

}  // namespace sketchlab
