#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sketchlab/signal.hpp"

namespace sketchlab {

// Declarative description of a test signal.  Generation is a pure function
// of (spec, seed).
struct SignalSpec {
  std::string generator = "zeros";  // zeros | spikes | spikes-tail |
                                    // geometric | tones | file
  std::size_t n = 0;
  std::size_t k = 0;        // planted support size (spikes / tones)
  double magnitude = 1.0;   // spike magnitude (spikes); scale factor on
                            // sqrt(eps/k)*||tail||_2 (spikes-tail)
  double noise = 0.0;       // off-support gaussian scale (spikes); total
                            // expected off-support energy (tones)
  double eps = 0.5;         // only used by spikes-tail magnitude scaling
  double ratio = 0.9;       // geometric decay ratio
  std::string path;         // file generator: .f64/.c64/.txt signal file
};

struct GeneratedSignal {
  bool is_complex = false;
  std::vector<double> x;        // real signal (empty when complex)
  std::vector<Cplx> xc;         // complex time-domain signal
  std::vector<Cplx> spectrum;   // tones only: the constructed spectrum
  std::vector<std::size_t> support;  // planted support, sorted (may be empty)
};

// Generators:
//   zeros         — the zero signal.
//   spikes        — k spikes of +-magnitude at distinct random positions,
//                   plus iid gaussian noise of scale `noise` elsewhere.
//   spikes-tail   — unit gaussian tail everywhere off the support, spikes of
//                   magnitude `magnitude`*sqrt(eps/k)*||tail||_2 on it.
//   geometric     — x_i = ratio^i (deterministic).
//   tones         — complex: unit-modulus random-phase spectrum entries on k
//                   random frequencies, complex gaussian off-support noise
//                   with expected total energy `noise`; the time-domain
//                   signal is the inverse transform of that spectrum.
//   file          — loads `path` (real or complex inferred from contents).
GeneratedSignal generate_signal(const SignalSpec& spec, std::uint64_t seed);

}  // namespace sketchlab
