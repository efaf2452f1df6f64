#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sketchlab {

// Named constants for every sketching stage.  Two built-ins: "paper" holds
// the constants the analysis is proven for; "desk" shrinks them so that
// experiments finish at laptop scale (guarantees then hold empirically only).
// Any field can be overridden individually; the active profile is echoed in
// every report.
struct ConstantProfile {
  std::string name = "desk";

  // tail estimation
  double tail_c0 = 10.0;      // deep-tail cutoff multiplier C0
  double tail_m_mult = 8.0;   // repetitions m = ceil(m_mult * log2(1/delta))
  double tail_alpha = 0.05;   // stable lower-bracket constant
  double tail_beta = 20.0;    // stable upper-bracket constant

  // interval-forest identification
  double forest_ch = 2.0;     // height multiplier C_H
  double forest_cr = 6.0;     // repetition multiplier C_R
  double forest_cb = 8.0;     // bucket multiplier C_B
  double forest_cl = 20.0;    // list-size cap multiplier C_L
  double forest_eta = 1.0 / 9.0;     // keep threshold eta
  double forest_zeta = 1.0 / 4000.0; // analysis-only false-positive level

  // pruning
  double prune_cr = 6.0;      // repetition multiplier C_R
  double prune_cb = 8.0;      // bucket multiplier C_B
  double prune_cg = 4.0 / 5.0;  // gaussian concentration constant C_g
  double prune_cl = 20.0;     // input list cap multiplier C_L
  double prune_beta = 4.0;    // output size beta*k
  double prune_alpha = 5.0;   // error inflation constant alpha

  // pairwise set query
  double sq_c = 8.0;          // bucket multiplier C
  double sq_gamma = 1.0 / 8.0;  // geometric decay gamma

  // sparse Fourier set query
  double fourier_c = 16.0;        // bucket multiplier C
  double fourier_gamma = 1.0 / 8.0;  // geometric decay gamma
  double fourier_alpha_div = 4.0; // alpha_i = 1 / (div * i^pow), i >= 1
  double fourier_alpha_pow = 1.0;

  static ConstantProfile desk();
  static ConstantProfile paper();

  // Built-in lookup by name ("paper" | "desk"); throws std::invalid_argument
  // on anything else.
  static ConstantProfile named(const std::string& name);

  // Override one constant by key (the field names above, e.g. "forest_cb").
  // Throws std::invalid_argument for unknown keys.
  void set(const std::string& key, double value);

  // Parse "key=value" and apply; throws on malformed input.
  void set_kv(const std::string& kv);

  double get(const std::string& key) const;

  // All constants in a stable order, for report echoing.
  std::vector<std::pair<std::string, double>> echo() const;
};

}  // namespace sketchlab
