#include "sketchlab/criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "sketchlab/forest.hpp"
#include "sketchlab/fourier.hpp"
#include "sketchlab/harness.hpp"
#include "sketchlab/oracle.hpp"
#include "sketchlab/pipeline.hpp"
#include "sketchlab/profile.hpp"
#include "sketchlab/prune.hpp"
#include "sketchlab/rng.hpp"
#include "sketchlab/set_query.hpp"
#include "sketchlab/signal.hpp"
#include "sketchlab/signal_gen.hpp"
#include "sketchlab/tail_estimation.hpp"

namespace sketchlab {

namespace {

std::uint64_t criterion_seed(int id) {
  return derive_seed(0x5ce7c41a, "criterion-" + std::to_string(id));
}

std::string fmt(double v) { return json_number(v); }

// ---- 1: end-to-end recovery on planted spikes over a gaussian tail ----
CriterionResult c1_end_to_end() {
  CriterionResult r{.id = 1, .name = "end-to-end l2 recovery"};
  const std::size_t n = std::size_t{1} << 16, k = 16;
  const double eps = 0.5;
  const ConstantProfile prof = ConstantProfile::desk();
  SignalSpec spec;
  spec.generator = "spikes-tail";
  spec.n = n;
  spec.k = k;
  spec.magnitude = 10.0;
  spec.eps = eps;

  const auto fn = [&](std::size_t idx, std::uint64_t s) {
    const GeneratedSignal sig = generate_signal(spec, s);
    PipelineConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.eps = eps;
    cfg.profile = prof;
    cfg.seed = derive_seed(s, "pipeline");
    const PipelineResult pr = recover(sig.x, cfg);
    const double err = l2_err(sig.x, pr.xprime);
    const double bound = (1.0 + eps) * tail_norm(sig.x, k, 2.0);
    Record rec;
    rec.add("record", "trial");
    rec.add("trial", idx);
    rec.add("seed", s);
    rec.add("err", err);
    rec.add("bound", bound);
    rec.add("success", err <= bound);
    rec.add("candidates", pr.candidates.size());
    rec.add("support_size", pr.support.size());
    rec.add("prune_skipped", pr.prune_skipped);
    rec.add("measurements_total", pr.measurements_total);
    return rec;
  };
  r.reports = run_trials(200, criterion_seed(1), 1, fn);  // single-threaded
  const FreqSummary s = success_summary(r.reports, "success");
  r.reports.push_back(summary_record(s));
  const double bar = 0.75 - 3.0 * s.stderr_freq;
  r.pass = s.freq >= bar;
  r.detail = "freq=" + fmt(s.freq) + " needs >=" + fmt(bar);
  return r;
}

// ---- 2: exact-sparse inputs recovered exactly ----
CriterionResult c2_exact_sparse() {
  CriterionResult r{.id = 2, .name = "exact-sparse recovery"};
  const std::size_t n = std::size_t{1} << 16, k = 16;
  const double eps = 0.5;
  const ConstantProfile prof = ConstantProfile::desk();
  SignalSpec spec;
  spec.generator = "spikes";
  spec.n = n;
  spec.k = k;
  spec.magnitude = 1.0;
  spec.noise = 0.0;

  const auto fn = [&](std::size_t idx, std::uint64_t s) {
    const GeneratedSignal sig = generate_signal(spec, s);
    PipelineConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.eps = eps;
    cfg.profile = prof;
    cfg.seed = derive_seed(s, "pipeline");
    const PipelineResult pr = recover(sig.x, cfg);
    const double err = l2_err(sig.x, pr.xprime);
    Record rec;
    rec.add("record", "trial");
    rec.add("trial", idx);
    rec.add("seed", s);
    rec.add("err", err);
    rec.add("success", err <= 1e-9);
    return rec;
  };
  r.reports = run_trials(200, criterion_seed(2), 1, fn);
  const FreqSummary s = success_summary(r.reports, "success");
  r.reports.push_back(summary_record(s));
  r.pass = s.freq >= 0.75;
  r.detail = "freq=" + fmt(s.freq) + " needs >=0.75";
  return r;
}

// ---- 3: tail-estimate bracket on the all-ones signal ----
CriterionResult c3_tail_bracket() {
  CriterionResult r{.id = 3, .name = "tail-estimate bracket"};
  const std::size_t n = 10000, k = 10;
  const double p = 2.0, delta = 0.05;
  const ConstantProfile prof = ConstantProfile::desk();
  const std::vector<double> x(n, 1.0);
  const TailBracket br = tail_bracket(x, k, p, prof);  // [99, 999] exactly

  const auto fn = [&](std::size_t idx, std::uint64_t s) {
    const TailSketch sk = tail_sketch_build(x, k, p, delta, prof, s);
    const double v = tail_estimate(sk);
    Record rec;
    rec.add("record", "trial");
    rec.add("trial", idx);
    rec.add("seed", s);
    rec.add("estimate", v);
    rec.add("bracket_lo", br.lower);
    rec.add("bracket_hi", br.upper);
    rec.add("success", v >= br.lower && v <= br.upper);
    return rec;
  };
  r.reports = run_trials(1000, criterion_seed(3), 1, fn);
  const FreqSummary s = success_summary(r.reports, "success");
  r.reports.push_back(summary_record(s));
  const double bar = 0.95 - 3.0 * s.stderr_freq;
  r.pass = s.freq >= bar;
  r.detail = "freq=" + fmt(s.freq) + " needs >=" + fmt(bar) + " bracket=[" +
             fmt(br.lower) + "," + fmt(br.upper) + "]";
  return r;
}

// ---- 4: biased-walk return bound ----
CriterionResult c4_random_walk() {
  CriterionResult r{.id = 4, .name = "biased-walk return bound"};
  const std::size_t walks = 10000, steps = 10000;
  const double freq =
      biased_walk_return_freq(0.9, walks, steps, criterion_seed(4));
  const double se = freq_stderr(freq, walks);
  const double bound = 1.0 / 9.0 + 3.0 * se;
  Record rec;
  rec.add("record", "walks");
  rec.add("p_right", 0.9);
  rec.add("walks", walks);
  rec.add("steps", steps);
  rec.add("return_freq", freq);
  rec.add("bound", bound);
  rec.add("success", freq <= bound);
  r.reports.push_back(rec);
  r.pass = freq <= bound;
  r.detail = "return=" + fmt(freq) + " needs <=" + fmt(bound);
  return r;
}

// ---- 5: gaussian small-ball and window mass ----
CriterionResult c5_gaussian_fact() {
  CriterionResult r{.id = 5, .name = "gaussian mass bounds"};
  const std::size_t trials = 1000000;
  const GaussianTailStats st = gaussian_tail_bounds(trials, criterion_seed(5));
  const double small_bound = 0.40 + 3.0 * freq_stderr(st.frac_small, trials);
  const double window_bar = 0.63 - 3.0 * freq_stderr(st.frac_window, trials);
  const bool ok = st.frac_small <= small_bound && st.frac_window >= window_bar;
  Record rec;
  rec.add("record", "gaussian");
  rec.add("trials", trials);
  rec.add("frac_small", st.frac_small);
  rec.add("small_bound", small_bound);
  rec.add("frac_window", st.frac_window);
  rec.add("window_bar", window_bar);
  rec.add("success", ok);
  r.reports.push_back(rec);
  r.pass = ok;
  r.detail = "P(|g|<=.5)=" + fmt(st.frac_small) + " needs <=" +
             fmt(small_bound) + "; P(window)=" + fmt(st.frac_window) +
             " needs >=" + fmt(window_bar);
  return r;
}

// ---- 6: set-query guarantee + exact touch accounting ----
CriterionResult c6_set_query() {
  CriterionResult r{.id = 6, .name = "set-query guarantee"};
  const std::size_t n = std::size_t{1} << 14, k = 64;
  const double eps = 0.25;
  const ConstantProfile prof = ConstantProfile::desk();
  const std::size_t expected_touches = 6;  // ceil(log2 64)
  SignalSpec spec;
  spec.generator = "spikes";
  spec.n = n;
  spec.k = k;
  spec.magnitude = 10.0;
  spec.noise = 1.0;

  bool touches_ok = true;
  const auto fn = [&](std::size_t idx, std::uint64_t s) {
    const GeneratedSignal sig = generate_signal(spec, s);
    SetQuerySketch sk = sq_create(n, k, eps, prof, derive_seed(s, "sq"));
    bool touch_exact = sk.layers == expected_touches;
    for (std::size_t i = 0; i < n; ++i) {
      if (sig.x[i] == 0.0) continue;
      if (sq_update(sk, i, sig.x[i]) != expected_touches) touch_exact = false;
    }
    const SparseApprox xp = sq_query(sk, sig.support);
    double err_sq = 0.0;
    for (const std::size_t j : sig.support) {
      const double d = xp.value_at(j) - sig.x[j];
      err_sq += d * d;
    }
    double on_sq = 0.0, total_sq = 0.0;
    for (const double v : sig.x) total_sq += v * v;
    for (const std::size_t j : sig.support) on_sq += sig.x[j] * sig.x[j];
    const double off_sq = total_sq - on_sq;
    Record rec;
    rec.add("record", "trial");
    rec.add("trial", idx);
    rec.add("seed", s);
    rec.add("err_sq", err_sq);
    rec.add("bound", eps * off_sq);
    rec.add("touches_exact", touch_exact);
    rec.add("success", err_sq <= eps * off_sq);
    return rec;
  };
  r.reports = run_trials(200, criterion_seed(6), 1, fn);
  for (const Record& rec : r.reports) {
    const std::string* t = rec.find("touches_exact");
    if (t && *t != "true") touches_ok = false;
  }
  const FreqSummary s = success_summary(r.reports, "success");
  r.reports.push_back(summary_record(s));
  const double bar = 0.9 - 3.0 * s.stderr_freq;
  r.hard_failed = !touches_ok;
  r.pass = s.freq >= bar && touches_ok;
  r.detail = "freq=" + fmt(s.freq) + " needs >=" + fmt(bar) + "; touches " +
             (touches_ok ? std::string("exact") : std::string("WRONG"));
  return r;
}

// ---- 7: fourier set query vs. naive-DFT ground truth ----
CriterionResult c7_fourier_set_query() {
  CriterionResult r{.id = 7, .name = "fourier set query"};
  const std::size_t n = std::size_t{1} << 12, k = 8;
  const double eps = 0.5, delta = 1e-6;
  const ConstantProfile prof = ConstantProfile::desk();
  SignalSpec spec;
  spec.generator = "tones";
  spec.n = n;
  spec.k = k;
  spec.noise = 4.0;

  const auto fn = [&](std::size_t idx, std::uint64_t s) {
    const GeneratedSignal sig = generate_signal(spec, s);
    const std::vector<Cplx> truth = naive_dft(sig.xc);
    FourierQueryStats st;
    const SparseSpectrum rec_spec = fourier_set_query(
        sig.xc, sig.support, k, eps, delta, prof, derive_seed(s, "fsq"), &st);
    const double err = l2_err_on(truth, rec_spec, sig.support);
    double off_sq = 0.0, l1 = 0.0;
    {
      auto next = sig.support.begin();
      for (std::size_t f = 0; f < n; ++f) {
        const double m = std::abs(truth[f]);
        l1 += m;
        if (next != sig.support.end() && *next == f) {
          ++next;
          continue;
        }
        off_sq += m * m;
      }
    }
    const double bound = eps * off_sq + delta * l1 * l1;
    Record rec;
    rec.add("record", "trial");
    rec.add("trial", idx);
    rec.add("seed", s);
    rec.add("err_sq", err * err);
    rec.add("bound", bound);
    rec.add("samples", st.samples);
    rec.add("survivors", std::span<const std::size_t>(st.survivor_sizes));
    rec.add("unrecovered", st.unrecovered);
    rec.add("success", err * err <= bound);
    return rec;
  };
  r.reports = run_trials(200, criterion_seed(7), 1, fn);
  const FreqSummary s = success_summary(r.reports, "success");
  r.reports.push_back(summary_record(s));
  const double bar = 0.9 - 3.0 * s.stderr_freq;
  r.pass = s.freq >= bar;
  r.detail = "freq=" + fmt(s.freq) + " needs >=" + fmt(bar);
  return r;
}

// ---- 8: collision / offset / noise event rates ----
CriterionResult c8_event_rates() {
  CriterionResult r{.id = 8, .name = "fourier event rates"};
  const std::size_t n = std::size_t{1} << 12, k = 8, B = 256, trials = 2000;
  const double alpha = 0.25;
  SignalSpec spec;
  spec.generator = "tones";
  spec.n = n;
  spec.k = k;
  spec.noise = 4.0;
  const GeneratedSignal sig =
      generate_signal(spec, derive_seed(criterion_seed(8), "signal"));

  const EventRates rates = event_frequencies(sig.spectrum, sig.support, B,
                                             alpha, k, trials,
                                             criterion_seed(8));
  const double coll_bound =
      4.0 * static_cast<double>(k) / static_cast<double>(B) +
      3.0 * freq_stderr(rates.collision, trials);
  const double off_bound = alpha + 3.0 * freq_stderr(rates.offset, trials);
  const double noise_bound =
      4.0 * alpha + 3.0 * freq_stderr(rates.noise, trials);
  const bool coll_ok = rates.collision <= coll_bound;
  const bool off_ok = rates.offset <= off_bound;
  const bool noise_ok = rates.noise <= noise_bound;
  Record rec;
  rec.add("record", "events");
  rec.add("trials", trials);
  rec.add("collision", rates.collision);
  rec.add("collision_bound", coll_bound);
  rec.add("offset", rates.offset);
  rec.add("offset_bound", off_bound);
  rec.add("noise", rates.noise);
  rec.add("noise_bound", noise_bound);
  rec.add("success", coll_ok && off_ok && noise_ok);
  r.reports.push_back(rec);
  r.pass = coll_ok && off_ok && noise_ok;
  r.detail = "coll=" + fmt(rates.collision) + "<=" + fmt(coll_bound) +
             (coll_ok ? " ok" : " FAIL") + "; off=" + fmt(rates.offset) +
             "<=" + fmt(off_bound) + (off_ok ? " ok" : " FAIL") +
             "; noise=" + fmt(rates.noise) + "<=" + fmt(noise_bound) +
             (noise_ok ? " ok" : " FAIL");
  return r;
}

// ---- 9: filter shape, deviation, and support budget ----
CriterionResult c9_filter() {
  CriterionResult r{.id = 9, .name = "flat-filter properties"};
  const std::size_t n = std::size_t{1} << 12, B = 64;
  const double alpha = 0.25, delta = 1e-6;
  bool flat_ok = true, zero_ok = true, dev_ok = false, supp_ok = false;
  double dev = 0.0, c_f = 0.0;
  std::size_t supp = 0, flat_max = 0, zero_min = 0, budget = 0;
  try {
    const FlatFilter f = build_filter(n, B, delta, alpha);
    flat_max = static_cast<std::size_t>(std::floor(
        (1.0 - alpha) * static_cast<double>(n) / (2.0 * static_cast<double>(B))));
    zero_min = (n + 2 * B - 1) / (2 * B);
    for (std::size_t q = 0; q <= flat_max; ++q)
      if (f.ideal_half[q] != 1.0) flat_ok = false;
    for (std::size_t q = zero_min; q <= n / 2; ++q)
      if (f.ideal_half[q] != 0.0) zero_ok = false;
    dev = f.delta_filter;
    dev_ok = dev <= delta;
    supp = f.support.size();
    budget = static_cast<std::size_t>(std::ceil(
        kFilterSupportC / alpha * static_cast<double>(B) *
        std::log2(static_cast<double>(n) / delta)));
    supp_ok = supp <= budget;
    c_f = f.c_f;
  } catch (const std::exception&) {
    flat_ok = zero_ok = dev_ok = supp_ok = false;
  }
  Record rec;
  rec.add("record", "filter");
  rec.add("flat_max", flat_max);
  rec.add("zero_min", zero_min);
  rec.add("flat_exact", flat_ok);
  rec.add("zero_exact", zero_ok);
  rec.add("delta_filter", dev);
  rec.add("delta", delta);
  rec.add("support", supp);
  rec.add("support_budget", budget);
  rec.add("c_f", c_f);
  rec.add("success", flat_ok && zero_ok && dev_ok && supp_ok);
  r.reports.push_back(rec);
  r.pass = flat_ok && zero_ok && dev_ok && supp_ok;
  r.hard_failed = !r.pass;
  r.detail = "dev=" + fmt(dev) + "<=" + fmt(delta) + ", |supp|=" +
             json_number(static_cast<std::uint64_t>(supp)) + "<=" +
             json_number(static_cast<std::uint64_t>(budget)) +
             ", c_f=" + fmt(c_f);
  return r;
}

// ---- 10: every linear sketch equals its dense oracle bitwise ----
CriterionResult c10_oracle_equivalence() {
  CriterionResult r{.id = 10, .name = "dense-oracle equivalence"};
  const std::size_t n = std::size_t{1} << 10;
  const ConstantProfile prof = ConstantProfile::desk();
  bool all_ok = true;
  for (std::size_t t = 0; t < 20; ++t) {
    const std::uint64_t s = trial_seed(criterion_seed(10), t);
    SignalSpec spec;
    spec.generator = "spikes-tail";
    spec.n = n;
    spec.k = 4;
    spec.magnitude = 10.0;
    spec.eps = 0.5;
    GeneratedSignal sig = generate_signal(spec, s);
    {
      auto next = sig.support.begin();
      for (std::size_t i = 0; i < n; ++i) {
        if (next != sig.support.end() && *next == i) {
          ++next;
          continue;
        }
        if (i % 5 == 0) sig.x[i] = 0.0;  // exercise the skip-zero rule
      }
    }

    const ForestGeometry geom = forest_geometry(n, 4, 0.5, prof);
    const ForestSketch fsk =
        forest_sketch_build(sig.x, geom, prof, derive_seed(s, "oracle-forest"));
    std::vector<double> fast;
    for (const auto& level : fsk.y) fast.insert(fast.end(), level.begin(), level.end());
    const std::vector<double> dense = dense_forest_measurements(sig.x, fsk);
    const bool forest_ok = fast == dense;

    const PruneSketch psk =
        prune_sketch_build(sig.x, 4, 0.5, prof, derive_seed(s, "oracle-prune"));
    const bool prune_ok = psk.y == dense_prune_measurements(sig.x, psk);

    SetQuerySketch ssk = sq_create(n, 4, 0.5, prof, derive_seed(s, "oracle-sq"));
    for (std::size_t i = 0; i < n; ++i) {
      if (sig.x[i] == 0.0) continue;
      sq_update(ssk, i, sig.x[i]);
    }
    const bool sq_ok = ssk.y == dense_set_query_measurements(sig.x, ssk);

    SignalSpec cspec;
    cspec.generator = "tones";
    cspec.n = n;
    cspec.k = 4;
    cspec.noise = 2.0;
    const GeneratedSignal csig =
        generate_signal(cspec, derive_seed(s, "oracle-tones"));
    const FlatFilter filt = build_filter(n, 16, 1e-6, 0.25);
    const SpectrumPermutation perm = SpectrumPermutation::sample(
        CounterRng{derive_seed(s, "oracle-perm")}, 0, n);
    const bool fold_ok =
        fold_samples(csig.xc, perm, filt) == dense_fold(csig.xc, perm, filt);

    const bool ok = forest_ok && prune_ok && sq_ok && fold_ok;
    if (!ok) all_ok = false;
    Record rec;
    rec.add("record", "seed-check");
    rec.add("trial", t);
    rec.add("seed", s);
    rec.add("forest_exact", forest_ok);
    rec.add("prune_exact", prune_ok);
    rec.add("set_query_exact", sq_ok);
    rec.add("fold_exact", fold_ok);
    rec.add("success", ok);
    r.reports.push_back(rec);
  }
  r.pass = all_ok;
  r.hard_failed = !all_ok;
  r.detail = all_ok ? "20/20 seeds bitwise equal" : "bitwise mismatch";
  return r;
}

// ---- 11: byte-identical reports across reruns and parallelism ----
CriterionResult c11_determinism() {
  CriterionResult r{.id = 11, .name = "report determinism"};
  const std::size_t n = std::size_t{1} << 12, k = 4;
  const double eps = 0.5;
  const ConstantProfile prof = ConstantProfile::desk();
  SignalSpec spec;
  spec.generator = "spikes-tail";
  spec.n = n;
  spec.k = k;
  spec.magnitude = 10.0;
  spec.eps = eps;

  const auto fn = [&](std::size_t idx, std::uint64_t s) {
    const GeneratedSignal sig = generate_signal(spec, s);
    PipelineConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.eps = eps;
    cfg.profile = prof;
    cfg.seed = derive_seed(s, "pipeline");
    const PipelineResult pr = recover(sig.x, cfg);
    Record rec;
    rec.add("record", "trial");
    rec.add("trial", idx);
    rec.add("seed", s);
    rec.add("err", l2_err(sig.x, pr.xprime));
    rec.add("support_size", pr.support.size());
    rec.add("measurements_total", pr.measurements_total);
    return rec;
  };
  const std::uint64_t seed = criterion_seed(11);
  const std::string run_a = emit_json(run_trials(20, seed, 1, fn));
  const std::string run_b = emit_json(run_trials(20, seed, 1, fn));
  const std::string run_c = emit_json(run_trials(20, seed, 4, fn));
  const bool ok = run_a == run_b && run_a == run_c;
  Record rec;
  rec.add("record", "determinism");
  rec.add("bytes", static_cast<std::uint64_t>(run_a.size()));
  rec.add("rerun_identical", run_a == run_b);
  rec.add("parallel_identical", run_a == run_c);
  rec.add("success", ok);
  r.reports.push_back(rec);
  r.pass = ok;
  r.hard_failed = !ok;
  r.detail = ok ? "rerun and 4-thread run byte-identical ("
                      + std::to_string(run_a.size()) + " bytes)"
                : "reports diverged";
  return r;
}

}  // namespace

CriterionResult run_criterion(int id) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = c1_end_to_end(); break;
    case 2: r = c2_exact_sparse(); break;
    case 3: r = c3_tail_bracket(); break;
    case 4: r = c4_random_walk(); break;
    case 5: r = c5_gaussian_fact(); break;
    case 6: r = c6_set_query(); break;
    case 7: r = c7_fourier_set_query(); break;
    case 8: r = c8_event_rates(); break;
    case 9: r = c9_filter(); break;
    case 10: r = c10_oracle_equivalence(); break;
    case 11: r = c11_determinism(); break;
    default:
      throw std::invalid_argument("criterion id must be in [1, 11]");
  }
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  // pinned wall-clock budgets (single-threaded)
  if (r.id == 1 && r.elapsed_seconds > 300.0) {
    r.pass = false;
    r.detail += "; OVER TIME BUDGET 300s";
  }
  if (r.id == 3 && r.elapsed_seconds > 60.0) {
    r.pass = false;
    r.detail += "; OVER TIME BUDGET 60s";
  }
  return r;
}

std::string criterion_verdict_line(const CriterionResult& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", r.elapsed_seconds);
  return "criterion " + std::to_string(r.id) + " " +
         (r.pass ? "PASS" : "FAIL") + " " + r.name + ": " + r.detail + " (" +
         buf + ")";
}

}  // namespace sketchlab
