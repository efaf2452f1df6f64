#include "sketchlab/harness.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "sketchlab/rng.hpp"

namespace sketchlab {

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial_index) {
  const CounterRng rng{derive_seed(master_seed, "trial")};
  return rng.bits(trial_index);
}

double freq_stderr(double p_hat, std::size_t trials) {
  if (trials == 0) return 0.0;
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

std::vector<Record> run_trials(std::size_t trials, std::uint64_t master_seed,
                               std::size_t jobs, const TrialFn& fn) {
  if (trials == 0) throw std::invalid_argument("run_trials: trials must be >= 1");
  std::vector<Record> out(trials);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < trials; ++i)
      out[i] = fn(i, trial_seed(master_seed, i));
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const std::size_t workers = std::min(jobs, trials);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= trials) return;
        try {
          out[i] = fn(i, trial_seed(master_seed, i));
        } catch (...) {
          std::lock_guard lk(failure_mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

FreqSummary success_summary(std::span<const Record> reports,
                            std::string_view flag) {
  FreqSummary s;
  s.trials = reports.size();
  for (const Record& r : reports) {
    const std::string* v = r.find(flag);
    if (v && *v == "true") ++s.successes;
  }
  s.freq = s.trials == 0
               ? 0.0
               : static_cast<double>(s.successes) / static_cast<double>(s.trials);
  s.stderr_freq = freq_stderr(s.freq, s.trials);
  return s;
}

Record summary_record(const FreqSummary& s) {
  Record r;
  r.add("record", "summary");
  r.add("trials", s.trials);
  r.add("successes", s.successes);
  r.add("frequency", s.freq);
  r.add("stderr", s.stderr_freq);
  return r;
}

}  // namespace sketchlab
