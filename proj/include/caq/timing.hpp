#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caq/backends.hpp"
#include "caq/errors.hpp"
#include "caq/metrics.hpp"

namespace caq {

enum class TimingStatistic { Median };

inline std::string_view to_string(TimingStatistic statistic) {
  switch (statistic) {
    case TimingStatistic::Median:
      return "median";
  }
  throw ValidationError("unknown timing statistic");
}

// How many lookups to time per component. Warmup lookups run first and are
// discarded, shedding cold-cache and cold-connection effects.
struct TimingConfig {
  int trials = 20;
  int warmups = 3;
  TimingStatistic statistic = TimingStatistic::Median;

  void validate() const {
    if (trials < 1) throw ValidationError("timing trials must be >= 1");
    if (warmups < 0) throw ValidationError("timing warmups must be >= 0");
  }

  friend bool operator==(const TimingConfig&, const TimingConfig&) = default;
};

// Middle value of the sample; mean of the two middles for even sizes.
inline double median(std::span<const double> samples) {
  if (samples.empty()) {
    throw ValidationError("median of an empty sample is undefined");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  if (sorted.size() % 2 == 1) return sorted[mid];
  return (sorted[mid - 1] + sorted[mid]) / 2.0;
}

// Timed trials for one component plus the summary statistic that becomes t.
struct AccessMeasurement {
  std::string component_name;
  std::vector<double> per_trial;
  AccessTime t;
  bool found = false;
};

// Runs cfg.warmups unrecorded lookups, then cfg.trials recorded ones.
// t is the median of the recorded trials, clamped to the floor. All trials
// must agree on the found verdict; disagreement means the backend is not
// deterministic and is reported as an error. Trials run serially on the
// calling thread.
inline AccessMeasurement measure_access(const LookupBackend& backend,
                                        std::string_view name,
                                        const TimingConfig& cfg = {}) {
  cfg.validate();
  for (int i = 0; i < cfg.warmups; ++i) {
    backend.lookup(name);
  }
  std::vector<double> per_trial;
  per_trial.reserve(static_cast<std::size_t>(cfg.trials));
  bool found = false;
  for (int i = 0; i < cfg.trials; ++i) {
    const LookupOutcome outcome = backend.lookup(name);
    if (i == 0) {
      found = outcome.found;
    } else if (outcome.found != found) {
      throw ValidationError(
          "lookup verdicts for '" + std::string(name) +
          "' disagree across trials; backend is not deterministic");
    }
    per_trial.push_back(outcome.raw_elapsed_seconds);
  }
  AccessTime t = AccessTime::clamped(median(per_trial));
  return AccessMeasurement{std::string(name), std::move(per_trial), t, found};
}

}  // namespace caq
