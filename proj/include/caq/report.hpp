#pragma once

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "caq/backends.hpp"
#include "caq/errors.hpp"
#include "caq/library.hpp"
#include "caq/metrics.hpp"
#include "caq/timing.hpp"

namespace caq {

// Ordered list of candidate component names to evaluate a library against.
// Duplicates are dropped (first occurrence wins) and remembered so callers
// can warn about them.
class QuerySet {
 public:
  static QuerySet from_names(const std::vector<std::string>& names) {
    if (names.empty()) {
      throw ValidationError("query set must contain at least one name");
    }
    QuerySet queries;
    std::unordered_set<std::string_view> seen;
    for (const auto& name : names) {
      if (name.empty()) {
        throw ValidationError("query names must be non-empty");
      }
      if (seen.insert(name).second) {
        queries.names_.push_back(name);
      } else {
        queries.dropped_duplicates_.push_back(name);
      }
    }
    return queries;
  }

  // Accepts a JSON array of strings.
  static QuerySet from_json(const nlohmann::json& doc) {
    if (!doc.is_array()) {
      throw ValidationError(
          "query document: expected a JSON array of component names");
    }
    std::vector<std::string> names;
    for (const auto& entry : doc) {
      if (!entry.is_string()) {
        throw ValidationError(
            "query document: expected a JSON array of component names");
      }
      names.push_back(entry.get<std::string>());
    }
    return from_names(names);
  }

  static QuerySet parse(std::string_view text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
      throw ValidationError(std::string("query document: ") + err.what());
    }
    return from_json(doc);
  }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& dropped_duplicates() const {
    return dropped_duplicates_;
  }

 private:
  QuerySet() = default;
  std::vector<std::string> names_;
  std::vector<std::string> dropped_duplicates_;
};

// Per-component CAQ inputs and output. For an unavailable component t holds
// the measured failed-lookup time; availability zeroes the quotient
// regardless, but the time stays on record.
struct CaqRow {
  std::string component_name;
  Availability a_c;
  OrganizednessWeight r_l;
  AccessTime t;
  CaqValue caq;
  std::vector<double> per_trial;
};

enum class AggregateMethod { Mean, Median };

inline std::string_view to_string(AggregateMethod method) {
  switch (method) {
    case AggregateMethod::Mean:
      return "mean";
    case AggregateMethod::Median:
      return "median";
  }
  throw ValidationError("unknown aggregate method");
}

inline AggregateMethod aggregate_from_string(std::string_view text) {
  if (text == "mean") return AggregateMethod::Mean;
  if (text == "median") return AggregateMethod::Median;
  throw ValidationError("unknown aggregate method '" + std::string(text) +
                        "' (expected mean|median)");
}

struct LibraryReport {
  std::string library_id;
  OrganizationType organization = OrganizationType::SearchBased;
  EnvironmentType environment = EnvironmentType::LocalCli;
  std::vector<CaqRow> rows;
  double aggregate_caq = 0.0;
  double availability_rate = 0.0;
  TimingConfig timing_config;
  AggregateMethod aggregate_method = AggregateMethod::Mean;
};

// A remote evaluation died partway; whatever finished rides along so the
// caller can report progress.
class EvaluationAborted : public TransportError {
 public:
  EvaluationAborted(const std::string& message, LibraryReport partial)
      : TransportError(message), partial_(std::move(partial)) {}

  const LibraryReport& partial() const { return partial_; }

 private:
  LibraryReport partial_;
};

struct EvaluationOptions {
  AggregateMethod aggregate = AggregateMethod::Mean;
  RemoteOptions remote;
};

namespace detail {

inline double aggregate_rows(const std::vector<CaqRow>& rows,
                             AggregateMethod method) {
  if (rows.empty()) return 0.0;
  std::vector<double> values;
  values.reserve(rows.size());
  for (const auto& row : rows) values.push_back(row.caq.per_second());
  if (method == AggregateMethod::Median) return median(values);
  double sum = 0.0;
  for (const double value : values) sum += value;
  return sum / static_cast<double>(values.size());
}

inline void finalize_report(LibraryReport& report) {
  report.aggregate_caq =
      aggregate_rows(report.rows, report.aggregate_method);
  std::size_t found = 0;
  for (const auto& row : report.rows) {
    if (row.a_c.present()) ++found;
  }
  report.availability_rate =
      report.rows.empty()
          ? 0.0
          : static_cast<double>(found) /
                static_cast<double>(report.rows.size());
}

}  // namespace detail

// Evaluates one library against a query set: per query, measure access,
// look up the organizedness weight and compute the component activeness
// quotient. Components are measured in query order on the calling thread.
inline LibraryReport evaluate_library(
    const LibraryDescriptor& descriptor, const QuerySet& queries,
    const WeightTable& weights = WeightTable::defaults(),
    const TimingConfig& cfg = {}, const EvaluationOptions& options = {}) {
  cfg.validate();
  const std::unique_ptr<LookupBackend> backend =
      build_backend(descriptor, options.remote);

  LibraryReport report;
  report.library_id = descriptor.library_id;
  report.organization = descriptor.organization;
  report.environment = descriptor.environment;
  report.timing_config = cfg;
  report.aggregate_method = options.aggregate;

  const OrganizednessWeight r_l =
      organizedness_weight(weights, descriptor.organization);
  for (const auto& name : queries.names()) {
    AccessMeasurement measurement = [&]() {
      try {
        return measure_access(*backend, name, cfg);
      } catch (const TransportError& err) {
        detail::finalize_report(report);
        throw EvaluationAborted(
            "evaluation of library '" + descriptor.library_id +
                "' aborted at component '" + name + "': " + err.what(),
            std::move(report));
      }
    }();
    const Availability a_c(measurement.found);
    const CaqValue caq = compute_caq(a_c, r_l, measurement.t);
    report.rows.push_back(CaqRow{name, a_c, r_l, measurement.t, caq,
                                 std::move(measurement.per_trial)});
  }
  detail::finalize_report(report);
  return report;
}

// Replaces every measured time with a fixed sentinel and recomputes the
// dependent quotients. Keeps rows recomputable while making report bytes
// reproducible across runs; meant for golden tests.
inline void apply_deterministic_timing(LibraryReport& report,
                                       double sentinel_seconds = 1e-3) {
  const AccessTime sentinel(sentinel_seconds);
  for (auto& row : report.rows) {
    row.t = sentinel;
    std::fill(row.per_trial.begin(), row.per_trial.end(), sentinel_seconds);
    row.caq = compute_caq(row.a_c, row.r_l, row.t);
  }
  detail::finalize_report(report);
}

struct RankingEntry {
  std::string library_id;
  double aggregate_caq = 0.0;

  friend bool operator==(const RankingEntry&, const RankingEntry&) = default;
};

// Libraries ordered by descending aggregate CAQ; ties break by ascending
// library id. The order is total.
struct Ranking {
  std::vector<RankingEntry> entries;

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

inline Ranking compare_libraries(std::span<const LibraryReport> reports) {
  if (reports.empty()) {
    throw ValidationError("nothing to compare: no reports given");
  }
  std::unordered_set<std::string_view> seen;
  Ranking ranking;
  ranking.entries.reserve(reports.size());
  for (const auto& report : reports) {
    if (!seen.insert(report.library_id).second) {
      throw ValidationError("duplicate library_id '" + report.library_id +
                            "' in comparison");
    }
    ranking.entries.push_back(
        RankingEntry{report.library_id, report.aggregate_caq});
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const RankingEntry& a, const RankingEntry& b) {
              if (a.aggregate_caq != b.aggregate_caq) {
                return a.aggregate_caq > b.aggregate_caq;
              }
              return a.library_id < b.library_id;
            });
  return ranking;
}

}  // namespace caq
