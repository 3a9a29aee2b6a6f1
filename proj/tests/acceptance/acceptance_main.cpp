// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits non-zero if any fail.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "caq/caq.hpp"

namespace fs = std::filesystem;
using namespace caq;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure(message);
}

void require_close(double actual, double expected, double rel_tol,
                   const std::string& what) {
  if (expected == 0.0) {
    require(actual == 0.0, what + ": expected exactly 0, got " +
                               std::to_string(actual));
    return;
  }
  const double rel = std::abs(actual - expected) / std::abs(expected);
  require(rel <= rel_tol, what + ": |" + std::to_string(actual) + " - " +
                              std::to_string(expected) +
                              "| exceeds relative tolerance");
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_runtime(Clock::time_point start, double limit_seconds) {
  const double elapsed = seconds_since(start);
  require(elapsed < limit_seconds,
          "runtime " + std::to_string(elapsed) + " s exceeds the " +
              std::to_string(limit_seconds) + " s budget");
}

std::string slurp(const fs::path& path) {
  std::ifstream input(path, std::ios::binary);
  require(static_cast<bool>(input), "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << input.rdbuf();
  return buffer.str();
}

std::string fixture_path(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

// ---------------------------------------------------------------------------
// criterion 1: formula implementations agree with independent direct
// evaluations over randomized inputs
// ---------------------------------------------------------------------------

ReadinessManifest random_manifest(std::mt19937& rng) {
  std::uniform_int_distribution<int> req_count(0, 8);
  std::uniform_int_distribution<int> person_count(1, 6);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> skill_mask(0, 127);
  const std::vector<std::string> pool = {"re",      "modeling", "testing",
                                         "domain",  "java",     "analysis",
                                         "deploys"};
  ReadinessManifest manifest;
  manifest.project_id = "random";
  const int reqs = req_count(rng);
  for (int i = 0; i < reqs; ++i) {
    manifest.requirements.push_back(
        {"req" + std::to_string(i),
         coin(rng) == 1 ? RequirementCategory::Hardware
                        : RequirementCategory::Software,
         coin(rng) == 1, coin(rng) == 1});
  }
  const int persons = person_count(rng);
  for (int i = 0; i < persons; ++i) {
    PersonEntry person;
    person.person_id = "p" + std::to_string(i);
    const int required = skill_mask(rng);
    const int possessed = skill_mask(rng);
    for (std::size_t s = 0; s < pool.size(); ++s) {
      if (required & (1 << s)) person.skills_required.push_back(pool[s]);
      if (possessed & (1 << s)) person.skills_possessed.push_back(pool[s]);
    }
    // parsed manifests carry sorted skill sets; match that invariant
    std::sort(person.skills_required.begin(), person.skills_required.end());
    std::sort(person.skills_possessed.begin(), person.skills_possessed.end());
    manifest.persons.push_back(std::move(person));
  }
  return manifest;
}

void criterion_1_formula_oracles() {
  const auto start = Clock::now();
  std::mt19937 rng(42001);
  std::uniform_real_distribution<double> weight(0.01, 100.0);
  std::uniform_real_distribution<double> time_dist(1e-6, 10.0);
  std::bernoulli_distribution coin(0.5);

  for (int i = 0; i < 1000; ++i) {
    const int a = coin(rng) ? 1 : 0;
    const double r = weight(rng);
    const double t = time_dist(rng);
    // direct transcription of the quotient definition
    const double expected = static_cast<double>(a) * r / t;
    const double actual =
        compute_caq(Availability(a == 1), OrganizednessWeight(r),
                    AccessTime(t))
            .per_second();
    require_close(actual, expected, 1e-12, "CAQ oracle mismatch");
  }

  for (int i = 0; i < 1000; ++i) {
    const ReadinessManifest manifest = random_manifest(rng);

    // independent oracle: recount the manifest from scratch
    std::size_t needed = 0;
    std::size_t available = 0;
    for (const auto& requirement : manifest.requirements) {
      if (requirement.needed) ++needed;
      if (requirement.available) ++available;
    }
    const double rq_expected =
        needed == 0 ? 1.0
                    : static_cast<double>(available) /
                          static_cast<double>(needed);

    std::vector<double> ratios;
    for (const auto& person : manifest.persons) {
      std::vector<std::string> intersection;
      std::set_intersection(person.skills_possessed.begin(),
                            person.skills_possessed.end(),
                            person.skills_required.begin(),
                            person.skills_required.end(),
                            std::back_inserter(intersection));
      ratios.push_back(person.skills_required.empty()
                           ? 1.0
                           : static_cast<double>(intersection.size()) /
                                 static_cast<double>(
                                     person.skills_required.size()));
    }
    const double mq_expected =
        std::accumulate(ratios.rbegin(), ratios.rend(), 0.0) /
        static_cast<double>(ratios.size());
    const double aq_expected = rq_expected * mq_expected;

    const AqResult result = evaluate_readiness(manifest);
    require_close(result.rq.value(), rq_expected, 1e-12, "RQ oracle mismatch");
    require_close(result.mq.value(), mq_expected, 1e-12, "MQ oracle mismatch");
    require_close(result.aq.value(), aq_expected, 1e-12, "AQ oracle mismatch");
  }
  require_runtime(start, 1.0);
}

// ---------------------------------------------------------------------------
// criterion 2: the interpretation table reproduces exactly
// ---------------------------------------------------------------------------

void criterion_2_interpretation_table() {
  require(interpret_aq(Quotient(1.5)) == ReadinessClass::MoreThanReady,
          "AQ 1.5 must classify MORE_THAN_READY");
  require(interpret_aq(Quotient(1.0)) == ReadinessClass::ExactlyReady,
          "AQ 1.0 must classify EXACTLY_READY");
  require(interpret_aq(Quotient(0.5)) == ReadinessClass::LessThanReady,
          "AQ 0.5 must classify LESS_THAN_READY");
  require(interpret_aq(Quotient(0.0)) == ReadinessClass::NotReady,
          "AQ 0.0 must classify NOT_READY");

  require(readiness_label(ReadinessClass::MoreThanReady) == "MORE THAN READY",
          "MORE_THAN_READY label drifted");
  require(readiness_label(ReadinessClass::ExactlyReady) == "EXACTLY READY",
          "EXACTLY_READY label drifted");
  require(readiness_label(ReadinessClass::LessThanReady) ==
              "LESS THAN READY – NEED MORE RESOURCES AND/OR MANPOWER",
          "LESS_THAN_READY label drifted");
}

// ---------------------------------------------------------------------------
// criterion 3: surplus resources with zero-skilled staff -> AQ 0, NOT READY
// ---------------------------------------------------------------------------

void criterion_3_extreme_case() {
  const ReadinessManifest manifest =
      parse_manifest(slurp(fixture_path("manifest_not_ready.json")));
  const AqResult result = evaluate_readiness(manifest);
  require(result.rq.value() == 1.5,
          "fixture must yield RQ 1.5, got " + std::to_string(result.rq.value()));
  require(result.rq.value() > 1.0, "fixture must have surplus (RQ > 1)");
  require(result.mq.value() == 0.0, "fixture must yield MQ 0");
  require(result.aq.value() == 0.0, "the product form must force AQ 0");
  require(result.classification == ReadinessClass::NotReady,
          "AQ 0 must classify NOT_READY");
}

// ---------------------------------------------------------------------------
// criterion 4: all organization backends agree with a linear-scan oracle
// ---------------------------------------------------------------------------

void criterion_4_backend_equivalence() {
  const auto start = Clock::now();
  std::mt19937 rng(42004);
  std::uniform_int_distribution<std::size_t> size_dist(0, 200);
  std::uniform_int_distribution<int> depth_dist(0, 3);
  std::uniform_int_distribution<int> segment_dist(0, 5);

  for (int round = 0; round < 50; ++round) {
    LibraryDescriptor lib;
    lib.library_id = "rand" + std::to_string(round);
    lib.environment = EnvironmentType::LocalCli;
    const std::size_t size = size_dist(rng);
    std::set<std::string> members;
    for (std::size_t i = 0; i < size; ++i) {
      ComponentRecord record;
      record.name = "comp_" + std::to_string(i);
      members.insert(record.name);
      const int depth = depth_dist(rng);
      for (int d = 0; d < depth; ++d) {
        record.path.push_back("dir" + std::to_string(segment_dist(rng)));
      }
      lib.components.push_back(std::move(record));
    }

    lib.organization = OrganizationType::Hierarchical;
    const auto hierarchical = build_backend(lib);
    lib.organization = OrganizationType::SearchBased;
    const auto search = build_backend(lib);
    lib.organization = OrganizationType::DropdownList;
    const auto dropdown = build_backend(lib);

    std::uniform_int_distribution<int> query_dist(0, 259);
    for (int q = 0; q < 1000; ++q) {
      const std::string name = "comp_" + std::to_string(query_dist(rng));
      const bool expected = members.count(name) > 0;
      require(hierarchical->lookup(name).found == expected,
              "hierarchical backend disagrees with the membership oracle");
      require(search->lookup(name).found == expected,
              "search backend disagrees with the membership oracle");
      require(dropdown->lookup(name).found == expected,
              "dropdown backend disagrees with the membership oracle");
    }
  }
  require_runtime(start, 10.0);
}

// ---------------------------------------------------------------------------
// criterion 5: monotonicity and invariance properties at 10k cases each
// ---------------------------------------------------------------------------

void criterion_5_monotonicity_suite() {
  const auto start = Clock::now();
  std::mt19937 rng(42005);
  std::uniform_real_distribution<double> weight(0.01, 100.0);
  std::uniform_real_distribution<double> time_dist(1e-6, 10.0);
  std::uniform_real_distribution<double> scale(0.1, 100.0);

  for (int i = 0; i < 10000; ++i) {
    const double r = weight(rng);
    double t1 = time_dist(rng);
    double t2 = time_dist(rng);
    if (t1 == t2) continue;
    if (t1 > t2) std::swap(t1, t2);
    const double fast = compute_caq(Availability(true),
                                    OrganizednessWeight(r), AccessTime(t1))
                            .per_second();
    const double slow = compute_caq(Availability(true),
                                    OrganizednessWeight(r), AccessTime(t2))
                            .per_second();
    require(fast > slow, "CAQ must strictly decrease as t grows");
  }

  for (int i = 0; i < 10000; ++i) {
    const double r = weight(rng);
    const double t = time_dist(rng);
    const double k = scale(rng);
    const double base = compute_caq(Availability(true),
                                    OrganizednessWeight(r), AccessTime(t))
                            .per_second();
    const double scaled =
        compute_caq(Availability(true), OrganizednessWeight(k * r),
                    AccessTime(t))
            .per_second();
    require_close(scaled, k * base, 1e-12, "CAQ must be linear in R_l");
  }

  std::uniform_int_distribution<std::uint32_t> count(0, 12);
  std::uniform_int_distribution<std::uint32_t> k_dist(1, 9);
  std::uniform_int_distribution<int> roster(1, 8);
  for (int i = 0; i < 10000; ++i) {
    std::vector<PersonSkills> persons;
    std::vector<PersonSkills> scaled;
    const std::uint32_t k = k_dist(rng);
    const int n = roster(rng);
    for (int p = 0; p < n; ++p) {
      const std::uint32_t required = count(rng);
      const std::uint32_t available = count(rng);
      persons.push_back({"p", available, required});
      scaled.push_back({"p", available * k, required * k});
    }
    const double before = compute_mq(persons).value();
    const double after = compute_mq(scaled).value();
    require_close(after, before, 1e-12,
                  "MQ must be invariant under per-person scaling");
  }
  require_runtime(start, 2.0);
}

// ---------------------------------------------------------------------------
// criterion 6: injected registry latency shows up in t and depresses CAQ
// ---------------------------------------------------------------------------

void criterion_6_latency_sensitivity() {
  const auto start = Clock::now();

  LibraryDescriptor served;
  served.library_id = "latency-fixture";
  served.organization = OrganizationType::SearchBased;
  served.environment = EnvironmentType::LocalCli;
  served.components = {
      {"Button", {}, std::nullopt},
      {"Grid", {}, std::nullopt},
      {"Label", {}, std::nullopt},
      {"Slider", {}, std::nullopt},
  };

  const QuerySet queries =
      QuerySet::from_names({"Button", "Grid", "Label", "Slider", "Missing"});
  const TimingConfig cfg{5, 1};

  const auto evaluate_with_latency = [&](double latency_seconds) {
    const auto server = run_mock_registry(served, latency_seconds);
    LibraryDescriptor remote = served;
    remote.library_id = "latency-remote";
    remote.environment = EnvironmentType::Network;
    remote.remote_endpoint = server->endpoint();
    return evaluate_library(remote, queries, WeightTable::defaults(), cfg);
  };

  const LibraryReport baseline = evaluate_with_latency(0.0);
  const LibraryReport delayed = evaluate_with_latency(0.05);

  std::vector<double> baseline_t;
  std::vector<double> delayed_t;
  for (const auto& row : baseline.rows) baseline_t.push_back(row.t.seconds());
  for (const auto& row : delayed.rows) delayed_t.push_back(row.t.seconds());
  const double shift = median(delayed_t) - median(baseline_t);
  require(shift >= 0.04 && shift <= 0.06,
          "median t shift " + std::to_string(shift) +
              " s is outside 50 ms +/- 20%");

  require(baseline.rows.size() == delayed.rows.size(),
          "row counts diverged between runs");
  for (std::size_t i = 0; i < baseline.rows.size(); ++i) {
    if (!baseline.rows[i].a_c.present()) continue;
    require(delayed.rows[i].a_c.present(),
            "availability verdicts diverged between runs");
    require(delayed.rows[i].caq.per_second() <
                baseline.rows[i].caq.per_second(),
            "CAQ of '" + baseline.rows[i].component_name +
                "' must strictly decrease under injected latency");
  }
  require_runtime(start, 30.0);
}

// ---------------------------------------------------------------------------
// criterion 7: CLI outputs are byte-identical to the golden files
// ---------------------------------------------------------------------------

std::string run_tool_capture(const std::string& args) {
  static int counter = 0;
  const fs::path out_path =
      fs::temp_directory_path() /
      ("caq-acceptance-" + std::to_string(::getpid()) + "-" +
       std::to_string(counter++) + ".out");
  const std::string command =
      std::string("\"") + CAQTOOL_BIN + "\" " + args + " >" +
      out_path.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  require(WIFEXITED(status) && WEXITSTATUS(status) == 0,
          "command failed: " + command);
  const std::string output = slurp(out_path);
  fs::remove(out_path);
  return output;
}

void criterion_7_golden_reports() {
  const std::string eval_args =
      "caq eval --deterministic-timing --trials 3 --warmups 1 --library " +
      fixture_path("library_local.json") + " --queries " +
      fixture_path("queries.json");
  const std::string aq_args =
      "aq eval --manifest " + fixture_path("manifest_ready.json");

  const struct {
    std::string args;
    std::string golden;
  } cases[] = {
      {eval_args + " --format json", "eval.json"},
      {eval_args + " --format csv", "eval.csv"},
      {eval_args + " --format md", "eval.md"},
      {aq_args + " --format json", "aq.json"},
      {aq_args + " --format csv", "aq.csv"},
      {aq_args + " --format md", "aq.md"},
  };
  for (const auto& check : cases) {
    const std::string actual = run_tool_capture(check.args);
    const std::string expected =
        slurp(std::string(GOLDEN_DIR) + "/" + check.golden);
    require(actual == expected,
            "output differs from golden file " + check.golden);
  }
}

// ---------------------------------------------------------------------------
// criterion 8: measured lookup cost follows the organizedness ordering
// ---------------------------------------------------------------------------

void criterion_8_lookup_cost_ordering() {
  const auto start = Clock::now();
  std::mt19937 rng(42008);

  LibraryDescriptor lib;
  lib.library_id = "big";
  lib.environment = EnvironmentType::LocalCli;
  std::uniform_int_distribution<int> branch(0, 21);
  for (int i = 0; i < 10000; ++i) {
    ComponentRecord record;
    record.name = "component_" + std::to_string(i);
    record.path = {"top" + std::to_string(branch(rng)),
                   "mid" + std::to_string(branch(rng)),
                   "leaf" + std::to_string(branch(rng))};
    lib.components.push_back(std::move(record));
  }

  lib.organization = OrganizationType::SearchBased;
  const auto search = build_backend(lib);
  lib.organization = OrganizationType::DropdownList;
  const auto dropdown = build_backend(lib);
  lib.organization = OrganizationType::Hierarchical;
  const auto hierarchical = build_backend(lib);

  std::uniform_int_distribution<int> pick(0, 9999);
  std::vector<std::string> queries;
  queries.reserve(1000);
  for (int q = 0; q < 1000; ++q) {
    queries.push_back("component_" + std::to_string(pick(rng)));
  }

  const auto median_cost = [&queries](const LookupBackend& backend) {
    std::vector<double> elapsed;
    elapsed.reserve(queries.size());
    for (const auto& name : queries) {
      const LookupOutcome outcome = backend.lookup(name);
      require(outcome.found, "cost fixture queries must all resolve");
      elapsed.push_back(outcome.raw_elapsed_seconds);
    }
    return median(elapsed);
  };

  const double search_cost = median_cost(*search);
  const double dropdown_cost = median_cost(*dropdown);
  const double hierarchical_cost = median_cost(*hierarchical);

  require(search_cost <= dropdown_cost,
          "median search lookup (" + std::to_string(search_cost) +
              " s) must not exceed dropdown (" +
              std::to_string(dropdown_cost) + " s)");
  require(dropdown_cost <= hierarchical_cost,
          "median dropdown lookup (" + std::to_string(dropdown_cost) +
              " s) must not exceed hierarchical (" +
              std::to_string(hierarchical_cost) + " s)");
  require_runtime(start, 60.0);
}

}  // namespace

int main() {
  const struct {
    int id;
    const char* title;
    std::function<void()> body;
  } criteria[] = {
      {1, "formula oracle equivalence", criterion_1_formula_oracles},
      {2, "interpretation table reproduction",
       criterion_2_interpretation_table},
      {3, "surplus resources with zero-skilled staff", criterion_3_extreme_case},
      {4, "backend/oracle availability equivalence",
       criterion_4_backend_equivalence},
      {5, "monotonicity suite", criterion_5_monotonicity_suite},
      {6, "latency sensitivity end-to-end", criterion_6_latency_sensitivity},
      {7, "golden report comparison", criterion_7_golden_reports},
      {8, "lookup-cost ordering", criterion_8_lookup_cost_ordering},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = Clock::now();
    try {
      criterion.body();
      std::printf("[PASS] criterion %d: %s (%.2f s)\n", criterion.id,
                  criterion.title, seconds_since(start));
    } catch (const std::exception& err) {
      ++failures;
      std::printf("[FAIL] criterion %d: %s: %s\n", criterion.id,
                  criterion.title, err.what());
    }
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of 8 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 8 criteria passed\n");
  return 0;
}
