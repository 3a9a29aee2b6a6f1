#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "caq/report.hpp"

using namespace caq;
using Catch::Matchers::WithinRel;

namespace {

LibraryDescriptor dropdown_library() {
  LibraryDescriptor lib;
  lib.library_id = "widgets";
  lib.organization = OrganizationType::DropdownList;
  lib.environment = EnvironmentType::LocalCli;
  lib.components = {
      {"Button", {}, std::nullopt},
      {"Grid", {}, std::nullopt},
  };
  return lib;
}

LibraryReport make_report(std::string id, double aggregate) {
  LibraryReport report;
  report.library_id = std::move(id);
  report.aggregate_caq = aggregate;
  return report;
}

}  // namespace

TEST_CASE("query sets deduplicate and remember dropped names") {
  const QuerySet queries =
      QuerySet::from_names({"Button", "Grid", "Button", "Grid"});
  CHECK(queries.names() == std::vector<std::string>{"Button", "Grid"});
  CHECK(queries.dropped_duplicates() ==
        std::vector<std::string>{"Button", "Grid"});

  CHECK_THROWS_AS(QuerySet::from_names({}), ValidationError);
  CHECK_THROWS_AS(QuerySet::from_names({""}), ValidationError);
  CHECK_THROWS_AS(QuerySet::parse(R"({"queries": []})"), ValidationError);
  CHECK(QuerySet::parse(R"(["A", "B"])").names() ==
        std::vector<std::string>{"A", "B"});
}

TEST_CASE("evaluate_library composes availability, weight and timing") {
  const QuerySet queries = QuerySet::from_names({"Button", "Missing"});
  LibraryReport report =
      evaluate_library(dropdown_library(), queries, WeightTable::defaults(),
                       TimingConfig{3, 1});

  REQUIRE(report.rows.size() == 2);
  CHECK(report.library_id == "widgets");
  CHECK(report.organization == OrganizationType::DropdownList);
  CHECK(report.rows[0].component_name == "Button");
  CHECK(report.rows[0].a_c.present());
  CHECK(report.rows[0].r_l.value() == 2.0);
  CHECK(report.rows[0].per_trial.size() == 3);
  CHECK(report.rows[1].component_name == "Missing");
  CHECK_FALSE(report.rows[1].a_c.present());
  CHECK(report.rows[1].caq.per_second() == 0.0);
  // failed lookups keep their measured time on record
  CHECK(report.rows[1].t.seconds() >= kAccessTimeFloorSeconds);
  CHECK(report.availability_rate == 0.5);

  // pin the timing to reproduce the hand-composed example:
  // found (r_l=2, t=0.5) -> caq 4, missing -> 0, mean 2
  apply_deterministic_timing(report, 0.5);
  CHECK(report.rows[0].t.seconds() == 0.5);
  CHECK(report.rows[0].caq.per_second() == 4.0);
  CHECK(report.rows[1].caq.per_second() == 0.0);
  CHECK(report.aggregate_caq == 2.0);
  CHECK(report.rows[0].per_trial == std::vector<double>{0.5, 0.5, 0.5});
}

TEST_CASE("a query set with no matches scores zero") {
  const QuerySet queries = QuerySet::from_names({"Nope", "AlsoNope"});
  const LibraryReport report =
      evaluate_library(dropdown_library(), queries, WeightTable::defaults(),
                       TimingConfig{2, 0});
  CHECK(report.aggregate_caq == 0.0);
  CHECK(report.availability_rate == 0.0);
}

TEST_CASE("median aggregate option") {
  const QuerySet queries = QuerySet::from_names({"Button", "Grid", "Missing"});
  EvaluationOptions options;
  options.aggregate = AggregateMethod::Median;
  LibraryReport report =
      evaluate_library(dropdown_library(), queries, WeightTable::defaults(),
                       TimingConfig{2, 0}, options);
  apply_deterministic_timing(report, 1.0);
  // rows: 2, 2, 0 -> median 2, mean would be 4/3
  CHECK(report.aggregate_caq == 2.0);
  CHECK(report.aggregate_method == AggregateMethod::Median);
}

TEST_CASE("property: rows recompute from their own fields") {
  std::mt19937 rng(9401);
  std::uniform_int_distribution<int> size_dist(1, 30);
  for (int round = 0; round < 10; ++round) {
    LibraryDescriptor lib;
    lib.library_id = "lib" + std::to_string(round);
    lib.organization = round % 2 == 0 ? OrganizationType::SearchBased
                                      : OrganizationType::Hierarchical;
    lib.environment = EnvironmentType::LocalIde;
    const int size = size_dist(rng);
    for (int i = 0; i < size; ++i) {
      lib.components.push_back(
          {"c" + std::to_string(i), {}, std::nullopt});
    }
    std::vector<std::string> names;
    for (int i = 0; i < size + 3; ++i) names.push_back("c" + std::to_string(i));
    const LibraryReport report =
        evaluate_library(lib, QuerySet::from_names(names),
                         WeightTable::defaults(), TimingConfig{3, 0});

    double sum = 0.0;
    std::size_t found = 0;
    for (const auto& row : report.rows) {
      const double recomputed =
          compute_caq(row.a_c, row.r_l, row.t).per_second();
      if (recomputed == 0.0) {
        REQUIRE(row.caq.per_second() == 0.0);
      } else {
        REQUIRE_THAT(row.caq.per_second(), WithinRel(recomputed, 1e-12));
      }
      sum += row.caq.per_second();
      if (row.a_c.present()) ++found;
    }
    // independently computed aggregate and availability rate
    const double mean = sum / static_cast<double>(report.rows.size());
    if (mean == 0.0) {
      REQUIRE(report.aggregate_caq == 0.0);
    } else {
      REQUIRE_THAT(report.aggregate_caq, WithinRel(mean, 1e-12));
    }
    REQUIRE(report.availability_rate ==
            static_cast<double>(found) /
                static_cast<double>(report.rows.size()));
  }
}

TEST_CASE("compare_libraries orders by aggregate, ties by id") {
  const std::vector<LibraryReport> reports = {
      make_report("libA", 2.0),
      make_report("libB", 3.5),
  };
  const Ranking ranking = compare_libraries(reports);
  REQUIRE(ranking.entries.size() == 2);
  CHECK(ranking.entries[0].library_id == "libB");
  CHECK(ranking.entries[1].library_id == "libA");

  const std::vector<LibraryReport> tied = {
      make_report("libB", 2.0),
      make_report("libA", 2.0),
  };
  const Ranking tie_ranking = compare_libraries(tied);
  CHECK(tie_ranking.entries[0].library_id == "libA");
  CHECK(tie_ranking.entries[1].library_id == "libB");

  const std::vector<LibraryReport> one = {make_report("solo", 1.0)};
  CHECK(compare_libraries(one).entries.size() == 1);

  const std::vector<LibraryReport> dup = {make_report("same", 1.0),
                                          make_report("same", 2.0)};
  CHECK_THROWS_WITH(compare_libraries(dup),
                    Catch::Matchers::ContainsSubstring("same"));

  CHECK_THROWS_AS(compare_libraries(std::vector<LibraryReport>{}),
                  ValidationError);
}

TEST_CASE("property: ranking is a permutation of its inputs") {
  std::mt19937 rng(9402);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  std::uniform_int_distribution<int> count(1, 20);
  for (int round = 0; round < 100; ++round) {
    std::vector<LibraryReport> reports;
    std::vector<std::string> ids;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      std::string id = "lib" + std::to_string(i);
      ids.push_back(id);
      reports.push_back(make_report(std::move(id), value(rng)));
    }
    const Ranking ranking = compare_libraries(reports);
    REQUIRE(ranking.entries.size() == ids.size());
    std::vector<std::string> out_ids;
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
      out_ids.push_back(ranking.entries[i].library_id);
      if (i > 0) {
        REQUIRE(ranking.entries[i - 1].aggregate_caq >=
                ranking.entries[i].aggregate_caq);
      }
    }
    std::sort(out_ids.begin(), out_ids.end());
    std::sort(ids.begin(), ids.end());
    REQUIRE(out_ids == ids);
  }
}
