#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

#include <json.hpp>

#include "caq/errors.hpp"
#include "caq/manifest.hpp"
#include "caq/report.hpp"

namespace caq {

enum class ReportFormat { Json, Csv, Markdown };

inline ReportFormat format_from_string(std::string_view text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "md" || text == "markdown") return ReportFormat::Markdown;
  throw ValidationError("unknown report format '" + std::string(text) +
                        "' (expected json|csv|md)");
}

namespace detail {

// Reports render reals at 6 significant digits; raw full-precision values
// ride along in JSON under "raw".
inline std::string fmt_g6(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

inline double round_sig6(double value) {
  return std::strtod(fmt_g6(value).c_str(), nullptr);
}

}  // namespace detail

inline nlohmann::json report_to_json(const LibraryReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json raw;
    raw["caq"] = row.caq.per_second();
    raw["per_trial"] = row.per_trial;
    raw["r_l"] = row.r_l.value();
    raw["t"] = row.t.seconds();
    rows.push_back({
        {"a_c", row.a_c.value()},
        {"caq", detail::round_sig6(row.caq.per_second())},
        {"component", row.component_name},
        {"r_l", detail::round_sig6(row.r_l.value())},
        {"raw", std::move(raw)},
        {"t", detail::round_sig6(row.t.seconds())},
    });
  }
  return {
      {"aggregate_caq", detail::round_sig6(report.aggregate_caq)},
      {"aggregate_method", to_string(report.aggregate_method)},
      {"availability_rate", detail::round_sig6(report.availability_rate)},
      {"environment", to_string(report.environment)},
      {"library_id", report.library_id},
      {"organization", to_string(report.organization)},
      {"raw",
       {
           {"aggregate_caq", report.aggregate_caq},
           {"availability_rate", report.availability_rate},
       }},
      {"rows", std::move(rows)},
      {"timing_config",
       {
           {"statistic", to_string(report.timing_config.statistic)},
           {"trials", report.timing_config.trials},
           {"warmups", report.timing_config.warmups},
       }},
  };
}

inline LibraryReport report_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("report document: expected a JSON object");
  }
  const auto& raw = detail::require_field(doc, "raw", "report document");
  LibraryReport report;
  report.library_id =
      detail::require_string(doc, "library_id", "report document");
  report.organization = organization_from_string(
      detail::require_string(doc, "organization", "report document"));
  report.environment = environment_from_string(
      detail::require_string(doc, "environment", "report document"));
  report.aggregate_method = aggregate_from_string(
      detail::require_string(doc, "aggregate_method", "report document"));
  report.aggregate_caq =
      detail::require_field(raw, "aggregate_caq", "report raw").get<double>();
  report.availability_rate =
      detail::require_field(raw, "availability_rate", "report raw")
          .get<double>();

  const auto& timing =
      detail::require_field(doc, "timing_config", "report document");
  report.timing_config.trials =
      detail::require_field(timing, "trials", "timing_config").get<int>();
  report.timing_config.warmups =
      detail::require_field(timing, "warmups", "timing_config").get<int>();
  report.timing_config.validate();

  const auto& rows = detail::require_field(doc, "rows", "report document");
  if (!rows.is_array()) {
    throw ValidationError("report document: 'rows' must be an array");
  }
  std::size_t index = 0;
  for (const auto& entry : rows) {
    const std::string where = "rows[" + std::to_string(index++) + "]";
    const auto& row_raw = detail::require_field(entry, "raw", where);
    const Availability a_c = Availability::from_int(
        detail::require_field(entry, "a_c", where).get<int>());
    const OrganizednessWeight r_l(
        detail::require_field(row_raw, "r_l", where).get<double>());
    const AccessTime t(
        detail::require_field(row_raw, "t", where).get<double>());
    const CaqValue caq(
        detail::require_field(row_raw, "caq", where).get<double>());
    std::vector<double> per_trial =
        detail::require_field(row_raw, "per_trial", where)
            .get<std::vector<double>>();
    report.rows.push_back(
        CaqRow{detail::require_string(entry, "component", where), a_c, r_l, t,
               caq, std::move(per_trial)});
  }
  return report;
}

inline LibraryReport parse_report(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError(std::string("report document: ") + err.what());
  }
  return report_from_json(doc);
}

inline nlohmann::json ranking_to_json(const Ranking& ranking) {
  nlohmann::json entries = nlohmann::json::array();
  int rank = 1;
  for (const auto& entry : ranking.entries) {
    entries.push_back({
        {"aggregate_caq", detail::round_sig6(entry.aggregate_caq)},
        {"library_id", entry.library_id},
        {"rank", rank++},
        {"raw", {{"aggregate_caq", entry.aggregate_caq}}},
    });
  }
  return {{"ranking", std::move(entries)}};
}

inline nlohmann::json aq_result_to_json(const AqResult& result) {
  nlohmann::json ratios;
  nlohmann::json raw_ratios;
  for (const auto& [person_id, ratio] : result.per_person_ratios) {
    ratios[person_id] = detail::round_sig6(ratio);
    raw_ratios[person_id] = ratio;
  }
  return {
      {"aq", detail::round_sig6(result.aq.value())},
      {"aq_percent", detail::round_sig6(result.aq_percent)},
      {"classification", readiness_label(result.classification)},
      {"mq", detail::round_sig6(result.mq.value())},
      {"per_person_ratios", std::move(ratios)},
      {"raw",
       {
           {"aq", result.aq.value()},
           {"aq_percent", result.aq_percent},
           {"mq", result.mq.value()},
           {"per_person_ratios", std::move(raw_ratios)},
           {"rq", result.rq.value()},
       }},
      {"rq", detail::round_sig6(result.rq.value())},
  };
}

namespace detail {

inline std::string dump_json(const nlohmann::json& doc) {
  return doc.dump(2) + "\n";
}

}  // namespace detail

inline std::string render_report(const LibraryReport& report,
                                 ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return detail::dump_json(report_to_json(report));
    case ReportFormat::Csv: {
      std::string out = "component,a_c,r_l,t,caq\n";
      for (const auto& row : report.rows) {
        out += row.component_name;
        out += ',' + std::to_string(row.a_c.value());
        out += ',' + detail::fmt_g6(row.r_l.value());
        out += ',' + detail::fmt_g6(row.t.seconds());
        out += ',' + detail::fmt_g6(row.caq.per_second());
        out += '\n';
      }
      return out;
    }
    case ReportFormat::Markdown: {
      std::string out = "# Library report: " + report.library_id + "\n\n";
      out += "| component | a_c | r_l | t | caq |\n";
      out += "| --- | --- | --- | --- | --- |\n";
      for (const auto& row : report.rows) {
        out += "| " + row.component_name;
        out += " | " + std::to_string(row.a_c.value());
        out += " | " + detail::fmt_g6(row.r_l.value());
        out += " | " + detail::fmt_g6(row.t.seconds());
        out += " | " + detail::fmt_g6(row.caq.per_second());
        out += " |\n";
      }
      out += "\n| metric | value |\n| --- | --- |\n";
      out += "| organization | " + std::string(to_string(report.organization)) +
             " |\n";
      out += "| environment | " + std::string(to_string(report.environment)) +
             " |\n";
      out += "| aggregate_caq (" +
             std::string(to_string(report.aggregate_method)) + ") | " +
             detail::fmt_g6(report.aggregate_caq) + " |\n";
      out += "| availability_rate | " +
             detail::fmt_g6(report.availability_rate) + " |\n";
      return out;
    }
  }
  throw ValidationError("unknown report format");
}

inline std::string render_report(const Ranking& ranking, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return detail::dump_json(ranking_to_json(ranking));
    case ReportFormat::Csv: {
      std::string out = "rank,library_id,aggregate_caq\n";
      int rank = 1;
      for (const auto& entry : ranking.entries) {
        out += std::to_string(rank++);
        out += ',' + entry.library_id;
        out += ',' + detail::fmt_g6(entry.aggregate_caq);
        out += '\n';
      }
      return out;
    }
    case ReportFormat::Markdown: {
      std::string out = "# Library ranking\n\n";
      out += "| rank | library_id | aggregate_caq |\n";
      out += "| --- | --- | --- |\n";
      int rank = 1;
      for (const auto& entry : ranking.entries) {
        out += "| " + std::to_string(rank++);
        out += " | " + entry.library_id;
        out += " | " + detail::fmt_g6(entry.aggregate_caq);
        out += " |\n";
      }
      return out;
    }
  }
  throw ValidationError("unknown report format");
}

inline std::string render_report(const AqResult& result, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return detail::dump_json(aq_result_to_json(result));
    case ReportFormat::Csv: {
      std::string out = "metric,value\n";
      out += "rq," + detail::fmt_g6(result.rq.value()) + '\n';
      out += "mq," + detail::fmt_g6(result.mq.value()) + '\n';
      out += "aq," + detail::fmt_g6(result.aq.value()) + '\n';
      out += "aq_percent," + detail::fmt_g6(result.aq_percent) + '\n';
      out += "classification," +
             std::string(readiness_label(result.classification)) + '\n';
      for (const auto& [person_id, ratio] : result.per_person_ratios) {
        out += "person:" + person_id + ',' + detail::fmt_g6(ratio) + '\n';
      }
      return out;
    }
    case ReportFormat::Markdown: {
      std::string out = "# Activeness quotient\n\n";
      out += "| VALUE OF AQ | INTERPRETATION |\n";
      out += "| --- | --- |\n";
      out += "| " + detail::fmt_g6(result.aq.value()) + " | " +
             std::string(readiness_label(result.classification)) + " |\n";
      out += "\n| metric | value |\n| --- | --- |\n";
      out += "| rq | " + detail::fmt_g6(result.rq.value()) + " |\n";
      out += "| mq | " + detail::fmt_g6(result.mq.value()) + " |\n";
      out += "| aq_percent | " + detail::fmt_g6(result.aq_percent) + " |\n";
      if (!result.per_person_ratios.empty()) {
        out += "\n| person | skills ratio |\n| --- | --- |\n";
        for (const auto& [person_id, ratio] : result.per_person_ratios) {
          out += "| " + person_id + " | " + detail::fmt_g6(ratio) + " |\n";
        }
      }
      return out;
    }
  }
  throw ValidationError("unknown report format");
}

}  // namespace caq
