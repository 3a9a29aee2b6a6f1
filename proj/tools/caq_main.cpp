// Command-line front end: evaluate component libraries (caq eval/compare),
// evaluate readiness manifests (aq eval) and serve the mock registry.
//
// Exit codes: 0 success, 1 validation error, 2 transport error.
// Diagnostics go to stderr; reports go to stdout unless --out is given.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "caq/caq.hpp"

namespace {

constexpr double kTimingSentinelSeconds = 1e-3;

std::string read_file(const std::string& path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) {
    throw caq::ValidationError("cannot read file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << input.rdbuf();
  return buffer.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream output(out_path, std::ios::binary);
  if (!output) {
    throw caq::ValidationError("cannot write file '" + out_path + "'");
  }
  output << content;
}

caq::WeightTable resolve_weights(const std::string& weights_path) {
  if (!weights_path.empty()) {
    return caq::WeightTable::parse(read_file(weights_path));
  }
  if (const char* env_path = std::getenv("CAQ_DEFAULT_WEIGHTS");
      env_path != nullptr && *env_path != '\0') {
    return caq::WeightTable::parse(read_file(env_path));
  }
  return caq::WeightTable::defaults();
}

struct CaqEvalArgs {
  std::string library_path;
  std::string queries_path;
  std::string weights_path;
  std::string out_path;
  std::string format = "json";
  std::string aggregate = "mean";
  int trials = 20;
  int warmups = 3;
  bool deterministic_timing = false;
};

int run_caq_eval(const CaqEvalArgs& args) {
  const caq::LibraryDescriptor descriptor =
      caq::parse_library(read_file(args.library_path));
  const caq::QuerySet queries =
      caq::QuerySet::parse(read_file(args.queries_path));
  for (const auto& name : queries.dropped_duplicates()) {
    std::cerr << "warning: duplicate query '" << name << "' ignored\n";
  }
  const caq::WeightTable weights = resolve_weights(args.weights_path);
  const caq::TimingConfig cfg{args.trials, args.warmups,
                              caq::TimingStatistic::Median};
  caq::EvaluationOptions options;
  options.aggregate = caq::aggregate_from_string(args.aggregate);
  const caq::ReportFormat format = caq::format_from_string(args.format);

  caq::LibraryReport report;
  try {
    report = caq::evaluate_library(descriptor, queries, weights, cfg, options);
  } catch (const caq::EvaluationAborted& err) {
    std::cerr << "error: " << err.what() << "\n";
    std::cerr << "partial progress: " << err.partial().rows.size() << " of "
              << queries.names().size() << " components evaluated\n";
    return 2;
  }
  if (args.deterministic_timing) {
    caq::apply_deterministic_timing(report, kTimingSentinelSeconds);
  }
  write_output(args.out_path, caq::render_report(report, format));
  return 0;
}

struct CaqCompareArgs {
  std::vector<std::string> report_paths;
  std::string format = "json";
  std::string out_path;
};

int run_caq_compare(const CaqCompareArgs& args) {
  std::vector<caq::LibraryReport> reports;
  reports.reserve(args.report_paths.size());
  for (const auto& path : args.report_paths) {
    reports.push_back(caq::parse_report(read_file(path)));
  }
  const caq::Ranking ranking = caq::compare_libraries(reports);
  write_output(args.out_path,
               caq::render_report(ranking,
                                  caq::format_from_string(args.format)));
  return 0;
}

struct AqEvalArgs {
  std::string manifest_path;
  std::string format = "json";
  std::string out_path;
  bool uncapped_mq = false;
};

int run_aq_eval(const AqEvalArgs& args) {
  const caq::ReadinessManifest manifest =
      caq::parse_manifest(read_file(args.manifest_path));
  caq::EvaluateOptions options;
  options.mq_ratio_cap = !args.uncapped_mq;
  const caq::AqResult result = caq::evaluate_readiness(manifest, options);
  write_output(args.out_path,
               caq::render_report(result,
                                  caq::format_from_string(args.format)));
  return 0;
}

struct RegistryServeArgs {
  std::string library_path;
  double latency_ms = 0.0;
  int port = 8080;
};

volatile std::sig_atomic_t g_stop_requested = 0;

int run_registry_serve(const RegistryServeArgs& args) {
  caq::LibraryDescriptor fixture =
      caq::parse_library(read_file(args.library_path));
  caq::RegistryServer::Options options;
  options.latency_seconds = args.latency_ms / 1000.0;
  options.port = args.port;
  const std::string library_id = fixture.library_id;
  const std::size_t component_count = fixture.components.size();
  caq::RegistryServer server(std::move(fixture), options);
  std::cerr << "registry listening on " << server.endpoint() << " (library '"
            << library_id << "', " << component_count
            << " components, latency " << args.latency_ms << " ms)\n";

  std::signal(SIGINT, [](int) { g_stop_requested = 1; });
  std::signal(SIGTERM, [](int) { g_stop_requested = 1; });
  while (g_stop_requested == 0) {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  server.stop();
  std::cerr << "registry stopped\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Activeness metrics for object-oriented component libraries"};
  app.set_version_flag("--version", "caqtool 0.1.0");
  app.require_subcommand(1);

  auto* caq_cmd =
      app.add_subcommand("caq", "Component activeness quotient commands");
  caq_cmd->require_subcommand(1);

  CaqEvalArgs caq_eval_args;
  auto* caq_eval = caq_cmd->add_subcommand(
      "eval", "Evaluate a library against a query set");
  caq_eval->add_option("--library", caq_eval_args.library_path,
                       "Library descriptor JSON file")
      ->required();
  caq_eval->add_option("--queries", caq_eval_args.queries_path,
                       "Query set JSON file (array of component names)")
      ->required();
  caq_eval->add_option("--weights", caq_eval_args.weights_path,
                       "Weight table JSON file (overrides "
                       "CAQ_DEFAULT_WEIGHTS)");
  caq_eval->add_option("--trials", caq_eval_args.trials,
                       "Recorded lookups per component");
  caq_eval->add_option("--warmups", caq_eval_args.warmups,
                       "Unrecorded warmup lookups per component");
  caq_eval->add_option("--format", caq_eval_args.format,
                       "Output format: json|csv|md");
  caq_eval->add_option("--out", caq_eval_args.out_path,
                       "Write the report to this file instead of stdout");
  caq_eval->add_option("--aggregate", caq_eval_args.aggregate,
                       "Library-level aggregate: mean|median");
  caq_eval->add_flag("--deterministic-timing",
                     caq_eval_args.deterministic_timing,
                     "Replace measured times with a fixed sentinel "
                     "(for reproducible test output)");

  CaqCompareArgs caq_compare_args;
  auto* caq_compare = caq_cmd->add_subcommand(
      "compare", "Rank previously written library reports");
  caq_compare->add_option("reports", caq_compare_args.report_paths,
                          "Library report JSON files")
      ->required()
      ->expected(-1);
  caq_compare->add_option("--format", caq_compare_args.format,
                          "Output format: json|csv|md");
  caq_compare->add_option("--out", caq_compare_args.out_path,
                          "Write the ranking to this file instead of stdout");

  auto* aq_cmd =
      app.add_subcommand("aq", "Organizational activeness quotient commands");
  aq_cmd->require_subcommand(1);

  AqEvalArgs aq_eval_args;
  auto* aq_eval =
      aq_cmd->add_subcommand("eval", "Evaluate a readiness manifest");
  aq_eval->add_option("--manifest", aq_eval_args.manifest_path,
                      "Readiness manifest JSON file")
      ->required();
  aq_eval->add_option("--format", aq_eval_args.format,
                      "Output format: json|csv|md");
  aq_eval->add_option("--out", aq_eval_args.out_path,
                      "Write the result to this file instead of stdout");
  aq_eval->add_flag("--uncapped-mq", aq_eval_args.uncapped_mq,
                    "Count all possessed skills, letting per-person ratios "
                    "exceed 1");

  auto* registry_cmd =
      app.add_subcommand("registry", "Mock component registry");
  registry_cmd->require_subcommand(1);

  RegistryServeArgs registry_serve_args;
  auto* registry_serve = registry_cmd->add_subcommand(
      "serve", "Serve a library fixture over the registry wire protocol");
  registry_serve->add_option("--library", registry_serve_args.library_path,
                             "Library descriptor JSON file to serve")
      ->required();
  registry_serve->add_option("--latency", registry_serve_args.latency_ms,
                             "Injected latency per request, in milliseconds")
      ->check(CLI::NonNegativeNumber);
  registry_serve->add_option("--port", registry_serve_args.port,
                             "Port to bind (0 picks an ephemeral port)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForVersion& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }

  try {
    if (caq_eval->parsed()) return run_caq_eval(caq_eval_args);
    if (caq_compare->parsed()) return run_caq_compare(caq_compare_args);
    if (aq_eval->parsed()) return run_aq_eval(aq_eval_args);
    if (registry_serve->parsed()) {
      return run_registry_serve(registry_serve_args);
    }
    std::cerr << "error: no subcommand given\n";
    return 1;
  } catch (const caq::TransportError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const caq::ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
