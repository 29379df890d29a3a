// verify: command-line front end for the check suite.

#include <CLI11.hpp>

#include <iostream>

#include "qpoincare/exprio.hpp"
#include "qpoincare/verify.hpp"

using namespace qpoincare;

namespace {

int runSuiteCommand(const std::string& presentations, const std::string& metric, const std::string& checks,
                    const std::string& maps, const std::string& overlayPath, bool acceptOverlay,
                    const std::string& format, const std::string& out, bool timings, unsigned jobs) {
  SuiteConfig config;
  config.presentations = splitCsv(presentations);
  config.metric = metric;
  config.checks = splitCsv(checks);
  config.maps = splitCsv(maps);
  config.acceptOverlay = acceptOverlay;
  config.timings = timings;
  config.jobs = jobs;
  if (!overlayPath.empty()) config.overlay = loadOverlay(overlayPath);
  if (auto w = MetricSpec::byName(metric).warning()) std::cerr << "warning: " << *w << '\n';

  const Report report = runSuite(config);
  const ReportFormat fmt = format == "json" ? ReportFormat::Json : ReportFormat::Text;
  if (out.empty())
    emitReport(report, fmt, std::cout);
  else
    emitReport(report, fmt, out);
  return exitCode(report, acceptOverlay);
}

int evalCommand(const std::string& expr, const std::string& presentation, const std::string& metric) {
  auto p = buildPresentation(presentation, MetricSpec::byName(metric));
  std::cout << format(parse(expr, p.get()), *p) << '\n';
  return 0;
}

int listCommand() {
  std::cout << "presentations:";
  for (const auto& n : presentationNames()) std::cout << ' ' << n;
  std::cout << "\nmaps:";
  for (const auto& n : mapNames()) {
    auto [s, t] = mapEndpoints(n);
    std::cout << ' ' << n << " (" << presentationName(s) << " -> " << presentationName(t) << ')';
  }
  std::cout << "\nchecks:";
  for (const auto& n : checkNames()) std::cout << ' ' << n;
  std::cout << "\nmetrics: generic null minkowski file:PATH\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of quantum Poincare Hopf algebra presentations"};
  app.require_subcommand(1);

  std::string presentations = "all", metric = "generic", checks = "all", maps = "all", overlay, format = "text", out;
  bool acceptOverlay = false, timings = false;
  unsigned jobs = 1;
  auto* suite = app.add_subcommand("suite", "run the check suite");
  suite->add_option("--presentation", presentations, "presentation name, csv, or all");
  suite->add_option("--metric", metric, "generic | null | minkowski | file:PATH");
  suite->add_option("--checks", checks, "csv of checks, or all");
  suite->add_option("--map", maps, "csv of maps, all, or none");
  suite->add_option("--overlay", overlay, "relation overlay file");
  suite->add_flag("--accept-overlay", acceptOverlay, "treat overlay passes as passes for the exit code");
  suite->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  suite->add_option("--out", out, "write the report to a file");
  suite->add_flag("--timings", timings, "record per-check wall time (reports are no longer reproducible)");
  suite->add_option("--jobs", jobs, "worker threads");

  std::string expr, evalPresentation, evalMetric = "generic";
  auto* eval = app.add_subcommand("eval", "normal-order an expression and print it");
  eval->add_option("expr", expr, "expression")->required();
  eval->add_option("--presentation", evalPresentation, "presentation name")->required();
  eval->add_option("--metric", evalMetric, "generic | null | minkowski | file:PATH");

  auto* list = app.add_subcommand("list", "list presentations, maps and checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*suite)
      return runSuiteCommand(presentations, metric, checks, maps, overlay, acceptOverlay, format, out, timings, jobs);
    if (*eval) return evalCommand(expr, evalPresentation, evalMetric);
    if (*list) return listCommand();
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line() << ':' << e.column() << ": " << e.what() << '\n';
    return 2;
  } catch (const ElaborationError& e) {
    std::cerr << "error at column " << e.column() << ": " << e.what() << '\n';
    return 2;
  } catch (const UnknownTarget& e) {
    std::cerr << "overlay line " << e.line() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    // ConfigError, MetricError, UnknownPresentation
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
