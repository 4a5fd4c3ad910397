#include <iostream>

#include <CLI11.hpp>

#include "equising/cli.hpp"

int main(int argc, char** argv) {
  using namespace equising;
  CLI::App app{"Exact checks for equisingularity conditions on polynomial germs"};
  app.require_subcommand(1, 1);

  JobSpec job;
  unsigned truncation_cap = 0, probe_exponent_bound = 0, mult_window = 0;
  std::size_t precision = 0, probe_count = 0, chart = 0;

  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    if (name != "example-1-1") {
      sub->add_option("inputs", job.inputs, "Problem files (paths or corpus names)")->required();
    }
    sub->add_option("--truncation-cap", truncation_cap, "Largest truncation degree for local colengths");
    sub->add_option("--precision", precision, "Initial series precision of probe curves");
    sub->add_option("--probe-exponent-bound", probe_exponent_bound, "Largest exponent in monomial probe curves");
    sub->add_option("--probe-count", probe_count, "Number of probe curves");
    sub->add_option("--mult-window", mult_window, "Equal top differences required by the multiplicity stop rule");
    sub->add_option("--seed", job.seed, "Seed for every randomized step");
    sub->add_option("--out", job.out, "Write the report here instead of standard output");
    if (name == "icis-scan") sub->add_option("--sample", job.sample, "Extra seeded hyperplanes");
    if (name == "grassmann") sub->add_option("--chart", chart, "1-based index of the chart z-variable");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  for (auto* sub : app.get_subcommands()) {
    job.command = sub->get_name();
    auto given = [&](const char* flag) { return sub->count(flag) > 0; };
    if (given("--truncation-cap")) job.truncation_cap = truncation_cap;
    if (given("--precision")) job.precision = precision;
    if (given("--probe-exponent-bound")) job.probe_exponent_bound = probe_exponent_bound;
    if (given("--probe-count")) job.probe_count = probe_count;
    if (given("--mult-window")) job.mult_window = mult_window;
    if (job.command == "grassmann" && given("--chart")) job.chart = chart;
  }

  JobResult res = run_job(job);
  if (!res.error.empty()) {
    std::cerr << "error: " << res.error << "\n";
    return res.exit_code;
  }
  if (job.out.empty()) {
    std::cout << res.report;
  } else {
    try {
      write_atomically(job.out, res.report);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitInputError;
    }
    std::cerr << "report written to " << job.out << "\n";
  }
  return res.exit_code;
}
