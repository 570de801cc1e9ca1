// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
//
// arexit: exit-time asymptotics for stable Gaussian autoregressive processes.
//
//   arexit analyze  --config model.cfg            closed-form exponents
//   arexit simulate --config model.cfg            Monte Carlo mean exit times
//   arexit table1                                 built-in reference experiment
//   arexit verify                                 randomized self-checks

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "arexit/cli.hpp"

namespace {

using arexit::cli::OutputFormat;

struct FlagState {
  std::string config;
  std::uint64_t seed = 0;
  std::size_t paths = 0;
  std::size_t max_steps = 0;
  std::string threads;
  std::string format;
  std::string out;
  std::vector<double> eps;
  std::vector<std::size_t> horizons;
};

const CLI::Validator kThreadsValidator(
    [](std::string& value) -> std::string {
      if (value == "auto") return {};
      char* end = nullptr;
      const unsigned long v = std::strtoul(value.c_str(), &end, 10);
      if (end != value.c_str() + value.size() || value.empty() || v < 1)
        return "expected 'auto' or a positive count, got '" + value + "'";
      return {};
    },
    "auto|N");

void add_common_flags(CLI::App& cmd, FlagState& state, bool with_config,
                      bool with_eps) {
  if (with_config)
    cmd.add_option("--config", state.config, "path to a run config file");
  cmd.add_option("--seed", state.seed, "64-bit Monte Carlo seed");
  cmd.add_option("--paths", state.paths, "number of Monte Carlo paths");
  cmd.add_option("--max-steps", state.max_steps, "per-path step cap");
  cmd.add_option("--threads", state.threads, "worker threads: auto or a count")
      ->check(kThreadsValidator);
  cmd.add_option("--format", state.format, "output format: text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd.add_option("--out", state.out, "output path ('-' = stdout)");
  if (with_eps)
    cmd.add_option("--eps", state.eps, "comma-separated epsilon sweep")
        ->delimiter(',');
}

arexit::cli::CommonOptions to_common(const CLI::App& cmd, const FlagState& s) {
  auto given = [&cmd](const std::string& name) {
    const auto* opt = cmd.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  arexit::cli::CommonOptions opts;
  if (given("--config")) opts.config_path = s.config;
  if (given("--seed")) opts.seed = s.seed;
  if (given("--paths")) opts.paths = s.paths;
  if (given("--max-steps")) opts.max_steps = s.max_steps;
  if (given("--threads")) {
    // Validated at parse time by kThreadsValidator.
    opts.threads = s.threads == "auto"
                       ? 0u
                       : static_cast<unsigned>(std::strtoul(s.threads.c_str(),
                                                            nullptr, 10));
  }
  if (given("--format")) {
    opts.format = s.format == "json"  ? OutputFormat::json
                  : s.format == "csv" ? OutputFormat::csv
                                      : OutputFormat::text;
  }
  if (given("--out")) opts.out_path = s.out;
  opts.eps = s.eps;
  return opts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exit-time asymptotics and Monte Carlo validation for stable Gaussian "
      "autoregressive processes"};
  app.require_subcommand(1);

  FlagState analyze_state, simulate_state, table1_state;
  auto* analyze =
      app.add_subcommand("analyze", "closed-form exit exponents and optimal path");
  add_common_flags(*analyze, analyze_state, true, false);
  analyze
      ->add_option("--horizons", analyze_state.horizons,
                   "comma-separated finite horizons to tabulate")
      ->delimiter(',');

  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo mean exit-time estimation");
  add_common_flags(*simulate, simulate_state, true, true);

  auto* table1 = app.add_subcommand(
      "table1", "built-in bivariate experiment vs published reference values");
  add_common_flags(*table1, table1_state, false, true);

  auto* verify = app.add_subcommand("verify", "randomized solver cross-checks");
  arexit::cli::VerifyOptions verify_opts;
  std::string verify_format;
  std::string verify_out;
  verify->add_option("--trials", verify_opts.trials, "randomized instances per check");
  verify->add_option("--seed", verify_opts.seed, "seed for instance generation");
  verify->add_option("--format", verify_format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", verify_out, "output path ('-' = stdout)");
  verify
      ->add_flag("--self-test-fault", verify_opts.inject_fault,
                 "inject an artificial failure (negative control)")
      ->group("");  // hidden from normal help

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (analyze->parsed()) {
    arexit::cli::AnalyzeOptions opts;
    opts.common = to_common(*analyze, analyze_state);
    if (analyze->count("--horizons")) opts.horizons = analyze_state.horizons;
    return arexit::cli::cmd_analyze(opts, std::cout, std::cerr);
  }
  if (simulate->parsed()) {
    arexit::cli::SimulateOptions opts;
    opts.common = to_common(*simulate, simulate_state);
    return arexit::cli::cmd_simulate(opts, std::cout, std::cerr);
  }
  if (table1->parsed()) {
    arexit::cli::Table1Options opts;
    opts.common = to_common(*table1, table1_state);
    return arexit::cli::cmd_table1(opts, std::cout, std::cerr);
  }
  if (verify->count("--format"))
    verify_opts.format = verify_format == "json" ? OutputFormat::json
                                                 : OutputFormat::text;
  if (verify->count("--out")) verify_opts.out_path = verify_out;
  return arexit::cli::cmd_verify(verify_opts, std::cout, std::cerr);
}
