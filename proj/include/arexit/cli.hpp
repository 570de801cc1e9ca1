// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arexit/config.hpp"
#include "arexit/report.hpp"

/// Command implementations behind the arexit executable. Each command writes
/// its report to `out` (or to the resolved output file), diagnostics to
/// `err`, and returns the process exit status: 0 success, 1 computational
/// failure (instability, censoring, failed checks), 2 invalid config/flags.
namespace arexit::cli {

/// Flag overrides shared by the config-driven commands; unset fields fall
/// back to the config (or built-in) values.
struct CommonOptions {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> paths;
  std::optional<std::size_t> max_steps;
  std::optional<unsigned> threads;  // 0 = auto
  std::optional<OutputFormat> format;
  std::optional<std::string> out_path;
  std::vector<double> eps;  // sweep list; empty = config epsilon
};

struct AnalyzeOptions {
  CommonOptions common;
  std::vector<std::size_t> horizons = {1, 2, 5, 10, 20, 50};
};

struct SimulateOptions {
  CommonOptions common;
};

struct Table1Options {
  CommonOptions common;  // config_path unused; eps may subset the built-in list
};

struct VerifyOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 20260808;
  bool inject_fault = false;  // test hook: forces one check to fail
  std::optional<OutputFormat> format;
  std::optional<std::string> out_path;
};

/// The built-in bivariate reference experiment behind `table1`.
struct Table1Case {
  double epsilon;
  double reference;  // published scaled-log value
};
const std::vector<Table1Case>& table1_cases();
process::ArModel table1_model(double epsilon);
ldp::ExitSpec table1_exit();
inline constexpr std::uint64_t kTable1DefaultSeed = 42;

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_table1(const Table1Options& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace arexit::cli
