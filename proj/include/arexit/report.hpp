// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arexit/matcore.hpp"
#include "arexit/process.hpp"

/// Report rendering: RFC-4180 CSV, strict JSON (12 significant digits) and
/// human-readable text tables (6 significant digits). Every machine format
/// carries schema_version and, where simulation is involved, rng_version.
namespace arexit::cli {

inline constexpr int kSchemaVersion = 1;

/// printf %.<sig>g formatting.
std::string fmt_sig(double v, int sig);

/// Nearest double to the 12-significant-digit decimal rendering of v; JSON
/// then prints at most those digits.
double round_sig12(double v);

/// RFC-4180 field escaping (quotes fields containing comma, quote, CR or LF).
std::string csv_field(const std::string& raw);

/// One CSV record with CRLF terminator.
std::string csv_line(const std::vector<std::string>& fields);

struct SimulateRow {
  double epsilon;
  std::size_t n_paths;
  double mean_tau;
  double ci_low;
  double ci_high;
  double scaled_log;
  std::size_t censored;
  std::uint64_t seed;
};

std::string simulate_csv(const std::vector<SimulateRow>& rows);
std::string simulate_json(const std::vector<SimulateRow>& rows);
std::string simulate_text(const std::vector<SimulateRow>& rows);

struct Table1Row {
  double epsilon;
  double reference;   // published scaled-log value for this epsilon
  double computed;    // our epsilon^2 log(mean tau)
  double abs_diff;
  double mean_tau;
  double ci_low;
  double ci_high;
  std::size_t n_paths;
  std::size_t censored;
  std::uint64_t seed;
};

std::string table1_csv(const std::vector<Table1Row>& rows, double limit);
std::string table1_json(const std::vector<Table1Row>& rows, double limit);
std::string table1_text(const std::vector<Table1Row>& rows, double limit);

struct HorizonRow {
  std::size_t horizon;
  bool reachable;
  double quadratic_form;  // meaningful only when reachable
  double exponent;
};

struct AnalyzeReport {
  std::string model_kind;  // "ar1" or "arn"
  std::size_t dim = 0;     // state dimension (companion order for arn)
  double epsilon = 0.0;
  std::vector<double> arn_coefficients;  // empty for ar1
  double spectral_radius = 0.0;
  matcore::Matrix sigma_infinity = matcore::Matrix::identity(1);
  double sigma2 = 0.0;               // c^T Sigma_inf c for the raw direction
  double quadratic_form = 0.0;       // same with the level-normalized direction
  double asymptotic_exponent = 0.0;  // 1 / (2 quadratic_form)
  std::size_t convergence_horizon = 0;
  std::vector<HorizonRow> horizons;
  std::optional<process::Path> optimal_path;
  std::size_t path_horizon = 0;
  std::vector<double> exit_direction;
  double exit_level = 1.0;
  std::string exit_sided;
};

std::string analyze_text(const AnalyzeReport& r);
std::string analyze_json(const AnalyzeReport& r);
/// CSV carries the horizon/exponent table only (plus the asymptotic row).
std::string analyze_csv(const AnalyzeReport& r);

struct CheckResult {
  std::string name;
  std::size_t instances;
  std::size_t failures;
  std::vector<std::string> details;  // first few failing instances
};

struct VerifyReport {
  std::uint64_t seed;
  std::size_t trials;
  std::vector<CheckResult> checks;
  bool passed() const;
};

std::string verify_text(const VerifyReport& r);
std::string verify_json(const VerifyReport& r);

}  // namespace arexit::cli
