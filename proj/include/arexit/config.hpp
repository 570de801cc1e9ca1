// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arexit/ldp.hpp"
#include "arexit/mc.hpp"
#include "arexit/process.hpp"

/// Run configuration: an INI-style text format with [model], [exit], [mc]
/// and [output] sections, `key = value` lines and `#` comments. Matrix
/// values separate rows with `;`, vector values separate entries with
/// whitespace. See configs/ for annotated examples.
namespace arexit::cli {

enum class OutputFormat { text, csv, json };

struct Ar1Section {
  matcore::Matrix a;
  double epsilon;
  matcore::Vector x0;
  process::NoiseShape noise = process::NoiseShape::identity;
};

struct ArnSection {
  std::vector<double> b;
  double epsilon;
  std::vector<double> starts;
};

struct ExitSection {
  std::optional<matcore::Vector> c;  // required for ar1, forbidden for arn
  double level = 1.0;
  ldp::Sidedness sided = ldp::Sidedness::two_sided;
};

struct McSection {
  std::size_t n_paths = 1000;
  std::uint64_t seed = 0;
  std::size_t max_steps = 1000000000;
  unsigned threads = 0;  // 0 = auto
};

struct OutputSection {
  OutputFormat format = OutputFormat::csv;
  std::string path = "-";  // "-" = stdout
};

struct RunConfig {
  std::variant<Ar1Section, ArnSection> model;
  ExitSection exit;
  McSection mc;
  OutputSection output;

  bool is_arn() const { return std::holds_alternative<ArnSection>(model); }
  double epsilon() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Parses config text; throws InvalidInputError with a line reference on any
/// malformed, unknown or inconsistent content.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

/// Canonical form: fixed section/key order, full-precision numbers.
/// parse(serialize(cfg)) reproduces cfg exactly.
std::string serialize_config(const RunConfig& cfg);

/// Simulation model for the config (companion embedding for AR(n)).
process::ArModel build_model(const RunConfig& cfg);

/// Exit functional for the config; AR(n) exits are |x_t| >= level, i.e.
/// direction e1 on the embedded state.
ldp::ExitSpec build_exit(const RunConfig& cfg);

mc::McConfig build_mc_config(const RunConfig& cfg);

}  // namespace arexit::cli
