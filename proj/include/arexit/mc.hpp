// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "arexit/ldp.hpp"
#include "arexit/process.hpp"
#include "arexit/rng.hpp"

/// Reproducible Monte Carlo estimation of exit times
/// tau = min{t >= 1 : |c^T x_t| >= level} and of exit probabilities.
///
/// Paths are embarrassingly parallel; every path draws from its own
/// counter-based stream and results are reduced in path-index order, so an
/// estimate is bit-identical for any thread count.
namespace arexit::mc {

struct McConfig {
  std::size_t n_paths = 1000;
  std::uint64_t seed = 0;
  std::size_t max_steps = 1000000000;  // per-path cap
  unsigned threads = 0;                // 0 = auto (hardware concurrency)

  void validate() const;
};

struct McEstimate {
  double mean_tau;    // steps; a lower bound when censored > 0
  double ci_low;      // normal-approximation 95% CI on the mean
  double ci_high;
  double scaled_log;  // epsilon^2 * log(mean_tau)
  std::size_t n_paths;
  std::size_t censored;  // paths that hit max_steps without exiting
  std::uint64_t seed;

  bool lower_bound_only() const { return censored > 0; }
};

struct ProbEstimate {
  double p_hat;    // fraction of paths with tau <= n_steps
  double ci_low;   // Wilson 95% interval
  double ci_high;
  std::size_t n_paths;
  std::size_t exits;
  std::uint64_t seed;
};

/// Simulates one path from model.x0 and returns the first t >= 1 with
/// |c^T x_t| >= level (c^T x_t >= level when one-sided), or nullopt if no
/// exit happens within max_steps.
std::optional<std::uint64_t> sample_exit_time(const process::ArModel& model,
                                              const ldp::ExitSpec& exit,
                                              NormalStream& noise,
                                              std::size_t max_steps);

/// Same, with the stream derived from (seed, path_index).
std::optional<std::uint64_t> sample_exit_time(const process::ArModel& model,
                                              const ldp::ExitSpec& exit,
                                              std::uint64_t seed,
                                              std::uint64_t path_index,
                                              std::size_t max_steps);

/// Sample mean of tau over cfg.n_paths independent paths with a 95% CI.
/// Censored paths contribute max_steps, making the mean a flagged lower
/// bound; throws ComputationError("no exits observed") if every path is
/// censored.
McEstimate estimate_mean_exit_time(const process::ArModel& model,
                                   const ldp::ExitSpec& exit,
                                   const McConfig& cfg);

/// Fraction of paths exiting within n_steps, with a Wilson 95% interval.
ProbEstimate estimate_exit_probability(const process::ArModel& model,
                                       const ldp::ExitSpec& exit,
                                       std::size_t n_steps, const McConfig& cfg);

/// The comparison statistic epsilon^2 * ln(mean_tau); requires mean_tau >= 1
/// (exit times are at least one step).
double scaled_log_mean(double epsilon, double mean_tau);

}  // namespace arexit::mc
