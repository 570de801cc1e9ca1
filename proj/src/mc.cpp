// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arexit/mc.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace arexit::mc {

namespace {

constexpr double kZ95 = 1.959963984540054;  // Phi^{-1}(0.975)
constexpr std::uint64_t kCensored = 0;      // tau is always >= 1

// Flattened model state for the per-step loop. The first-coordinate noise
// branch and matcore::dot keep the companion embedding bit-compatible with
// the direct scalar recursion.
struct Engine {
  std::size_t d;
  std::vector<double> drift;  // row-major
  std::vector<double> start;
  std::vector<double> direction;
  double eps;
  double level;
  bool one_sided;
  bool first_coordinate_noise;
  std::uint64_t seed;
  std::size_t max_steps;

  Engine(const process::ArModel& model, const ldp::ExitSpec& exit,
         std::uint64_t seed_, std::size_t max_steps_)
      : d(model.dim()),
        drift(model.a.entries()),
        start(model.x0.entries()),
        direction(exit.c.entries()),
        eps(model.epsilon),
        level(exit.level),
        one_sided(exit.sided == ldp::Sidedness::one_sided),
        first_coordinate_noise(model.noise == process::NoiseShape::first_coordinate),
        seed(seed_),
        max_steps(max_steps_) {
    if (exit.c.dim() != d)
      throw InvalidInputError("sample_exit_time: exit direction dimension mismatch");
  }

  std::uint64_t run_path(NormalStream& noise, std::vector<double>& x,
                         std::vector<double>& x_next) const {
    x = start;
    const double* a = drift.data();
    const double* c = direction.data();
    for (std::size_t t = 1; t <= max_steps; ++t) {
      if (first_coordinate_noise) {
        for (std::size_t i = 0; i < d; ++i)
          x_next[i] = matcore::dot(a + i * d, x.data(), d);
        x_next[0] += eps * noise.next();
      } else {
        for (std::size_t i = 0; i < d; ++i) {
          x_next[i] = matcore::dot(a + i * d, x.data(), d);
          x_next[i] += eps * noise.next();
        }
      }
      x.swap(x_next);
      const double v = matcore::dot(c, x.data(), d);
      if (one_sided ? v >= level : std::fabs(v) >= level) return t;
    }
    return kCensored;
  }

  std::uint64_t run_path(std::uint64_t path_index, std::vector<double>& x,
                         std::vector<double>& x_next) const {
    NormalStream noise(seed, path_index);
    return run_path(noise, x, x_next);
  }
};

unsigned resolve_threads(unsigned requested, std::size_t n_paths) {
  unsigned t = requested != 0 ? requested
                              : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(
      std::min<std::size_t>(t, n_paths));
}

// Runs paths 0..n_paths-1; results land at their path index regardless of
// which worker ran them.
std::vector<std::uint64_t> run_all_paths(const Engine& engine, std::size_t n_paths,
                                         unsigned threads) {
  std::vector<std::uint64_t> taus(n_paths, kCensored);
  threads = resolve_threads(threads, n_paths);

  auto worker = [&](std::atomic<std::size_t>& counter) {
    std::vector<double> x(engine.d), x_next(engine.d);
    for (;;) {
      const std::size_t p = counter.fetch_add(1);
      if (p >= n_paths) return;
      taus[p] = engine.run_path(p, x, x_next);
    }
  };

  std::atomic<std::size_t> counter{0};
  if (threads <= 1) {
    worker(counter);
    return taus;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, std::ref(counter));
  for (auto& th : pool) th.join();
  return taus;
}

}  // namespace

void McConfig::validate() const {
  if (n_paths < 1) throw InvalidInputError("McConfig: n_paths must be >= 1");
  if (max_steps < 1) throw InvalidInputError("McConfig: max_steps must be >= 1");
}

std::optional<std::uint64_t> sample_exit_time(const process::ArModel& model,
                                              const ldp::ExitSpec& exit,
                                              NormalStream& noise,
                                              std::size_t max_steps) {
  if (max_steps < 1) throw InvalidInputError("sample_exit_time: max_steps must be >= 1");
  Engine engine(model, exit, 0, max_steps);
  std::vector<double> x(engine.d), x_next(engine.d);
  const std::uint64_t tau = engine.run_path(noise, x, x_next);
  if (tau == kCensored) return std::nullopt;
  return tau;
}

std::optional<std::uint64_t> sample_exit_time(const process::ArModel& model,
                                              const ldp::ExitSpec& exit,
                                              std::uint64_t seed,
                                              std::uint64_t path_index,
                                              std::size_t max_steps) {
  NormalStream noise(seed, path_index);
  return sample_exit_time(model, exit, noise, max_steps);
}

McEstimate estimate_mean_exit_time(const process::ArModel& model,
                                   const ldp::ExitSpec& exit, const McConfig& cfg) {
  cfg.validate();
  const Engine engine(model, exit, cfg.seed, cfg.max_steps);
  const auto taus = run_all_paths(engine, cfg.n_paths, cfg.threads);

  // Sequential index-order reduction: identical for every thread count.
  std::size_t censored = 0;
  double sum = 0.0;
  for (const std::uint64_t tau : taus) {
    censored += tau == kCensored ? 1 : 0;
    sum += tau == kCensored ? static_cast<double>(cfg.max_steps)
                            : static_cast<double>(tau);
  }
  if (censored == cfg.n_paths)
    throw ComputationError("no exits observed: every path hit the step cap");

  const double n = static_cast<double>(cfg.n_paths);
  const double mean = sum / n;

  double ss = 0.0;
  for (const std::uint64_t tau : taus) {
    const double v = tau == kCensored ? static_cast<double>(cfg.max_steps)
                                      : static_cast<double>(tau);
    ss += (v - mean) * (v - mean);
  }
  const double se = cfg.n_paths > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;

  McEstimate est;
  est.mean_tau = mean;
  est.ci_low = mean - kZ95 * se;
  est.ci_high = mean + kZ95 * se;
  est.scaled_log = scaled_log_mean(model.epsilon, mean);
  est.n_paths = cfg.n_paths;
  est.censored = censored;
  est.seed = cfg.seed;
  return est;
}

ProbEstimate estimate_exit_probability(const process::ArModel& model,
                                       const ldp::ExitSpec& exit,
                                       std::size_t n_steps, const McConfig& cfg) {
  cfg.validate();
  if (n_steps < 1)
    throw InvalidInputError("estimate_exit_probability: n_steps must be >= 1");
  const Engine engine(model, exit, cfg.seed, n_steps);
  const auto taus = run_all_paths(engine, cfg.n_paths, cfg.threads);

  std::size_t exits = 0;
  for (const std::uint64_t tau : taus) exits += tau != kCensored ? 1 : 0;

  const double n = static_cast<double>(cfg.n_paths);
  const double p_hat = static_cast<double>(exits) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p_hat + z2 / (2.0 * n)) / denom;
  const double half =
      kZ95 / denom * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));

  ProbEstimate est;
  est.p_hat = p_hat;
  est.ci_low = std::max(0.0, center - half);
  est.ci_high = std::min(1.0, center + half);
  est.n_paths = cfg.n_paths;
  est.exits = exits;
  est.seed = cfg.seed;
  return est;
}

double scaled_log_mean(double epsilon, double mean_tau) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidInputError("scaled_log_mean: epsilon must be positive");
  if (!(mean_tau >= 1.0))
    throw InvalidInputError("scaled_log_mean: mean exit time must be >= 1");
  return epsilon * epsilon * std::log(mean_tau);
}

}  // namespace arexit::mc
