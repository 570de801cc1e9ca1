// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arexit/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "arexit/ldp.hpp"
#include "arexit/mc.hpp"

namespace arexit::cli {

using matcore::Matrix;
using matcore::Vector;

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InvalidInputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ComputationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

// Writes the rendered report to the resolved destination ('-' = out stream).
void emit(const std::string& body, const std::string& path, std::ostream& out) {
  if (path == "-") {
    out << body;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidInputError("cannot open output file '" + path + "'");
  file << body;
}

RunConfig load_required_config(const CommonOptions& opts) {
  if (!opts.config_path)
    throw InvalidInputError("this command needs --config <path>");
  return load_config_file(*opts.config_path);
}

void apply_overrides(const CommonOptions& opts, RunConfig& cfg) {
  if (opts.seed) cfg.mc.seed = *opts.seed;
  if (opts.paths) {
    if (*opts.paths < 1) throw InvalidInputError("--paths must be >= 1");
    cfg.mc.n_paths = *opts.paths;
  }
  if (opts.max_steps) {
    if (*opts.max_steps < 1) throw InvalidInputError("--max-steps must be >= 1");
    cfg.mc.max_steps = *opts.max_steps;
  }
  if (opts.threads) cfg.mc.threads = *opts.threads;
  if (opts.format) {
    if (*opts.format != OutputFormat::text)
      cfg.output.format = *opts.format;
  }
  if (opts.out_path) cfg.output.path = *opts.out_path;
}

OutputFormat resolve_format(const CommonOptions& opts, const RunConfig& cfg) {
  return opts.format ? *opts.format
                     : cfg.output.format;  // config has no "text"
}

struct AnalyticModel {
  Matrix a;
  Matrix q;
  Vector c_raw;       // exit direction before level normalization
  double epsilon;
  double level;
  std::string kind;
  std::vector<double> arn_b;
  std::string sided;
};

AnalyticModel analytic_model(const RunConfig& cfg) {
  const auto exit = build_exit(cfg);
  const std::string sided =
      exit.sided == ldp::Sidedness::two_sided ? "two_sided" : "one_sided";
  if (cfg.is_arn()) {
    const auto& m = std::get<ArnSection>(cfg.model);
    const Matrix companion = process::companion_matrix(m.b);
    const Vector e1 = Vector::unit(m.b.size(), 0);
    return {companion, matcore::outer(e1, e1), e1,
            m.epsilon, exit.level, "arn", m.b, sided};
  }
  const auto& m = std::get<Ar1Section>(cfg.model);
  process::ArModel model(m.a, m.epsilon, m.x0, m.noise);
  return {m.a, model.noise_covariance(), exit.c,
          m.epsilon, exit.level, "ar1", {}, sided};
}

}  // namespace

const std::vector<Table1Case>& table1_cases() {
  static const std::vector<Table1Case> cases = {
      {0.12, 0.0639}, {0.10, 0.0554}, {0.08, 0.0473},
      {0.07, 0.0434}, {0.06, 0.0415}, {0.05, 0.0389}};
  return cases;
}

process::ArModel table1_model(double epsilon) {
  return process::ArModel(Matrix(2, 2, {0.8, 1.0, 0.0, 0.5}), epsilon, Vector(2));
}

ldp::ExitSpec table1_exit() { return ldp::ExitSpec(Vector{1.0, 1.0}); }

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    RunConfig cfg = load_required_config(opts.common);
    apply_overrides(opts.common, cfg);
    if (opts.horizons.empty())
      throw InvalidInputError("analyze: need at least one horizon");
    for (std::size_t n : opts.horizons)
      if (n < 1) throw InvalidInputError("analyze: horizons must be >= 1");

    const AnalyticModel m = analytic_model(cfg);

    const double rho = matcore::spectral_radius(m.a);
    if (rho >= 1.0) {
      err << "error: no stationary distribution (spectral radius " << fmt_sig(rho, 6)
          << " >= 1); asymptotic analysis unsupported -- note this does NOT "
             "imply a zero exit exponent\n";
      return 1;
    }

    const Vector c_norm = (1.0 / m.level) * m.c_raw;
    const Matrix sigma_inf = matcore::solve_discrete_lyapunov(m.a, m.q);

    AnalyzeReport report;
    report.model_kind = m.kind;
    report.dim = m.a.rows();
    report.epsilon = m.epsilon;
    report.arn_coefficients = m.arn_b;
    report.spectral_radius = rho;
    report.sigma_infinity = sigma_inf;
    report.sigma2 = matcore::quadratic_form(m.c_raw, sigma_inf);
    report.quadratic_form = matcore::quadratic_form(c_norm, sigma_inf);
    report.asymptotic_exponent =
        ldp::asymptotic_exit_exponent(m.a, m.q, c_norm).exponent;
    report.convergence_horizon = ldp::convergence_horizon(m.a, m.q, c_norm);
    report.exit_direction = m.c_raw.entries();
    report.exit_level = m.level;
    report.exit_sided = m.sided;

    std::size_t max_reachable = 0;
    for (std::size_t n : opts.horizons) {
      HorizonRow row{n, true, 0.0, 0.0};
      try {
        const auto rate = ldp::finite_horizon_exit_rate(m.a, m.q, c_norm, n);
        row.quadratic_form = rate.quadratic_form;
        row.exponent = rate.exponent;
        max_reachable = std::max(max_reachable, n);
      } catch (const ComputationError&) {
        row.reachable = false;
      }
      report.horizons.push_back(row);
    }
    if (max_reachable > 0) {
      report.optimal_path = ldp::optimal_exit_path(m.a, m.q, c_norm, max_reachable);
      report.path_horizon = max_reachable;
    }

    const OutputFormat format = resolve_format(opts.common, cfg);
    const std::string body = format == OutputFormat::json  ? analyze_json(report)
                             : format == OutputFormat::csv ? analyze_csv(report)
                                                           : analyze_text(report);
    emit(body, opts.common.out_path.value_or(cfg.output.path), out);
    return 0;
  });
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    RunConfig cfg = load_required_config(opts.common);
    apply_overrides(opts.common, cfg);

    std::vector<double> eps_list = opts.common.eps;
    if (eps_list.empty()) eps_list.push_back(cfg.epsilon());
    for (double e : eps_list)
      if (!(e > 0.0) || !std::isfinite(e))
        throw InvalidInputError("simulate: epsilon values must be positive");

    const ldp::ExitSpec exit = build_exit(cfg);
    const mc::McConfig mc_cfg = build_mc_config(cfg);

    std::vector<SimulateRow> rows;
    for (double eps : eps_list) {
      RunConfig row_cfg = cfg;
      if (row_cfg.is_arn())
        std::get<ArnSection>(row_cfg.model).epsilon = eps;
      else
        std::get<Ar1Section>(row_cfg.model).epsilon = eps;
      const process::ArModel model = build_model(row_cfg);
      const auto est = mc::estimate_mean_exit_time(model, exit, mc_cfg);
      rows.push_back({eps, est.n_paths, est.mean_tau, est.ci_low, est.ci_high,
                      est.scaled_log, est.censored, est.seed});
    }

    const OutputFormat format = resolve_format(opts.common, cfg);
    const std::string body = format == OutputFormat::json  ? simulate_json(rows)
                             : format == OutputFormat::csv ? simulate_csv(rows)
                                                           : simulate_text(rows);
    emit(body, opts.common.out_path.value_or(cfg.output.path), out);
    return 0;
  });
}

int cmd_table1(const Table1Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    std::vector<Table1Case> cases;
    if (opts.common.eps.empty()) {
      cases = table1_cases();
    } else {
      for (double e : opts.common.eps) {
        bool found = false;
        for (const auto& c : table1_cases())
          if (std::fabs(c.epsilon - e) < 1e-12) {
            cases.push_back(c);
            found = true;
            break;
          }
        if (!found)
          throw InvalidInputError(
              "table1: epsilon " + fmt_sig(e, 6) +
              " has no reference value (choose from 0.12 0.10 0.08 0.07 0.06 0.05)");
      }
    }

    mc::McConfig mc_cfg;
    mc_cfg.n_paths = opts.common.paths.value_or(1000);
    mc_cfg.seed = opts.common.seed.value_or(kTable1DefaultSeed);
    mc_cfg.max_steps = opts.common.max_steps.value_or(1000000000);
    mc_cfg.threads = opts.common.threads.value_or(0);

    const ldp::ExitSpec exit = table1_exit();
    const double limit =
        ldp::asymptotic_exit_exponent(table1_model(1.0).a,
                                      Matrix::identity(2), exit.c)
            .exponent;

    std::vector<Table1Row> rows;
    for (const auto& c : cases) {
      const auto est =
          mc::estimate_mean_exit_time(table1_model(c.epsilon), exit, mc_cfg);
      rows.push_back({c.epsilon, c.reference, est.scaled_log,
                      std::fabs(est.scaled_log - c.reference), est.mean_tau,
                      est.ci_low, est.ci_high, est.n_paths, est.censored,
                      est.seed});
    }

    const OutputFormat format = opts.common.format.value_or(OutputFormat::text);
    const std::string body = format == OutputFormat::json  ? table1_json(rows, limit)
                             : format == OutputFormat::csv ? table1_csv(rows, limit)
                                                           : table1_text(rows, limit);
    emit(body, opts.common.out_path.value_or("-"), out);
    return 0;
  });
}

namespace {

// Deterministic random instances for the verify checks.
struct InstanceRng {
  std::mt19937_64 gen;
  explicit InstanceRng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }

  Matrix stable_matrix(std::size_t d, double target_radius) {
    for (;;) {
      std::vector<double> entries(d * d);
      for (auto& v : entries) v = uniform(-1.0, 1.0);
      Matrix m(d, d, entries);
      const double rho = matcore::spectral_radius(m);
      if (rho < 1e-8) continue;  // nearly nilpotent draw; rescaling is unstable
      return matcore::scale(target_radius / rho, m);
    }
  }

  Vector direction(std::size_t d, bool need_first_coordinate) {
    for (;;) {
      std::vector<double> entries(d);
      for (auto& v : entries) v = uniform(-2.0, 2.0);
      Vector c(entries);
      if (matcore::max_abs(c) < 0.1) continue;
      if (need_first_coordinate && std::fabs(c[0]) < 0.1) continue;
      return c;
    }
  }
};

void record_failure(CheckResult& check, const std::string& detail) {
  ++check.failures;
  if (check.details.size() < 5) check.details.push_back(detail);
}

CheckResult check_lyapunov_agreement(std::uint64_t seed, std::size_t trials) {
  CheckResult check{"lyapunov-agreement", 0, 0, {}};
  InstanceRng rng(seed ^ 0x1u);
  const std::size_t dims[] = {1, 2, 3, 5};
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t d = dims[i % 4];
    const double rho = rng.uniform(0.15, 0.9);
    const Matrix a = rng.stable_matrix(d, rho);
    const Matrix q = (i % 2 == 0 || d == 1)
                         ? Matrix::identity(d)
                         : matcore::outer(Vector::unit(d, 0), Vector::unit(d, 0));
    ++check.instances;

    const Matrix direct = matcore::solve_discrete_lyapunov(a, q);
    const Matrix series = matcore::lyapunov_series_oracle(a, q, 1e-12);
    const double diff = matcore::max_abs(matcore::subtract(direct, series));
    const double residual = matcore::max_abs(matcore::subtract(
        direct, matcore::add(mat_mul(mat_mul(a, direct), transpose(a)), q)));

    bool psd_ok = true;
    for (int k = 0; k < 5; ++k) {
      const Vector v = rng.direction(d, false);
      if (matcore::quadratic_form(v, direct) < -1e-10) psd_ok = false;
    }

    if (diff > 1e-8 || residual > 1e-10 * (1.0 + matcore::max_abs(direct)) ||
        !matcore::is_symmetric(direct, 1e-12) || !psd_ok)
      record_failure(check, "d=" + std::to_string(d) +
                                " rho=" + fmt_sig(rho, 6) +
                                " diff=" + fmt_sig(diff, 3));
  }
  return check;
}

CheckResult check_rate_oracle(std::uint64_t seed, std::size_t trials,
                              bool inject_fault) {
  CheckResult check{"rate-oracle-agreement", 0, 0, {}};
  InstanceRng rng(seed ^ 0x2u);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t d = 1 + i % 3;
    const std::size_t horizon = 1 + i % 10;
    const bool singular = (i % 2 == 1) && d > 1;
    const Matrix q = singular
                         ? matcore::outer(Vector::unit(d, 0), Vector::unit(d, 0))
                         : Matrix::identity(d);
    const Matrix a = rng.stable_matrix(d, rng.uniform(0.15, 0.9));
    const Vector c = rng.direction(d, singular);
    ++check.instances;

    const auto closed = ldp::finite_horizon_exit_rate(a, q, c, horizon);
    const double oracle = ldp::rate_infimum_oracle(a, q, c, horizon);
    double closed_exponent = closed.exponent;
    if (inject_fault && i == 0) closed_exponent += 1e-3;

    const double gap = std::fabs(closed_exponent - oracle);
    const double exit_value =
        matcore::dot(c, closed.optimal_path->points.back());
    const auto path_rate =
        ldp::rate_function(*closed.optimal_path, a, Vector(d));
    // Singular-noise optimal increments stay in range(q), so the plain
    // Euclidean action still evaluates to the exponent.
    const bool ok = gap <= 1e-8 * (1.0 + closed_exponent) &&
                    std::fabs(std::fabs(exit_value) - 1.0) <= 1e-10 &&
                    !path_rate.is_infinite() &&
                    std::fabs(path_rate.value() - closed.exponent) <= 1e-10;
    if (!ok)
      record_failure(check, "d=" + std::to_string(d) +
                                " N=" + std::to_string(horizon) +
                                (singular ? " q=e1e1^T" : " q=I") +
                                " gap=" + fmt_sig(gap, 3));
  }
  return check;
}

CheckResult check_chernoff_dominance(std::uint64_t seed) {
  CheckResult check{"chernoff-dominance", 0, 0, {}};
  const double sigma2 =
      ldp::asymptotic_exit_exponent(table1_model(1.0).a, Matrix::identity(2),
                                    table1_exit().c)
          .quadratic_form;
  const struct {
    double epsilon;
    std::size_t n_steps;
  } combos[] = {{0.07, 10}, {0.12, 100}};
  for (const auto& combo : combos) {
    ++check.instances;
    mc::McConfig cfg;
    cfg.n_paths = 400;
    cfg.seed = seed ^ 0x3u;
    cfg.max_steps = combo.n_steps;
    const auto est = mc::estimate_exit_probability(
        table1_model(combo.epsilon), table1_exit(), combo.n_steps, cfg);
    const double bound = std::min(
        1.0, ldp::chernoff_exit_probability_bound(combo.n_steps, combo.epsilon,
                                                  sigma2));
    const double se =
        std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(cfg.n_paths));
    if (est.p_hat > bound + 3.0 * se)
      record_failure(check, "epsilon=" + fmt_sig(combo.epsilon, 6) +
                                " N=" + std::to_string(combo.n_steps) +
                                " p_hat=" + fmt_sig(est.p_hat, 6) +
                                " bound=" + fmt_sig(bound, 6));
  }
  return check;
}

}  // namespace

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (opts.trials < 1) throw InvalidInputError("verify: --trials must be >= 1");

    VerifyReport report;
    report.seed = opts.seed;
    report.trials = opts.trials;
    report.checks.push_back(check_lyapunov_agreement(opts.seed, opts.trials));
    report.checks.push_back(
        check_rate_oracle(opts.seed, opts.trials, opts.inject_fault));
    report.checks.push_back(check_chernoff_dominance(opts.seed));

    const OutputFormat format = opts.format.value_or(OutputFormat::text);
    const std::string body =
        format == OutputFormat::json ? verify_json(report) : verify_text(report);
    emit(body, opts.out_path.value_or("-"), out);
    return report.passed() ? 0 : 1;
  });
}

}  // namespace arexit::cli
