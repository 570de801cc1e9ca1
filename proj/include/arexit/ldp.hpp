// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>

#include "arexit/matcore.hpp"
#include "arexit/process.hpp"

/// Large-deviation machinery for exit times of stable Gaussian AR processes:
/// the quadratic action functional on discrete paths, closed-form
/// finite-horizon and asymptotic exit exponents 1/(2 c^T Sigma c), the
/// extremal exit path, an independent variational oracle, and the
/// Chernoff-type exit-probability bound.
///
/// All exponents refer to the small-noise scaling eps^2 * log E[tau] for the
/// exit time tau of x_t = a x_{t-1} + eps xi_t from {x : |c^T x| < 1}, with
/// the process started at the origin.
namespace arexit::ldp {

enum class Sidedness { two_sided, one_sided };

/// Linear exit functional: leave the set {x : |c^T x| < level} (two-sided)
/// or {x : c^T x < level} (one-sided). Levels other than 1 are folded into
/// the direction via c / level, which leaves the exit set unchanged.
struct ExitSpec {
  matcore::Vector c;
  Sidedness sided = Sidedness::two_sided;
  double level = 1.0;

  explicit ExitSpec(matcore::Vector c_, Sidedness sided_ = Sidedness::two_sided,
                    double level_ = 1.0);

  matcore::Vector normalized_direction() const;  // c / level
};

/// Value of the action functional: a finite nonnegative number or the
/// infinite sentinel (infeasible path). Kept as an explicit variant so no
/// floating-point infinity leaks into arithmetic.
class RateValue {
 public:
  static RateValue finite(double v);
  static RateValue infinite();

  bool is_infinite() const { return infinite_; }
  /// Finite value; throws ComputationError when infinite.
  double value() const;

 private:
  RateValue(bool inf, double v) : infinite_(inf), value_(v) {}
  bool infinite_;
  double value_;
};

/// Exit exponent at a fixed horizon or in the horizon limit.
struct RateResult {
  std::optional<std::size_t> horizon;        // nullopt = asymptotic
  double quadratic_form;                     // c^T Sigma c
  double exponent;                           // 1 / (2 c^T Sigma c)
  std::optional<process::Path> optimal_path; // absent for asymptotic results

  RateResult(std::optional<std::size_t> horizon_, double quadratic_form_,
             std::optional<process::Path> path_);
};

/// Action of a finite path under drift a, started at x0 with unit-covariance
/// noise: (1/2) sum_t ||y_t - a y_{t-1}||^2. Paths not starting exactly at
/// x0 get the infinite sentinel; terms past the end are the free
/// continuation y_t = a y_{t-1} and cost nothing.
RateValue rate_function(const process::Path& path, const matcore::Matrix& a,
                        const matcore::Vector& x0);

/// Scalar AR(n) action: (1/2) sum_{t>=n} (x_t - b_1 x_{t-1} - ... - b_n x_{t-n})^2
/// for a path whose first n entries must equal the start values exactly.
/// Equals rate_function of the companion-embedded path whenever that path is
/// feasible (all non-first coordinates of its increments vanish).
RateValue rate_function_arn(const std::vector<double>& path,
                            const std::vector<double>& b,
                            const std::vector<double>& starts);

/// Cheapest exit at exactly horizon n: exponent 1/(2 c^T Sigma_N c) with
/// Sigma_N from the q-covariance recursion, plus the extremal path attaining
/// it. Throws ComputationError("unreachable...") when c^T Sigma_N c = 0
/// (noise cannot reach the constraint within the horizon).
RateResult finite_horizon_exit_rate(const matcore::Matrix& a,
                                    const matcore::Matrix& q,
                                    const matcore::Vector& c,
                                    std::size_t n_horizon);

/// The minimizing path y_t = K Sigma_t (a^{N-t})^T c, K = 1/(c^T Sigma_N c),
/// with y_0 = 0. Satisfies |c^T y_N| = 1 and rate_function(path) = exponent.
process::Path optimal_exit_path(const matcore::Matrix& a, const matcore::Matrix& q,
                                const matcore::Vector& c, std::size_t n_horizon);

/// Horizon limit 1/(2 c^T Sigma_inf c) with Sigma_inf from
/// solve_discrete_lyapunov. Requires spectral_radius(a) < 1.
RateResult asymptotic_exit_exponent(const matcore::Matrix& a,
                                    const matcore::Matrix& q,
                                    const matcore::Vector& c);

/// ExitSpec conveniences: fold the level into the direction, then delegate.
/// Sidedness does not change the exponent.
RateResult finite_horizon_exit_rate(const matcore::Matrix& a,
                                    const matcore::Matrix& q,
                                    const ExitSpec& exit, std::size_t n_horizon);
RateResult asymptotic_exit_exponent(const matcore::Matrix& a,
                                    const matcore::Matrix& q,
                                    const ExitSpec& exit);

/// Independent numeric route to the finite-horizon exponent: minimizes the
/// summed increment cost subject to the single linear exit constraint via a
/// least-norm / normal-equations solve on the stacked increment vector. The
/// constraint functional is assembled from explicit matrix powers a^{N-t};
/// no covariance recursion or closed form is reused. Increments are
/// restricted to the range of q (for singular q, noise cannot move in other
/// directions).
double rate_infimum_oracle(const matcore::Matrix& a, const matcore::Matrix& q,
                           const matcore::Vector& c, std::size_t n_horizon);

/// Union tail bound 2 N exp(-1/(2 eps^2 sigma2)) on P(tau <= N) for a
/// mean-zero Gaussian sequence with per-step variance at most eps^2 sigma2.
/// May exceed 1; callers clamp when using it as a probability.
double chernoff_exit_probability_bound(std::size_t n_steps, double epsilon,
                                       double sigma2);

/// Matching lower-bound exponent 1/(2 sigma2); equals the asymptotic exit
/// exponent when sigma2 = c^T Sigma_inf c.
double lower_bound_exponent(double sigma2);

/// Smallest horizon whose finite-horizon exponent is within tol of the
/// asymptotic one, capped (the cap is returned if not reached sooner).
std::size_t convergence_horizon(const matcore::Matrix& a, const matcore::Matrix& q,
                                const matcore::Vector& c, double tol = 1e-9,
                                std::size_t cap = 100000);

}  // namespace arexit::ldp
