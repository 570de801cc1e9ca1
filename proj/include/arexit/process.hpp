// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "arexit/matcore.hpp"

/// Gaussian autoregressive process models: the vector recursion
/// x_t = a x_{t-1} + eps * xi_t, its exact covariance recursion, and the
/// companion-matrix embedding of the scalar order-n recursion
/// x_t = b_1 x_{t-1} + ... + b_n x_{t-n} + eps * xi_t.
namespace arexit::process {

/// Shape of the per-step noise covariance: full identity (independent noise
/// in every coordinate) or e1 e1^T (noise enters coordinate 1 only, as in the
/// companion embedding of a scalar AR(n)).
enum class NoiseShape { identity, first_coordinate };

struct ArModel {
  matcore::Matrix a;
  double epsilon;
  matcore::Vector x0;
  NoiseShape noise = NoiseShape::identity;

  ArModel(matcore::Matrix a_, double epsilon_, matcore::Vector x0_,
          NoiseShape noise_ = NoiseShape::identity);

  std::size_t dim() const { return a.rows(); }
  matcore::Matrix noise_covariance() const;
};

struct ArnModel {
  std::vector<double> b;       // b1..bn, most recent lag first
  double epsilon;
  std::vector<double> starts;  // x_0..x_{n-1} in time order

  ArnModel(std::vector<double> b_, double epsilon_, std::vector<double> starts_);

  std::size_t order() const { return b.size(); }
};

/// Discrete path y_0, y_1, ..., y_T of fixed dimension.
struct Path {
  std::size_t dim;
  std::vector<matcore::Vector> points;

  Path(std::size_t dim_, std::vector<matcore::Vector> points_);

  std::size_t horizon() const { return points.size() - 1; }  // T
};

/// One transition: a x + epsilon * noise.
matcore::Vector step(const ArModel& model, const matcore::Vector& x,
                     const matcore::Vector& noise);

/// E x_t = a^t x0.
matcore::Vector mean_at(const ArModel& model, std::size_t t);

/// Covariance coefficients [Sigma_1, ..., Sigma_tmax] of the recursion
/// Sigma_1 = q, Sigma_t = a Sigma_{t-1} a^T + q (the per-step covariance of
/// x_t started from a point is epsilon^2 Sigma_t).
std::vector<matcore::Matrix> covariance_sequence(const matcore::Matrix& a,
                                                 const matcore::Matrix& q,
                                                 std::size_t t_max);

/// Identity-noise specialization: Sigma_1 = I.
std::vector<matcore::Matrix> covariance_sequence(const matcore::Matrix& a,
                                                 std::size_t t_max);

/// n x n companion matrix: first row b_1..b_n, ones on the subdiagonal.
matcore::Matrix companion_matrix(const std::vector<double>& b);

/// Result of rewriting a scalar AR(n) as a vector AR(1): the companion-drift
/// model (noise restricted to coordinate 1) plus the exit direction e1 that
/// reads the scalar process back out of the state vector.
struct ArnEmbedding {
  ArModel model;
  matcore::Vector exit_direction;
};

/// State y_t = (x_t, x_{t-1}, ..., x_{t-n+1}) with start (x_{n-1}, ..., x_0).
ArnEmbedding embed_arn(const ArnModel& model);

/// Stationary variance sigma^2 of the scalar AR(n): e1^T Sigma_inf e1 where
/// Sigma_inf = B Sigma_inf B^T + e1 e1^T for the companion matrix B.
double stationary_variance_arn(const std::vector<double>& b);

/// Series route to the same value: sum of squared impulse-response
/// coefficients (B^k)_{11}, truncated once the last n squared terms drop
/// below tol. Independent of the Lyapunov solve.
double stationary_variance_arn_series(const std::vector<double>& b, double tol);

}  // namespace arexit::process
