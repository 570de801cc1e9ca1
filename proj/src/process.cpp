// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arexit/process.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace arexit::process {

using matcore::Matrix;
using matcore::Vector;

ArModel::ArModel(Matrix a_, double epsilon_, Vector x0_, NoiseShape noise_)
    : a(std::move(a_)), epsilon(epsilon_), x0(std::move(x0_)), noise(noise_) {
  if (!a.square()) throw InvalidInputError("ArModel: drift matrix must be square");
  if (x0.dim() != a.rows())
    throw InvalidInputError("ArModel: start point dimension mismatch");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidInputError("ArModel: epsilon must be positive and finite");
}

Matrix ArModel::noise_covariance() const {
  if (noise == NoiseShape::identity) return Matrix::identity(dim());
  const Vector e1 = Vector::unit(dim(), 0);
  return matcore::outer(e1, e1);
}

ArnModel::ArnModel(std::vector<double> b_, double epsilon_,
                   std::vector<double> starts_)
    : b(std::move(b_)), epsilon(epsilon_), starts(std::move(starts_)) {
  if (b.empty()) throw InvalidInputError("ArnModel: need at least one coefficient");
  if (starts.size() != b.size())
    throw InvalidInputError("ArnModel: need exactly n start values");
  for (double v : b)
    if (!std::isfinite(v)) throw InvalidInputError("ArnModel: coefficients must be finite");
  for (double v : starts)
    if (!std::isfinite(v)) throw InvalidInputError("ArnModel: start values must be finite");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidInputError("ArnModel: epsilon must be positive and finite");
}

Path::Path(std::size_t dim_, std::vector<Vector> points_)
    : dim(dim_), points(std::move(points_)) {
  if (points.empty()) throw InvalidInputError("Path: needs at least the start point");
  for (const auto& p : points)
    if (p.dim() != dim) throw InvalidInputError("Path: point dimension mismatch");
}

Vector step(const ArModel& model, const Vector& x, const Vector& noise) {
  if (x.dim() != model.dim() || noise.dim() != model.dim())
    throw InvalidInputError("step: dimension mismatch");
  return mat_vec(model.a, x) + model.epsilon * noise;
}

Vector mean_at(const ArModel& model, std::size_t t) {
  Vector m = model.x0;
  for (std::size_t i = 0; i < t; ++i) m = mat_vec(model.a, m);
  return m;
}

std::vector<Matrix> covariance_sequence(const Matrix& a, const Matrix& q,
                                        std::size_t t_max) {
  if (!a.square() || q.rows() != a.rows() || q.cols() != a.cols())
    throw InvalidInputError("covariance_sequence: dimension mismatch");
  if (t_max < 1) throw InvalidInputError("covariance_sequence: t_max must be >= 1");

  std::vector<Matrix> seq;
  seq.reserve(t_max);
  seq.push_back(q);
  const Matrix at = transpose(a);
  for (std::size_t t = 2; t <= t_max; ++t)
    seq.push_back(add(mat_mul(mat_mul(a, seq.back()), at), q));
  return seq;
}

std::vector<Matrix> covariance_sequence(const Matrix& a, std::size_t t_max) {
  if (!a.square()) throw InvalidInputError("covariance_sequence: matrix must be square");
  return covariance_sequence(a, Matrix::identity(a.rows()), t_max);
}

Matrix companion_matrix(const std::vector<double>& b) {
  if (b.empty()) throw InvalidInputError("companion_matrix: empty coefficient list");
  const std::size_t n = b.size();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m(0, j) = b[j];
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  return m;
}

ArnEmbedding embed_arn(const ArnModel& model) {
  const std::size_t n = model.order();
  std::vector<double> start(model.starts.rbegin(), model.starts.rend());
  ArModel vec_model(companion_matrix(model.b), model.epsilon, Vector(std::move(start)),
                    NoiseShape::first_coordinate);
  return {std::move(vec_model), Vector::unit(n, 0)};
}

double stationary_variance_arn(const std::vector<double>& b) {
  const Matrix companion = companion_matrix(b);
  const Vector e1 = Vector::unit(b.size(), 0);
  const Matrix sigma = matcore::solve_discrete_lyapunov(companion, matcore::outer(e1, e1));
  return sigma(0, 0);
}

double stationary_variance_arn_series(const std::vector<double>& b, double tol) {
  if (!(tol > 0.0)) throw InvalidInputError("stationary_variance_arn_series: tol must be positive");
  const Matrix companion = companion_matrix(b);
  const std::size_t n = b.size();

  constexpr std::size_t kMaxIter = 200000;
  constexpr double kBlowUp = 1e120;

  // Impulse response u_k = (B^k)_{11}; sigma^2 = sum u_k^2. Individual u_k
  // may be exactly zero mid-stream (sparse coefficients), so stop only after
  // n consecutive squared terms fall below tol.
  double sum = 1.0;  // k = 0 term
  Matrix power = Matrix::identity(n);
  std::size_t small_streak = 0;
  for (std::size_t k = 1; k <= kMaxIter; ++k) {
    power = mat_mul(power, companion);
    const double u = power(0, 0);
    const double term = u * u;
    sum += term;
    small_streak = term < tol ? small_streak + 1 : 0;
    if (small_streak >= n) return sum;
    if (term > kBlowUp)
      throw ComputationError(
          "stationary_variance_arn_series: series diverges (no stationary distribution)");
  }
  throw ComputationError(
      "stationary_variance_arn_series: no convergence within iteration budget "
      "(no stationary distribution, or tol too small)");
}

}  // namespace arexit::process
