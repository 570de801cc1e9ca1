// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "arexit/errors.hpp"

/// Small dense real matrices and vectors, stability checks, and discrete
/// Lyapunov solvers. Everything here targets the tiny dimensions (d <= ~30)
/// the rest of the library works with; storage is row-major dense throughout.
namespace arexit::matcore {

class Matrix {
 public:
  /// Zero matrix of the given shape. Throws InvalidInputError on zero dims.
  Matrix(std::size_t rows, std::size_t cols);
  /// Matrix from row-major entries; every entry must be finite.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

  const double* data() const { return e_.data(); }
  double* data() { return e_.data(); }
  const std::vector<double>& entries() const { return e_; }

  bool all_finite() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> e_;
};

class Vector {
 public:
  explicit Vector(std::size_t dim);
  explicit Vector(std::vector<double> entries);
  Vector(std::initializer_list<double> entries)
      : Vector(std::vector<double>(entries)) {}

  /// Standard basis vector e_index (0-based) in dimension dim.
  static Vector unit(std::size_t dim, std::size_t index);

  std::size_t dim() const { return e_.size(); }
  double operator[](std::size_t i) const { return e_[i]; }
  double& operator[](std::size_t i) { return e_[i]; }
  const double* data() const { return e_.data(); }
  double* data() { return e_.data(); }
  const std::vector<double>& entries() const { return e_; }

  bool all_finite() const;
  bool is_zero() const;

 private:
  std::vector<double> e_;
};

/// Left-to-right dot product of two raw arrays. The Monte Carlo engine and
/// the scalar AR(n) recursion both accumulate through this so the companion
/// embedding reproduces the scalar process bit-for-bit.
inline double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double dot(const Vector& a, const Vector& b);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Vector mat_vec(const Matrix& a, const Vector& x);
Matrix transpose(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(double s, const Matrix& a);
Matrix outer(const Vector& u, const Vector& v);

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& a);

/// Max-norm (largest absolute entry).
double max_abs(const Matrix& a);
double max_abs(const Vector& a);

/// c^T m c for square m.
double quadratic_form(const Vector& c, const Matrix& m);

bool is_symmetric(const Matrix& a, double tol);

/// Largest eigenvalue modulus of a square matrix, complex pairs included.
double spectral_radius(const Matrix& a);

/// Solves Sigma = a Sigma a^T + q for the stationary covariance of the
/// recursion x_t = a x_{t-1} + noise with per-step noise covariance q.
///
/// Method: exact dense solve of the vectorized d^2-dimensional linear system
/// (I - a (x) a) vec(Sigma) = vec(q), one refinement pass, then symmetrized.
/// Requires spectral_radius(a) < 1 and symmetric q; the result satisfies
/// ||Sigma - a Sigma a^T - q||_max <= 1e-10 * (1 + ||Sigma||_max).
Matrix solve_discrete_lyapunov(const Matrix& a, const Matrix& q);

/// Independent check path for solve_discrete_lyapunov: partial sums of
/// sum_k a^k q (a^T)^k, stopped once an increment's max-norm falls below tol.
/// Shares no solve code with the direct solver. Divergent recursions are
/// detected by increment growth over a bounded iteration budget.
Matrix lyapunov_series_oracle(const Matrix& a, const Matrix& q, double tol);

}  // namespace arexit::matcore
