// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arexit/matcore.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace arexit::matcore {

namespace {

using EigenRowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenRowMat> eigen_view(const Matrix& m) {
  return {m.data(), static_cast<Eigen::Index>(m.rows()),
          static_cast<Eigen::Index>(m.cols())};
}

Matrix from_eigen(const EigenRowMat& m) {
  Matrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return out;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidInputError(msg);
}

void require_same_square(const Matrix& a, const Matrix& q, const char* op) {
  require(a.square(), std::string(op) + ": drift matrix must be square");
  require(q.rows() == a.rows() && q.cols() == a.cols(),
          std::string(op) + ": dimension mismatch between a and q");
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), e_(rows * cols, 0.0) {
  require(rows > 0 && cols > 0, "Matrix: dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
  require(rows > 0 && cols > 0, "Matrix: dimensions must be positive");
  require(e_.size() == rows * cols, "Matrix: entry count does not match shape");
  require(all_finite(), "Matrix: entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::all_finite() const {
  for (double v : e_)
    if (!std::isfinite(v)) return false;
  return true;
}

Vector::Vector(std::size_t dim) : e_(dim, 0.0) {
  require(dim > 0, "Vector: dimension must be positive");
}

Vector::Vector(std::vector<double> entries) : e_(std::move(entries)) {
  require(!e_.empty(), "Vector: dimension must be positive");
  require(all_finite(), "Vector: entries must be finite");
}

Vector Vector::unit(std::size_t dim, std::size_t index) {
  require(index < dim, "Vector::unit: index out of range");
  Vector v(dim);
  v[index] = 1.0;
  return v;
}

bool Vector::all_finite() const {
  for (double v : e_)
    if (!std::isfinite(v)) return false;
  return true;
}

bool Vector::is_zero() const {
  for (double v : e_)
    if (v != 0.0) return false;
  return true;
}

double dot(const Vector& a, const Vector& b) {
  require(a.dim() == b.dim(), "dot: dimension mismatch");
  return dot(a.data(), b.data(), a.dim());
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "mat_mul: dimension mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Vector mat_vec(const Matrix& a, const Vector& x) {
  require(a.cols() == x.dim(), "mat_vec: dimension mismatch");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    out[i] = dot(a.data() + i * a.cols(), x.data(), a.cols());
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "add: dimension mismatch");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
    out.data()[i] = a.data()[i] + b.data()[i];
  return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "subtract: dimension mismatch");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
    out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

Matrix scale(double s, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
    out.data()[i] = s * a.data()[i];
  return out;
}

Matrix outer(const Vector& u, const Vector& v) {
  Matrix out(u.dim(), v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) out(i, j) = u[i] * v[j];
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }
Vector operator*(const Matrix& a, const Vector& x) { return mat_vec(a, x); }
Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
Matrix operator-(const Matrix& a, const Matrix& b) { return subtract(a, b); }
Matrix operator*(double s, const Matrix& a) { return scale(s, a); }

Vector operator+(const Vector& a, const Vector& b) {
  require(a.dim() == b.dim(), "vector add: dimension mismatch");
  Vector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  require(a.dim() == b.dim(), "vector subtract: dimension mismatch");
  Vector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector operator*(double s, const Vector& a) {
  Vector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = s * a[i];
  return out;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.entries()) m = std::max(m, std::fabs(v));
  return m;
}

double max_abs(const Vector& a) {
  double m = 0.0;
  for (double v : a.entries()) m = std::max(m, std::fabs(v));
  return m;
}

double quadratic_form(const Vector& c, const Matrix& m) {
  require(m.square() && m.rows() == c.dim(), "quadratic_form: dimension mismatch");
  return dot(c, mat_vec(m, c));
}

bool is_symmetric(const Matrix& a, double tol) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::fabs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

double spectral_radius(const Matrix& a) {
  require(a.square(), "spectral_radius: matrix must be square");
  require(a.all_finite(), "spectral_radius: entries must be finite");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(eigen_view(a), false);
  double radius = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    radius = std::max(radius, std::abs(solver.eigenvalues()[i]));
  return radius;
}

Matrix solve_discrete_lyapunov(const Matrix& a, const Matrix& q) {
  require_same_square(a, q, "solve_discrete_lyapunov");
  require(a.all_finite() && q.all_finite(),
          "solve_discrete_lyapunov: entries must be finite");
  require(is_symmetric(q, 1e-9 * (1.0 + max_abs(q))),
          "solve_discrete_lyapunov: q must be symmetric");

  const double rho = spectral_radius(a);
  if (rho >= 1.0)
    throw ComputationError(
        "no stationary distribution: spectral radius " + std::to_string(rho) +
        " is not < 1");

  const auto d = static_cast<Eigen::Index>(a.rows());
  const auto av = eigen_view(a);

  // Row-major vectorization: vec(a X a^T) = (a (x) a) vec(X).
  EigenRowMat system = EigenRowMat::Identity(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index l = 0; l < d; ++l)
          system(i * d + j, k * d + l) -= av(i, k) * av(j, l);

  Eigen::VectorXd rhs(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      rhs(i * d + j) = q(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

  Eigen::PartialPivLU<EigenRowMat> lu(system);
  Eigen::VectorXd x = lu.solve(rhs);

  // One refinement pass keeps the residual near machine precision even for
  // moderately ill-conditioned systems (spectral radius close to 1).
  Eigen::VectorXd residual = rhs - system * x;
  x += lu.solve(residual);

  EigenRowMat sigma(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) sigma(i, j) = x(i * d + j);
  sigma = ((sigma + sigma.transpose()) * 0.5).eval();

  Matrix out = from_eigen(sigma);
  const double res =
      max_abs(subtract(out, add(mat_mul(mat_mul(a, out), transpose(a)), q)));
  if (!(res <= 1e-10 * (1.0 + max_abs(out))))
    throw ComputationError(
        "solve_discrete_lyapunov: residual " + std::to_string(res) +
        " exceeds tolerance (system too ill-conditioned)");
  return out;
}

Matrix lyapunov_series_oracle(const Matrix& a, const Matrix& q, double tol) {
  require_same_square(a, q, "lyapunov_series_oracle");
  require(a.all_finite() && q.all_finite(),
          "lyapunov_series_oracle: entries must be finite");
  require(is_symmetric(q, 1e-9 * (1.0 + max_abs(q))),
          "lyapunov_series_oracle: q must be symmetric");
  require(tol > 0.0, "lyapunov_series_oracle: tol must be positive");

  constexpr std::size_t kMaxIter = 200000;
  constexpr double kBlowUp = 1e120;

  const Matrix at = transpose(a);
  Matrix sum = q;
  Matrix term = q;
  for (std::size_t k = 1; k <= kMaxIter; ++k) {
    term = mat_mul(mat_mul(a, term), at);
    sum = add(sum, term);
    const double inc = max_abs(term);
    if (inc < tol) {
      // Symmetrize away the last-bit asymmetry accumulated by the products.
      return scale(0.5, add(sum, transpose(sum)));
    }
    if (inc > kBlowUp)
      throw ComputationError(
          "lyapunov_series_oracle: series diverges (no stationary distribution)");
  }
  throw ComputationError(
      "lyapunov_series_oracle: no convergence within iteration budget "
      "(spectral radius at or above 1, or tol too small)");
}

}  // namespace arexit::matcore
