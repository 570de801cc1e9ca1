// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#include "arexit/ldp.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace arexit::ldp {

using matcore::Matrix;
using matcore::Vector;

namespace {

void check_exit_inputs(const Matrix& a, const Matrix& q, const Vector& c) {
  if (!a.square() || q.rows() != a.rows() || q.cols() != a.cols())
    throw InvalidInputError("exit rate: a and q must be square with equal dims");
  if (c.dim() != a.rows())
    throw InvalidInputError("exit rate: direction dimension mismatch");
  if (c.is_zero())
    throw InvalidInputError("exit rate: direction must not be the zero vector");
}

bool reachable(double quad_form) {
  return quad_form > 0.0 && std::isfinite(0.5 / quad_form);
}

struct HorizonSolution {
  double quad_form;
  process::Path path;
};

// Sigma_t recursion plus the extremal path y_t = K Sigma_t (a^{N-t})^T c.
// The final quadratic form and path share the same Sigma_N * c product, so
// c^T y_N is exactly 1 up to the single division by the quadratic form.
HorizonSolution solve_horizon(const Matrix& a, const Matrix& q, const Vector& c,
                              std::size_t n_horizon) {
  check_exit_inputs(a, q, c);
  if (n_horizon < 1) throw InvalidInputError("exit rate: horizon must be >= 1");

  const auto sigmas = process::covariance_sequence(a, q, n_horizon);

  // w_t = (a^{N-t})^T c, built backwards from w_N = c.
  const Matrix at = transpose(a);
  std::vector<Vector> w(n_horizon, c);
  for (std::size_t t = n_horizon - 1; t >= 1; --t)
    w[t - 1] = mat_vec(at, w[t]);

  std::vector<Vector> scaled(n_horizon, c);  // Sigma_t w_t
  for (std::size_t t = 1; t <= n_horizon; ++t)
    scaled[t - 1] = mat_vec(sigmas[t - 1], w[t - 1]);

  const double quad_form = dot(c, scaled[n_horizon - 1]);
  if (!reachable(quad_form))
    throw ComputationError(
        "unreachable constraint at this horizon: c^T Sigma_N c = 0 (noise "
        "cannot reach the exit direction in " + std::to_string(n_horizon) +
        " steps)");

  const double k = 1.0 / quad_form;
  std::vector<Vector> points;
  points.reserve(n_horizon + 1);
  points.emplace_back(c.dim());  // y_0 = 0
  for (std::size_t t = 1; t <= n_horizon; ++t) points.push_back(k * scaled[t - 1]);

  return {quad_form, process::Path(c.dim(), std::move(points))};
}

// Gaussian elimination with partial pivoting for the tiny normal-equation
// systems the oracle produces.
std::vector<double> solve_dense_small(std::vector<std::vector<double>> m,
                                      std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    if (m[col][col] == 0.0)
      throw ComputationError("oracle: singular normal equations");
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t cc = col; cc < n; ++cc) m[r][cc] -= f * m[col][cc];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= m[i][j] * x[j];
    x[i] = acc / m[i][i];
  }
  return x;
}

// Columns spanning range(q), scaled so q = B B^T; increments are
// parametrized as z_t = B u_t with cost (1/2)||u_t||^2.
std::vector<Vector> noise_basis(const Matrix& q) {
  const auto d = static_cast<Eigen::Index>(q.rows());
  Eigen::MatrixXd qe(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      qe(i, j) = q(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(qe);
  const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(lmax > 0.0))
    throw InvalidInputError("oracle: noise covariance q is zero");

  std::vector<Vector> cols;
  for (Eigen::Index k = 0; k < d; ++k) {
    const double lambda = es.eigenvalues()(k);
    if (lambda <= lmax * 1e-12) continue;
    Vector col(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i)
      col[static_cast<std::size_t>(i)] = std::sqrt(lambda) * es.eigenvectors()(i, k);
    cols.push_back(std::move(col));
  }
  return cols;
}

}  // namespace

ExitSpec::ExitSpec(Vector c_, Sidedness sided_, double level_)
    : c(std::move(c_)), sided(sided_), level(level_) {
  if (c.is_zero()) throw InvalidInputError("ExitSpec: direction must be nonzero");
  if (!(level > 0.0) || !std::isfinite(level))
    throw InvalidInputError("ExitSpec: level must be positive and finite");
}

Vector ExitSpec::normalized_direction() const { return (1.0 / level) * c; }

RateValue RateValue::finite(double v) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw InvalidInputError("RateValue: finite rate must be nonnegative and finite");
  return {false, v};
}

RateValue RateValue::infinite() { return {true, 0.0}; }

double RateValue::value() const {
  if (infinite_)
    throw ComputationError("RateValue: no finite value (infeasible path)");
  return value_;
}

RateResult::RateResult(std::optional<std::size_t> horizon_, double quadratic_form_,
                       std::optional<process::Path> path_)
    : horizon(horizon_),
      quadratic_form(quadratic_form_),
      exponent(0.5 / quadratic_form_),
      optimal_path(std::move(path_)) {
  if (!reachable(quadratic_form_))
    throw InvalidInputError("RateResult: quadratic form must be positive");
}

RateValue rate_function(const process::Path& path, const Matrix& a,
                        const Vector& x0) {
  if (!a.square() || path.dim != a.rows() || x0.dim() != a.rows())
    throw InvalidInputError("rate_function: dimension mismatch");

  // Start-point feasibility is exact: the rate is infinite off x0.
  for (std::size_t i = 0; i < x0.dim(); ++i)
    if (path.points[0][i] != x0[i]) return RateValue::infinite();

  double sum = 0.0;
  for (std::size_t t = 1; t < path.points.size(); ++t) {
    const Vector z = path.points[t] - mat_vec(a, path.points[t - 1]);
    sum += dot(z, z);
  }
  return RateValue::finite(0.5 * sum);
}

RateValue rate_function_arn(const std::vector<double>& path,
                            const std::vector<double>& b,
                            const std::vector<double>& starts) {
  const std::size_t n = b.size();
  if (n == 0) throw InvalidInputError("rate_function_arn: empty coefficient list");
  if (starts.size() != n)
    throw InvalidInputError("rate_function_arn: need exactly n start values");
  if (path.size() < n)
    throw InvalidInputError("rate_function_arn: path shorter than the order");

  for (std::size_t i = 0; i < n; ++i)
    if (path[i] != starts[i]) return RateValue::infinite();

  double sum = 0.0;
  for (std::size_t t = n; t < path.size(); ++t) {
    double pred = 0.0;
    for (std::size_t i = 1; i <= n; ++i) pred += b[i - 1] * path[t - i];
    const double z = path[t] - pred;
    sum += z * z;
  }
  return RateValue::finite(0.5 * sum);
}

RateResult finite_horizon_exit_rate(const Matrix& a, const Matrix& q,
                                    const Vector& c, std::size_t n_horizon) {
  auto sol = solve_horizon(a, q, c, n_horizon);
  return {n_horizon, sol.quad_form, std::move(sol.path)};
}

process::Path optimal_exit_path(const Matrix& a, const Matrix& q, const Vector& c,
                                std::size_t n_horizon) {
  return std::move(solve_horizon(a, q, c, n_horizon).path);
}

RateResult asymptotic_exit_exponent(const Matrix& a, const Matrix& q,
                                    const Vector& c) {
  check_exit_inputs(a, q, c);
  const Matrix sigma_inf = matcore::solve_discrete_lyapunov(a, q);
  const double quad_form = matcore::quadratic_form(c, sigma_inf);
  if (!reachable(quad_form))
    throw ComputationError(
        "unreachable exit direction: c^T Sigma_inf c = 0 (noise never enters "
        "the exit direction)");
  return {std::nullopt, quad_form, std::nullopt};
}

RateResult finite_horizon_exit_rate(const Matrix& a, const Matrix& q,
                                    const ExitSpec& exit, std::size_t n_horizon) {
  return finite_horizon_exit_rate(a, q, exit.normalized_direction(), n_horizon);
}

RateResult asymptotic_exit_exponent(const Matrix& a, const Matrix& q,
                                    const ExitSpec& exit) {
  return asymptotic_exit_exponent(a, q, exit.normalized_direction());
}

double rate_infimum_oracle(const Matrix& a, const Matrix& q, const Vector& c,
                           std::size_t n_horizon) {
  check_exit_inputs(a, q, c);
  if (n_horizon < 1) throw InvalidInputError("oracle: horizon must be >= 1");

  const std::size_t d = a.rows();
  const auto basis = noise_basis(q);
  const std::size_t r = basis.size();

  // Explicit powers a^0 .. a^{N-1}; the exit value is the telescoped sum
  // c^T y_N = sum_t c^T a^{N-t} z_t over increments z_t.
  std::vector<Matrix> powers;
  powers.reserve(n_horizon);
  powers.push_back(Matrix::identity(d));
  for (std::size_t k = 1; k < n_horizon; ++k)
    powers.push_back(mat_mul(powers.back(), a));

  // Stacked constraint functional g: minimizing (1/2)||u||^2 subject to
  // g^T u = 1 over u = (u_1, ..., u_N).
  std::vector<double> g(n_horizon * r, 0.0);
  for (std::size_t t = 1; t <= n_horizon; ++t) {
    const Vector w = mat_vec(transpose(powers[n_horizon - t]), c);
    for (std::size_t j = 0; j < r; ++j)
      g[(t - 1) * r + j] = dot(basis[j], w);
  }

  // Normal equations for the least-norm solution u = g (g^T g)^{-1} b with
  // the single right-hand side b = 1.
  const double gram = matcore::dot(g.data(), g.data(), g.size());
  if (!(gram > 0.0))
    throw ComputationError(
        "unreachable constraint: the exit functional vanishes on every "
        "increment direction at this horizon");
  const std::vector<double> beta =
      solve_dense_small({{gram}}, {1.0});
  std::vector<double> u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) u[i] = g[i] * beta[0];

  // Evaluate the objective on the minimizer (not via any closed form), and
  // check the reconstructed path actually meets the constraint.
  double value = 0.0;
  for (double ui : u) value += ui * ui;
  value *= 0.5;

  double reached = 0.0;
  for (std::size_t t = 1; t <= n_horizon; ++t) {
    Vector z(d);
    for (std::size_t j = 0; j < r; ++j)
      z = z + u[(t - 1) * r + j] * basis[j];
    reached += dot(c, mat_vec(powers[n_horizon - t], z));
  }
  if (std::fabs(reached - 1.0) > 1e-6)
    throw ComputationError("oracle: least-norm solution misses the constraint");

  return value;
}

double chernoff_exit_probability_bound(std::size_t n_steps, double epsilon,
                                       double sigma2) {
  if (n_steps < 1) throw InvalidInputError("chernoff bound: n_steps must be >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidInputError("chernoff bound: epsilon must be positive");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw InvalidInputError("chernoff bound: sigma2 must be positive");
  return 2.0 * static_cast<double>(n_steps) *
         std::exp(-1.0 / (2.0 * epsilon * epsilon * sigma2));
}

double lower_bound_exponent(double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw InvalidInputError("lower_bound_exponent: sigma2 must be positive");
  return 0.5 / sigma2;
}

std::size_t convergence_horizon(const Matrix& a, const Matrix& q, const Vector& c,
                                double tol, std::size_t cap) {
  check_exit_inputs(a, q, c);
  if (!(tol > 0.0)) throw InvalidInputError("convergence_horizon: tol must be positive");

  const double target = asymptotic_exit_exponent(a, q, c).exponent;
  const Matrix at = transpose(a);
  Matrix sigma = q;
  for (std::size_t n = 1; n <= cap; ++n) {
    if (n > 1) sigma = add(mat_mul(mat_mul(a, sigma), at), q);
    const double quad_form = matcore::quadratic_form(c, sigma);
    if (reachable(quad_form) && std::fabs(0.5 / quad_form - target) < tol)
      return n;
  }
  return cap;
}

}  // namespace arexit::ldp
