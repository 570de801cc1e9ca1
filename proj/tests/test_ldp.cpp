// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "arexit/ldp.hpp"
#include "test_util.hpp"

using namespace arexit;
using matcore::Matrix;
using matcore::Vector;
using process::Path;

namespace {

const Matrix kDrift(2, 2, {0.8, 1.0, 0.0, 0.5});
const Matrix kId2 = Matrix::identity(2);
const Vector kDiag{1.0, 1.0};

Path zero_cost_path(const Matrix& a, const Vector& x0, std::size_t steps) {
  std::vector<Vector> points{x0};
  for (std::size_t t = 0; t < steps; ++t)
    points.push_back(mat_vec(a, points.back()));
  return Path(x0.dim(), points);
}

}  // namespace

TEST_CASE("exit spec validation and level normalization") {
  CHECK_THROWS_AS(ldp::ExitSpec(Vector(2)), InvalidInputError);
  CHECK_THROWS_AS(ldp::ExitSpec(kDiag, ldp::Sidedness::two_sided, 0.0),
                  InvalidInputError);
  const ldp::ExitSpec spec(Vector{2.0, 0.0}, ldp::Sidedness::one_sided, 2.0);
  CHECK(spec.normalized_direction()[0] == 1.0);
  CHECK(spec.normalized_direction()[1] == 0.0);
}

TEST_CASE("rate value sentinel never leaks a float infinity") {
  const auto inf = ldp::RateValue::infinite();
  CHECK(inf.is_infinite());
  CHECK_THROWS_AS(inf.value(), ComputationError);
  CHECK(ldp::RateValue::finite(0.5).value() == 0.5);
  CHECK_THROWS_AS(ldp::RateValue::finite(-1.0), InvalidInputError);
}

TEST_CASE("rate function on explicit paths") {
  testutil::Rng rng(42);
  const Vector x0 = rng.direction(2);
  CHECK(ldp::rate_function(zero_cost_path(kDrift, x0, 6), kDrift, x0).value() == 0.0);

  // Single standard increment from the origin costs 1/2.
  const Path jump(1, {Vector(1), Vector{1.0}});
  CHECK(ldp::rate_function(jump, Matrix(1, 1), Vector(1)).value() == 0.5);

  // Wrong start point: infinite sentinel.
  CHECK(ldp::rate_function(jump, Matrix(1, 1), Vector{0.5}).is_infinite());

  CHECK_THROWS_AS(ldp::rate_function(jump, kDrift, Vector(2)), InvalidInputError);
}

TEST_CASE("scalar AR(n) rate function") {
  const std::vector<double> b = {0.5, 0.2};
  const std::vector<double> starts = {0.0, 0.0};

  // A path that follows the recursion costs nothing.
  std::vector<double> free_path = {0.0, 0.0};
  for (int t = 0; t < 5; ++t) {
    const std::size_t m = free_path.size();
    free_path.push_back(0.5 * free_path[m - 1] + 0.2 * free_path[m - 2]);
  }
  CHECK(ldp::rate_function_arn(free_path, b, starts).value() == 0.0);

  // Order 1 reduces to (1/2) sum (u_t - a u_{t-1})^2.
  const std::vector<double> u = {0.3, 0.1, -0.2, 0.5};
  double expected = 0.0;
  for (std::size_t t = 1; t < u.size(); ++t)
    expected += (u[t] - 0.7 * u[t - 1]) * (u[t] - 0.7 * u[t - 1]);
  expected *= 0.5;
  CHECK(ldp::rate_function_arn(u, {0.7}, {0.3}).value() ==
        doctest::Approx(expected).epsilon(1e-15));

  CHECK(ldp::rate_function_arn(u, {0.7}, {0.4}).is_infinite());
  CHECK_THROWS_AS(ldp::rate_function_arn({0.0}, b, starts), InvalidInputError);

  // Companion-embedded feasible path evaluates to the same action.
  const std::vector<double> scalar_path = {0.0, 0.0, 0.4, -0.1, 0.7, 0.2};
  std::vector<Vector> embedded;
  for (std::size_t t = 1; t < scalar_path.size(); ++t)
    embedded.push_back(Vector{scalar_path[t], scalar_path[t - 1]});
  const Path vec_path(2, embedded);
  const auto direct = ldp::rate_function_arn(scalar_path, b, starts);
  const auto through_embedding = ldp::rate_function(
      vec_path, process::companion_matrix(b), Vector(2));
  CHECK(direct.value() ==
        doctest::Approx(through_embedding.value()).epsilon(1e-14));
}

TEST_CASE("finite-horizon exponent in closed form") {
  // Sigma_1 = I: rate of a unit direction after one step is 1/2.
  const auto one_step =
      ldp::finite_horizon_exit_rate(Matrix(2, 2), kId2, Vector::unit(2, 0), 1);
  CHECK(one_step.exponent == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(one_step.horizon == 1);
  CHECK(one_step.exponent == 0.5 / one_step.quadratic_form);

  // Long horizons approach the asymptotic exponent.
  const auto late = ldp::finite_horizon_exit_rate(kDrift, kId2, kDiag, 200);
  CHECK(std::fabs(late.exponent - 81.0 / 2426.0) <= 1e-12);

  // Noise confined to coordinate 1 cannot reach a horizon-1 exit through e2.
  CHECK_THROWS_WITH_AS(
      ldp::finite_horizon_exit_rate(kDrift, testutil::e1e1t(2), Vector::unit(2, 1), 1),
      doctest::Contains("unreachable"), ComputationError);
  CHECK_THROWS_AS(ldp::finite_horizon_exit_rate(kDrift, kId2, Vector(2), 3),
                  InvalidInputError);
  CHECK_THROWS_AS(ldp::finite_horizon_exit_rate(kDrift, kId2, kDiag, 0),
                  InvalidInputError);
}

TEST_CASE("optimal exit path attains the closed form") {
  // One flat step straight to the boundary.
  const auto jump = ldp::optimal_exit_path(Matrix(1, 1), Matrix(1, 1, {1.0}),
                                           Vector{1.0}, 1);
  CHECK(jump.points.size() == 2);
  CHECK(jump.points[0][0] == 0.0);
  CHECK(jump.points[1][0] == 1.0);

  const std::size_t horizon = 10;
  const auto rate = ldp::finite_horizon_exit_rate(kDrift, kId2, kDiag, horizon);
  const Path& path = *rate.optimal_path;

  CHECK(std::fabs(std::fabs(dot(kDiag, path.points.back())) - 1.0) <= 1e-10);
  CHECK(std::fabs(ldp::rate_function(path, kDrift, Vector(2)).value() -
                  rate.exponent) <= 1e-10);

  // Extremality: every increment equals K (a^T)^{N-t} c entrywise.
  const double k = 1.0 / rate.quadratic_form;
  Vector weight = kDiag;  // (a^T)^{N-t} c, walked backwards from t = N
  for (std::size_t t = horizon; t >= 1; --t) {
    const Vector increment = path.points[t] - mat_vec(kDrift, path.points[t - 1]);
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(std::fabs(increment[i] - k * weight[i]) <= 1e-12);
    weight = mat_vec(transpose(kDrift), weight);
  }
}

TEST_CASE("optimal path of the embedded AR(n) keeps shift coordinates exact") {
  const Matrix companion = process::companion_matrix({0.5, 0.2, -0.1});
  const Matrix q = testutil::e1e1t(3);
  const auto path = ldp::optimal_exit_path(companion, q, Vector::unit(3, 0), 8);
  for (std::size_t t = 1; t < path.points.size(); ++t) {
    const Vector increment = path.points[t] - mat_vec(companion, path.points[t - 1]);
    CHECK(std::fabs(increment[1]) <= 1e-12);
    CHECK(std::fabs(increment[2]) <= 1e-12);
  }
}

TEST_CASE("asymptotic exponent matches closed forms") {
  const auto bivariate = ldp::asymptotic_exit_exponent(kDrift, kId2, kDiag);
  CHECK(std::fabs(bivariate.exponent - 81.0 / 2426.0) <= 1e-12);
  CHECK_FALSE(bivariate.horizon.has_value());
  CHECK_FALSE(bivariate.optimal_path.has_value());

  for (double a : {0.3, 0.5, 0.9}) {
    const auto scalar = ldp::asymptotic_exit_exponent(Matrix(1, 1, {a}),
                                                      Matrix(1, 1, {1.0}), Vector{1.0});
    CHECK(std::fabs(scalar.exponent - 0.5 * (1.0 - a * a)) <= 1e-12);
  }

  const auto direct = ldp::asymptotic_exit_exponent(Matrix(2, 2), kId2, Vector{1.0, 2.0});
  CHECK(direct.exponent == doctest::Approx(0.1).epsilon(1e-14));  // 1/(2 c^T c)

  CHECK_THROWS_WITH_AS(
      ldp::asymptotic_exit_exponent(Matrix(1, 1, {1.01}), Matrix(1, 1, {1.0}),
                                    Vector{1.0}),
      doctest::Contains("no stationary distribution"), ComputationError);
}

TEST_CASE("least-norm oracle basics") {
  CHECK(ldp::rate_infimum_oracle(Matrix(2, 2), kId2, Vector::unit(2, 0), 1) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // Scaling the direction by s scales every exponent by 1/s^2.
  const double base = ldp::rate_infimum_oracle(kDrift, kId2, kDiag, 6);
  for (double s : {2.0, -3.0, 0.5}) {
    const double scaled = ldp::rate_infimum_oracle(kDrift, kId2, s * kDiag, 6);
    CHECK(scaled == doctest::Approx(base / (s * s)).epsilon(1e-12));
    const auto closed = ldp::finite_horizon_exit_rate(kDrift, kId2, s * kDiag, 6);
    const auto closed_base = ldp::finite_horizon_exit_rate(kDrift, kId2, kDiag, 6);
    CHECK(closed.exponent ==
          doctest::Approx(closed_base.exponent / (s * s)).epsilon(1e-12));
  }

  CHECK_THROWS_WITH_AS(
      ldp::rate_infimum_oracle(kDrift, testutil::e1e1t(2), Vector::unit(2, 1), 1),
      doctest::Contains("unreachable"), ComputationError);
}

TEST_CASE("closed form agrees with the oracle on random instances") {
  testutil::Rng rng(505);
  for (int i = 0; i < 30; ++i) {
    const std::size_t d = 1 + i % 3;
    const std::size_t horizon = 1 + i % 10;
    const bool singular = (i % 2 == 1) && d > 1;
    const Matrix a = rng.stable(d, rng.uniform(0.15, 0.9));
    const Matrix q = singular ? testutil::e1e1t(d) : Matrix::identity(d);
    const Vector c = rng.direction(d, singular);

    const auto closed = ldp::finite_horizon_exit_rate(a, q, c, horizon);
    const double oracle = ldp::rate_infimum_oracle(a, q, c, horizon);
    CHECK(std::fabs(closed.exponent - oracle) <= 1e-8 * (1.0 + closed.exponent));
  }
}

TEST_CASE("optimal path beats random feasible perturbations") {
  testutil::Rng rng(606);
  for (const bool singular : {false, true}) {
    const Matrix a = rng.stable(2, 0.7);
    const Matrix q = singular ? testutil::e1e1t(2) : Matrix::identity(2);
    const Vector c = rng.direction(2, singular);
    const std::size_t horizon = 6;
    const auto best = ldp::finite_horizon_exit_rate(a, q, c, horizon);

    for (int trial = 0; trial < 100; ++trial) {
      // Random increments inside range(q), rescaled to touch the boundary.
      std::vector<Vector> points{Vector(2)};
      for (std::size_t t = 1; t <= horizon; ++t) {
        Vector z(2);
        z[0] = rng.uniform(-1.0, 1.0);
        if (!singular) z[1] = rng.uniform(-1.0, 1.0);
        points.push_back(mat_vec(a, points.back()) + z);
      }
      const double reach = dot(c, points.back());
      if (std::fabs(reach) < 1e-6) continue;
      for (auto& p : points) p = (1.0 / reach) * p;

      const double rate =
          ldp::rate_function(Path(2, points), a, Vector(2)).value();
      CHECK(rate >= best.exponent - 1e-10);
    }
  }
}

TEST_CASE("finite-horizon exponents decrease to the asymptotic limit") {
  testutil::Rng rng(707);
  for (int i = 0; i < 6; ++i) {
    const std::size_t d = 1 + i % 3;
    const Matrix a = rng.stable(d, rng.uniform(0.2, 0.9));
    const Matrix q = Matrix::identity(d);
    const Vector c = rng.direction(d);

    double previous = 1e300;
    for (std::size_t n = 1; n <= 30; ++n) {
      const double exponent = ldp::finite_horizon_exit_rate(a, q, c, n).exponent;
      CHECK(exponent <= previous + 1e-12);
      previous = exponent;
    }
    const double late = ldp::finite_horizon_exit_rate(a, q, c, 200).exponent;
    const double limit = ldp::asymptotic_exit_exponent(a, q, c).exponent;
    CHECK(std::fabs(late - limit) <= 1e-6);
  }
}

TEST_CASE("sidedness does not change the exponent") {
  const ldp::ExitSpec two(kDiag, ldp::Sidedness::two_sided, 1.0);
  const ldp::ExitSpec one(kDiag, ldp::Sidedness::one_sided, 1.0);
  CHECK(ldp::asymptotic_exit_exponent(kDrift, kId2, two).exponent ==
        ldp::asymptotic_exit_exponent(kDrift, kId2, one).exponent);
  CHECK(ldp::finite_horizon_exit_rate(kDrift, kId2, two, 5).exponent ==
        ldp::finite_horizon_exit_rate(kDrift, kId2, one, 5).exponent);

  // Levels fold into the direction: level h with direction c is c/h.
  const ldp::ExitSpec doubled(kDiag, ldp::Sidedness::two_sided, 2.0);
  const auto straight = ldp::asymptotic_exit_exponent(kDrift, kId2, 0.5 * kDiag);
  CHECK(ldp::asymptotic_exit_exponent(kDrift, kId2, doubled).exponent ==
        doctest::Approx(straight.exponent).epsilon(1e-15));
}

TEST_CASE("chernoff-type bound and matching lower-bound exponent") {
  // At N = 1 and eps^2 sigma2 = 1/(2 ln 2) the bound collapses to exactly 1.
  const double eps = std::sqrt(1.0 / (2.0 * std::log(2.0)));
  CHECK(ldp::chernoff_exit_probability_bound(1, eps, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Vanishing noise kills the bound.
  CHECK(ldp::chernoff_exit_probability_bound(100, 1e-3, 1.0) < 1e-100);

  // Linear growth in N.
  CHECK(ldp::chernoff_exit_probability_bound(20, 0.1, 5.0) ==
        doctest::Approx(2.0 * ldp::chernoff_exit_probability_bound(10, 0.1, 5.0))
            .epsilon(1e-14));

  CHECK_THROWS_AS(ldp::chernoff_exit_probability_bound(0, 0.1, 1.0), InvalidInputError);
  CHECK_THROWS_AS(ldp::chernoff_exit_probability_bound(10, 0.1, 0.0), InvalidInputError);

  CHECK(std::fabs(ldp::lower_bound_exponent(1213.0 / 81.0) - 81.0 / 2426.0) <= 1e-15);
  CHECK(ldp::lower_bound_exponent(1.0) == 0.5);
  CHECK(ldp::lower_bound_exponent(1.0 / (1.0 - 0.25)) ==
        doctest::Approx(0.375).epsilon(1e-15));
  CHECK_THROWS_AS(ldp::lower_bound_exponent(0.0), InvalidInputError);

  // The lower-bound exponent at sigma2 = c^T Sigma_inf c is the asymptotic one.
  const auto asym = ldp::asymptotic_exit_exponent(kDrift, kId2, kDiag);
  CHECK(ldp::lower_bound_exponent(asym.quadratic_form) == asym.exponent);
}

TEST_CASE("convergence horizon finds the first within-tolerance horizon") {
  const std::size_t n = ldp::convergence_horizon(kDrift, kId2, kDiag);
  CHECK(n < 100000);
  const double limit = ldp::asymptotic_exit_exponent(kDrift, kId2, kDiag).exponent;
  CHECK(std::fabs(ldp::finite_horizon_exit_rate(kDrift, kId2, kDiag, n).exponent -
                  limit) < 1e-9);
  REQUIRE(n > 1);
  CHECK(std::fabs(ldp::finite_horizon_exit_rate(kDrift, kId2, kDiag, n - 1).exponent -
                  limit) >= 1e-9);
}
