// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "arexit/matcore.hpp"
#include "test_util.hpp"

using namespace arexit;
using matcore::Matrix;
using matcore::Vector;

namespace {

const Matrix kDrift(2, 2, {0.8, 1.0, 0.0, 0.5});

}  // namespace

TEST_CASE("matrix and vector invariants are enforced") {
  CHECK_THROWS_AS(Matrix(0, 1), InvalidInputError);
  CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), InvalidInputError);
  CHECK_THROWS_AS(Matrix(1, 1, {std::nan("")}), InvalidInputError);
  CHECK_THROWS_AS(Vector(std::vector<double>{}), InvalidInputError);
  CHECK_THROWS_AS(Vector({1.0, INFINITY}), InvalidInputError);
  CHECK(Vector(3).is_zero());
  CHECK_FALSE(Vector{0.0, 0.5}.is_zero());
}

TEST_CASE("mat_mul matches hand products") {
  const Matrix id = Matrix::identity(2);
  const Matrix prod = mat_mul(id, kDrift);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(prod(i, j) == kDrift(i, j));

  // [[0.8,1],[0,0.5]]^2 worked out by hand.
  const Matrix sq = mat_mul(kDrift, kDrift);
  CHECK(sq(0, 0) == doctest::Approx(0.64).epsilon(1e-15));
  CHECK(sq(0, 1) == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(sq(1, 0) == 0.0);
  CHECK(sq(1, 1) == doctest::Approx(0.25).epsilon(1e-15));

  const Matrix zero(2, 2);
  CHECK(matcore::max_abs(mat_mul(kDrift, zero)) == 0.0);
  CHECK_THROWS_AS(mat_mul(Matrix(2, 3), Matrix(2, 3)), InvalidInputError);
}

TEST_CASE("spectral radius handles real and complex spectra") {
  CHECK(matcore::spectral_radius(kDrift) == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(matcore::spectral_radius(Matrix(3, 3)) == 0.0);
  CHECK(matcore::spectral_radius(Matrix(2, 2, {0.3, 0.0, 0.0, -0.9})) ==
        doctest::Approx(0.9).epsilon(1e-12));
  // Rotation-like matrix: complex pair of modulus 0.7.
  CHECK(matcore::spectral_radius(Matrix(2, 2, {0.0, -0.7, 0.7, 0.0})) ==
        doctest::Approx(0.7).epsilon(1e-9));
  CHECK_THROWS_AS(matcore::spectral_radius(Matrix(2, 3)), InvalidInputError);

  testutil::Rng rng(101);
  for (int i = 0; i < 20; ++i) {
    const Matrix a = rng.stable(1 + i % 5, rng.uniform(0.1, 0.9));
    CHECK(std::fabs(matcore::spectral_radius(a) -
                    matcore::spectral_radius(transpose(a))) <= 1e-8);
  }
}

TEST_CASE("discrete Lyapunov solve reproduces the known stationary covariance") {
  const Matrix sigma = matcore::solve_discrete_lyapunov(kDrift, Matrix::identity(2));
  CHECK(std::fabs(sigma(0, 0) - 925.0 / 81.0) <= 1e-10);
  CHECK(std::fabs(sigma(0, 1) - 10.0 / 9.0) <= 1e-10);
  CHECK(std::fabs(sigma(1, 0) - 10.0 / 9.0) <= 1e-10);
  CHECK(std::fabs(sigma(1, 1) - 12.0 / 9.0) <= 1e-10);
}

TEST_CASE("discrete Lyapunov solve edge cases") {
  const Matrix id3 = Matrix::identity(3);
  const Matrix sigma = matcore::solve_discrete_lyapunov(Matrix(3, 3), id3);
  CHECK(matcore::max_abs(subtract(sigma, id3)) <= 1e-14);

  const Matrix scalar =
      matcore::solve_discrete_lyapunov(Matrix(1, 1, {0.5}), Matrix(1, 1, {1.0}));
  CHECK(scalar(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

  CHECK_THROWS_WITH_AS(
      matcore::solve_discrete_lyapunov(Matrix(1, 1, {1.0}), Matrix(1, 1, {1.0})),
      doctest::Contains("no stationary distribution"), ComputationError);
  CHECK_THROWS_AS(matcore::solve_discrete_lyapunov(kDrift, Matrix::identity(3)),
                  InvalidInputError);
  CHECK_THROWS_AS(
      matcore::solve_discrete_lyapunov(kDrift, Matrix(2, 2, {1, 0.5, 0, 1})),
      InvalidInputError);
}

TEST_CASE("series oracle agrees with the direct solver") {
  const Matrix direct = matcore::solve_discrete_lyapunov(kDrift, Matrix::identity(2));
  const Matrix series =
      matcore::lyapunov_series_oracle(kDrift, Matrix::identity(2), 1e-12);
  CHECK(matcore::max_abs(subtract(direct, series)) <= 1e-10);

  // a = 0 converges after the first increment.
  const Matrix q(2, 2, {2.0, 0.25, 0.25, 1.0});
  CHECK(matcore::max_abs(subtract(
            matcore::lyapunov_series_oracle(Matrix(2, 2), q, 1e-12), q)) == 0.0);

  // Scalar geometric series 1/(1 - 0.81).
  const Matrix geo =
      matcore::lyapunov_series_oracle(Matrix(1, 1, {0.9}), Matrix(1, 1, {1.0}), 1e-12);
  CHECK(geo(0, 0) == doctest::Approx(1.0 / 0.19).epsilon(1e-10));

  CHECK_THROWS_AS(
      matcore::lyapunov_series_oracle(Matrix(1, 1, {1.05}), Matrix(1, 1, {1.0}), 1e-12),
      ComputationError);
  CHECK_THROWS_AS(matcore::lyapunov_series_oracle(kDrift, Matrix::identity(2), 0.0),
                  InvalidInputError);
}

TEST_CASE("solver and oracle agree on random stable instances") {
  testutil::Rng rng(202);
  const std::size_t dims[] = {1, 2, 3, 5};
  for (int i = 0; i < 40; ++i) {
    const std::size_t d = dims[i % 4];
    const Matrix a = rng.stable(d, rng.uniform(0.1, 0.93));
    const Matrix q = (i % 2 == 0) ? Matrix::identity(d) : testutil::e1e1t(d);

    const Matrix direct = matcore::solve_discrete_lyapunov(a, q);
    const Matrix series = matcore::lyapunov_series_oracle(a, q, 1e-12);
    CHECK(matcore::max_abs(subtract(direct, series)) <= 1e-8);

    const Matrix residual =
        subtract(direct, add(mat_mul(mat_mul(a, direct), transpose(a)), q));
    CHECK(matcore::max_abs(residual) <= 1e-10 * (1.0 + matcore::max_abs(direct)));
    CHECK(matcore::is_symmetric(direct, 1e-12));

    for (int k = 0; k < 5; ++k) {
      const Vector v = rng.direction(d);
      CHECK(matcore::quadratic_form(v, direct) >= -1e-10);
    }
  }
}
