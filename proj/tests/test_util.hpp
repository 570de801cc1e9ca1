// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "arexit/matcore.hpp"

// Deterministic random instances for property-style tests.
namespace testutil {

using arexit::matcore::Matrix;
using arexit::matcore::Vector;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }

  // Random dense matrix rescaled to the requested spectral radius.
  Matrix stable(std::size_t d, double target_radius) {
    for (;;) {
      std::vector<double> entries(d * d);
      for (auto& v : entries) v = uniform(-1.0, 1.0);
      Matrix m(d, d, entries);
      const double rho = arexit::matcore::spectral_radius(m);
      if (rho < 1e-8) continue;
      return arexit::matcore::scale(target_radius / rho, m);
    }
  }

  Vector direction(std::size_t d, bool nonzero_first_coordinate = false) {
    for (;;) {
      std::vector<double> entries(d);
      for (auto& v : entries) v = uniform(-2.0, 2.0);
      Vector c(entries);
      if (arexit::matcore::max_abs(c) < 0.1) continue;
      if (nonzero_first_coordinate && std::abs(c[0]) < 0.1) continue;
      return c;
    }
  }
};

inline Matrix e1e1t(std::size_t d) {
  const Vector e1 = Vector::unit(d, 0);
  return arexit::matcore::outer(e1, e1);
}

}  // namespace testutil
