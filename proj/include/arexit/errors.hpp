// Copyright (c) 2026 arexit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace arexit {

/// Rejected input: dimension mismatch, out-of-range parameter, malformed config.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request that cannot be computed: unstable model (no
/// stationary distribution), unreachable exit constraint, all paths censored.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace arexit
