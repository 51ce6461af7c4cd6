// Copyright 2026 The qclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qclass/blocks.hpp"

// Block SDP:
//   maximize   sum_b w_b tr(C_b X_b)
//   subject to X_b >= 0,
//              sum over blocks b of group xi, and rows a with js[a] == j,
//              of X_b[a, a] = target(xi, j).
namespace qclass::sdp {

struct BlockKey {
  BlockLabel xi;
  int twice_m = 0;
  auto operator<=>(const BlockKey&) const = default;
};

struct SdpBlock {
  BlockKey key;
  std::vector<HalfInteger> js;  // row labels
  Eigen::MatrixXd cost;
  double weight = 1.0;
};

struct SdpConstraint {
  BlockLabel xi;
  HalfInteger j;
  double target = 0.0;
};

struct BlockSdpProblem {
  std::vector<SdpBlock> blocks;
  std::vector<SdpConstraint> constraints;

  /// Constraints sum_m X[j,j] = 2j + 1 for every (xi, j) present in `blocks`.
  static BlockSdpProblem with_seed_constraints(std::vector<SdpBlock> blocks);

  /// Throws DomainError on malformed input (asymmetric costs, rows without a
  /// constraint, duplicate keys, non-positive weights).
  void validate() const;
};

struct SolverOptions {
  double tol = 1e-8;
  int max_iterations = 500;
};

struct SeedBlock {
  BlockKey key;
  std::vector<HalfInteger> js;
  Eigen::MatrixXd omega;
};

struct Seed {
  std::vector<SeedBlock> blocks;   // same order as the problem blocks
  double objective = 0.0;          // sum_b w_b tr(C_b Omega_b)
  double dual_bound = 0.0;
  double gap = 0.0;
  int iterations = 0;
  std::vector<double> multipliers;        // one per problem constraint
  std::vector<double> objective_history;  // primal objective after each step
};

/// Feasible-start primal-dual interior-point method (HKM direction). Groups
/// with different xi share no constraint and are solved one after another.
/// Throws SolverError when the gap stays above tol after max_iterations, and
/// InfeasibleError for negative targets.
Seed solve(const BlockSdpProblem& problem, const SolverOptions& options = {});

/// Upper bound on the optimum from the multipliers stored in `primal`, shifted
/// until the dual slack is PSD. Without multipliers a crude bound is used.
double dual_bound(const BlockSdpProblem& problem, const Seed& primal);

/// Largest |sum_m Omega[j,j] - target| over the problem constraints.
double constraint_residual(const BlockSdpProblem& problem, const Seed& seed);

/// Smallest eigenvalue over all seed blocks.
double min_eigenvalue(const Seed& seed);

}  // namespace qclass::sdp
