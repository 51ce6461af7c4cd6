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

#include <gtest/gtest.h>

#include <cmath>

#include "qclass/errors.hpp"
#include "qclass/machines.hpp"
#include "qclass/mixed.hpp"
#include "qclass/sdp.hpp"

using namespace qclass;

namespace {

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

sdp::SdpBlock scalar_block(int twice_m, double cost) {
  sdp::SdpBlock b;
  b.key = {{kHalf, kHalf}, twice_m};
  b.js = {h(2)};
  b.cost = Eigen::MatrixXd::Constant(1, 1, cost);
  return b;
}

sdp::BlockSdpProblem pure_problem(int n) { return solve_mixed_lm(n, 1.0).problem; }

}  // namespace

TEST(Sdp, PureOneCopyOptimum) {
  const auto sol = solve_mixed_lm(1, 1.0);
  EXPECT_NEAR(*sol.report.delta, 1.0 / std::sqrt(3.0), 1e-8);
  EXPECT_LE(sol.seed.gap, 1e-8);
  EXPECT_TRUE(verify_seed(sol.seed));
  EXPECT_LT(sdp::constraint_residual(sol.problem, sol.seed), 1e-8);
  EXPECT_GT(sdp::min_eigenvalue(sol.seed), -1e-9);

  // The m = 0 block is rank one along (1, sqrt 3).
  for (const auto& b : sol.seed.blocks) {
    if (b.key.twice_m != 0) continue;
    ASSERT_EQ(b.omega.rows(), 2);
    Eigen::Vector2d phi(1.0, std::sqrt(3.0));
    if (b.js[0] != h(0)) phi = Eigen::Vector2d(std::sqrt(3.0), 1.0);
    const Eigen::Matrix2d target = phi * phi.transpose();
    EXPECT_LT((b.omega.cwiseAbs() - target).cwiseAbs().maxCoeff(), 1e-4);
  }
}

TEST(Sdp, PureLimitMatchesClosedForm) {
  for (int n = 1; n <= 5; ++n) {
    const auto rep = mixed_lm_risk(n, 1.0);
    EXPECT_NEAR(rep.error_probability, lm_error(n), 1e-8) << n;
  }
}

TEST(Sdp, DiagonalReducesToLinearProgram) {
  // Row j = 1 spread over three m blocks: all weight goes to the largest cost.
  auto p = sdp::BlockSdpProblem::with_seed_constraints({scalar_block(-2, 0.2), scalar_block(0, 0.5), scalar_block(2, 0.1)});
  ASSERT_EQ(p.constraints.size(), 1u);
  EXPECT_NEAR(p.constraints[0].target, 3.0, 0.0);
  const auto s = sdp::solve(p);
  EXPECT_NEAR(s.objective, 1.5, 1e-7);
  EXPECT_NEAR(s.blocks[1].omega(0, 0), 3.0, 1e-6);
  EXPECT_NEAR(sdp::dual_bound(p, s), 1.5, 1e-7);
}

TEST(Sdp, DualBoundProperties) {
  const auto p = pure_problem(1);
  const auto s = sdp::solve(p);
  EXPECT_GE(sdp::dual_bound(p, s) - s.objective, -1e-12);
  EXPECT_LE(sdp::dual_bound(p, s) - s.objective, 1e-8);

  auto p2 = p;
  for (auto& b : p2.blocks) b.cost *= 2.0;
  const auto s2 = sdp::solve(p2);
  EXPECT_NEAR(sdp::dual_bound(p2, s2), 2.0 * sdp::dual_bound(p, s), 1e-7);

  auto p0 = p;
  for (auto& b : p0.blocks) b.cost.setZero();
  const auto s0 = sdp::solve(p0);
  EXPECT_NEAR(sdp::dual_bound(p0, s0), 0.0, 1e-9);
  EXPECT_NEAR(s0.objective, 0.0, 1e-9);
}

TEST(Sdp, MixedOneCopyMatchesOptimum) {
  const auto lm = mixed_lm_risk(1, 0.5);
  EXPECT_NEAR(lm.excess_risk, mixed_programmable_risk(1, 0.5).excess_risk, 1e-6);
}

TEST(Sdp, Validation) {
  auto p = sdp::BlockSdpProblem::with_seed_constraints({scalar_block(0, 1.0)});
  auto neg = p;
  neg.constraints[0].target = -1.0;
  EXPECT_THROW(sdp::solve(neg), InfeasibleError);
  auto zero = p;
  zero.constraints[0].target = 0.0;
  EXPECT_THROW(sdp::solve(zero), DomainError);

  sdp::SdpBlock asym;
  asym.key = {{kHalf, kHalf}, 0};
  asym.js = {h(0), h(2)};
  asym.cost = Eigen::Matrix2d{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_THROW(sdp::solve(sdp::BlockSdpProblem::with_seed_constraints({asym})), DomainError);

  auto missing = p;
  missing.constraints.clear();
  EXPECT_THROW(sdp::solve(missing), DomainError);

  EXPECT_THROW(sdp::solve(p, {0.0, 10}), DomainError);
  EXPECT_THROW(sdp::solve(p, {1e-8, 0}), DomainError);
}

TEST(Sdp, IterationCapRaisesSolverError) {
  const auto p = solve_mixed_lm(2, 0.6).problem;
  try {
    sdp::solve(p, {1e-12, 1});
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_GT(e.gap(), 0.0);
    EXPECT_TRUE(std::isfinite(e.best_objective()));
  }
}
