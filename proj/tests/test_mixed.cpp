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
#include <sstream>

#include "qclass/errors.hpp"
#include "qclass/machines.hpp"
#include "qclass/mixed.hpp"

using namespace qclass;

namespace {

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

// Optimal programmable error from per-sector trace norms, no recoupling shortcut.
double sector_route_error(int n, double r) {
  double delta = 0.0;
  for (const auto& wl : weighted_labels({n, r}))
    if (wl.p > 0.0) delta += wl.p * trace_norm(average_state_diff_mixed(wl.xi, r));
  return 0.5 * (1.0 - 0.5 * delta);
}

}  // namespace

TEST(Mixed, GammaPureLimit) {
  for (int n = 1; n <= 6; ++n)
    EXPECT_LT(gamma_up_mixed({h(n), h(n)}, 1.0).max_abs_diff(gamma_up_pure(n)), 1e-14) << n;
}

TEST(Mixed, GammaHandValue) {
  const auto g = gamma_up_mixed({kHalf, kHalf}, 0.5);
  EXPECT_NEAR(std::abs(g.sector(h(0)).matrix(0, 1)), 0.125 / 6.0, 1e-15);
}

TEST(Mixed, GammaIsConditionalDifference) {
  for (int tA = 0; tA <= 4; ++tA)
    for (int tC = 0; tC <= 4; ++tC)
      for (double r : {0.25, 0.6, 1.0}) {
        const BlockLabel xi{h(tA), h(tC)};
        const auto g = gamma_up_mixed(xi, r);
        EXPECT_NEAR(g.trace(), 0.0, 1e-14);
        EXPECT_LT(g.max_abs_diff(partial_trace_up(average_state_diff_mixed(xi, r))), 1e-14);
      }
}

TEST(Mixed, WeightedLabels) {
  for (int n = 1; n <= 10; ++n)
    for (double r : {0.2, 0.6, 1.0}) {
      const auto wl = weighted_labels({n, r});
      double s = 0.0;
      for (const auto& w : wl) s += w.p;
      EXPECT_NEAR(s, 1.0, 1e-12);
      for (std::size_t i = 1; i < wl.size(); ++i) EXPECT_LT(wl[i - 1].xi, wl[i].xi);
    }
}

TEST(Mixed, ProgrammableRisk) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_NEAR(mixed_programmable_risk(n, 1.0).error_probability, programmable_error_pure(n), 1e-12);
    for (double r : {0.15, 0.5, 0.85})
      EXPECT_NEAR(mixed_programmable_risk(n, r).error_probability, sector_route_error(n, r), 1e-12);
  }
  // Close to 1/2 - r/3 + 1/(3 r n) for large n.
  const double r = 0.8;
  EXPECT_LT(std::abs(mixed_programmable_risk(40, r).error_probability - (0.5 - r / 3.0 + 1.0 / (3.0 * r * 40))), 1e-3);
  EXPECT_THROW(mixed_programmable_risk(0, 0.5), DomainError);
  EXPECT_THROW(mixed_programmable_risk(2, 0.0), DomainError);
}

TEST(Mixed, OneCopyLearningMachineIsOptimal) {
  for (int k = 1; k <= 10; ++k) {
    const double r = 0.1 * k;
    EXPECT_NEAR(mixed_lm_risk(1, r).excess_risk, mixed_programmable_risk(1, r).excess_risk, 1e-6) << r;
  }
}

TEST(Mixed, LearningMachineBracket) {
  for (int n = 2; n <= 4; ++n)
    for (double r : {0.3, 0.7}) {
      const auto lm = mixed_lm_risk(n, r);
      const double opt = mixed_programmable_risk(n, r).excess_risk;
      EXPECT_GE(lm.excess_risk, opt - 1e-7);
      EXPECT_LE(lm.excess_risk, mixed_m0_seed_risk(n, r).excess_risk + 1e-7);
      ASSERT_TRUE(lm.solver_gap.has_value());
      EXPECT_LE(*lm.solver_gap, 1e-8);
    }
}

TEST(Mixed, RoptDecreasingInN) {
  for (int k = 0; k < 46; ++k) {
    const double r = 0.1 + 0.02 * k;
    for (int n = 2; n <= 5; ++n)
      EXPECT_LT(mixed_programmable_risk(n, r).excess_risk, mixed_programmable_risk(n - 1, r).excess_risk);
  }
}

TEST(Mixed, UnbalancedFactor) {
  EXPECT_NEAR(unbalanced_block_diff_asymptotic(30, 1.0, 0.0).factor, 1.0, 1e-15);
  const auto f = unbalanced_block_diff_asymptotic(50, 0.8, 0.0);
  EXPECT_NEAR(f.factor, 0.795, 1e-12);
  EXPECT_FALSE(f.expansion_suspect);
  EXPECT_TRUE(unbalanced_block_diff_asymptotic(4, 0.4, 0.0).expansion_suspect);
  for (double d : {0.0, 1.0, 2.0}) EXPECT_NEAR(unbalanced_block_ratio(50, 0.8, d), f.factor, 2e-3);
}

TEST(Mixed, Sweep) {
  SweepConfig c;
  c.n_max = 3;
  c.r_min = 0.4;
  c.steps = 4;
  c.threads = 1;
  const auto t1 = run_sweep(c);
  ASSERT_EQ(t1.rows.size(), 12u);
  EXPECT_EQ(t1.rows[0].n, 1);
  EXPECT_EQ(t1.rows[4].n, 2);
  EXPECT_NEAR(t1.rows[3].r, 1.0, 0.0);
  for (const auto& row : t1.rows) {
    EXPECT_FALSE(row.error.has_value());
    EXPECT_GE(row.rel_gap, -1e-7);
    if (row.n == 1) EXPECT_LE(row.rel_gap, 1e-6);
    if (row.r == 1.0) EXPECT_NEAR(row.R_opt, programmable_error_pure(row.n) - 1.0 / 6.0, 1e-12);
  }
  c.threads = 3;
  const auto t3 = run_sweep(c);
  std::ostringstream a, b;
  write_csv(t1, a);
  write_csv(t3, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "n,r,R_lm,R_opt,rel_gap,solver_gap");

  SweepConfig bad;
  bad.steps = 0;
  EXPECT_THROW(run_sweep(bad), DomainError);
  bad = SweepConfig{};
  bad.r_min = 0.0;
  EXPECT_THROW(run_sweep(bad), DomainError);
}
