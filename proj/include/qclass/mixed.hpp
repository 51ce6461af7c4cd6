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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qclass/blocks.hpp"
#include "qclass/machines.hpp"
#include "qclass/sdp.hpp"

namespace qclass {

/// Gamma_up restricted to block xi, in the coupled basis of A and C.
BlockOperator gamma_up_mixed(const BlockLabel& label, const SpectrumParams& params);
BlockOperator gamma_up_mixed(const BlockLabel& label, double r);

struct WeightedLabel {
  BlockLabel xi;
  double p = 0.0;  // p_jA p_jC
};

/// All xi for n copies per class, jA outer and jC inner, both ascending.
std::vector<WeightedLabel> weighted_labels(const SpectrumParams& params);

/// Helstrom bound from the block trace-norm sum.
MachineReport mixed_programmable_risk(int n, double r);

struct MixedLmSolution {
  MachineReport report;
  sdp::BlockSdpProblem problem;
  sdp::Seed seed;
};

/// LM error from the block SDP. Blocks with p_xi == 0 are left out.
MixedLmSolution solve_mixed_lm(int n, double r, const sdp::SolverOptions& options = {});
MachineReport mixed_lm_risk(int n, double r, const sdp::SolverOptions& options = {});

/// LM error with the m = 0 seed sqrt(2j+1)|j,0> in every block. A feasible
/// seed, so its error bounds the optimal LM error from above.
MachineReport mixed_m0_seed_risk(int n, double r);

struct UnbalancedFactor {
  double factor = 1.0;        // r (1 - (1 - r) / (n r^2))
  bool expansion_suspect = false;  // n r^2 <= 1
};

/// Prefactor of sigma_{0,xi} - sigma_{1,xi} ~ factor (sigma^{rn}_0 - sigma^{rn}_1)
/// at xi near (r nA / 2, r nC / 2), nA/C = n +/- delta sqrt(n). Independent of
/// delta at this order.
UnbalancedFactor unbalanced_block_diff_asymptotic(int n, double r, double delta);

/// Exact ||sigma_{0,xi} - sigma_{1,xi}||_1 / ||sigma^{m}_0 - sigma^{m}_1||_1 with
/// m = round(r n) and xi the admissible label closest to (r nA/2, r nC/2).
double unbalanced_block_ratio(int n, double r, double delta);

struct SweepConfig {
  int n_min = 1;
  int n_max = 5;
  double r_min = 0.1;
  double r_max = 1.0;
  int steps = 46;
  sdp::SolverOptions solver;
  int threads = 0;  // 0: hardware concurrency

  void validate() const;
  std::vector<double> r_grid() const;
};

struct SweepRow {
  int n = 0;
  double r = 0.0;
  double R_lm = 0.0;
  double R_opt = 0.0;
  double rel_gap = 0.0;
  double solver_gap = 0.0;
  std::optional<std::string> error;  // solver failure at this point
};

struct SweepTable {
  SweepConfig config;
  std::vector<SweepRow> rows;  // n outer, r inner
};

/// Evaluates every grid point; output order is independent of thread count.
SweepTable run_sweep(const SweepConfig& config);

/// Header `n,r,R_lm,R_opt,rel_gap,solver_gap`; 17 significant digits.
void write_csv(const SweepTable& table, std::ostream& out);

}  // namespace qclass
