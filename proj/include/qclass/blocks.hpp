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

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "qclass/half_integer.hpp"

namespace qclass {

/// n copies of a qubit state with Bloch-vector length r.
struct SpectrumParams {
  int n = 1;
  double r = 1.0;

  void validate() const;
};

/// One spin-j block of rho^{(x)n}: rho_j = sum_m a_m |j,m><j,m|, weight p.
struct BlockWeights {
  HalfInteger j;
  std::vector<double> a;  // m = -j .. j
  double c = 1.0;
  double p = 0.0;
};

/// xi = {jA, jC}.
struct BlockLabel {
  HalfInteger jA;
  HalfInteger jC;

  void validate() const;
  void validate_for(int n) const;
  auto operator<=>(const BlockLabel&) const = default;
};

/// A coupled basis vector. Two-system operators (A and C coupled) use
/// intermediate == total == j. Three-system operators are written in the
/// (AC)B basis: intermediate = j_AC, total = J.
struct BasisState {
  HalfInteger intermediate;
  HalfInteger total;
  bool operator==(const BasisState&) const = default;
};

struct Sector {
  std::vector<BasisState> basis;
  Eigen::MatrixXd matrix;
};

enum class BlockKind { two_system, three_system };

/// Real symmetric operator stored per total-M sector of a coupled basis.
/// Sectors are keyed by 2M. Immutable after construction.
class BlockOperator {
 public:
  BlockOperator(BlockLabel label, BlockKind kind, std::map<int, Sector> sectors);

  const BlockLabel& label() const { return label_; }
  BlockKind kind() const { return kind_; }
  const std::map<int, Sector>& sectors() const { return sectors_; }
  const Sector& sector(HalfInteger M) const;

  double trace() const;
  BlockOperator scaled(double factor) const;
  BlockOperator operator-(const BlockOperator& other) const;
  /// Max |a_ij - b_ij| over all sectors; throws DomainError if layouts differ.
  double max_abs_diff(const BlockOperator& other) const;

 private:
  BlockLabel label_;
  BlockKind kind_;
  std::map<int, Sector> sectors_;
};

std::vector<BlockWeights> block_weights(const SpectrumParams& params);

/// Sum_m m a_m^j.
double jz_expectation(HalfInteger j, double r);

enum class Subsystem { A, C };

/// J_z of A (or C) in the coupled |j,m> basis of A and C.
BlockOperator coupled_jz(const BlockLabel& label, Subsystem which);

/// sigma_0 - sigma_1 for pure training states, label (n/2, n/2).
BlockOperator average_state_diff_pure(int n);

/// sigma_{0,xi} - sigma_{1,xi} in the (AC)B coupled basis.
BlockOperator average_state_diff_mixed(const BlockLabel& label, const SpectrumParams& params);
/// Same without tying the label to a common n (unbalanced training sets).
BlockOperator average_state_diff_mixed(const BlockLabel& label, double r);

/// tr_B([up] X) for a three-system operator X, as a two-system operator.
BlockOperator partial_trace_up(const BlockOperator& op);

/// Sum over sectors of sum |eigenvalues|. Sectors are symmetrized first;
/// asymmetry above 1e-10 throws IntegrityError.
double trace_norm(const BlockOperator& op);

/// ||sigma_{0,xi} - sigma_{1,xi}||_1 from 2x2 blocks per total J built with
/// 6j recoupling; no per-sector matrices are formed.
double block_diff_trace_norm(const BlockLabel& label, double r);

/// Continuum density p_n(x) of x = 2j/n from Stirling's approximation.
double asymptotic_block_distribution(int n, double r, double x);

/// Dense matrix in the uncoupled basis. Index ordering: A outer, then C,
/// then B for three-system operators; within each factor m runs from +j down.
Eigen::MatrixXd to_product_basis(const BlockOperator& op);

}  // namespace qclass
