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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qclass/blocks.hpp"
#include "qclass/sdp.hpp"

namespace qclass {

enum class MachineId { opt, lm, ed_continuous, ed_n1, reversed };
enum class Method { closed_form, sdp, oracle };

std::string to_string(MachineId id);
std::string to_string(Method m);

struct MachineReport {
  MachineId machine = MachineId::opt;
  int n = 0;
  std::optional<int> nA, nC;
  double r = 1.0;
  double error_probability = 0.5;
  double excess_risk = 0.0;
  Method method = Method::closed_form;
  std::optional<double> delta;       // bias Delta, when the machine has one
  std::optional<double> solver_gap;  // SDP duality gap
};

/// Builds a report; excess_risk = error - baseline_error(r).
MachineReport make_report(MachineId id, int n, double r, double error, Method method);

/// Helstrom error for two known states of purity r, Haar-averaged: 1/2 - r/3.
double baseline_error(double r);

/// Optimal programmable discriminator, pure states, n copies per class.
double programmable_error_pure(int n);
/// 1/6 + 1/(3n).
double programmable_error_asymptotic(int n);
/// Unbalanced training sets (nA, 1, nC); symmetric in nA, nC.
double programmable_error_unbalanced(int nA, int nC);
/// 1/6 (1 + 1/nA + 1/nC).
double programmable_error_unbalanced_asymptotic(int nA, int nC);

/// m = 0 seed state in the coupled |j,0> basis of A and C, j = 0..n.
struct SeedVector {
  int n = 0;
  std::vector<double> coefficients;
};

SeedVector lm_seed(int n);
/// Completeness: |coefficient_j|^2 = 2j + 1 for every j.
bool verify_seed(const SeedVector& seed, double tol = 1e-10);
/// Completeness per (xi, j) plus positivity (eigenvalues >= -1e-9).
bool verify_seed(const sdp::Seed& seed, double tol = 1e-10);

/// (J_z^A - J_z^C) / (d_n^2 d_{n+1}) in the coupled basis of A and C.
BlockOperator gamma_up_pure(int n);

/// 2 <phi0|Gamma_up|phi0>.
double lm_delta(int n);
/// Amplitudes of the projected seed on |j - 1/2, 1/2> in the A(CB) basis,
/// j = 1..n+1.
std::vector<double> lm_projection_coefficients(int n);
/// LM error from the seed overlap; cross-checked against the projection
/// norms. Throws IntegrityError if the two disagree by more than 1e-10.
double lm_error(int n);
/// The projection-norm path alone.
double lm_error_projection(int n);

/// Continuous covariant estimation POVMs on both training sets.
double ed_shrink_factor(int n);
double ed_delta_continuous(int n);
double ed_error_continuous(int n);

/// One outcome of an estimation POVM: probability and estimated Bloch vector.
struct BlochOutcome {
  double probability = 0.0;
  std::array<double, 3> direction{0.0, 0.0, 1.0};
};

/// sum_{alpha,i} p_alpha p'_i |eta s_alpha - eta s'_i|.
double ed_delta(const std::vector<BlochOutcome>& M, const std::vector<BlochOutcome>& Mprime, double eta);

/// Best E&D machine for n = 1: M = {[up],[down]}, M' = {[+],[-]}.
double ed_delta_n1_optimal();
double ed_error_n1_optimal();

/// Data qubit measured first: 1/2 (1 - n / (6 (n + 1))).
double reversed_lm_error(int n);

/// log2(2 (n+1) (2n+1)).
double memory_bound_bits(int n);

}  // namespace qclass
