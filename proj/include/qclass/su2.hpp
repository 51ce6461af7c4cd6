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

#include <cstdint>

#include "qclass/half_integer.hpp"

// SU(2) coupling coefficients in the Condon-Shortley convention.
//
// All functions are pure and thread-safe. Quantum numbers are HalfInteger
// values; coefficients are evaluated in double precision from a table of
// log-factorials, which stays accurate for the angular momenta used here
// (j up to a few hundred).
namespace qclass::su2 {

/// Dimension d_m = m + 1 of the symmetric subspace of m qubits.
int dim(int qubits);

/// <J M | j1 m1; j2 m2>. Selection-rule violations (M != m1 + m2, triangle
/// failure) give 0; malformed quantum numbers throw DomainError.
double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2,
                      HalfInteger J, HalfInteger M);

/// {j1 j2 j12; j3 J j23} by the Racah formula; 0 when any triad fails the
/// triangle rule.
double wigner_6j(HalfInteger j1, HalfInteger j2, HalfInteger j12, HalfInteger j3,
                 HalfInteger J, HalfInteger j23);

/// How three momenta (j1, j2, j3) are coupled to a total J.
struct CouplingScheme {
  enum class Order {
    ac_b,  // (j1 j2) j12, j3
    a_cb,  // j1, (j2 j3) j23
  };
  Order order = Order::ac_b;
  HalfInteger intermediate;

  /// Triangle rule of the intermediate with its two constituents and with the
  /// remaining momentum and J.
  bool valid(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger J) const;
};

/// Overlap <from; J M | to; J M> between two coupled bases of (j1, j2, j3).
/// Independent of M. Returns 0 when either scheme is invalid.
double recoupling(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger J,
                  const CouplingScheme& from, const CouplingScheme& to);

enum class Sign { plus, minus };

/// |<J M|_{A(CB)} |J M>_{(AC)B}| for j_A = j_C = n/2, j_B = 1/2, j_AC = j,
/// j_CB = n/2 + 1/2 and J = j +/- 1/2:
///   sqrt((n + 3/2 +/- (j + 1/2)) / (2 (n + 1))).
/// Throws DomainError when j is not an integer in [0, n] or J < 1/2.
double recoupling_overlap(int n, HalfInteger j, Sign sign);

/// Multiplicity of spin j in n qubits: C(n, n/2 - j) (2j+1) / (n/2 + j + 1).
/// Exact for n <= 62; throws DomainError on parity mismatch or overflow.
std::int64_t multiplicity(int n, HalfInteger j);

/// log of multiplicity(n, j), valid for any n the factorial table covers.
double log_multiplicity(int n, HalfInteger j);

/// log(k!) from an immutable table (k < 32768).
double log_factorial(int k);

}  // namespace qclass::su2
