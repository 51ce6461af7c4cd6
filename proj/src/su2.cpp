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

#include "qclass/su2.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qclass/errors.hpp"

namespace qclass::su2 {

namespace {

constexpr int kFactorialTableSize = 1 << 15;

const std::vector<double>& factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kFactorialTableSize);
    t[0] = 0.0;
    for (int k = 1; k < kFactorialTableSize; ++k) t[k] = t[k - 1] + std::log(static_cast<double>(k));
    return t;
  }();
  return table;
}

// Factorial of a doubled non-negative integer argument.
double lf2(int twice) { return log_factorial(twice / 2); }

// log of the triangle coefficient sqrt((a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!),
// all arguments doubled.
double log_triangle(int a, int b, int c) {
  return 0.5 * (lf2(a + b - c) + lf2(a - b + c) + lf2(-a + b + c) - lf2(a + b + c + 2));
}

bool triad(int a, int b, int c) {
  return triangle(HalfInteger::from_twice(a), HalfInteger::from_twice(b), HalfInteger::from_twice(c));
}

}  // namespace

double log_factorial(int k) {
  if (k < 0 || k >= kFactorialTableSize)
    throw DomainError("log_factorial argument out of range: " + std::to_string(k));
  return factorial_table()[k];
}

int dim(int qubits) {
  if (qubits < 0) throw DomainError("dim: qubit count must be non-negative");
  return qubits + 1;
}

double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2,
                      HalfInteger J, HalfInteger M) {
  require_projection(j1, m1, "clebsch_gordan");
  require_projection(j2, m2, "clebsch_gordan");
  require_projection(J, M, "clebsch_gordan");
  if (m1 + m2 != M || !triangle(j1, j2, J)) return 0.0;

  const int a = j1.twice(), b = j2.twice(), c = J.twice();
  const int ma = m1.twice(), mb = m2.twice(), mc = M.twice();
  const double pre = 0.5 * std::log(static_cast<double>(c + 1)) + log_triangle(a, b, c) +
                     0.5 * (lf2(a + ma) + lf2(a - ma) + lf2(b + mb) + lf2(b - mb) + lf2(c + mc) + lf2(c - mc));

  // Summation bounds on k (doubled quantities are all even here).
  const int kmin = std::max({0, (b - c - ma) / 2, (a - c + mb) / 2});
  const int kmax = std::min({(a + b - c) / 2, (a - ma) / 2, (b + mb) / 2});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double denom = log_factorial(k) + log_factorial((a + b - c) / 2 - k) + log_factorial((a - ma) / 2 - k) +
                         log_factorial((b + mb) / 2 - k) + log_factorial((c - b + ma) / 2 + k) +
                         log_factorial((c - a - mb) / 2 + k);
    const double term = std::exp(pre - denom);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

double wigner_6j(HalfInteger j1, HalfInteger j2, HalfInteger j12, HalfInteger j3,
                 HalfInteger J, HalfInteger j23) {
  for (HalfInteger j : {j1, j2, j12, j3, J, j23}) require_angular_momentum(j, "wigner_6j");
  const int a = j1.twice(), b = j2.twice(), c = j12.twice();
  const int d = j3.twice(), e = J.twice(), f = j23.twice();
  if (!triad(a, b, c) || !triad(a, e, f) || !triad(d, b, f) || !triad(d, e, c)) return 0.0;

  const double pre = log_triangle(a, b, c) + log_triangle(a, e, f) + log_triangle(d, b, f) + log_triangle(d, e, c);
  const int s1 = (a + b + c) / 2, s2 = (a + e + f) / 2, s3 = (d + b + f) / 2, s4 = (d + e + c) / 2;
  const int q1 = (a + b + d + e) / 2, q2 = (b + c + e + f) / 2, q3 = (a + c + d + f) / 2;
  const int tmin = std::max({s1, s2, s3, s4});
  const int tmax = std::min({q1, q2, q3});
  double sum = 0.0;
  for (int t = tmin; t <= tmax; ++t) {
    const double l = log_factorial(t + 1) - log_factorial(t - s1) - log_factorial(t - s2) - log_factorial(t - s3) -
                     log_factorial(t - s4) - log_factorial(q1 - t) - log_factorial(q2 - t) - log_factorial(q3 - t);
    const double term = std::exp(pre + l);
    sum += (t % 2 == 0) ? term : -term;
  }
  return sum;
}

bool CouplingScheme::valid(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger J) const {
  if (order == Order::ac_b) return triangle(j1, j2, intermediate) && triangle(intermediate, j3, J);
  return triangle(j2, j3, intermediate) && triangle(j1, intermediate, J);
}

double recoupling(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger J,
                  const CouplingScheme& from, const CouplingScheme& to) {
  if (!from.valid(j1, j2, j3, J) || !to.valid(j1, j2, j3, J)) return 0.0;
  if (from.order == to.order) return from.intermediate == to.intermediate ? 1.0 : 0.0;

  const CouplingScheme& left = from.order == CouplingScheme::Order::ac_b ? from : to;
  const CouplingScheme& right = from.order == CouplingScheme::Order::ac_b ? to : from;
  const HalfInteger j12 = left.intermediate, j23 = right.intermediate;
  const int phase_twice = j1.twice() + j2.twice() + j3.twice() + J.twice();
  const double phase = ((phase_twice / 2) % 2 == 0) ? 1.0 : -1.0;
  // The coefficient is real, so <from|to> = <to|from>.
  return phase * std::sqrt(static_cast<double>((j12.twice() + 1) * (j23.twice() + 1))) *
         wigner_6j(j1, j2, j12, j3, J, j23);
}

double recoupling_overlap(int n, HalfInteger j, Sign sign) {
  if (n < 0) throw DomainError("recoupling_overlap: n must be non-negative");
  if (!j.is_integer() || j.twice() < 0 || j.twice() > 2 * n)
    throw DomainError("recoupling_overlap: j_AC must be an integer in [0, n], got " + j.str());
  const HalfInteger J = sign == Sign::plus ? j + kHalf : j - kHalf;
  if (J.twice() < 1) throw DomainError("recoupling_overlap: J = j - 1/2 is out of range for j = 0");
  const double s = sign == Sign::plus ? 1.0 : -1.0;
  return std::sqrt((n + 1.5 + s * (j.value() + 0.5)) / (2.0 * (n + 1)));
}

namespace {

void require_block(int n, HalfInteger j, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + ": n must be non-negative");
  if (j.twice() < 0 || j.twice() > n || (n - j.twice()) % 2 != 0)
    throw DomainError(std::string(what) + ": j=" + j.str() + " incompatible with n=" + std::to_string(n));
}

}  // namespace

std::int64_t multiplicity(int n, HalfInteger j) {
  require_block(n, j, "multiplicity");
  if (n > 62) throw DomainError("multiplicity: n > 62 overflows 64-bit integers; use log_multiplicity");
  const int k = (n - j.twice()) / 2;
  auto binom = [n](int r) -> std::int64_t {
    if (r < 0) return 0;
    unsigned __int128 c = 1;
    for (int i = 0; i < r; ++i) c = c * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
    return static_cast<std::int64_t>(c);
  };
  // C(n,k) (2j+1)/(n/2+j+1) = C(n,k) - C(n,k-1).
  return binom(k) - binom(k - 1);
}

double log_multiplicity(int n, HalfInteger j) {
  require_block(n, j, "log_multiplicity");
  const int k = (n - j.twice()) / 2;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k) + std::log(j.twice() + 1.0) -
         std::log(0.5 * n + j.value() + 1.0);
}

}  // namespace qclass::su2
