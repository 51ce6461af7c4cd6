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

#include "qclass/machines.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qclass/errors.hpp"
#include "qclass/su2.hpp"

namespace qclass {

namespace {

void require_n(int n, int min, const char* what) {
  if (n < min) throw DomainError(std::string(what) + " requires n >= " + std::to_string(min) + ", got " + std::to_string(n));
}

double from_delta(double delta) { return 0.5 * (1.0 - 0.5 * delta); }

}  // namespace

std::string to_string(MachineId id) {
  switch (id) {
    case MachineId::opt: return "opt";
    case MachineId::lm: return "lm";
    case MachineId::ed_continuous: return "ed_continuous";
    case MachineId::ed_n1: return "ed_n1";
    case MachineId::reversed: return "reversed";
  }
  return "unknown";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::sdp: return "sdp";
    case Method::oracle: return "oracle";
  }
  return "unknown";
}

MachineReport make_report(MachineId id, int n, double r, double error, Method method) {
  MachineReport rep;
  rep.machine = id;
  rep.n = n;
  rep.r = r;
  rep.error_probability = error;
  rep.excess_risk = error - baseline_error(r);
  rep.method = method;
  return rep;
}

double baseline_error(double r) {
  SpectrumParams{0, r}.validate();
  return 0.5 - r / 3.0;
}

double programmable_error_pure(int n) {
  require_n(n, 0, "programmable_error_pure");
  const double d = n + 1.0, d1 = n + 2.0;
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s += k * std::sqrt(d * d - static_cast<double>(k) * k);
  return 0.5 - s / (d * d * d1);
}

double programmable_error_asymptotic(int n) {
  require_n(n, 1, "programmable_error_asymptotic");
  return 1.0 / 6.0 + 1.0 / (3.0 * n);
}

double programmable_error_unbalanced(int nA, int nC) {
  if (nA < 0 || nC < 0) throw DomainError("programmable_error_unbalanced requires non-negative copy numbers");
  if (nA < nC) std::swap(nA, nC);
  const double a = nA, c = nC;
  const double D0 = (a + 2.0) * (c + 1.0), D1 = (a + 1.0) * (c + 2.0);
  const double f = 4.0 * D0 * D1 / ((D0 + D1) * (D0 + D1));
  double s = 0.0;
  for (int k = 0; k <= nC; ++k) {
    const double arg = 1.0 - f * (a - c + k + 1.0) * (k + 1.0) / ((a + 1.0) * (c + 1.0));
    s += (a - c + 2.0 * k + 2.0) * std::sqrt(std::max(0.0, arg));
  }
  return 0.25 * (1.0 + D0 / D1 - (D0 + D1) / (D0 * D1) * s);
}

double programmable_error_unbalanced_asymptotic(int nA, int nC) {
  if (nA < 1 || nC < 1) throw DomainError("asymptotic form requires nA, nC >= 1");
  return (1.0 + 1.0 / nA + 1.0 / nC) / 6.0;
}

SeedVector lm_seed(int n) {
  require_n(n, 1, "lm_seed");
  SeedVector s{n, {}};
  for (int j = 0; j <= n; ++j) s.coefficients.push_back(std::sqrt(2.0 * j + 1.0));
  return s;
}

bool verify_seed(const SeedVector& seed, double tol) {
  if (seed.n < 0 || seed.coefficients.size() != static_cast<std::size_t>(seed.n + 1)) return false;
  for (int j = 0; j <= seed.n; ++j) {
    const double c = seed.coefficients[static_cast<std::size_t>(j)];
    if (!(std::abs(c * c - (2.0 * j + 1.0)) <= tol)) return false;
  }
  return true;
}

bool verify_seed(const sdp::Seed& seed, double tol) {
  std::map<std::pair<BlockLabel, int>, double> sums;
  for (const auto& blk : seed.blocks) {
    if (blk.omega.rows() != static_cast<Eigen::Index>(blk.js.size())) return false;
    for (std::size_t a = 0; a < blk.js.size(); ++a)
      sums[{blk.key.xi, blk.js[a].twice()}] += blk.omega(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a));
  }
  for (const auto& [key, v] : sums)
    if (!(std::abs(v - (key.second + 1.0)) <= tol)) return false;
  return seed.blocks.empty() || sdp::min_eigenvalue(seed) >= -1e-9;
}

BlockOperator gamma_up_pure(int n) {
  require_n(n, 1, "gamma_up_pure");
  const HalfInteger j = HalfInteger::from_twice(n);
  const BlockLabel label{j, j};
  const double d = n + 1.0, d1 = n + 2.0;
  return (coupled_jz(label, Subsystem::A) - coupled_jz(label, Subsystem::C)).scaled(1.0 / (d * d * d1));
}

double lm_delta(int n) {
  const BlockOperator gamma = gamma_up_pure(n);
  const Sector& s0 = gamma.sector(HalfInteger{});
  const SeedVector seed = lm_seed(n);
  Eigen::VectorXd phi(static_cast<Eigen::Index>(s0.basis.size()));
  for (std::size_t k = 0; k < s0.basis.size(); ++k) {
    const int j = s0.basis[k].total.twice() / 2;
    phi(static_cast<Eigen::Index>(k)) = seed.coefficients[static_cast<std::size_t>(j)];
  }
  return 2.0 * phi.dot(s0.matrix * phi);
}

std::vector<double> lm_projection_coefficients(int n) {
  require_n(n, 1, "lm_projection_coefficients");
  const double d = n + 1.0;
  std::vector<double> c;
  for (int j = 1; j <= n + 1; ++j) c.push_back(std::sqrt(j) * (std::sqrt(d + j) - std::sqrt(d - j)) / std::sqrt(2.0 * d));
  return c;
}

double lm_error_projection(int n) {
  const double d = n + 1.0, d1 = n + 2.0;
  double norm2 = 0.0;
  for (double c : lm_projection_coefficients(n)) norm2 += c * c;
  // Equal contributions from the up and down projections.
  return 2.0 * norm2 / (2.0 * d * d1);
}

double lm_error(int n) {
  require_n(n, 1, "lm_error");
  const double seed_path = from_delta(lm_delta(n));
  const double projection_path = lm_error_projection(n);
  if (std::abs(seed_path - projection_path) > 1e-10)
    throw IntegrityError("lm_error: seed and projection evaluations disagree (" + std::to_string(seed_path) + " vs " +
                         std::to_string(projection_path) + ")");
  return seed_path;
}

double ed_shrink_factor(int n) {
  require_n(n, 1, "ed_shrink_factor");
  return n / (n + 2.0);
}

double ed_delta_continuous(int n) {
  require_n(n, 1, "ed_delta_continuous");
  return 4.0 * n / (3.0 * (n + 2.0));
}

double ed_error_continuous(int n) { return from_delta(ed_delta_continuous(n)); }

double ed_delta(const std::vector<BlochOutcome>& M, const std::vector<BlochOutcome>& Mprime, double eta) {
  double delta = 0.0;
  for (const auto& a : M) {
    for (const auto& b : Mprime) {
      double dist2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double diff = eta * (a.direction[k] - b.direction[k]);
        dist2 += diff * diff;
      }
      delta += a.probability * b.probability * std::sqrt(dist2);
    }
  }
  return delta;
}

double ed_delta_n1_optimal() {
  const std::vector<BlochOutcome> M{{0.5, {0.0, 0.0, 1.0}}, {0.5, {0.0, 0.0, -1.0}}};
  const std::vector<BlochOutcome> Mp{{0.5, {1.0, 0.0, 0.0}}, {0.5, {-1.0, 0.0, 0.0}}};
  return ed_delta(M, Mp, ed_shrink_factor(1));
}

double ed_error_n1_optimal() { return from_delta(ed_delta_n1_optimal()); }

double reversed_lm_error(int n) {
  require_n(n, 1, "reversed_lm_error");
  return 0.5 * (1.0 - (1.0 / 6.0) * n / (n + 1.0));
}

double memory_bound_bits(int n) {
  require_n(n, 1, "memory_bound_bits");
  return std::log2(2.0 * (n + 1.0) * (2.0 * n + 1.0));
}

}  // namespace qclass
