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

#include "qclass/mixed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "qclass/errors.hpp"
#include "qclass/su2.hpp"

namespace qclass {

namespace {

// r <J_z>_j / (j (j+1)), zero for j = 0.
double jz_coefficient(HalfInteger j, double r) {
  if (j.twice() == 0) return 0.0;
  const double jj = j.value();
  return r * jz_expectation(j, r) / (jj * (jj + 1.0));
}

double from_delta(double delta) { return 0.5 * (1.0 - 0.5 * delta); }

// sum_mA mA v(mA)^2 with v(mA) = <mA, -mA | sum_j sqrt(2j+1) |j, 0>.
double m0_seed_jz(const BlockLabel& xi) {
  const int tA = xi.jA.twice(), tC = xi.jC.twice();
  if ((tA + tC) % 2 != 0) throw DomainError("m = 0 seed needs integer total angular momentum");
  double s = 0.0;
  for (int tm = -std::min(tA, tC); tm <= std::min(tA, tC); tm += 2) {
    if ((tA - tm) % 2 != 0) continue;
    double v = 0.0;
    for (int tj = std::abs(tA - tC); tj <= tA + tC; tj += 2) {
      v += std::sqrt(tj + 1.0) * su2::clebsch_gordan(xi.jA, HalfInteger::from_twice(tm), xi.jC,
                                                     HalfInteger::from_twice(-tm), HalfInteger::from_twice(tj),
                                                     HalfInteger{});
    }
    s += 0.5 * tm * v * v;
  }
  return s;
}

}  // namespace

BlockOperator gamma_up_mixed(const BlockLabel& label, const SpectrumParams& params) {
  params.validate();
  label.validate_for(params.n);
  return gamma_up_mixed(label, params.r);
}

BlockOperator gamma_up_mixed(const BlockLabel& label, double r) {
  label.validate();
  SpectrumParams{0, r}.validate();
  const double cA = jz_coefficient(label.jA, r), cC = jz_coefficient(label.jC, r);
  const double dA = label.jA.twice() + 1.0, dC = label.jC.twice() + 1.0;
  return (coupled_jz(label, Subsystem::A).scaled(cA) - coupled_jz(label, Subsystem::C).scaled(cC))
      .scaled(1.0 / (2.0 * dA * dC));
}

std::vector<WeightedLabel> weighted_labels(const SpectrumParams& params) {
  const auto w = block_weights(params);
  std::vector<WeightedLabel> out;
  for (const auto& a : w)
    for (const auto& c : w) out.push_back({BlockLabel{a.j, c.j}, a.p * c.p});
  return out;
}

MachineReport mixed_programmable_risk(int n, double r) {
  if (n < 1) throw DomainError("mixed_programmable_risk requires n >= 1");
  const SpectrumParams params{n, r};
  double delta = 0.0;
  for (const auto& wl : weighted_labels(params)) {
    if (wl.p == 0.0) continue;
    delta += wl.p * block_diff_trace_norm(wl.xi, r);
  }
  auto rep = make_report(MachineId::opt, n, r, from_delta(delta), Method::closed_form);
  rep.delta = delta;
  return rep;
}

MixedLmSolution solve_mixed_lm(int n, double r, const sdp::SolverOptions& options) {
  if (n < 1) throw DomainError("mixed_lm_risk requires n >= 1");
  const SpectrumParams params{n, r};
  std::vector<sdp::SdpBlock> blocks;
  for (const auto& wl : weighted_labels(params)) {
    if (wl.p == 0.0) continue;
    const BlockOperator gamma = gamma_up_mixed(wl.xi, r);
    for (const auto& [tm, sec] : gamma.sectors()) {
      sdp::SdpBlock b;
      b.key = {wl.xi, tm};
      for (const auto& s : sec.basis) b.js.push_back(s.total);
      b.cost = sec.matrix;
      b.weight = wl.p;
      blocks.push_back(std::move(b));
    }
  }
  MixedLmSolution out;
  out.problem = sdp::BlockSdpProblem::with_seed_constraints(std::move(blocks));
  try {
    out.seed = sdp::solve(out.problem, options);
  } catch (const SolverError& e) {
    throw SolverError("mixed LM SDP at n=" + std::to_string(n) + ", r=" + std::to_string(r) + ": " + e.what(),
                      e.best_objective(), e.gap());
  }
  const double delta = 2.0 * out.seed.objective;
  out.report = make_report(MachineId::lm, n, r, from_delta(delta), Method::sdp);
  out.report.delta = delta;
  out.report.solver_gap = 0.5 * out.seed.gap;
  return out;
}

MachineReport mixed_lm_risk(int n, double r, const sdp::SolverOptions& options) {
  return solve_mixed_lm(n, r, options).report;
}

MachineReport mixed_m0_seed_risk(int n, double r) {
  if (n < 1) throw DomainError("mixed_m0_seed_risk requires n >= 1");
  const SpectrumParams params{n, r};
  double delta = 0.0;
  for (const auto& wl : weighted_labels(params)) {
    if (wl.p < 1e-300) continue;
    const double cA = jz_coefficient(wl.xi.jA, r), cC = jz_coefficient(wl.xi.jC, r);
    const double dA = wl.xi.jA.twice() + 1.0, dC = wl.xi.jC.twice() + 1.0;
    // 2 <phi|Gamma|phi> with <J_z^C> = -<J_z^A> on the m = 0 sector.
    delta += wl.p * (cA + cC) * m0_seed_jz(wl.xi) / (dA * dC);
  }
  auto rep = make_report(MachineId::lm, n, r, from_delta(delta), Method::closed_form);
  rep.delta = delta;
  return rep;
}

UnbalancedFactor unbalanced_block_diff_asymptotic(int n, double r, double delta) {
  if (n < 1) throw DomainError("unbalanced_block_diff_asymptotic requires n >= 1");
  SpectrumParams{n, r}.validate();
  if (!std::isfinite(delta)) throw DomainError("delta must be finite");
  UnbalancedFactor f;
  f.factor = r * (1.0 - (1.0 - r) / (n * r * r));
  f.expansion_suspect = n * r * r <= 1.0;
  return f;
}

double unbalanced_block_ratio(int n, double r, double delta) {
  SpectrumParams{n, r}.validate();
  const double spread = delta * std::sqrt(static_cast<double>(n));
  if (spread >= n) throw DomainError("delta too large for n");
  const int tA = static_cast<int>(std::lround(r * (n + spread)));
  const int tC = static_cast<int>(std::lround(r * (n - spread)));
  const int m = static_cast<int>(std::lround(r * n));
  if (m < 1) throw DomainError("r n rounds to zero qubits");
  const BlockLabel xi{HalfInteger::from_twice(tA), HalfInteger::from_twice(tC)};
  const BlockLabel pure{HalfInteger::from_twice(m), HalfInteger::from_twice(m)};
  return block_diff_trace_norm(xi, r) / block_diff_trace_norm(pure, 1.0);
}

void SweepConfig::validate() const {
  if (n_min < 1 || n_max < n_min) throw DomainError("sweep needs 1 <= n_min <= n_max");
  if (steps < 1) throw DomainError("sweep needs steps >= 1");
  SpectrumParams{1, r_min}.validate();
  SpectrumParams{1, r_max}.validate();
  if (r_max < r_min) throw DomainError("sweep needs r_min <= r_max");
  if (threads < 0) throw DomainError("thread count must be non-negative");
}

std::vector<double> SweepConfig::r_grid() const {
  std::vector<double> g;
  for (int k = 0; k < steps; ++k)
    g.push_back(steps == 1 ? r_min : r_min + (r_max - r_min) * k / static_cast<double>(steps - 1));
  if (steps > 1) g.back() = r_max;
  return g;
}

SweepTable run_sweep(const SweepConfig& config) {
  config.validate();
  const auto grid = config.r_grid();
  SweepTable table;
  table.config = config;
  for (int n = config.n_min; n <= config.n_max; ++n)
    for (double r : grid) {
      SweepRow row;
      row.n = n;
      row.r = r;
      table.rows.push_back(row);
    }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < table.rows.size(); i = next++) {
      SweepRow& row = table.rows[i];
      try {
        row.R_opt = mixed_programmable_risk(row.n, row.r).excess_risk;
        const MachineReport lm = mixed_lm_risk(row.n, row.r, config.solver);
        row.R_lm = lm.excess_risk;
        row.solver_gap = lm.solver_gap.value_or(0.0);
        row.rel_gap = (row.R_lm - row.R_opt) / row.R_opt;
      } catch (const SolverError& e) {
        row.error = e.what();
        row.R_lm = std::numeric_limits<double>::quiet_NaN();
        row.rel_gap = std::numeric_limits<double>::quiet_NaN();
        row.solver_gap = 0.5 * e.gap();
      }
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(table.rows.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return table;
}

void write_csv(const SweepTable& table, std::ostream& out) {
  out << "n,r,R_lm,R_opt,rel_gap,solver_gap\n";
  char buf[512];
  for (const auto& row : table.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", row.n, row.r, row.R_lm, row.R_opt,
                  row.rel_gap, row.solver_gap);
    out << buf;
  }
}

}  // namespace qclass
