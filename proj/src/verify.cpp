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

#include "qclass/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qclass/errors.hpp"
#include "qclass/mixed.hpp"
#include "qclass/oracle.hpp"
#include "qclass/su2.hpp"

namespace qclass::verify {

namespace {

using HI = HalfInteger;

HI h(int twice) { return HI::from_twice(twice); }

class Collector {
 public:
  void close(std::string id, std::string anchor, double expected, double got, double tol) {
    checks_.push_back({std::move(id), std::move(anchor), expected, got, tol, std::abs(got - expected) <= tol});
  }
  // Pass decided by the caller (inequalities, orderings).
  void claim(std::string id, std::string anchor, double expected, double got, double tol, bool pass) {
    checks_.push_back({std::move(id), std::move(anchor), expected, got, tol, pass});
  }
  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::vector<Check> checks_;
};

void su2_suite(Collector& c) {
  c.close("cg_j1_plus", "coupling of j=1, m=0 with spin up into J=3/2", std::sqrt(2.0 / 3.0),
          su2::clebsch_gordan(h(2), h(0), h(1), h(1), h(3), h(1)), 1e-12);
  c.close("cg_j1_minus", "coupling of j=1, m=0 with spin up into J=1/2", -std::sqrt(1.0 / 3.0),
          su2::clebsch_gordan(h(2), h(0), h(1), h(1), h(1), h(1)), 1e-12);

  double worst = 0.0;
  for (int t1 = 0; t1 <= 6; ++t1)
    for (int t2 = 0; t2 <= 6; ++t2)
      for (int m1 = -t1; m1 <= t1; m1 += 2)
        for (int m2 = -t2; m2 <= t2; m2 += 2) {
          double s = 0.0;
          for (int tJ = std::abs(t1 - t2); tJ <= t1 + t2; tJ += 2) {
            if (std::abs(m1 + m2) > tJ) continue;
            const double v = su2::clebsch_gordan(h(t1), h(m1), h(t2), h(m2), h(tJ), h(m1 + m2));
            s += v * v;
          }
          worst = std::max(worst, std::abs(s - 1.0));
        }
  c.close("cg_orthonormality", "sum over J of squared coupling coefficients", 0.0, worst, 1e-12);

  c.close("sixj_half_0", "{1/2 1/2 1; 1/2 1/2 0}", 0.5, su2::wigner_6j(h(1), h(1), h(2), h(1), h(1), h(0)), 1e-12);
  c.close("sixj_half_1", "{1/2 1/2 1; 1/2 1/2 1}", 1.0 / 6.0, su2::wigner_6j(h(1), h(1), h(2), h(1), h(1), h(2)),
          1e-12);

  double unit = 0.0;
  for (int n = 1; n <= 10; ++n)
    for (int J = 0; J < n; ++J) {
      // Total J + 1/2 fed by j = J and j = J + 1.
      const double a = su2::recoupling_overlap(n, HI::from_int(J), su2::Sign::plus);
      const double b = su2::recoupling_overlap(n, HI::from_int(J + 1), su2::Sign::minus);
      unit = std::max(unit, std::abs(a * a + b * b - 1.0));
    }
  c.close("recoupling_unitarity_n10", "two (AC) intermediates feed one A(CB) state", 0.0, unit, 1e-12);

  double vs6j = 0.0;
  using S = su2::CouplingScheme;
  for (int n = 1; n <= 6; ++n) {
    const HI jA = h(n), jCB = h(n + 1);
    for (int j = 0; j <= n; ++j)
      for (auto sign : {su2::Sign::plus, su2::Sign::minus}) {
        if (j == 0 && sign == su2::Sign::minus) continue;
        const HI J = sign == su2::Sign::plus ? HI::from_int(j) + kHalf : HI::from_int(j) - kHalf;
        const double from6j = su2::recoupling(jA, jA, kHalf, J, S{S::Order::ac_b, HI::from_int(j)},
                                              S{S::Order::a_cb, jCB});
        vs6j = std::max(vs6j, std::abs(std::abs(from6j) - su2::recoupling_overlap(n, HI::from_int(j), sign)));
      }
  }
  c.close("recoupling_overlap_vs_6j", "basis overlap between A(CB) and (AC)B", 0.0, vs6j, 1e-12);

  double dimsum = 0.0;
  for (int n = 0; n <= 20; ++n) {
    double s = 0.0;
    for (int tj = n % 2; tj <= n; tj += 2) s += static_cast<double>(su2::multiplicity(n, h(tj))) * (tj + 1);
    dimsum = std::max(dimsum, std::abs(s - std::ldexp(1.0, n)));
  }
  c.close("multiplicity_dimension_sum_n20", "sum_j nu_j (2j+1) = 2^n", 0.0, dimsum, 0.0);
  c.close("multiplicity_n4_j1", "multiplicity of j=1 in 4 qubits", 3.0, static_cast<double>(su2::multiplicity(4, h(2))),
          0.0);
}

void blocks_suite(Collector& c) {
  double norm = 0.0;
  for (int n = 1; n <= 20; ++n)
    for (double r : {0.1, 0.5, 0.9, 1.0}) {
      double s = 0.0;
      for (const auto& w : block_weights({n, r})) {
        s += w.p;
        double a = 0.0;
        for (double x : w.a) a += x;
        norm = std::max(norm, std::abs(a - 1.0));
      }
      norm = std::max(norm, std::abs(s - 1.0));
    }
  c.close("block_weights_normalized", "sum_m a_m = 1 and sum_j p_j = 1", 0.0, norm, 1e-12);

  double pmax = 1.0;
  for (int n = 1; n <= 20; ++n) pmax = std::min(pmax, block_weights({n, 1.0}).back().p);
  c.claim("pure_weight_on_max_j", "p_{n/2} at r = 1", 1.0, pmax, 1e-9, pmax > 1.0 - 1e-9);

  c.close("jz_half_r05", "<J_z> for j=1/2, r=1/2", 0.25, jz_expectation(kHalf, 0.5), 1e-15);
  c.close("jz_large_j", "<J_z> approaches j - (1-r)/(2r)", 10.0 - 0.2 / 1.6, jz_expectation(HI::from_int(10), 0.8),
          1e-6);

  double ident = 0.0;
  for (int tj = 1; tj <= 6; ++tj)
    for (double r : {0.1, 0.5, 0.9, 1.0}) {
      const BlockLabel xi{h(tj), h(tj)};
      const auto lhs = average_state_diff_mixed(xi, r);
      const auto rhs = average_state_diff_pure(tj).scaled(r * jz_expectation(h(tj), r) / h(tj).value());
      ident = std::max(ident, lhs.max_abs_diff(rhs));
    }
  c.close("equal_blocks_identity", "sigma_{0,xi}-sigma_{1,xi} proportional to the pure difference for jA = jC", 0.0,
          ident, 1e-12);

  for (int n = 1; n <= 3; ++n)
    c.close("pure_trace_norm_n" + std::to_string(n), "||sigma_0 - sigma_1||_1 = 2 - 4 P_opt",
            2.0 - 4.0 * programmable_error_pure(n), trace_norm(average_state_diff_pure(n)), 1e-12);

  double fast = 0.0;
  for (int tA = 0; tA <= 4; ++tA)
    for (int tC = 0; tC <= 4; ++tC)
      for (double r : {0.3, 0.7, 1.0}) {
        const BlockLabel xi{h(tA), h(tC)};
        fast = std::max(fast, std::abs(trace_norm(average_state_diff_mixed(xi, r)) - block_diff_trace_norm(xi, r)));
      }
  c.close("trace_norm_recoupling_route", "per-J recoupled blocks vs per-M sectors", 0.0, fast, 1e-12);

  double tr = 0.0;
  for (int tA = 0; tA <= 4; ++tA)
    for (int tC = 0; tC <= 4; ++tC) tr = std::max(tr, std::abs(average_state_diff_mixed({h(tA), h(tC)}, 0.6).trace()));
  c.close("block_difference_traceless", "tr(sigma_{0,xi} - sigma_{1,xi})", 0.0, tr, 1e-12);
}

void machines_suite(Collector& c) {
  double worst = 0.0;
  for (int n = 1; n <= 20; ++n) worst = std::max(worst, std::abs(lm_error(n) - programmable_error_pure(n)));
  c.close("lm_equals_opt_n1_20", "LM error equals the optimal programmable error", 0.0, worst, 1e-12);

  const double s3 = std::sqrt(3.0), s2 = std::sqrt(2.0);
  c.close("opt_n1", "P_opt at n = 1", (6.0 - s3) / 12.0, programmable_error_pure(1), 1e-12);
  c.close("lm_delta_n1", "LM bias at n = 1", 1.0 / s3, lm_delta(1), 1e-12);
  c.close("lm_excess_n1", "LM excess risk at n = 1", (4.0 - s3) / 12.0, lm_error(1) - baseline_error(1.0), 1e-12);
  c.close("ed_bound_n1", "E&D bias bound at n = 1", s2 / 3.0, ed_delta_n1_optimal(), 1e-12);
  c.close("ed_excess_n1", "E&D excess risk at n = 1", (4.0 - s2) / 12.0, ed_error_n1_optimal() - baseline_error(1.0),
          1e-12);
  c.close("ed_continuous_n1", "continuous E&D error at n = 1", 7.0 / 18.0, ed_error_continuous(1), 1e-12);
  c.close("reversed_n1", "reversed machine at n = 1", 11.0 / 24.0, reversed_lm_error(1), 1e-12);
  c.close("reversed_limit", "reversed machine limit 5/12", 5.0 / 12.0, reversed_lm_error(1000000), 1e-6);

  double gam = 0.0;
  for (int n = 1; n <= 10; ++n) gam = std::max(gam, std::abs(trace_norm(gamma_up_pure(n)) - n / (3.0 * (n + 1.0))));
  c.close("gamma_trace_norm", "||Gamma_up||_1 = n / (3(n+1))", 0.0, gam, 1e-10);

  double unb = 0.0;
  for (int n = 0; n <= 10; ++n) unb = std::max(unb, std::abs(programmable_error_unbalanced(n, n) - programmable_error_pure(n)));
  c.close("unbalanced_balanced_equal", "unbalanced formula at nA = nC", 0.0, unb, 1e-12);
  const double p = programmable_error_unbalanced(400, 300);
  c.close("unbalanced_asymptotic_400_300", "1/6 (1 + 1/nA + 1/nC)", programmable_error_unbalanced_asymptotic(400, 300), p,
          1e-4);

  bool order = true;
  for (int n = 1; n <= 50; ++n) order = order && lm_error(n) <= ed_error_continuous(n) && ed_error_continuous(n) < reversed_lm_error(n);
  c.claim("ordering_lm_ed_reversed", "LM <= E&D < reversed for n = 1..50", 1.0, order ? 1.0 : 0.0, 0.0, order);
  c.claim("ed_finite_beats_continuous_n1", "finite E&D beats continuous at n = 1", ed_error_continuous(1),
          ed_error_n1_optimal(), 0.0, ed_error_n1_optimal() < ed_error_continuous(1));

  bool seeds = true;
  for (int n = 1; n <= 10; ++n) seeds = seeds && verify_seed(lm_seed(n));
  SeedVector bad = lm_seed(3);
  for (double& x : bad.coefficients) x *= 2.0;
  c.claim("lm_seed_complete", "seed completeness for n <= 10, rejection of a scaled seed", 1.0,
          seeds && !verify_seed(bad) ? 1.0 : 0.0, 0.0, seeds && !verify_seed(bad));
  c.close("memory_bound_n10", "log2(2 (n+1)(2n+1)) at n = 10", std::log2(462.0), memory_bound_bits(10), 1e-12);
}

void mixed_suite(Collector& c, const Options& o) {
  const sdp::SolverOptions so{o.tol, 500};
  double n1 = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const double r = 0.1 * k;
    n1 = std::max(n1, std::abs(mixed_lm_risk(1, r, so).excess_risk - mixed_programmable_risk(1, r).excess_risk));
  }
  c.close("n1_lm_equals_opt", "R_LM = R_opt at n = 1 for every r", 0.0, n1, 1e-6);

  double worst = -1.0, dom = 1.0;
  for (int k = 0; k < 46; ++k) {
    const double r = 0.1 + 0.02 * k;
    const double ropt = mixed_programmable_risk(2, r).excess_risk;
    const double rlm = mixed_lm_risk(2, r, so).excess_risk;
    worst = std::max(worst, (rlm - ropt) / ropt);
    dom = std::min(dom, rlm - ropt);
  }
  c.claim("n2_worst_gap_le_0.5pct", "worst relative LM gap at n = 2 lies in (0, 0.005]", 0.005, worst, 0.0,
          worst > 0.0 && worst <= 0.005);
  c.claim("lm_dominates_opt_n2", "R_LM >= R_opt - 1e-7", 0.0, dom, 1e-7, dom >= -1e-7);

  bool decreasing = true;
  for (int k = 0; k < 46; ++k) {
    const double r = 0.1 + 0.02 * k;
    double prev = mixed_programmable_risk(1, r).excess_risk;
    for (int n = 2; n <= 5; ++n) {
      const double cur = mixed_programmable_risk(n, r).excess_risk;
      decreasing = decreasing && cur < prev;
      prev = cur;
    }
  }
  c.claim("ropt_decreasing_in_n", "R_opt strictly decreasing for n = 1..5", 1.0, decreasing ? 1.0 : 0.0, 0.0, decreasing);

  double pure = 0.0;
  for (int n = 1; n <= 5; ++n)
    pure = std::max(pure, gamma_up_mixed({h(n), h(n)}, 1.0).max_abs_diff(gamma_up_pure(n)));
  c.close("gamma_mixed_pure_limit", "Gamma_up,xi at r = 1 equals the pure Gamma_up", 0.0, pure, 1e-14);

  double psum = 0.0;
  for (int n = 1; n <= 10; ++n)
    for (double r : {0.2, 0.6, 1.0}) {
      double s = 0.0;
      for (const auto& wl : weighted_labels({n, r})) s += wl.p;
      psum = std::max(psum, std::abs(s - 1.0));
    }
  c.close("xi_weights_sum", "sum_xi p_xi = 1", 0.0, psum, 1e-12);

  double lmpure = 0.0;
  for (int n = 1; n <= 5; ++n) lmpure = std::max(lmpure, std::abs(mixed_lm_risk(n, 1.0, so).error_probability - lm_error(n)));
  c.close("sdp_pure_limit", "SDP LM error at r = 1 equals the closed form", 0.0, lmpure, 1e-7);

  c.close("unbalanced_block_ratio_n50", "finite block-difference ratio vs asymptotic prefactor, n = 50, r = 0.8",
          unbalanced_block_diff_asymptotic(50, 0.8, 1.0).factor, unbalanced_block_ratio(50, 0.8, 1.0), 1e-3);
}

void oracle_suite(Collector& c, const Options& o) {
  for (int n = 1; n <= 3; ++n) {
    const auto [s0, s1] = oracle::build_average_states(n, n, 1.0);
    c.close("dense_pure_n" + std::to_string(n), "Helstrom error of dense average states", programmable_error_pure(n),
            oracle::helstrom(s0, s1), 1e-9);
  }
  for (int n = 1; n <= 2; ++n)
    for (double r : {0.3, 0.7}) {
      const auto [s0, s1] = oracle::build_average_states(n, n, r);
      char id[64];
      std::snprintf(id, sizeof id, "dense_mixed_n%d_r%.1f", n, r);
      c.close(id, "Helstrom error of dense mixed average states", mixed_programmable_risk(n, r).error_probability,
              oracle::helstrom(s0, s1), 1e-9);
    }
  {
    const auto [s0, s1] = oracle::build_average_states(3, 1, 1.0);
    c.close("dense_unbalanced_3_1", "unbalanced programmable error", programmable_error_unbalanced(3, 1),
            oracle::helstrom(s0, s1), 1e-9);
  }

  double gworst = 0.0;
  for (double r : {0.3, 0.7, 1.0})
    for (int n = 1; n <= 3; ++n) {
      const oracle::Matrix G = oracle::gamma_up(n, n, r);
      for (const auto& A : block_weights({n, r}))
        for (const auto& C : block_weights({n, r})) {
          if (A.p == 0.0 || C.p == 0.0) continue;
          const oracle::Matrix V = oracle::kron(oracle::irrep_basis(n, A.j).cast<std::complex<double>>(),
                                                oracle::irrep_basis(n, C.j).cast<std::complex<double>>());
          const double scale = static_cast<double>(su2::multiplicity(n, A.j) * su2::multiplicity(n, C.j)) / (A.p * C.p);
          const Eigen::MatrixXd lib = to_product_basis(gamma_up_mixed({A.j, C.j}, r));
          gworst = std::max(gworst, ((V.adjoint() * G * V) * scale - lib.cast<std::complex<double>>()).cwiseAbs().maxCoeff());
        }
    }
  c.close("gamma_blocks_vs_dense", "Gamma_up,xi vs tr_B([up](sigma_0 - sigma_1))", 0.0, gworst, 1e-10);

  for (int n = 1; n <= 3; ++n) {
    const auto ppt = oracle::ppt_check(n);
    c.claim("ppt_n" + std::to_string(n), "partial transpose of the optimal measurement", 0.0, ppt.min(), 1e-10,
            ppt.min() >= -1e-10);
  }

  const auto sim = oracle::simulate_lm(1, lm_seed(1), {oracle::Discretization::Kind::monte_carlo}, o.seed, 200000,
                                       o.threads);
  c.close("simulate_lm_n1", "sampled LM error at n = 1 (3 standard errors)", programmable_error_pure(1), sim.rate,
          3.0 * sim.stderr_);

  std::vector<oracle::Matrix> M(2, oracle::Matrix::Zero(2, 2)), P(2, oracle::Matrix::Constant(2, 2, 0.5));
  M[0](0, 0) = 1.0;
  M[1](1, 1) = 1.0;
  P[1](0, 1) = P[1](1, 0) = -0.5;
  c.close("ed_finite_n1", "E&D bias for {[up],[down]} x {[+],[-]}", std::sqrt(2.0) / 3.0,
          oracle::ed_error_finite(M, P, 1).delta, 1e-12);
  const auto cont = oracle::covariant_estimation_povm(1, 40, 40);
  c.close("ed_continuous_quadrature_n1", "continuous E&D bias by sphere quadrature", 4.0 / 9.0,
          oracle::ed_error_finite(cont, cont, 1).delta, 1e-3);

  const auto base = oracle::haar_baseline(0.5, 200000, o.seed);
  c.close("baseline_mc_r05", "Haar-averaged known-state error at r = 1/2 (3 standard errors)", baseline_error(0.5),
          base.mean, 3.0 * base.stderr_);
}

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "su2") return Suite::su2;
  if (name == "blocks") return Suite::blocks;
  if (name == "machines") return Suite::machines;
  if (name == "mixed") return Suite::mixed;
  if (name == "oracle") return Suite::oracle;
  if (name == "all") return Suite::all;
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::su2: return "su2";
    case Suite::blocks: return "blocks";
    case Suite::machines: return "machines";
    case Suite::mixed: return "mixed";
    case Suite::oracle: return "oracle";
    case Suite::all: return "all";
  }
  return "unknown";
}

std::vector<Check> run(Suite suite, const Options& options) {
  Collector c;
  const bool all = suite == Suite::all;
  if (all || suite == Suite::su2) su2_suite(c);
  if (all || suite == Suite::blocks) blocks_suite(c);
  if (all || suite == Suite::machines) machines_suite(c);
  if (all || suite == Suite::mixed) mixed_suite(c, options);
  if (all || suite == Suite::oracle) oracle_suite(c, options);
  return c.take();
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json_io::Json to_json(const std::vector<Check>& checks) {
  json_io::Json arr = json_io::Json::array();
  for (const auto& c : checks) {
    arr.push_back(json_io::Json{{"id", c.id},
                                {"anchor", c.anchor},
                                {"expected", c.expected},
                                {"got", c.got},
                                {"tolerance", c.tolerance},
                                {"pass", c.pass}});
  }
  return arr;
}

}  // namespace qclass::verify
