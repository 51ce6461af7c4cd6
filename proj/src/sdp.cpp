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

#include "qclass/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "qclass/errors.hpp"

namespace qclass::sdp {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kStepFraction = 0.95;
constexpr double kCentering = 0.1;

double lambda_max(const MatrixXd& m) {
  if (m.size() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double lambda_min(const MatrixXd& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Largest alpha keeping X + alpha dX positive definite (X must be PD).
double max_step(const MatrixXd& X, const MatrixXd& dX) {
  Eigen::LLT<MatrixXd> llt(X);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXd L = llt.matrixL();
  const MatrixXd S = L.triangularView<Eigen::Lower>().solve(
      L.triangularView<Eigen::Lower>().solve(dX).transpose());
  const double lmin = lambda_min(0.5 * (S + S.transpose()));
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// One xi: blocks, their rows mapped to local constraints.
struct Group {
  std::vector<std::size_t> blocks;
  std::vector<std::size_t> constraints;      // global constraint indices
  std::vector<std::vector<Index>> row_map;   // per block, per row: local constraint
};

std::vector<Group> make_groups(const BlockSdpProblem& p) {
  std::map<BlockLabel, Group> groups;
  std::map<std::pair<BlockLabel, int>, std::size_t> where;
  for (std::size_t c = 0; c < p.constraints.size(); ++c) {
    const auto& con = p.constraints[c];
    if (!where.emplace(std::make_pair(con.xi, con.j.twice()), c).second)
      throw DomainError("duplicate constraint for xi=(" + con.xi.jA.str() + "," + con.xi.jC.str() + "), j=" +
                        con.j.str());
    groups[con.xi];
  }
  for (std::size_t b = 0; b < p.blocks.size(); ++b) groups[p.blocks[b].key.xi].blocks.push_back(b);

  std::vector<Group> out;
  for (auto& [xi, g] : groups) {
    std::map<std::size_t, Index> local;
    for (std::size_t b : g.blocks) {
      std::vector<Index> rows;
      for (HalfInteger j : p.blocks[b].js) {
        auto it = where.find({xi, j.twice()});
        if (it == where.end())
          throw DomainError("row j=" + j.str() + " of block xi=(" + xi.jA.str() + "," + xi.jC.str() +
                            ") is not covered by any constraint");
        auto [li, fresh] = local.emplace(it->second, static_cast<Index>(local.size()));
        if (fresh) g.constraints.push_back(it->second);
        rows.push_back(li->second);
      }
      g.row_map.push_back(std::move(rows));
    }
    for (const auto& [gc, li] : where) {
      if (gc.first == xi && !local.contains(li))
        throw DomainError("constraint xi=(" + xi.jA.str() + "," + xi.jC.str() + "), j=" +
                          HalfInteger::from_twice(gc.second).str() + " touches no variable");
    }
    out.push_back(std::move(g));
  }
  return out;
}

struct GroupResult {
  std::vector<MatrixXd> X;
  VectorXd y;
  double objective = 0.0;
  double gap = 0.0;
  int iterations = 0;
};

GroupResult solve_group(const BlockSdpProblem& p, const Group& g, double tol, int max_iterations,
                        double history_offset, std::vector<double>& history) {
  const auto L = static_cast<Index>(g.constraints.size());
  VectorXd b(L);
  for (Index i = 0; i < L; ++i) b(i) = p.constraints[g.constraints[static_cast<std::size_t>(i)]].target;

  std::vector<MatrixXd> C;
  for (std::size_t b_idx : g.blocks) C.push_back(p.blocks[b_idx].weight * sym(p.blocks[b_idx].cost));
  const std::size_t nb = C.size();

  auto diag_of = [&](std::size_t k, const VectorXd& v) {
    const auto& rows = g.row_map[k];
    VectorXd d(static_cast<Index>(rows.size()));
    for (std::size_t a = 0; a < rows.size(); ++a) d(static_cast<Index>(a)) = v(rows[a]);
    return d;
  };

  // Strictly feasible start.
  VectorXd count = VectorXd::Zero(L);
  for (const auto& rows : g.row_map)
    for (Index li : rows) count(li) += 1.0;
  GroupResult res;
  res.X.resize(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    VectorXd d = diag_of(k, b.cwiseQuotient(count));
    res.X[k] = d.asDiagonal();
  }
  double lmax = -std::numeric_limits<double>::infinity(), scale = 0.0;
  for (const auto& c : C) {
    lmax = std::max(lmax, lambda_max(c));
    if (c.size() > 0) scale = std::max(scale, c.cwiseAbs().maxCoeff());
  }
  res.y = VectorXd::Constant(L, lmax + 1.0 + scale);

  auto slack = [&](std::size_t k) -> MatrixXd {
    MatrixXd Z = -C[k];
    Z.diagonal() += diag_of(k, res.y);
    return Z;
  };
  auto objective = [&] {
    double o = 0.0;
    for (std::size_t k = 0; k < nb; ++k) o += (C[k].cwiseProduct(res.X[k])).sum();
    return o;
  };

  Index N = 0;
  for (const auto& c : C) N += c.rows();

  for (int it = 0;; ++it) {
    std::vector<MatrixXd> Z(nb), Zinv(nb);
    double gap = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      Z[k] = slack(k);
      gap += (res.X[k].cwiseProduct(Z[k])).sum();
    }
    res.objective = objective();
    res.gap = gap;
    res.iterations = it;
    if (gap <= tol) return res;
    if (it >= max_iterations) {
      throw SolverError("SDP did not reach the requested gap within " + std::to_string(max_iterations) +
                            " iterations",
                        res.objective, gap);
    }
    const double mu = gap / static_cast<double>(N);

    MatrixXd M = MatrixXd::Zero(L, L);
    VectorXd rhs = VectorXd::Zero(L);
    for (std::size_t k = 0; k < nb; ++k) {
      Zinv[k] = sym(Z[k].ldlt().solve(MatrixXd::Identity(Z[k].rows(), Z[k].cols())));
      const auto& rows = g.row_map[k];
      const Index n = Z[k].rows();
      for (Index a = 0; a < n; ++a) {
        rhs(rows[a]) += kCentering * mu * Zinv[k](a, a) - res.X[k](a, a);
        for (Index c = 0; c < n; ++c) M(rows[a], rows[c]) += res.X[k](a, c) * Zinv[k](c, a);
      }
    }
    const VectorXd dy = M.ldlt().solve(rhs);

    std::vector<MatrixXd> dX(nb), dZ(nb);
    double aP = 1.0 / kStepFraction, aD = 1.0 / kStepFraction;
    for (std::size_t k = 0; k < nb; ++k) {
      dZ[k] = diag_of(k, dy).asDiagonal();
      dX[k] = kCentering * mu * Zinv[k] - res.X[k] - sym(res.X[k] * dZ[k] * Zinv[k]);
      aP = std::min(aP, max_step(res.X[k], dX[k]));
      aD = std::min(aD, max_step(Z[k], dZ[k]));
    }
    aP = std::min(1.0, kStepFraction * aP);
    aD = std::min(1.0, kStepFraction * aD);
    for (std::size_t k = 0; k < nb; ++k) res.X[k] = sym(res.X[k] + aP * dX[k]);
    res.y += aD * dy;
    history.push_back(history_offset + objective());
  }
}

}  // namespace

BlockSdpProblem BlockSdpProblem::with_seed_constraints(std::vector<SdpBlock> blocks) {
  BlockSdpProblem p;
  std::set<std::pair<BlockLabel, int>> seen;
  for (const auto& blk : blocks) {
    for (HalfInteger j : blk.js) {
      if (seen.insert({blk.key.xi, j.twice()}).second)
        p.constraints.push_back({blk.key.xi, j, j.twice() + 1.0});
    }
  }
  std::sort(p.constraints.begin(), p.constraints.end(), [](const SdpConstraint& a, const SdpConstraint& b) {
    return std::tie(a.xi, a.j) < std::tie(b.xi, b.j);
  });
  p.blocks = std::move(blocks);
  return p;
}

void BlockSdpProblem::validate() const {
  std::set<BlockKey> keys;
  for (const auto& blk : blocks) {
    if (!keys.insert(blk.key).second) throw DomainError("duplicate SDP block key");
    const auto d = static_cast<Index>(blk.js.size());
    if (blk.cost.rows() != d || blk.cost.cols() != d) throw DomainError("SDP cost matrix does not match its rows");
    if (d > 0 && (blk.cost - blk.cost.transpose()).cwiseAbs().maxCoeff() > 1e-10)
      throw DomainError("SDP cost matrix is not symmetric");
    if (!(blk.weight > 0.0)) throw DomainError("SDP block weight must be positive");
  }
  for (const auto& c : constraints) {
    if (c.target < 0.0) throw InfeasibleError("constraint target " + std::to_string(c.target) + " < 0 cannot be met by a PSD block");
    if (c.target == 0.0) throw DomainError("constraint targets must be positive");
  }
  (void)make_groups(*this);
}

Seed solve(const BlockSdpProblem& problem, const SolverOptions& options) {
  problem.validate();
  if (!(options.tol > 0.0)) throw DomainError("solver tolerance must be positive");
  if (options.max_iterations < 1) throw DomainError("iteration cap must be at least 1");
  const auto groups = make_groups(problem);

  Seed seed;
  seed.multipliers.assign(problem.constraints.size(), 0.0);
  seed.blocks.resize(problem.blocks.size());
  // Leave headroom: callers usually report 2 x objective.
  const double group_tol = 0.1 * options.tol / static_cast<double>(std::max<std::size_t>(1, groups.size()));
  double done = 0.0, gap = 0.0;
  for (const auto& g : groups) {
    GroupResult r;
    try {
      r = solve_group(problem, g, group_tol, options.max_iterations, done, seed.objective_history);
    } catch (const SolverError& e) {
      throw SolverError(e.what(), done + e.best_objective(), gap + e.gap());
    }
    for (std::size_t k = 0; k < g.blocks.size(); ++k) {
      const auto& blk = problem.blocks[g.blocks[k]];
      seed.blocks[g.blocks[k]] = SeedBlock{blk.key, blk.js, r.X[k]};
    }
    for (std::size_t i = 0; i < g.constraints.size(); ++i)
      seed.multipliers[g.constraints[i]] = r.y(static_cast<Index>(i));
    done += r.objective;
    gap += r.gap;
    seed.iterations += r.iterations;
  }
  for (std::size_t b = 0; b < problem.blocks.size(); ++b) {
    if (problem.blocks[b].js.empty()) seed.blocks[b] = SeedBlock{problem.blocks[b].key, {}, MatrixXd()};
  }
  seed.objective = done;
  seed.dual_bound = dual_bound(problem, seed);
  seed.gap = seed.dual_bound - seed.objective;
  return seed;
}

double dual_bound(const BlockSdpProblem& problem, const Seed& primal) {
  const auto groups = make_groups(problem);
  const bool have_y = primal.multipliers.size() == problem.constraints.size();
  double bound = 0.0;
  for (const auto& g : groups) {
    std::vector<double> y;
    for (std::size_t c : g.constraints) y.push_back(have_y ? primal.multipliers[c] : 0.0);
    double shift = have_y ? 0.0 : -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g.blocks.size(); ++k) {
      const auto& blk = problem.blocks[g.blocks[k]];
      if (blk.js.empty()) continue;
      MatrixXd S = blk.weight * sym(blk.cost);
      for (std::size_t a = 0; a < blk.js.size(); ++a)
        S(static_cast<Index>(a), static_cast<Index>(a)) -= y[static_cast<std::size_t>(g.row_map[k][a])];
      // C - D(y) <= shift * I makes y + shift dual feasible.
      shift = std::max(shift, lambda_max(S));
    }
    if (have_y) shift = std::max(0.0, shift);
    if (!std::isfinite(shift)) shift = 0.0;
    for (std::size_t i = 0; i < g.constraints.size(); ++i)
      bound += problem.constraints[g.constraints[i]].target * (y[i] + shift);
  }
  return bound;
}

double constraint_residual(const BlockSdpProblem& problem, const Seed& seed) {
  std::map<std::pair<BlockLabel, int>, double> sums;
  for (const auto& blk : seed.blocks)
    for (std::size_t a = 0; a < blk.js.size(); ++a)
      sums[{blk.key.xi, blk.js[a].twice()}] += blk.omega(static_cast<Index>(a), static_cast<Index>(a));
  double worst = 0.0;
  for (const auto& c : problem.constraints) {
    auto it = sums.find({c.xi, c.j.twice()});
    worst = std::max(worst, std::abs((it == sums.end() ? 0.0 : it->second) - c.target));
  }
  return worst;
}

double min_eigenvalue(const Seed& seed) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& blk : seed.blocks) m = std::min(m, lambda_min(sym(blk.omega)));
  return m;
}

}  // namespace qclass::sdp
