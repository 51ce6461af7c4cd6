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

#include "qclass/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qclass/errors.hpp"
#include "qclass/su2.hpp"

namespace qclass {

namespace {

constexpr double kHermitianTol = 1e-10;

HalfInteger H2(int twice) { return HalfInteger::from_twice(twice); }

// Coupled basis of one sector. Doubled quantum numbers throughout.
std::vector<BasisState> sector_basis(int tA, int tC, BlockKind kind, int tM) {
  std::vector<BasisState> basis;
  for (int tj = std::abs(tA - tC); tj <= tA + tC; tj += 2) {
    if (kind == BlockKind::two_system) {
      if (tj >= std::abs(tM)) basis.push_back({H2(tj), H2(tj)});
      continue;
    }
    for (int tJ : {tj - 1, tj + 1}) {
      if (tJ >= 0 && tJ >= std::abs(tM)) basis.push_back({H2(tj), H2(tJ)});
    }
  }
  return basis;
}

int max_twice_m(int tA, int tC, BlockKind kind) { return tA + tC + (kind == BlockKind::three_system ? 1 : 0); }

// Uncoupled states of one sector: (2mA, 2mC, 2mB). For two-system sectors mB
// is fixed to 0 and ignored.
struct ProductState {
  int tmA, tmC, tmB;
};

std::vector<ProductState> product_states(int tA, int tC, BlockKind kind, int tM) {
  std::vector<ProductState> out;
  for (int tmA = tA; tmA >= -tA; tmA -= 2) {
    for (int tmC = tC; tmC >= -tC; tmC -= 2) {
      if (kind == BlockKind::two_system) {
        if (tmA + tmC == tM) out.push_back({tmA, tmC, 0});
        continue;
      }
      for (int tmB : {1, -1}) {
        if (tmA + tmC + tmB == tM) out.push_back({tmA, tmC, tmB});
      }
    }
  }
  return out;
}

// Columns: coupled basis vectors expanded in the product states of the sector.
Eigen::MatrixXd coupling_matrix(int tA, int tC, BlockKind kind, int tM, const std::vector<ProductState>& prod,
                                const std::vector<BasisState>& basis) {
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(prod.size()),
                                            static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    for (std::size_t p = 0; p < prod.size(); ++p) {
      const auto& s = prod[p];
      const int tmAC = s.tmA + s.tmC;
      if (std::abs(tmAC) > basis[c].intermediate.twice()) continue;
      double v = su2::clebsch_gordan(H2(tA), H2(s.tmA), H2(tC), H2(s.tmC), basis[c].intermediate, H2(tmAC));
      if (kind == BlockKind::three_system)
        v *= su2::clebsch_gordan(basis[c].intermediate, H2(tmAC), kHalf, H2(s.tmB), basis[c].total, H2(tM));
      U(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return U;
}

// Projector weights of the conditional state of one training subsystem and
// the data qubit: alpha_+ P(j+1/2) + alpha_- P(j-1/2).
struct PairWeights {
  double plus = 0.0;
  double minus = 0.0;
};

PairWeights pair_weights(HalfInteger j, double r) {
  const double jj = j.value();
  const double d = j.twice() + 1.0;
  const double x = r * jz_expectation(j, r);
  PairWeights w;
  w.plus = (jj + 1.0 + x) / (d * (d + 1.0));
  if (j.twice() > 0) w.minus = (jj - x) / (d * (d - 1.0));
  return w;
}

// <m1 m2|P_x|m1' m2'> for spin j1 coupled with a qubit (spin 1/2).
double qubit_projector(int tj, int tx, int tm, int tmq, int tm2, int tmq2) {
  if (tm + tmq != tm2 + tmq2 || tx < 0) return 0.0;
  const int tmu = tm + tmq;
  if (std::abs(tmu) > tx) return 0.0;
  return su2::clebsch_gordan(H2(tj), H2(tm), kHalf, H2(tmq), H2(tx), H2(tmu)) *
         su2::clebsch_gordan(H2(tj), H2(tm2), kHalf, H2(tmq2), H2(tx), H2(tmu));
}

BlockOperator build_difference(const BlockLabel& label, const PairWeights& a, const PairWeights& b) {
  const int tA = label.jA.twice(), tC = label.jC.twice();
  const double dA = tA + 1.0, dC = tC + 1.0;
  std::map<int, Sector> sectors;
  const int tmax = max_twice_m(tA, tC, BlockKind::three_system);
  for (int tM = -tmax; tM <= tmax; tM += 2) {
    const auto prod = product_states(tA, tC, BlockKind::three_system, tM);
    auto basis = sector_basis(tA, tC, BlockKind::three_system, tM);
    const auto n = static_cast<Eigen::Index>(prod.size());
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = 0; q < n; ++q) {
        const auto& s = prod[p];
        const auto& t = prod[q];
        double v = 0.0;
        if (s.tmC == t.tmC) {
          v += (a.plus * qubit_projector(tA, tA + 1, s.tmA, s.tmB, t.tmA, t.tmB) +
                a.minus * qubit_projector(tA, tA - 1, s.tmA, s.tmB, t.tmA, t.tmB)) /
               dC;
        }
        if (s.tmA == t.tmA) {
          v -= (b.plus * qubit_projector(tC, tC + 1, s.tmC, s.tmB, t.tmC, t.tmB) +
                b.minus * qubit_projector(tC, tC - 1, s.tmC, s.tmB, t.tmC, t.tmB)) /
               dA;
        }
        op(p, q) = v;
      }
    }
    const Eigen::MatrixXd U = coupling_matrix(tA, tC, BlockKind::three_system, tM, prod, basis);
    Sector sec{std::move(basis), U.transpose() * op * U};
    sectors.emplace(tM, std::move(sec));
  }
  return BlockOperator(label, BlockKind::three_system, std::move(sectors));
}

}  // namespace

void SpectrumParams::validate() const {
  if (n < 0) throw DomainError("n must be non-negative, got " + std::to_string(n));
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("purity r must lie in (0, 1], got " + std::to_string(r));
}

void BlockLabel::validate() const {
  require_angular_momentum(jA, "BlockLabel.jA");
  require_angular_momentum(jC, "BlockLabel.jC");
}

void BlockLabel::validate_for(int n) const {
  validate();
  for (HalfInteger j : {jA, jC}) {
    if (j.twice() > n || (n - j.twice()) % 2 != 0)
      throw DomainError("block label j=" + j.str() + " is not admissible for n=" + std::to_string(n));
  }
}

BlockOperator::BlockOperator(BlockLabel label, BlockKind kind, std::map<int, Sector> sectors)
    : label_(label), kind_(kind), sectors_(std::move(sectors)) {
  label_.validate();
  for (const auto& [tM, sec] : sectors_) {
    const auto d = static_cast<Eigen::Index>(sec.basis.size());
    if (sec.matrix.rows() != d || sec.matrix.cols() != d)
      throw DomainError("sector 2M=" + std::to_string(tM) + " matrix does not match its basis");
  }
}

const Sector& BlockOperator::sector(HalfInteger M) const {
  auto it = sectors_.find(M.twice());
  if (it == sectors_.end()) throw DomainError("no sector with M=" + M.str());
  return it->second;
}

double BlockOperator::trace() const {
  double t = 0.0;
  for (const auto& [tM, sec] : sectors_) t += sec.matrix.trace();
  return t;
}

BlockOperator BlockOperator::scaled(double factor) const {
  auto out = sectors_;
  for (auto& [tM, sec] : out) sec.matrix *= factor;
  return BlockOperator(label_, kind_, std::move(out));
}

namespace {

void require_same_layout(const BlockOperator& a, const BlockOperator& b) {
  if (a.kind() != b.kind() || a.label() != b.label() || a.sectors().size() != b.sectors().size())
    throw DomainError("block operators have different layouts");
  for (const auto& [tM, sec] : a.sectors()) {
    auto it = b.sectors().find(tM);
    if (it == b.sectors().end() || it->second.basis != sec.basis)
      throw DomainError("block operators have different layouts");
  }
}

}  // namespace

BlockOperator BlockOperator::operator-(const BlockOperator& other) const {
  require_same_layout(*this, other);
  auto out = sectors_;
  for (auto& [tM, sec] : out) sec.matrix -= other.sectors_.at(tM).matrix;
  return BlockOperator(label_, kind_, std::move(out));
}

double BlockOperator::max_abs_diff(const BlockOperator& other) const {
  require_same_layout(*this, other);
  double m = 0.0;
  for (const auto& [tM, sec] : sectors_) {
    if (sec.matrix.size() == 0) continue;
    m = std::max(m, (sec.matrix - other.sectors_.at(tM).matrix).cwiseAbs().maxCoeff());
  }
  return m;
}

std::vector<BlockWeights> block_weights(const SpectrumParams& params) {
  params.validate();
  const int n = params.n;
  const double r = params.r;
  const double q = (1.0 - r) / (1.0 + r);
  std::vector<BlockWeights> out;
  for (int tj = n % 2; tj <= n; tj += 2) {
    BlockWeights w;
    w.j = H2(tj);
    const double norm = (1.0 - std::pow(q, tj + 1)) / (1.0 - q);
    w.a.resize(static_cast<std::size_t>(tj + 1));
    for (int k = 0; k <= tj; ++k) {
      // k = j - m, stored at index tj - k (m ascending).
      w.a[static_cast<std::size_t>(tj - k)] = std::pow(q, k) / norm;
    }
    const double log_c = tj * std::log((1.0 + r) / 2.0) + std::log(norm);
    w.c = std::exp(log_c);
    const int k = (n - tj) / 2;
    if (k == 0) {
      w.p = std::exp(su2::log_multiplicity(n, w.j) + log_c);
    } else if (r >= 1.0) {
      w.p = 0.0;
    } else {
      w.p = std::exp(su2::log_multiplicity(n, w.j) + log_c + k * std::log((1.0 - r * r) / 4.0));
    }
    out.push_back(std::move(w));
  }
  return out;
}

double jz_expectation(HalfInteger j, double r) {
  require_angular_momentum(j, "jz_expectation");
  SpectrumParams{0, r}.validate();
  const double q = (1.0 - r) / (1.0 + r);
  const int tj = j.twice();
  double num = 0.0, den = 0.0;
  for (int k = 0; k <= tj; ++k) {
    const double w = std::pow(q, k);
    num += (0.5 * tj - k) * w;
    den += w;
  }
  return num / den;
}

BlockOperator coupled_jz(const BlockLabel& label, Subsystem which) {
  label.validate();
  const int tA = label.jA.twice(), tC = label.jC.twice();
  std::map<int, Sector> sectors;
  const int tmax = max_twice_m(tA, tC, BlockKind::two_system);
  for (int tM = -tmax; tM <= tmax; tM += 2) {
    const auto prod = product_states(tA, tC, BlockKind::two_system, tM);
    auto basis = sector_basis(tA, tC, BlockKind::two_system, tM);
    const Eigen::MatrixXd U = coupling_matrix(tA, tC, BlockKind::two_system, tM, prod, basis);
    Eigen::VectorXd diag(static_cast<Eigen::Index>(prod.size()));
    for (std::size_t p = 0; p < prod.size(); ++p)
      diag(static_cast<Eigen::Index>(p)) = 0.5 * (which == Subsystem::A ? prod[p].tmA : prod[p].tmC);
    sectors.emplace(tM, Sector{std::move(basis), U.transpose() * diag.asDiagonal() * U});
  }
  return BlockOperator(label, BlockKind::two_system, std::move(sectors));
}

BlockOperator average_state_diff_pure(int n) {
  if (n < 1) throw DomainError("average_state_diff_pure requires n >= 1");
  // sigma_0 = P_AB(n/2 + 1/2) (x) 1_C / (d_n d_{n+1}); sigma_1 likewise on BC.
  // build_difference divides by d_n itself.
  PairWeights w;
  w.plus = 1.0 / (n + 2.0);
  const HalfInteger j = H2(n);
  return build_difference(BlockLabel{j, j}, w, w);
}

BlockOperator average_state_diff_mixed(const BlockLabel& label, const SpectrumParams& params) {
  params.validate();
  label.validate_for(params.n);
  return average_state_diff_mixed(label, params.r);
}

BlockOperator average_state_diff_mixed(const BlockLabel& label, double r) {
  label.validate();
  SpectrumParams{0, r}.validate();
  return build_difference(label, pair_weights(label.jA, r), pair_weights(label.jC, r));
}

BlockOperator partial_trace_up(const BlockOperator& op) {
  if (op.kind() != BlockKind::three_system) throw DomainError("partial_trace_up needs a three-system operator");
  const int tA = op.label().jA.twice(), tC = op.label().jC.twice();
  std::map<int, Sector> sectors;
  const int tmax = max_twice_m(tA, tC, BlockKind::two_system);
  for (int tm = -tmax; tm <= tmax; tm += 2) {
    auto basis = sector_basis(tA, tC, BlockKind::two_system, tm);
    const int tM = tm + 1;
    const Sector& big = op.sectors().at(tM);
    // Column k of V: <(j_AC, J) M | j, m; up>.
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(big.basis.size()),
                                              static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      for (std::size_t b = 0; b < big.basis.size(); ++b) {
        if (big.basis[b].intermediate != basis[k].intermediate) continue;
        V(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(k)) =
            su2::clebsch_gordan(basis[k].intermediate, H2(tm), kHalf, kHalf, big.basis[b].total, H2(tM));
      }
    }
    sectors.emplace(tm, Sector{std::move(basis), V.transpose() * big.matrix * V});
  }
  return BlockOperator(op.label(), BlockKind::two_system, std::move(sectors));
}

double trace_norm(const BlockOperator& op) {
  double total = 0.0;
  for (const auto& [tM, sec] : op.sectors()) {
    if (sec.matrix.size() == 0) continue;
    const double asym = (sec.matrix - sec.matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTol)
      throw IntegrityError("sector 2M=" + std::to_string(tM) + " is not Hermitian (asymmetry " +
                           std::to_string(asym) + ")");
    const Eigen::MatrixXd h = 0.5 * (sec.matrix + sec.matrix.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    total += es.eigenvalues().cwiseAbs().sum();
  }
  return total;
}

double block_diff_trace_norm(const BlockLabel& label, double r) {
  label.validate();
  SpectrumParams{0, r}.validate();
  const int tA = label.jA.twice(), tC = label.jC.twice();
  const double dA = tA + 1.0, dC = tC + 1.0;
  const PairWeights a = pair_weights(label.jA, r), b = pair_weights(label.jC, r);
  auto alpha = [&](int tab) { return (tab == tA + 1 ? a.plus : a.minus) / dC; };
  auto beta = [&](int tbc) { return (tbc == tC + 1 ? b.plus : b.minus) / dA; };

  using Scheme = su2::CouplingScheme;
  double total = 0.0;
  for (int tJ = std::abs(std::abs(tA - tC) - 1); tJ <= tA + tC + 1; tJ += 2) {
    const HalfInteger J = H2(tJ);
    std::vector<int> ab, bc;
    for (int t : {tA + 1, tA - 1})
      if (t >= 0 && triangle(H2(t), label.jC, J)) ab.push_back(t);
    for (int t : {tC + 1, tC - 1})
      if (t >= 0 && triangle(label.jA, H2(t), J)) bc.push_back(t);
    const auto na = static_cast<Eigen::Index>(ab.size()), nb = static_cast<Eigen::Index>(bc.size());
    Eigen::MatrixXd R(na, nb);
    for (Eigen::Index x = 0; x < na; ++x)
      for (Eigen::Index y = 0; y < nb; ++y)
        R(x, y) = su2::recoupling(label.jA, kHalf, label.jC, J, Scheme{Scheme::Order::ac_b, H2(ab[x])},
                                  Scheme{Scheme::Order::a_cb, H2(bc[y])});
    Eigen::VectorXd al(na), be(nb);
    for (Eigen::Index x = 0; x < na; ++x) al(x) = alpha(ab[x]);
    for (Eigen::Index y = 0; y < nb; ++y) be(y) = beta(bc[y]);
    Eigen::MatrixXd M = al.asDiagonal();
    M -= R * be.asDiagonal() * R.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    total += (tJ + 1) * es.eigenvalues().cwiseAbs().sum();
  }
  return total;
}

double asymptotic_block_distribution(int n, double r, double x) {
  if (n < 1) throw DomainError("asymptotic_block_distribution requires n >= 1");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("asymptotic_block_distribution requires 0 < r < 1");
  if (!(x > 0.0 && x < 1.0)) throw DomainError("asymptotic_block_distribution requires 0 < x < 1");
  const double s = (1.0 + x) / 2.0, t = (1.0 + r) / 2.0;
  const double H = s * std::log(s / t) + (1.0 - s) * std::log((1.0 - s) / (1.0 - t));
  return std::sqrt(n / (2.0 * std::numbers::pi)) / std::sqrt(1.0 - x * x) * x * (1.0 + r) / (r * (1.0 + x)) *
         std::exp(-n * H);
}

Eigen::MatrixXd to_product_basis(const BlockOperator& op) {
  const int tA = op.label().jA.twice(), tC = op.label().jC.twice();
  const int dA = tA + 1, dC = tC + 1;
  const bool three = op.kind() == BlockKind::three_system;
  const int dim = dA * dC * (three ? 2 : 1);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [tM, sec] : op.sectors()) {
    const auto prod = product_states(tA, tC, op.kind(), tM);
    const Eigen::MatrixXd U = coupling_matrix(tA, tC, op.kind(), tM, prod, sec.basis);
    const Eigen::MatrixXd block = U * sec.matrix * U.transpose();
    std::vector<int> idx;
    for (const auto& s : prod) {
      const int iA = (tA - s.tmA) / 2, iC = (tC - s.tmC) / 2;
      int i = iA * dC + iC;
      if (three) i = 2 * i + (s.tmB == 1 ? 0 : 1);
      idx.push_back(i);
    }
    for (std::size_t p = 0; p < idx.size(); ++p)
      for (std::size_t q = 0; q < idx.size(); ++q)
        out(idx[p], idx[q]) += block(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
  }
  return out;
}

}  // namespace qclass
